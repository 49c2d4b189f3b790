#include "ncb/exact/linalg.hpp"

#include <cmath>

namespace ncb {

using Eigen::Index;

ExactMatrix matmul(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  ExactMatrix out = exact_zero(a.rows(), b.cols());
  for (Index k = 0; k < a.cols(); ++k) {
    for (Index i = 0; i < a.rows(); ++i) {
      const GaussianRational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (Index j = 0; j < b.cols(); ++j) {
        const GaussianRational& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

std::size_t rank(const ExactMatrix& a) {
  ExactMatrix m = a;
  const Index rows = m.rows();
  const Index cols = m.cols();
  for (Index i = 0; i < rows; ++i) {
    BigInt l = 1;
    for (Index j = 0; j < cols; ++j) {
      BigInt d = denominator_lcm(m(i, j));
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    if (l != 1) {
      GaussianRational s{Rational(l)};
      for (Index j = 0; j < cols; ++j) m(i, j) *= s;
    }
  }

  GaussianRational prev(1);
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const GaussianRational pivot = m(r, c);
    for (Index i = r + 1; i < rows; ++i) {
      const GaussianRational f = m(i, c);
      for (Index j = c + 1; j < cols; ++j) {
        GaussianRational v = m(i, j) * pivot;
        if (!f.is_zero()) v -= f * m(r, j);
        m(i, j) = v / prev;
      }
      m(i, c) = 0;
    }
    prev = pivot;
    ++r;
  }
  return static_cast<std::size_t>(r);
}

RowEchelon rref(const ExactMatrix& a) {
  ExactMatrix m = a;
  const Index rows = m.rows();
  const Index cols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const GaussianRational inv = GaussianRational(1) / m(r, c);
    for (Index j = c; j < cols; ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const GaussianRational f = m(i, c);
      for (Index j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.topRows(r), std::move(pivots)};
}

ExactMatrix nullspace(const ExactMatrix& a) {
  const RowEchelon e = rref(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free;
  for (Index c = 0; c < a.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);

  ExactMatrix basis = exact_zero(a.cols(), static_cast<Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    const Index fc = free[f];
    basis(fc, static_cast<Index>(f)) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis(e.pivots[r], static_cast<Index>(f)) = -e.reduced(static_cast<Index>(r), fc);
  }
  return basis;
}

std::optional<ExactVector> solve_linear(const ExactMatrix& a, const ExactVector& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve_linear: rhs length does not match rows");
  ExactMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const RowEchelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  ExactVector x = ExactVector::Constant(a.cols(), GaussianRational(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x(e.pivots[r]) = e.reduced(static_cast<Index>(r), a.cols());
  return x;
}

bool is_hermitian(const ExactMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i; j < a.cols(); ++j)
      if (a(i, j) != conj(a(j, i))) return false;
  return true;
}

bool is_psd(const ExactMatrix& a) {
  if (!is_hermitian(a)) return false;
  ExactMatrix m = a;
  while (m.rows() > 0) {
    const Index n = m.rows();
    Index pivot = -1;
    for (Index i = 0; i < n; ++i) {
      const int s = sgn(m(i, i).real());
      if (s < 0) return false;
      if (s > 0 && pivot < 0) pivot = i;
    }
    if (pivot < 0) {
      // Zero diagonal of a PSD matrix forces the whole matrix to vanish.
      return is_zero(m);
    }
    // Schur complement with respect to the pivot entry.
    const GaussianRational d = m(pivot, pivot);
    ExactMatrix next(n - 1, n - 1);
    for (Index i = 0, ii = 0; i < n; ++i) {
      if (i == pivot) continue;
      for (Index j = 0, jj = 0; j < n; ++j) {
        if (j == pivot) continue;
        GaussianRational v = m(i, j);
        if (!m(i, pivot).is_zero() && !m(pivot, j).is_zero()) v -= m(i, pivot) * m(pivot, j) / d;
        next(ii, jj) = v;
        ++jj;
      }
      ++ii;
    }
    m = std::move(next);
  }
  return true;
}

std::pair<ExactMatrix, ExactMatrix> rank_factorization(const ExactMatrix& a) {
  RowEchelon e = rref(a);
  const Index r = static_cast<Index>(e.pivots.size());
  ExactMatrix left(a.rows(), r);
  for (Index k = 0; k < r; ++k) left.col(k) = a.col(e.pivots[static_cast<std::size_t>(k)]);
  return {std::move(left), std::move(e.reduced)};
}

std::size_t rank_of_factored(const ExactMatrix& c, const ExactMatrix& d) {
  if (c.rows() != d.rows() || c.cols() != d.cols())
    throw DimensionError("rank_of_factored: factors must have equal shape");
  const ExactMatrix gc = matmul(c, conj_transpose(c));
  const ExactMatrix gd = matmul(d, conj_transpose(d));
  return rank(matmul(gd, gc));
}

Rational rationalize(double x, const BigInt& max_denominator) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite input");
  if (max_denominator < 1) throw std::invalid_argument("rationalize: max_denominator must be >= 1");
  Rational rest = exact_rational(x);
  // Convergents h_i / k_i via h_i = a_i h_{i-1} + h_{i-2}, k_i likewise.
  BigInt h_prev2 = 0, h_prev = 1, k_prev2 = 1, k_prev = 0;
  while (true) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    BigInt h = a * h_prev + h_prev2;
    BigInt k = a * k_prev + k_prev2;
    if (k > max_denominator) break;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    Rational frac = rest - Rational(a);
    if (sgn(frac) == 0) break;
    rest = 1 / frac;
  }
  Rational q(h_prev, k_prev);
  q.canonicalize();
  return q;
}

GaussianRational rationalize(std::complex<double> z, const BigInt& max_denominator) {
  return {rationalize(z.real(), max_denominator), rationalize(z.imag(), max_denominator)};
}

ExactMatrix rationalize(const ComplexMatrix& m, const BigInt& max_denominator) {
  ExactMatrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = rationalize(m(i, j), max_denominator);
  return out;
}

}  // namespace ncb
