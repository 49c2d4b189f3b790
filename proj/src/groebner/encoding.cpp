#include "ncb/groebner/encoding.hpp"

#include <algorithm>
#include <functional>

namespace ncb {

using Eigen::Index;

namespace {

// Re + i Im with both parts over Q.
struct ComplexPoly {
  Polynomial re, im;

  ComplexPoly& operator+=(const ComplexPoly& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexPoly& operator-=(const ComplexPoly& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexPoly times(const GaussianRational& z) const {
    return {re.scaled(z.real()) - im.scaled(z.imag()), re.scaled(z.imag()) + im.scaled(z.real())};
  }
  ComplexPoly conjugate() const { return {re, -im}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

ComplexPoly complex_zero(std::size_t nvars) { return {Polynomial(nvars), Polynomial(nvars)}; }

ComplexPoly complex_variable(std::size_t nvars, std::size_t re_index) {
  return {Polynomial::variable(nvars, re_index), Polynomial::variable(nvars, re_index + 1)};
}

// Laplace expansion along the first row; sizes here are at most 7.
template <class T>
T determinant(const std::vector<std::vector<T>>& a, const std::vector<std::size_t>& rows,
              const std::vector<std::size_t>& cols, const T& zero) {
  if (rows.size() == 1) return a[rows[0]][cols[0]];
  T out = zero;
  const std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const T& entry = a[rows[0]][cols[c]];
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t cc = 0; cc < cols.size(); ++cc)
      if (cc != c) sub_cols.push_back(cols[cc]);
    T term = entry * determinant(a, sub_rows, sub_cols, zero);
    if (c % 2) out -= term;
    else out += term;
  }
  return out;
}

void for_each_subset(std::size_t n, std::size_t size, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (size > n) return;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t p = size;
    while (p > 0 && idx[p - 1] == n - size + p - 1) --p;
    if (p == 0) return;
    ++idx[p - 1];
    for (std::size_t q = p; q < size; ++q) idx[q] = idx[q - 1] + 1;
  }
}

// Appends p unless it is zero or a scalar multiple of a polynomial already present.
bool push_unique(std::vector<Polynomial>& out, Polynomial p) {
  if (p.is_zero()) return false;
  p.make_monic();
  if (std::find(out.begin(), out.end(), p) != out.end()) return false;
  out.push_back(std::move(p));
  return true;
}

std::size_t push_complex(std::vector<Polynomial>& out, const ComplexPoly& z) {
  return static_cast<std::size_t>(push_unique(out, z.re)) + static_cast<std::size_t>(push_unique(out, z.im));
}

void check_size(std::size_t nvars, std::size_t max_vars) {
  if (nvars > max_vars || nvars > kMaxVariables)
    throw EncodingTooLarge("encoding needs " + std::to_string(nvars) + " variables, cap is " +
                           std::to_string(std::min(max_vars, kMaxVariables)));
}

}  // namespace

PolynomialSystem encode_rank_feasibility(const NcGraph& s, std::size_t k, std::size_t m, RankEncoding encoding,
                                         std::size_t max_vars) {
  if (k < 1 || m < 1) throw std::invalid_argument("encode_rank_feasibility: k and m must be >= 1");
  if (s.dim() == 0) throw std::invalid_argument("encode_rank_feasibility: empty basis");
  const std::size_t n = s.n(), mn = m * n;
  PolynomialSystem sys;

  // B as an mn x mn grid of complex polynomials.
  std::vector<std::vector<ComplexPoly>> b;
  if (encoding == RankEncoding::Factor) {
    sys.num_vars = 4 * k * mn;
    check_size(sys.num_vars, max_vars);
    const std::size_t nv = sys.num_vars;
    for (const char* name : {"C", "D"})
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t c = 0; c < mn; ++c)
          for (const char* part : {"Re", "Im"})
            sys.variable_names.push_back(std::string(part) + " " + name + "[" + std::to_string(t + 1) + "," +
                                         std::to_string(c + 1) + "]");
    auto c_var = [&](std::size_t t, std::size_t c) { return complex_variable(nv, 2 * (t * mn + c)); };
    auto d_var = [&](std::size_t t, std::size_t c) { return complex_variable(nv, 2 * (k * mn + t * mn + c)); };
    b.assign(mn, std::vector<ComplexPoly>(mn, complex_zero(nv)));
    for (std::size_t r = 0; r < mn; ++r)
      for (std::size_t c = 0; c < mn; ++c)
        for (std::size_t t = 0; t < k; ++t) b[r][c] += c_var(t, r).conjugate() * d_var(t, c);
  } else {
    const std::size_t d = s.dim();
    sys.num_vars = 2 * m * m * d;
    check_size(sys.num_vars, max_vars);
    const std::size_t nv = sys.num_vars;
    for (std::size_t blk = 0; blk < m * m; ++blk)
      for (std::size_t t = 0; t < d; ++t)
        for (const char* part : {"Re", "Im"})
          sys.variable_names.push_back(std::string(part) + " y[" + std::to_string(blk / m + 1) + "," +
                                       std::to_string(blk % m + 1) + "," + std::to_string(t + 1) + "]");
    const std::vector<ExactMatrix> basis = s.basis();
    b.assign(mn, std::vector<ComplexPoly>(mn, complex_zero(nv)));
    for (std::size_t bi = 0; bi < m; ++bi)
      for (std::size_t bj = 0; bj < m; ++bj)
        for (std::size_t t = 0; t < d; ++t) {
          const ComplexPoly y = complex_variable(nv, 2 * ((bi * m + bj) * d + t));
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
              const GaussianRational& z = basis[t](static_cast<Index>(p), static_cast<Index>(q));
              if (!z.is_zero()) b[bi * n + p][bj * n + q] += y.times(z);
            }
        }
  }
  const std::size_t nv = sys.num_vars;

  if (encoding == RankEncoding::Factor) {
    const ExactMatrix ann = s.annihilator();
    for (std::size_t bi = 0; bi < m; ++bi)
      for (std::size_t bj = 0; bj < m; ++bj)
        for (Index row = 0; row < ann.rows(); ++row) {
          ComplexPoly form = complex_zero(nv);
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
              const GaussianRational& z = ann(row, static_cast<Index>(p * n + q));
              if (!z.is_zero()) form += b[bi * n + p][bj * n + q].times(z);
            }
          sys.membership_count += push_complex(sys.polys, form);
        }
  }

  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      ComplexPoly sum = complex_zero(nv);
      for (std::size_t a = 0; a < m; ++a) sum += b[a * n + p][a * n + q];
      if (p == q) sum.re -= Polynomial::constant(nv, 1);
      sys.trace_count += push_complex(sys.polys, sum);
    }

  if (encoding == RankEncoding::Minor) {
    const ComplexPoly zero = complex_zero(nv);
    for_each_subset(mn, k + 1, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(mn, k + 1, [&](const std::vector<std::size_t>& cols) {
        sys.minor_count += push_complex(sys.polys, determinant(b, rows, cols, zero));
      });
    });
  }
  return sys;
}

PolynomialSystem encode_fitting_rank(const Graph& g, std::size_t k, FittingVariant variant, std::size_t max_vars) {
  const std::size_t n = g.order();
  if (k < 1) throw std::invalid_argument("encode_fitting_rank: k must be >= 1");
  PolynomialSystem sys;
  // Variable layout: free entries of B row-major, then t_i.
  std::vector<std::vector<long>> index(n, std::vector<long>(n, -1));
  std::size_t nv = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool free_entry = i == j ? variant == FittingVariant::NonzeroDiagonal : g.adjacent(i, j);
      if (free_entry) {
        index[i][j] = static_cast<long>(nv++);
        sys.variable_names.push_back("B[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
      }
    }
  const std::size_t t_offset = nv;
  if (variant == FittingVariant::NonzeroDiagonal)
    for (std::size_t i = 0; i < n; ++i) sys.variable_names.push_back("t[" + std::to_string(i + 1) + "]");
  nv += variant == FittingVariant::NonzeroDiagonal ? n : 0;
  sys.num_vars = nv;
  check_size(nv, max_vars);

  std::vector<std::vector<Polynomial>> b(n, std::vector<Polynomial>(n, Polynomial(nv)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (index[i][j] >= 0) b[i][j] = Polynomial::variable(nv, static_cast<std::size_t>(index[i][j]));
      else if (i == j) b[i][j] = Polynomial::constant(nv, 1);
    }
  if (variant == FittingVariant::NonzeroDiagonal)
    for (std::size_t i = 0; i < n; ++i)
      sys.other_count += push_unique(sys.polys, Polynomial::variable(nv, t_offset + i) * b[i][i] -
                                                    Polynomial::constant(nv, 1));
  for_each_subset(n, k + 1, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(n, k + 1, [&](const std::vector<std::size_t>& cols) {
      sys.minor_count += push_unique(sys.polys, determinant(b, rows, cols, Polynomial(nv)));
    });
  });
  return sys;
}

}  // namespace ncb
