#include "ncb/haemers/noncommutative.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <random>
#include <set>
#include <tuple>

#include <Eigen/Dense>

namespace ncb {

using Eigen::Index;

namespace {

Index idx(std::size_t v) { return static_cast<Index>(v); }

std::string pos(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

ExactMatrix HaemersCertificate::product() const { return matmul(conj_transpose(c), d); }
ExactMatrix HaemersCertificate::c_block(std::size_t j) const { return c.middleCols(idx(j * n), idx(n)); }
ExactMatrix HaemersCertificate::d_block(std::size_t j) const { return d.middleCols(idx(j * n), idx(n)); }

const char* to_string(CertificateViolation::Kind kind) {
  switch (kind) {
    case CertificateViolation::Kind::Shape: return "shape";
    case CertificateViolation::Kind::Membership: return "membership";
    case CertificateViolation::Kind::Trace: return "trace";
    case CertificateViolation::Kind::Rank: return "rank";
    case CertificateViolation::Kind::Psd: return "psd";
  }
  return "unknown";
}

std::size_t block_count_cap(std::size_t n, std::size_t k) {
  const std::size_t w = std::max(n, k) * n;
  return w * w;
}

namespace {

void check_shape(const NcGraph& s, const HaemersCertificate& cert) {
  using K = CertificateViolation::Kind;
  if (s.dim() == 0) throw CertificateViolation(K::Shape, "certificate: target system has an empty basis");
  if (cert.n != s.n())
    throw CertificateViolation(K::Shape, "certificate: n = " + std::to_string(cert.n) + " but the system lives in M_" +
                                             std::to_string(s.n()));
  if (cert.k < 1) throw CertificateViolation(K::Shape, "certificate: k must be >= 1");
  if (cert.m < 1 || cert.m > block_count_cap(cert.n, cert.k))
    throw CertificateViolation(K::Shape, "certificate: block count m must lie in [1, " +
                                             std::to_string(block_count_cap(cert.n, cert.k)) + "]");
  for (const ExactMatrix* f : {&cert.c, &cert.d})
    if (f->rows() != idx(cert.k) || f->cols() != idx(cert.m * cert.n))
      throw CertificateViolation(K::Shape, "certificate: factors must be k x mn = " + std::to_string(cert.k) + "x" +
                                               std::to_string(cert.m * cert.n));
}

}  // namespace

std::size_t verify_certificate(const NcGraph& s, const HaemersCertificate& cert) {
  using K = CertificateViolation::Kind;
  check_shape(s, cert);
  std::vector<ExactMatrix> cb(cert.m), db(cert.m);
  for (std::size_t j = 0; j < cert.m; ++j) {
    cb[j] = conj_transpose(cert.c_block(j));
    db[j] = cert.d_block(j);
  }
  ExactMatrix trace = exact_zero(idx(cert.n), idx(cert.n));
  for (std::size_t i = 0; i < cert.m; ++i)
    for (std::size_t j = 0; j < cert.m; ++j) {
      const ExactMatrix block = matmul(cb[i], db[j]);
      if (!s.contains(block))
        throw CertificateViolation(K::Membership, "certificate: block " + pos(i, j) + " is not in S", i, j);
      if (i == j) trace += block;
    }
  if (trace != exact_identity(idx(cert.n)))
    throw CertificateViolation(K::Trace, "certificate: diagonal blocks do not sum to the identity");
  const std::size_t r = rank_of_factored(cert.c, cert.d);
  if (r > cert.k)
    throw CertificateViolation(K::Rank, "certificate: rank " + std::to_string(r) + " exceeds k = " +
                                            std::to_string(cert.k));
  return r;
}

std::size_t verify_xi_certificate(const NcGraph& s, const HaemersCertificate& cert) {
  using K = CertificateViolation::Kind;
  check_shape(s, cert);
  if (cert.c != cert.d) throw CertificateViolation(K::Psd, "xi certificate: factors C and D differ");
  const std::size_t r = verify_certificate(s, cert);
  if (!is_psd(cert.product())) throw CertificateViolation(K::Psd, "xi certificate: B is not positive semidefinite");
  return r;
}

std::size_t verify_tp_map(const NcGraph& s, const TpMapCertificate& tp) {
  using K = CertificateViolation::Kind;
  if (tp.e.empty() || tp.e.size() != tp.f.size())
    throw CertificateViolation(K::Shape, "tp map: need equally many E and F operators");
  if (tp.n != s.n()) throw CertificateViolation(K::Shape, "tp map: input dimension differs from the system");
  for (std::size_t i = 0; i < tp.e.size(); ++i)
    for (const ExactMatrix* op : {&tp.e[i], &tp.f[i]})
      if (op->rows() != idx(tp.k) || op->cols() != idx(tp.n))
        throw CertificateViolation(K::Shape, "tp map: operators must be k x n");
  ExactMatrix sum = exact_zero(idx(tp.n), idx(tp.n));
  for (std::size_t i = 0; i < tp.f.size(); ++i) {
    const ExactMatrix fi = conj_transpose(tp.f[i]);
    for (std::size_t j = 0; j < tp.e.size(); ++j) {
      const ExactMatrix block = matmul(fi, tp.e[j]);
      if (!s.contains(block))
        throw CertificateViolation(K::Membership, "tp map: F_i^dagger E_j at " + pos(i, j) + " is not in S", i, j);
      if (i == j) sum += block;
    }
  }
  if (sum != exact_identity(idx(tp.n))) throw CertificateViolation(K::Trace, "tp map: not trace preserving");
  return tp.k;
}

HaemersCertificate lift_graph_certificate(const FittingMatrix& fm) {
  verify_fitting(fm);
  const std::size_t n = fm.graph.order();
  ExactMatrix b = fm.b;
  for (Index i = 0; i < b.rows(); ++i) {
    const GaussianRational inv = GaussianRational(1) / b(i, i);
    for (Index j = 0; j < b.cols(); ++j) b(i, j) *= inv;
  }
  // B = L R, and C = L^dagger gives B_ij = <C_i|D_j>.
  auto [left, right] = rank_factorization(b);
  const ExactMatrix c = conj_transpose(left);
  const Index k = c.rows();
  HaemersCertificate cert{n, n, static_cast<std::size_t>(k), exact_zero(k, idx(n * n)), exact_zero(k, idx(n * n))};
  for (std::size_t i = 0; i < n; ++i) {
    cert.c.col(idx(i * n + i)) = c.col(idx(i));
    cert.d.col(idx(i * n + i)) = right.col(idx(i));
  }
  return cert;
}

FittingMatrix project_to_graph_certificate(const Graph& g, const HaemersCertificate& cert) {
  const NcGraph sg = from_graph(g);
  verify_certificate(sg, cert);
  const std::size_t n = cert.n;
  ExactMatrix u(idx(cert.k), idx(n)), v(idx(cert.k), idx(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t chosen = cert.m;
    for (std::size_t j = 0; j < cert.m && chosen == cert.m; ++j)
      if (!cert.c.col(idx(j * n + i)).dot(cert.d.col(idx(j * n + i))).is_zero()) chosen = j;
    if (chosen == cert.m) throw std::logic_error("project: trace condition holds but no diagonal entry is nonzero");
    u.col(idx(i)) = cert.c.col(idx(chosen * n + i));
    v.col(idx(i)) = cert.d.col(idx(chosen * n + i));
  }
  FittingMatrix fm{g, matmul(conj_transpose(u), v), FittingVariant::NonzeroDiagonal};
  verify_fitting(fm);
  return fm;
}

HaemersCertificate tensor_certificate(const NcGraph& s, const HaemersCertificate& c1, const NcGraph& t,
                                      const HaemersCertificate& c2) {
  verify_certificate(s, c1);
  verify_certificate(t, c2);
  const std::size_t n1 = c1.n, n2 = c2.n, m1 = c1.m, m2 = c2.m;
  const ExactMatrix kc = kron(c1.c, c2.c), kd = kron(c1.d, c2.d);
  HaemersCertificate out{n1 * n2, m1 * m2, c1.k * c2.k, ExactMatrix(kc.rows(), kc.cols()),
                         ExactMatrix(kd.rows(), kd.cols())};
  // Column (a1, x1, a2, x2) of B1 (x) B2 becomes block (a1, a2), entry (x1, x2).
  for (std::size_t a1 = 0; a1 < m1; ++a1)
    for (std::size_t x1 = 0; x1 < n1; ++x1)
      for (std::size_t a2 = 0; a2 < m2; ++a2)
        for (std::size_t x2 = 0; x2 < n2; ++x2) {
          const std::size_t from = (a1 * n1 + x1) * (m2 * n2) + a2 * n2 + x2;
          const std::size_t to = ((a1 * m2 + a2) * n1 + x1) * n2 + x2;
          out.c.col(idx(to)) = kc.col(idx(from));
          out.d.col(idx(to)) = kd.col(idx(from));
        }
  return out;
}

HaemersCertificate direct_sum_certificate(const NcGraph& s, const HaemersCertificate& c1, const NcGraph& t,
                                          const HaemersCertificate& c2) {
  verify_certificate(s, c1);
  verify_certificate(t, c2);
  const std::size_t m = std::max(c1.m, c2.m), n = c1.n + c2.n, k = c1.k + c2.k;
  HaemersCertificate out{n, m, k, exact_zero(idx(k), idx(m * n)), exact_zero(idx(k), idx(m * n))};
  // Missing blocks of the shorter certificate are zero, which lies in every subspace.
  for (std::size_t j = 0; j < c1.m; ++j) {
    out.c.block(0, idx(j * n), idx(c1.k), idx(c1.n)) = c1.c_block(j);
    out.d.block(0, idx(j * n), idx(c1.k), idx(c1.n)) = c1.d_block(j);
  }
  for (std::size_t j = 0; j < c2.m; ++j) {
    out.c.block(idx(c1.k), idx(j * n + c1.n), idx(c2.k), idx(c2.n)) = c2.c_block(j);
    out.d.block(idx(c1.k), idx(j * n + c1.n), idx(c2.k), idx(c2.n)) = c2.d_block(j);
  }
  return out;
}

HaemersCertificate conjugate_certificate(const NcGraph& s, const HaemersCertificate& cert, const ExactMatrix& u) {
  if (!is_unitary(u) || u.rows() != idx(cert.n)) throw NotUnitary("conjugate_certificate: U is not an exact unitary");
  verify_certificate(s, cert);
  HaemersCertificate out = cert;
  for (std::size_t j = 0; j < cert.m; ++j) {
    out.c.middleCols(idx(j * cert.n), idx(cert.n)) = matmul(cert.c_block(j), u);
    out.d.middleCols(idx(j * cert.n), idx(cert.n)) = matmul(cert.d_block(j), u);
  }
  return out;
}

namespace {

/// True if b = lambda a for a nonzero scalar lambda.
bool proportional(const ExactMatrix& a, const ExactMatrix& b) {
  Index p = -1;
  for (Index i = 0; i < a.size() && p < 0; ++i)
    if (!a.data()[i].is_zero()) p = i;
  if (p < 0 || b.data()[p].is_zero()) return false;
  const GaussianRational lambda = b.data()[p] / a.data()[p];
  for (Index i = 0; i < a.size(); ++i)
    if (a.data()[i] * lambda != b.data()[i]) return false;
  return true;
}

}  // namespace

void verify_cohomomorphism(const NcGraph& s, const NcGraph& t, const std::vector<ExactMatrix>& kraus) {
  if (kraus.empty()) throw CohomomorphismViolation("cohomomorphism: no Kraus operators", 0, 0, 0);
  ExactMatrix sum = exact_zero(idx(s.n()), idx(s.n()));
  for (const auto& op : kraus) {
    if (op.rows() != idx(t.n()) || op.cols() != idx(s.n()))
      throw CohomomorphismViolation("cohomomorphism: Kraus operators must be n_T x n_S", 0, 0, 0);
    sum += matmul(conj_transpose(op), op);
  }
  if (sum != exact_identity(idx(s.n())))
    throw CohomomorphismViolation("cohomomorphism: Kraus operators do not form a channel", 0, 0, 0);
  // Membership is invariant under scaling, so one operator per ray suffices.
  std::vector<std::size_t> reps;
  for (std::size_t a = 0; a < kraus.size(); ++a) {
    if (is_zero(kraus[a])) continue;
    bool seen = false;
    for (std::size_t r : reps) seen = seen || proportional(kraus[r], kraus[a]);
    if (!seen) reps.push_back(a);
  }
  const std::vector<ExactMatrix> basis = t.basis();
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t i : reps) {
      const ExactMatrix left = matmul(conj_transpose(kraus[i]), basis[b]);
      for (std::size_t j : reps)
        if (!s.contains(matmul(left, kraus[j])))
          throw CohomomorphismViolation("cohomomorphism: D_" + std::to_string(i + 1) + "^dagger A_" +
                                            std::to_string(b + 1) + " D_" + std::to_string(j + 1) + " is not in S",
                                        i, j, b);
    }
}

HaemersCertificate cohomomorphism_apply(const NcGraph& s, const NcGraph& t, const std::vector<ExactMatrix>& kraus,
                                        const HaemersCertificate& cert) {
  verify_certificate(t, cert);
  verify_cohomomorphism(s, t, kraus);
  const std::size_t ns = s.n(), mk = cert.m * kraus.size();
  HaemersCertificate out{ns, mk, cert.k, ExactMatrix(idx(cert.k), idx(mk * ns)), ExactMatrix(idx(cert.k), idx(mk * ns))};
  for (std::size_t i = 0; i < cert.m; ++i) {
    const ExactMatrix ci = cert.c_block(i), di = cert.d_block(i);
    for (std::size_t a = 0; a < kraus.size(); ++a) {
      const std::size_t block = i * kraus.size() + a;
      out.c.middleCols(idx(block * ns), idx(ns)) = matmul(ci, kraus[a]);
      out.d.middleCols(idx(block * ns), idx(ns)) = matmul(di, kraus[a]);
    }
  }
  if (out.m > block_count_cap(out.n, out.k)) out = reduce_block_count(s, out);
  return out;
}

namespace {

/// Indices of a basis among the flattened blocks and the coefficients
/// coeff(r, i) expressing block i in that basis.
std::pair<std::vector<Index>, ExactMatrix> block_basis(const ExactMatrix& f, std::size_t n, std::size_t m) {
  ExactMatrix cols(f.rows() * idx(n), idx(m));
  for (std::size_t j = 0; j < m; ++j) {
    const ExactMatrix block = f.middleCols(idx(j * n), idx(n));
    for (Index c = 0; c < block.cols(); ++c) cols.col(idx(j)).segment(c * block.rows(), block.rows()) = block.col(c);
  }
  RowEchelon e = rref(cols);
  return {e.pivots, e.reduced};
}

}  // namespace

HaemersCertificate reduce_block_count(const NcGraph& s, const HaemersCertificate& cert) {
  verify_certificate(s, cert);
  const std::size_t n = cert.n;
  const auto [ci, a] = block_basis(cert.c, n, cert.m);
  const auto [dj, b] = block_basis(cert.d, n, cert.m);
  // I_n = sum_i C_i^dagger D_i = sum alpha(p, q) C_{I_p}^dagger D_{J_q}.
  ExactMatrix alpha = matmul(a.conjugate(), b.transpose());
  std::vector<std::pair<Index, Index>> blocks;
  for (Index p = 0; p < alpha.rows(); ++p)
    for (Index q = 0; q < alpha.cols(); ++q)
      if (!alpha(p, q).is_zero()) blocks.emplace_back(p, q);
  const std::size_t m = blocks.size();
  HaemersCertificate out{n, m, cert.k, ExactMatrix(idx(cert.k), idx(m * n)), ExactMatrix(idx(cert.k), idx(m * n))};
  for (std::size_t t = 0; t < m; ++t) {
    const auto [p, q] = blocks[t];
    out.c.middleCols(idx(t * n), idx(n)) = cert.c_block(static_cast<std::size_t>(ci[static_cast<std::size_t>(p)]));
    out.d.middleCols(idx(t * n), idx(n)) =
        cert.d_block(static_cast<std::size_t>(dj[static_cast<std::size_t>(q)])) * alpha(p, q);
  }
  verify_certificate(s, out);
  return out;
}

namespace {

BigInt isqrt(const BigInt& a) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

bool is_square(const BigInt& a) { return sgn(a) >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0; }

/// p = x^2 + y^2 for a prime p = 1 mod 4 via a square root of -1 and the
/// Euclidean algorithm.
std::optional<std::pair<BigInt, BigInt>> two_squares_prime(const BigInt& p) {
  const BigInt e = (p - 1) / 4;
  BigInt root;
  for (BigInt c = 2; c < p; ++c) {
    BigInt x;
    mpz_powm(x.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if ((x * x + 1) % p == 0) {
      root = x;
      break;
    }
  }
  if (root == 0) return std::nullopt;
  BigInt a = p, b = root;
  while (b * b > p) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  const BigInt rest = p - b * b;
  if (!is_square(rest)) return std::nullopt;
  return std::make_pair(b, isqrt(rest));
}

std::array<BigInt, 4> four_squares(const BigInt& n) {
  // With 4 | n no prime p = 1 mod 4 equals n - a^2 - b^2, so recurse on n/4.
  if (n > 0 && n % 4 == 0) {
    auto half = four_squares(n / 4);
    for (BigInt& x : half) x *= 2;
    return half;
  }
  if (n < 1000) {
    for (BigInt a = 0; a * a <= n; ++a)
      for (BigInt b = 0; a * a + b * b <= n; ++b)
        for (BigInt c = 0; a * a + b * b + c * c <= n; ++c) {
          const BigInt rest = n - a * a - b * b - c * c;
          if (is_square(rest)) return {a, b, c, isqrt(rest)};
        }
  }
  std::mt19937_64 rng(0x5eed);
  const BigInt bound = isqrt(n);
  auto draw = [&] {
    BigInt r(static_cast<unsigned long>(rng() >> 32));
    return BigInt(bound * r / BigInt(4294967296UL));
  };
  while (true) {
    const BigInt a = draw(), b = draw();
    const BigInt rest = n - a * a - b * b;
    if (sgn(rest) < 0) continue;
    if (is_square(rest)) return {a, b, isqrt(rest), 0};
    if (rest % 4 == 1 && mpz_probab_prime_p(rest.get_mpz_t(), 30) > 0)
      if (auto xy = two_squares_prime(rest)) return {a, b, xy->first, xy->second};
  }
}

}  // namespace

std::vector<ExactMatrix> independent_system_kraus(const IndependentSystem& sys) {
  const std::size_t l = sys.size();
  std::vector<ExactMatrix> out;
  for (std::size_t t = 0; t < l; ++t) {
    const ExactVector& psi = sys.vectors[t];
    if (psi.size() != idx(sys.n) || is_zero(psi))
      throw std::invalid_argument("independent_system_kraus: vectors must be nonzero of length n");
    // |psi|^2 = p/q and 1/|psi|^2 = pq/p^2 with pq a sum of four squares.
    const Rational norm2 = psi.dot(psi).real();
    const BigInt p = norm2.get_num(), q = norm2.get_den();
    for (const BigInt& a : four_squares(p * q)) {
      if (a == 0) continue;
      Rational coeff(a, p);
      coeff.canonicalize();
      ExactMatrix op = exact_zero(idx(sys.n), idx(l));
      op.col(idx(t)) = psi * GaussianRational(coeff);
      out.push_back(std::move(op));
    }
  }
  return out;
}

std::size_t compression_lower_bound(const NcGraph& s, const HaemersCertificate& cert, const IndependentSystem& sys) {
  const std::size_t r = verify_certificate(s, cert);
  if (!verify_independent(s, sys)) throw std::invalid_argument("compression: the system is not independent for S");
  const std::size_t l = sys.size();
  ExactMatrix u(idx(cert.n), idx(l));
  for (std::size_t t = 0; t < l; ++t) u.col(idx(t)) = sys.vectors[t];
  ExactMatrix cu(idx(cert.k), idx(cert.m * l)), du(idx(cert.k), idx(cert.m * l));
  for (std::size_t j = 0; j < cert.m; ++j) {
    cu.middleCols(idx(j * l), idx(l)) = matmul(cert.c_block(j), u);
    du.middleCols(idx(j * l), idx(l)) = matmul(cert.d_block(j), u);
  }
  const std::size_t compressed = rank_of_factored(cu, du);
  if (compressed < l || compressed > r)
    throw std::logic_error("compression: rank " + std::to_string(compressed) + " outside [" + std::to_string(l) +
                           ", " + std::to_string(r) + "]");
  return compressed;
}

TpMapCertificate to_tp_map(const NcGraph& s, const HaemersCertificate& cert) {
  verify_certificate(s, cert);
  TpMapCertificate tp{cert.n, cert.k, {}, {}};
  for (std::size_t j = 0; j < cert.m; ++j) {
    tp.e.push_back(cert.d_block(j));
    tp.f.push_back(cert.c_block(j));
  }
  return tp;
}

HaemersCertificate from_tp_map(const NcGraph& s, const TpMapCertificate& tp) {
  verify_tp_map(s, tp);
  const std::size_t m = tp.e.size();
  HaemersCertificate cert{tp.n, m, tp.k, ExactMatrix(idx(tp.k), idx(m * tp.n)), ExactMatrix(idx(tp.k), idx(m * tp.n))};
  for (std::size_t j = 0; j < m; ++j) {
    cert.c.middleCols(idx(j * tp.n), idx(tp.n)) = tp.f[j];
    cert.d.middleCols(idx(j * tp.n), idx(tp.n)) = tp.e[j];
  }
  return cert;
}

namespace {

/// Linear equations in the unknown factor when the other one is fixed.
/// Entry (p, q) of block (i, j) is sum_r L(r, i n + p) R(r, j n + q) with
/// L = conj(C) and R = D. Unknown (r, col) has index col * k + r.
template <typename T>
void linear_system(const Eigen::Matrix<T, -1, -1>& ann, std::size_t n, std::size_t m, std::size_t k,
                   const Eigen::Matrix<T, -1, -1>& fixed, bool unknown_is_right, Eigen::Matrix<T, -1, -1>& a,
                   Eigen::Matrix<T, -1, 1>& b) {
  const std::size_t rows_ann = static_cast<std::size_t>(ann.rows());
  const std::size_t eqs = m * m * rows_ann + n * n;
  const Index unknowns = idx(k * m * n);
  a = Eigen::Matrix<T, -1, -1>::Constant(idx(eqs), unknowns, T(0));
  b = Eigen::Matrix<T, -1, 1>::Constant(idx(eqs), T(0));
  auto var = [&](std::size_t r, std::size_t col) { return idx(col * k + r); };
  std::size_t e = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t row = 0; row < rows_ann; ++row, ++e)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q) {
            const T& w = ann(idx(row), idx(p * n + q));
            if (w == T(0)) continue;
            for (std::size_t r = 0; r < k; ++r) {
              if (unknown_is_right) a(idx(e), var(r, j * n + q)) += w * fixed(idx(r), idx(i * n + p));
              else a(idx(e), var(r, i * n + p)) += w * fixed(idx(r), idx(j * n + q));
            }
          }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q, ++e) {
      if (p == q) b(idx(e)) = T(1);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t r = 0; r < k; ++r) {
          if (unknown_is_right) a(idx(e), var(r, i * n + q)) += fixed(idx(r), idx(i * n + p));
          else a(idx(e), var(r, i * n + p)) += fixed(idx(r), idx(i * n + q));
        }
    }
}

template <typename V>
Eigen::Matrix<typename V::Scalar, -1, -1> unvec(const V& x, std::size_t k, std::size_t cols) {
  Eigen::Matrix<typename V::Scalar, -1, -1> out(idx(k), idx(cols));
  for (std::size_t col = 0; col < cols; ++col)
    for (std::size_t r = 0; r < k; ++r) out(idx(r), idx(col)) = x(idx(col * k + r));
  return out;
}

template <typename M>
Eigen::Matrix<typename M::Scalar, -1, 1> vec(const M& f) {
  Eigen::Matrix<typename M::Scalar, -1, 1> out(f.size());
  for (Index col = 0; col < f.cols(); ++col)
    for (Index r = 0; r < f.rows(); ++r) out(col * f.rows() + r) = f(r, col);
  return out;
}

struct Search {
  const NcGraph& s;
  std::size_t n, k;
  ExactMatrix ann;
  ComplexMatrix ann_f;
  std::chrono::steady_clock::time_point deadline;

  bool expired() const { return std::chrono::steady_clock::now() > deadline; }

  /// Minimizes |A x - b|^2 + lambda |x - x_prev|^2 over the entries of
  /// `unknown` not marked in `pinned`; returns the residual |A x - b|^2.
  double step(std::size_t m, const ComplexMatrix& fixed, bool right, ComplexMatrix& unknown,
              const std::vector<char>* pinned = nullptr) const {
    ComplexMatrix a;
    ComplexVector b;
    linear_system<std::complex<double>>(ann_f, n, m, k, fixed, right, a, b);
    ComplexVector x = vec(unknown);
    std::vector<Index> free;
    for (Index v = 0; v < x.size(); ++v)
      if (!pinned || !(*pinned)[static_cast<std::size_t>(v)]) free.push_back(v);
    ComplexVector rhs = b;
    if (pinned)
      for (Index v = 0; v < x.size(); ++v)
        if ((*pinned)[static_cast<std::size_t>(v)]) rhs -= a.col(v) * x(v);
    if (!free.empty()) {
      ComplexMatrix af(a.rows(), idx(free.size()));
      ComplexVector prev(idx(free.size()));
      for (std::size_t f = 0; f < free.size(); ++f) {
        af.col(idx(f)) = a.col(free[f]);
        prev(idx(f)) = x(free[f]);
      }
      const double lambda = 1e-9;
      ComplexMatrix normal = af.adjoint() * af;
      normal.diagonal().array() += lambda;
      const ComplexVector sol = normal.ldlt().solve(af.adjoint() * rhs + lambda * prev);
      for (std::size_t f = 0; f < free.size(); ++f) x(free[f]) = sol(idx(f));
    }
    unknown = unvec(x, k, m * n);
    return (a * x - b).squaredNorm();
  }

  double descend(std::size_t m, ComplexMatrix& l, ComplexMatrix& r, std::size_t iterations, double tolerance,
                 const std::vector<char>* pinned = nullptr) const {
    double best = std::numeric_limits<double>::infinity(), res = best;
    std::size_t stalled = 0;
    for (std::size_t it = 0; it < iterations && !expired(); ++it) {
      step(m, l, true, r);
      res = step(m, r, false, l, pinned);
      if (res < tolerance) break;
      if (res < best * 0.999) {
        best = res;
        stalled = 0;
      } else if (++stalled > 25) {
        break;
      }
    }
    return res;
  }

  /// Solves exactly for R given an exact L and verifies.
  std::optional<HaemersCertificate> solve_right(std::size_t m, const ExactMatrix& l) const {
    ExactMatrix a;
    ExactVector b;
    linear_system<GaussianRational>(ann, n, m, k, l, true, a, b);
    const auto x = solve_linear(a, b);
    if (!x) return std::nullopt;
    HaemersCertificate cert{n, m, k, l.conjugate(), unvec(*x, k, m * n)};
    try {
      verify_certificate(s, cert);
      return cert;
    } catch (const CertificateViolation&) {
      return std::nullopt;
    }
  }

  /// Gauge-fixes L to contain an identity on k columns, then pins its
  /// entries to small-denominator rationals a batch at a time, re-running
  /// the descent after each batch; finally solves for R exactly.
  std::optional<HaemersCertificate> complete(std::size_t m, ComplexMatrix l, ComplexMatrix r,
                                             const HaemersSearchOptions& opts) const {
    const Index cols = l.cols();
    const std::size_t total = static_cast<std::size_t>(l.size());
    std::vector<char> pinned(total, 0);
    ExactMatrix exact = exact_zero(l.rows(), cols);

    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(l);
    if (qr.rank() == idx(k)) {
      ComplexMatrix sel(idx(k), idx(k));
      for (Index c = 0; c < idx(k); ++c) sel.col(c) = l.col(qr.colsPermutation().indices()(c));
      const ComplexMatrix g = sel.inverse();
      l = g * l;
      r = g.transpose().inverse() * r;
      for (Index c = 0; c < idx(k); ++c) {
        const Index col = qr.colsPermutation().indices()(c);
        for (Index row = 0; row < idx(k); ++row) {
          l(row, col) = row == c ? 1.0 : 0.0;
          exact(row, col) = row == c ? 1 : 0;
          pinned[static_cast<std::size_t>(col * idx(k) + row)] = 1;
        }
      }
    }
    auto approx = [](std::complex<double> z, long den) {
      return GaussianRational(rationalize(z.real(), BigInt(den)), rationalize(z.imag(), BigInt(den)));
    };
    std::size_t done = static_cast<std::size_t>(std::count(pinned.begin(), pinned.end(), 1));
    while (done < total) {
      if (expired()) return std::nullopt;
      // Candidate pins: exact zeros first, then small-denominator roundings,
      // each ordered by how far it moves the entry.
      std::vector<std::tuple<double, std::size_t, GaussianRational>> cands;
      for (std::size_t v = 0; v < total; ++v) {
        if (pinned[v]) continue;
        const std::complex<double> z = l.data()[v];
        if (std::abs(z) < 0.1) cands.emplace_back(std::abs(z) - 1.0, v, GaussianRational(0));
        for (long den : {16L, 256L}) {
          const GaussianRational q = approx(z, den);
          cands.emplace_back(std::abs(q.to_complex() - z) * (den == 16 ? 1.0 : 16.0), v, q);
        }
      }
      std::sort(cands.begin(), cands.end(),
                [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
      // Near-exact entries are pinned together without a refit.
      std::size_t batch = 0;
      for (const auto& [err, v, q] : cands) {
        if (pinned[v] || std::abs(q.to_complex() - l.data()[v]) >= 1e-9) continue;
        exact.data()[v] = q;
        l.data()[v] = q.to_complex();
        pinned[v] = 1;
        ++batch;
      }
      if (batch > 0) {
        done += batch;
        if (descend(m, l, r, opts.iterations, opts.tolerance, &pinned) > 1e-14) return std::nullopt;
        continue;
      }
      bool progressed = false;
      std::size_t attempts = 0;
      for (const auto& [err, v, q] : cands) {
        if (attempts++ == 8 || expired()) break;
        ComplexMatrix l_try = l, r_try = r;
        l_try.data()[v] = q.to_complex();
        pinned[v] = 1;
        if (descend(m, l_try, r_try, opts.iterations, opts.tolerance, &pinned) <= 1e-14) {
          exact.data()[v] = q;
          l = l_try;
          r = r_try;
          ++done;
          progressed = true;
          break;
        }
        pinned[v] = 0;
      }
      if (!progressed) return std::nullopt;
    }
    return solve_right(m, exact);
  }

  std::optional<HaemersCertificate> run(std::size_t m, std::mt19937_64& rng, const HaemersSearchOptions& opts) const {
    std::normal_distribution<double> gauss;
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t restart = 0; restart < opts.restarts && !expired(); ++restart) {
      ComplexMatrix l(idx(k), idx(m * n)), r(idx(k), idx(m * n));
      for (Index i = 0; i < l.size(); ++i) {
        l.data()[i] = scale * std::complex<double>(gauss(rng), gauss(rng));
        r.data()[i] = scale * std::complex<double>(gauss(rng), gauss(rng));
      }
      const double res = descend(m, l, r, opts.iterations, opts.tolerance);
      if (res > 1e-14) continue;
      if (auto cert = complete(m, l, r, opts)) return cert;
    }
    return std::nullopt;
  }
};

/// Exact constructions tried before the numeric search.
std::optional<HaemersCertificate> seeded(const NcGraph& s, std::size_t k, std::size_t m) {
  const std::size_t n = s.n();
  if (k >= n && m == 1 && s.contains_identity()) {
    HaemersCertificate cert{n, 1, k, exact_zero(idx(k), idx(n)), exact_zero(idx(k), idx(n))};
    cert.c.topRows(idx(n)) = exact_identity(idx(n));
    cert.d = cert.c;
    return cert;
  }
  if (m == n) {
    if (auto g = graph_of_system(s)) {
      std::optional<FittingMatrix> fm;
      const FittingMatrix cover = clique_cover_fitting(*g);
      if (verify_fitting(cover) <= k) fm = cover;
      else if (auto rep = find_orthogonal_representation(*g, k, 2000)) fm = fitting_from_representation(*g, *rep);
      if (fm) {
        HaemersCertificate cert = lift_graph_certificate(*fm);
        // Pad with zero rows up to the requested k.
        if (cert.k < k) {
          ExactMatrix c = exact_zero(idx(k), cert.c.cols()), d = c;
          c.topRows(idx(cert.k)) = cert.c;
          d.topRows(idx(cert.k)) = cert.d;
          cert = {cert.n, cert.m, k, c, d};
        }
        return cert;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<HaemersCertificate> haemers_upper_search(const NcGraph& s, std::size_t k,
                                                       const HaemersSearchOptions& options) {
  if (k < 1) throw std::invalid_argument("haemers_upper_search: k must be >= 1");
  if (s.dim() == 0) throw std::invalid_argument("haemers_upper_search: empty basis");
  const std::size_t n = s.n();
  const std::size_t cap = options.m_cap ? options.m_cap : n * n * n * n;
  std::vector<std::size_t> schedule = options.m_schedule;
  if (schedule.empty()) schedule = {1, 2, n, n * n};
  std::vector<std::size_t> ms;
  for (std::size_t m : schedule)
    if (m >= 1 && m <= cap && std::find(ms.begin(), ms.end(), m) == ms.end()) ms.push_back(m);
  std::sort(ms.begin(), ms.end());

  Search search{s, n, k, s.annihilator(), {}, {}};
  search.ann_f = to_complex(search.ann);
  search.deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(options.time_budget_seconds));
  std::mt19937_64 rng(options.seed);
  for (std::size_t m : ms) {
    if (auto cert = seeded(s, k, m)) {
      verify_certificate(s, *cert);
      return cert;
    }
  }
  for (std::size_t m : ms) {
    if (search.expired()) break;
    if (auto cert = search.run(m, rng, options)) return cert;
  }
  return std::nullopt;
}

HaemersLowerBound haemers_lower(const NcGraph& s, const AlphaSearchOptions& options) {
  HaemersLowerBound out;
  out.contributions.push_back({1, "trivial"});
  if (!s.is_full()) out.contributions.push_back({2, "Lemma: S != M_n"});
  AlphaValue alpha = alpha_estimate(s, options);
  if (alpha.witness) {
    out.contributions.push_back({alpha.value, "independent system of size " + std::to_string(alpha.value) +
                                                  " (D_l <= S, " + alpha.tag + ")"});
    out.witness = alpha.witness;
  } else {
    out.contributions.push_back({alpha.value, "independence number (" + alpha.tag + ")"});
  }
  for (const auto& c : out.contributions) out.value = std::max(out.value, c.value);
  return out;
}

const char* to_string(DecisionStatus status) {
  switch (status) {
    case DecisionStatus::Feasible: return "feasible";
    case DecisionStatus::Infeasible: return "infeasible";
    case DecisionStatus::Unknown: return "unknown";
    case DecisionStatus::UnknownFeasible: return "unknown-feasible";
  }
  return "unknown";
}

ExactDecision haemers_exact_decide(const NcGraph& s, std::size_t k, std::size_t m, const GroebnerLimits& limits,
                                   RankEncoding encoding, const HaemersSearchOptions& search) {
  if (k < 1 || m < 1) throw std::invalid_argument("haemers_exact_decide: k and m must be >= 1");
  const PolynomialSystem sys = encode_rank_feasibility(s, k, m, encoding);
  ExactDecision out;
  out.num_vars = sys.num_vars;
  out.num_polys = sys.polys.size();
  out.ideal = buchberger(sys.polys, limits);
  switch (out.ideal.status) {
    case IdealStatus::NoCommonRoot: out.status = DecisionStatus::Infeasible; break;
    case IdealStatus::Timeout: out.status = DecisionStatus::Unknown; break;
    case IdealStatus::HasCommonRootOrUnknown: {
      HaemersSearchOptions opts = search;
      opts.m_schedule = {m};
      out.certificate = haemers_upper_search(s, k, opts);
      out.status = out.certificate ? DecisionStatus::Feasible : DecisionStatus::UnknownFeasible;
      break;
    }
  }
  return out;
}

std::vector<std::string> system_warnings(const NcGraph& s) {
  std::vector<std::string> out;
  if (!s.is_self_adjoint()) out.push_back("S is not self-adjoint, so it is not an operator system");
  if (!s.contains_identity()) out.push_back("S does not contain the identity, so it is not an operator system");
  return out;
}

}  // namespace ncb

