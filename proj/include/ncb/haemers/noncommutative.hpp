#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncb/groebner/encoding.hpp"
#include "ncb/groebner/groebner.hpp"
#include "ncb/haemers/classical.hpp"
#include "ncb/nc/independence.hpp"
#include "ncb/nc/ncgraph.hpp"

namespace ncb {

/// B = C^dagger D viewed as m x m blocks of size n x n; C and D are k x mn.
/// Block j of a factor is columns j*n .. j*n + n - 1.
struct HaemersCertificate {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  ExactMatrix c;
  ExactMatrix d;

  /// C^dagger D.
  ExactMatrix product() const;
  ExactMatrix c_block(std::size_t j) const;
  ExactMatrix d_block(std::size_t j) const;

  friend bool operator==(const HaemersCertificate&, const HaemersCertificate&) = default;
};

/// Psi(X) = sum_i E_i X F_i^dagger with E_i, F_i of size k x n.
struct TpMapCertificate {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<ExactMatrix> e;
  std::vector<ExactMatrix> f;

  friend bool operator==(const TpMapCertificate&, const TpMapCertificate&) = default;
};

class CertificateViolation : public std::invalid_argument {
 public:
  enum class Kind { Shape, Membership, Trace, Rank, Psd };
  CertificateViolation(Kind kind, const std::string& what, std::size_t block_i = 0, std::size_t block_j = 0)
      : std::invalid_argument(what), kind(kind), block_i(block_i), block_j(block_j) {}
  Kind kind;
  std::size_t block_i, block_j;  // 0-based, meaningful for Membership
};

const char* to_string(CertificateViolation::Kind kind);

/// Largest accepted block count, (max(n, k) n)^2. A rank-k certificate can
/// always be brought to at most (kn)^2 blocks, which is n^4 when k <= n.
std::size_t block_count_cap(std::size_t n, std::size_t k);

/// Keeps only blocks from bases of span{C_i} and span{D_j}, re-weighting
/// the D blocks so the trace condition survives; m drops to at most (kn)^2.
HaemersCertificate reduce_block_count(const NcGraph& s, const HaemersCertificate& cert);

/// Exact check of block membership, the trace condition and rank <= k;
/// returns rank(B). Throws CertificateViolation.
std::size_t verify_certificate(const NcGraph& s, const HaemersCertificate& cert);
/// Additionally requires C = D and B PSD.
std::size_t verify_xi_certificate(const NcGraph& s, const HaemersCertificate& cert);
/// Sum F_i^dagger E_i = I_n and every F_i^dagger E_j in S; returns k.
std::size_t verify_tp_map(const NcGraph& s, const TpMapCertificate& tp);

/// Certificate with m = n built from a fitting matrix of G (rows are first
/// scaled to a unit diagonal).
HaemersCertificate lift_graph_certificate(const FittingMatrix& fm);
/// Nonzero-diagonal fitting matrix of G from a certificate for S_G.
FittingMatrix project_to_graph_certificate(const Graph& g, const HaemersCertificate& cert);

/// Certificates for S and T; the result certifies tensor(S, T).
HaemersCertificate tensor_certificate(const NcGraph& s, const HaemersCertificate& c1, const NcGraph& t,
                                      const HaemersCertificate& c2);
/// Certificates for S and T; the result certifies direct_sum_nc(S, T).
HaemersCertificate direct_sum_certificate(const NcGraph& s, const HaemersCertificate& c1, const NcGraph& t,
                                          const HaemersCertificate& c2);
/// Certificate for U^dagger S U; throws NotUnitary.
HaemersCertificate conjugate_certificate(const NcGraph& s, const HaemersCertificate& cert, const ExactMatrix& u);

class CohomomorphismViolation : public std::invalid_argument {
 public:
  CohomomorphismViolation(const std::string& what, std::size_t i, std::size_t j, std::size_t basis_index)
      : std::invalid_argument(what), i(i), j(j), basis_index(basis_index) {}
  std::size_t i, j, basis_index;
};

/// Checks that the Kraus operators D_i (n_T x n_S) form a channel and that
/// D_i^dagger A D_j lies in S for every basis element A of T.
void verify_cohomomorphism(const NcGraph& s, const NcGraph& t, const std::vector<ExactMatrix>& kraus);
/// Composes a certificate for T with the cohomomorphism S <= T given by
/// `kraus`; the result certifies S with the same k and m * |kraus| blocks.
HaemersCertificate cohomomorphism_apply(const NcGraph& s, const NcGraph& t, const std::vector<ExactMatrix>& kraus,
                                        const HaemersCertificate& cert);
/// Kraus operators of D_l <= S for an independent system of S: four
/// rational multiples of |psi_t><t| per vector, normalized by a sum of four
/// squares.
std::vector<ExactMatrix> independent_system_kraus(const IndependentSystem& sys);

/// rank((I_m (x) U^dagger) B (I_m (x) U)) with U = [psi_1 .. psi_l]; throws
/// std::logic_error if it is not between l and rank(B).
std::size_t compression_lower_bound(const NcGraph& s, const HaemersCertificate& cert, const IndependentSystem& sys);

TpMapCertificate to_tp_map(const NcGraph& s, const HaemersCertificate& cert);
HaemersCertificate from_tp_map(const NcGraph& s, const TpMapCertificate& tp);

struct HaemersSearchOptions {
  /// Empty means 1, 2, n, n^2 (deduplicated, capped by m_cap).
  std::vector<std::size_t> m_schedule;
  /// 0 means n^4.
  std::size_t m_cap = 0;
  std::uint64_t seed = 0;
  std::size_t restarts = 6;
  std::size_t iterations = 400;
  double tolerance = 1e-20;
  double time_budget_seconds = 30;
};

/// Alternating least squares over float factors followed by exact
/// completion; any returned certificate passes verify_certificate.
std::optional<HaemersCertificate> haemers_upper_search(const NcGraph& s, std::size_t k,
                                                       const HaemersSearchOptions& options = {});

struct LowerBoundContribution {
  std::size_t value = 0;
  std::string reason;
};

struct HaemersLowerBound {
  std::size_t value = 1;
  std::vector<LowerBoundContribution> contributions;
  std::optional<IndependentSystem> witness;
};

HaemersLowerBound haemers_lower(const NcGraph& s, const AlphaSearchOptions& options = {});

enum class DecisionStatus { Feasible, Infeasible, Unknown, UnknownFeasible };
const char* to_string(DecisionStatus status);

struct ExactDecision {
  DecisionStatus status = DecisionStatus::Unknown;
  std::optional<HaemersCertificate> certificate;
  IdealDecision ideal;
  std::size_t num_vars = 0;
  std::size_t num_polys = 0;
};

/// Decides rank <= k at block count m with Groebner bases. A proper ideal is
/// only reported feasible together with an extracted verified certificate.
ExactDecision haemers_exact_decide(const NcGraph& s, std::size_t k, std::size_t m,
                                   const GroebnerLimits& limits = {}, RankEncoding encoding = RankEncoding::Factor,
                                   const HaemersSearchOptions& search = {});

/// Human-readable notes about degenerate inputs (not an operator system).
std::vector<std::string> system_warnings(const NcGraph& s);

}  // namespace ncb
