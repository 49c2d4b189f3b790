#include "ncb/theta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncb {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

bool positive_definite(const MatrixXd& a) {
  Eigen::LLT<MatrixXd> llt(a);
  return llt.info() == Eigen::Success;
}

// Largest step in (0, 1] keeping base + step * dir positive definite,
// backed off from the boundary.
double step_length(const MatrixXd& base, const MatrixXd& dir) {
  double alpha = 1.0;
  while (!positive_definite(base + alpha * dir)) {
    alpha *= 0.8;
    if (alpha < 1e-12) return 0.0;
  }
  return alpha < 1.0 ? 0.95 * alpha : alpha;
}

}  // namespace

SdpSolution lovasz_theta(const Graph& g, const ThetaOptions& options) {
  const auto n = static_cast<Eigen::Index>(g.order());
  if (n == 0) throw std::invalid_argument("lovasz_theta: empty graph");
  if (n > 200) throw std::invalid_argument("lovasz_theta: n > 200 is not supported");
  if (!(options.tol > 0)) throw std::invalid_argument("lovasz_theta: tol must be positive");

  const std::vector<Graph::Edge> edges = g.edges();
  const auto me = static_cast<Eigen::Index>(edges.size());
  const Eigen::Index m = me + 1;  // edge constraints, then the trace constraint

  VectorXd b = VectorXd::Zero(m);
  b(m - 1) = 1.0;

  MatrixXd x = MatrixXd::Identity(n, n) / static_cast<double>(n);
  VectorXd y = VectorXd::Zero(m);
  y(m - 1) = static_cast<double>(n) + 1.0;
  MatrixXd z = (static_cast<double>(n) + 1.0) * MatrixXd::Identity(n, n) - MatrixXd::Ones(n, n);

  // A^T(v) = v_tr I + sum_e v_e (E_ij + E_ji).
  auto adjoint_op = [&](const VectorXd& v) {
    MatrixXd out = v(m - 1) * MatrixXd::Identity(n, n);
    for (Eigen::Index e = 0; e < me; ++e) {
      const auto i = static_cast<Eigen::Index>(edges[e].first), j = static_cast<Eigen::Index>(edges[e].second);
      out(i, j) += v(e);
      out(j, i) += v(e);
    }
    return out;
  };

  double dual = b.dot(y);
  double primal = x.sum();
  double mu = (z.cwiseProduct(x)).sum() / (2.0 * static_cast<double>(n));

  SdpSolution sol;
  int iter = 0;
  while (dual - primal > std::max(1.0, std::abs(dual)) * options.tol) {
    if (iter >= options.max_iterations) break;
    ++iter;

    MatrixXd zi = z.llt().solve(MatrixXd::Identity(n, n));
    zi = (0.5 * (zi + zi.transpose())).eval();
    const MatrixXd zix = zi * x;

    // Schur complement M_kl = tr(A_k Z^-1 A_l X).
    MatrixXd schur(m, m);
    schur(m - 1, m - 1) = zix.trace();
    for (Eigen::Index e = 0; e < me; ++e) {
      const auto i = static_cast<Eigen::Index>(edges[e].first), j = static_cast<Eigen::Index>(edges[e].second);
      const double v = zix(i, j) + zix(j, i);
      schur(e, m - 1) = v;
      schur(m - 1, e) = v;
      // Not symmetric in general for this direction.
      for (Eigen::Index f = 0; f < me; ++f) {
        const auto p = static_cast<Eigen::Index>(edges[f].first), q = static_cast<Eigen::Index>(edges[f].second);
        schur(e, f) = zi(j, p) * x(q, i) + zi(j, q) * x(p, i) + zi(i, p) * x(q, j) + zi(i, q) * x(p, j);
      }
    }

    VectorXd rhs(m);
    rhs(m - 1) = zi.trace();
    for (Eigen::Index e = 0; e < me; ++e) {
      const auto i = static_cast<Eigen::Index>(edges[e].first), j = static_cast<Eigen::Index>(edges[e].second);
      rhs(e) = 2.0 * zi(i, j);
    }

    const VectorXd dy = schur.partialPivLu().solve(mu * rhs - b);
    const MatrixXd dz = adjoint_op(dy);
    MatrixXd dx = mu * zi - x - zi * dz * x;
    dx = (0.5 * (dx + dx.transpose())).eval();

    const double alpha_p = step_length(x, dx);
    const double alpha_d = step_length(z, dz);
    if (alpha_p == 0.0 && alpha_d == 0.0) break;

    x += alpha_p * dx;
    y += alpha_d * dy;
    z += alpha_d * dz;
    mu = (z.cwiseProduct(x)).sum() / (2.0 * static_cast<double>(n));
    if (alpha_p + alpha_d > 1.8) mu *= 0.5;

    dual = b.dot(y);
    primal = x.sum();
  }

  sol.iterations = iter;
  sol.converged = dual - primal <= std::max(1.0, std::abs(dual)) * options.tol;
  sol.primal_value = primal;
  sol.dual_value = dual;
  sol.value = dual;
  sol.duality_gap = dual - primal;

  // T = D^-1 X D^-1 - I with D = diag(sqrt(X_ii)); d^T (I + T) d = <J, X>
  // and |d| = 1, so ||I + T|| >= primal value.
  VectorXd d = x.diagonal().cwiseMax(0.0).cwiseSqrt();
  MatrixXd t = MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && d(i) > 0 && d(j) > 0) t(i, j) = x(i, j) / (d(i) * d(j));
  for (const auto& [i, j] : edges) {
    t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
    t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 0.0;
  }
  sol.witness = t;
  return sol;
}

double theta_witness_violation(const Graph& g, const MatrixXd& witness) {
  const auto n = static_cast<Eigen::Index>(g.order());
  if (witness.rows() != n || witness.cols() != n) throw std::invalid_argument("theta witness: wrong shape");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(witness(i, i)));
  for (const auto& [i, j] : g.edges()) {
    worst = std::max(worst, std::abs(witness(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    worst = std::max(worst, std::abs(witness(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))));
  }
  const MatrixXd shifted = MatrixXd::Identity(n, n) + 0.5 * (witness + witness.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(shifted, Eigen::EigenvaluesOnly);
  worst = std::max(worst, -es.eigenvalues().minCoeff());
  return worst;
}

double theta_witness_value(const MatrixXd& witness) {
  const MatrixXd shifted = MatrixXd::Identity(witness.rows(), witness.cols()) + witness;
  Eigen::JacobiSVD<MatrixXd> svd(shifted);
  return svd.singularValues()(0);
}

}  // namespace ncb
