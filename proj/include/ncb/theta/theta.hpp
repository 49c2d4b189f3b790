#pragma once

#include <Eigen/Dense>

#include "ncb/graph/graph.hpp"

namespace ncb {

struct ThetaOptions {
  double tol = 1e-7;
  int max_iterations = 500;
};

/// Result of the dense theta SDP.
///
/// `witness` is T with T_ii = 0, T_ij = 0 on edges and I + T PSD, so that
/// ||I + T|| is a feasible value of the norm formulation; `value` is the
/// dual objective (an upper bound) and `duality_gap` the primal-dual gap.
struct SdpSolution {
  double value = 0.0;
  Eigen::MatrixXd witness;
  double duality_gap = 0.0;
  double primal_value = 0.0;
  double dual_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Lovasz theta via a primal-dual interior-point method (XZ direction) on
///   max <J, X>  s.t.  tr X = 1,  X_ij = 0 for {i,j} in E,  X PSD.
/// On hitting the iteration cap the result has converged = false and still
/// carries the best primal/dual bound pair.
SdpSolution lovasz_theta(const Graph& g, const ThetaOptions& options = {});

/// Largest violation of the witness conditions: |T_ii|, |T_ij| on edges and
/// max(0, -lambda_min(I + T)).
double theta_witness_violation(const Graph& g, const Eigen::MatrixXd& witness);

/// ||I + T|| (spectral norm; I + T is symmetric PSD so this is lambda_max).
double theta_witness_value(const Eigen::MatrixXd& witness);

}  // namespace ncb
