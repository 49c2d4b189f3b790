#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncb/exact/matrix.hpp"

namespace ncb {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Kronecker product with the usual block layout [a_{11} B, a_{12} B, ...].
template <class DA, class DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(const Eigen::MatrixBase<DA>& a,
                                                                        const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Block-diagonal [[A, 0], [0, B]].
template <class DA, class DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> direct_sum(const Eigen::MatrixBase<DA>& a,
                                                                              const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  using Out = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Out out = Out::Constant(a.rows() + b.rows(), a.cols() + b.cols(), Scalar(0));
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

template <class D>
Eigen::Matrix<typename D::Scalar, Eigen::Dynamic, Eigen::Dynamic> conj_transpose(const Eigen::MatrixBase<D>& a) {
  return a.adjoint();
}

/// Exact product; skips zero entries, which dominate the structured
/// matrices used for certificates.
ExactMatrix matmul(const ExactMatrix& a, const ExactMatrix& b);

/// Exact rank via fraction-free (Bareiss) elimination on the
/// denominator-cleared Gaussian-integer matrix. Pivot: first nonzero entry
/// of the current column, scanning rows downward.
std::size_t rank(const ExactMatrix& a);

struct RowEchelon {
  ExactMatrix reduced;               // reduced row echelon form, zero rows dropped
  std::vector<Eigen::Index> pivots;  // pivot column of each row
};

/// Reduced row echelon form over Q(i).
RowEchelon rref(const ExactMatrix& a);

/// Columns form a basis of {x : A x = 0}.
ExactMatrix nullspace(const ExactMatrix& a);

/// Some exact x with A x = b, or nullopt when the system is inconsistent.
std::optional<ExactVector> solve_linear(const ExactMatrix& a, const ExactVector& b);

bool is_hermitian(const ExactMatrix& a);

/// A = A^dagger and A is positive semidefinite, decided by exact recursive
/// Schur complements with symmetric pivoting on a positive diagonal entry.
bool is_psd(const ExactMatrix& a);

/// A = L R with L (rows x r) built from pivot columns of A and R (r x cols)
/// the nonzero rows of rref(A), r = rank(A).
std::pair<ExactMatrix, ExactMatrix> rank_factorization(const ExactMatrix& a);

/// rank(C^dagger D) for C, D of shape k x N, computed on k x k matrices:
/// rank(C^dagger D) = rank(D D^dagger C C^dagger) over C.
std::size_t rank_of_factored(const ExactMatrix& c, const ExactMatrix& d);

/// Last continued-fraction convergent of x with denominator <= max_denominator.
/// Throws std::invalid_argument for non-finite x or max_denominator < 1.
Rational rationalize(double x, const BigInt& max_denominator);

/// Entrywise rationalize of real and imaginary parts.
GaussianRational rationalize(std::complex<double> z, const BigInt& max_denominator);
ExactMatrix rationalize(const ComplexMatrix& m, const BigInt& max_denominator);

}  // namespace ncb
