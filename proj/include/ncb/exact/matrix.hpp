#pragma once

#include <Eigen/Core>

#include "ncb/exact/gaussian_rational.hpp"

namespace Eigen {

template <>
struct NumTraits<ncb::Rational> : GenericNumTraits<ncb::Rational> {
  using Real = ncb::Rational;
  using NonInteger = ncb::Rational;
  using Nested = ncb::Rational;
  using Literal = ncb::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 32,
    MulCost = 128
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

// Real must differ from the scalar itself, otherwise Eigen's mixed
// scalar/real operator traits become ambiguous.
template <>
struct NumTraits<ncb::GaussianRational> : GenericNumTraits<ncb::GaussianRational> {
  using Real = ncb::Rational;
  using NonInteger = ncb::GaussianRational;
  using Nested = ncb::GaussianRational;
  using Literal = ncb::GaussianRational;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 64,
    MulCost = 256
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

namespace internal {
// Eigen's default conj for IsComplex types calls std::conj; route to ours.
template <>
struct conj_impl<ncb::GaussianRational, true> {
  static inline ncb::GaussianRational run(const ncb::GaussianRational& x) { return ncb::conj(x); }
};
}  // namespace internal

}  // namespace Eigen

namespace ncb {

using ExactMatrix = Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;
using ExactVector = Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1>;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline ExactMatrix exact_identity(Eigen::Index n) {
  ExactMatrix m = ExactMatrix::Constant(n, n, GaussianRational(0));
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline ExactMatrix exact_zero(Eigen::Index rows, Eigen::Index cols) {
  return ExactMatrix::Constant(rows, cols, GaussianRational(0));
}

/// |row><col| as an n x n exact matrix (0-based indices).
inline ExactMatrix matrix_unit(Eigen::Index n, Eigen::Index row, Eigen::Index col) {
  ExactMatrix m = exact_zero(n, n);
  m(row, col) = 1;
  return m;
}

inline bool is_zero(const ExactMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!a(i, j).is_zero()) return false;
  return true;
}

inline ComplexMatrix to_complex(const ExactMatrix& a) {
  return a.unaryExpr([](const GaussianRational& z) { return z.to_complex(); });
}

}  // namespace ncb
