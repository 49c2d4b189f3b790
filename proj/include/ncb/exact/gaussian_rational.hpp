#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ncb {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Exact complex scalar a + b*i with a, b arbitrary-precision rationals.
///
/// Both parts are kept in canonical reduced form (gmpxx canonicalizes after
/// every operation), so equality is structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// |z|^2, always a nonnegative rational.
  Rational norm2() const { return Rational(re_ * re_ + im_ * im_); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) {
    return {Rational(-a.re_), Rational(-a.im_)};
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// Canonical whitespace-free text: "a/b", "c/d*i" or "a/b+c/d*i".
  std::string to_string() const;
  /// Accepts the canonical form plus "i", "-i" and surrounding whitespace.
  /// Throws std::invalid_argument on malformed input.
  static GaussianRational parse(std::string_view text);

 private:
  Rational re_{0};
  Rational im_{0};
};

inline GaussianRational conj(const GaussianRational& z) { return {z.real(), Rational(-z.imag())}; }
inline Rational real(const GaussianRational& z) { return z.real(); }
inline Rational imag(const GaussianRational& z) { return z.imag(); }
inline Rational abs2(const GaussianRational& z) { return z.norm2(); }

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// Least common multiple of the denominators of both parts.
BigInt denominator_lcm(const GaussianRational& z);

/// Exact conversion of a finite double (doubles are dyadic rationals).
Rational exact_rational(double x);

}  // namespace ncb
