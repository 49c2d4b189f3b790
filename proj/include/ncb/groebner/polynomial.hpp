#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ncb/exact/gaussian_rational.hpp"

namespace ncb {

inline constexpr std::size_t kMaxVariables = 64;

/// Exponent vector with cached total degree.
struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exp{};
  int degree = 0;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.degree == b.degree && a.exp == b.exp; }
};

Monomial variable_monomial(std::size_t var);
Monomial operator*(const Monomial& a, const Monomial& b);
bool divides(const Monomial& a, const Monomial& b);
/// b / a; requires divides(a, b).
Monomial quotient(const Monomial& b, const Monomial& a);
Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

enum class MonomialOrder { DegRevLex, Lex };

/// Strict "a > b" in the given order.
bool greater(const Monomial& a, const Monomial& b, MonomialOrder order);

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Polynomial over Q in variables x1..xN; terms are kept sorted in
/// decreasing order with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars, MonomialOrder order = MonomialOrder::DegRevLex);

  static Polynomial constant(std::size_t nvars, const Rational& c, MonomialOrder order = MonomialOrder::DegRevLex);
  static Polynomial variable(std::size_t nvars, std::size_t var, MonomialOrder order = MonomialOrder::DegRevLex);

  std::size_t num_vars() const { return nvars_; }
  MonomialOrder order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Nonzero constant.
  bool is_constant() const { return terms_.size() == 1 && terms_[0].mono.degree == 0; }
  int degree() const;
  const Term& leading() const { return terms_.front(); }

  void drop_leading() { terms_.erase(terms_.begin()); }
  /// Appends a term smaller than every present term.
  void append_lower(const Term& t) { terms_.push_back(t); }

  /// Adds c * m, merging with an existing term.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;
  void make_monic();

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Same polynomial re-sorted under another order.
  Polynomial with_order(MonomialOrder order) const;

  std::string to_string() const;
  /// Parses e.g. "x1^2*x3 - 3/4*x2 + 1"; variables must be x1..x<nvars>.
  static Polynomial parse(std::string_view text, std::size_t nvars, MonomialOrder order = MonomialOrder::DegRevLex);

 private:
  void check_compatible(const Polynomial& o) const;

  std::size_t nvars_ = 0;
  MonomialOrder order_ = MonomialOrder::DegRevLex;
  std::vector<Term> terms_;
};

/// One polynomial per line; blank lines and lines starting with '#' skipped.
std::string write_polynomial_system(const std::vector<Polynomial>& system);
std::vector<Polynomial> read_polynomial_system(std::string_view text, std::size_t nvars);

}  // namespace ncb
