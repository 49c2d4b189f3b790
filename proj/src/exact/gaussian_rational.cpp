#include "ncb/exact/gaussian_rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ncb {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational d = o.norm2();
  if (sgn(d) == 0) throw std::domain_error("GaussianRational: division by zero");
  // (a + bi) / (c + di) = (a + bi)(c - di) / (c^2 + d^2)
  Rational r = (re_ * o.re_ + im_ * o.im_) / d;
  Rational m = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "*i";
  std::string out = re_.get_str();
  if (sgn(im_) > 0) out += '+';
  out += im_.get_str();
  out += "*i";
  return out;
}

namespace {

Rational parse_rational(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed scalar: '" + std::string(whole) + "'");
  std::string_view digits = s;
  if (digits.front() == '+' || digits.front() == '-') digits.remove_prefix(1);
  bool seen_slash = false;
  bool ok = !digits.empty() && digits.front() != '/' && digits.back() != '/';
  for (char c : digits) {
    if (c == '/') {
      if (seen_slash) ok = false;
      seen_slash = true;
    } else if (c < '0' || c > '9') {
      ok = false;
    }
  }
  if (!ok) throw std::invalid_argument("malformed scalar: '" + std::string(whole) + "'");
  std::string text(s.front() == '+' ? s.substr(1) : s);
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed scalar: '" + std::string(whole) + "'");
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
  q.canonicalize();
  return q;
}

Rational parse_imag_coefficient(std::string_view s, std::string_view whole) {
  // s is everything before the trailing 'i', e.g. "3/4*", "-", "+", "".
  if (!s.empty() && s.back() == '*') {
    s.remove_suffix(1);
    return parse_rational(s, whole);
  }
  if (s.empty() || s == "+") return Rational(1);
  if (s == "-") return Rational(-1);
  throw std::invalid_argument("malformed scalar: '" + std::string(whole) + "'");
}

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string compact;
  compact.reserve(text.size());
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') compact.push_back(c);
  std::string_view s = compact;
  if (s.empty()) throw std::invalid_argument("empty scalar");
  if (s.back() != 'i') return {parse_rational(s, text)};

  s.remove_suffix(1);
  // Split at the last sign that is not at position 0.
  std::size_t split = std::string_view::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if (s[p] == '+' || s[p] == '-') {
      split = p;
      break;
    }
  }
  if (split == std::string_view::npos) return {Rational(0), parse_imag_coefficient(s, text)};
  return {parse_rational(s.substr(0, split), text), parse_imag_coefficient(s.substr(split), text)};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

BigInt denominator_lcm(const GaussianRational& z) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), z.real().get_den_mpz_t(), z.imag().get_den_mpz_t());
  return out;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("exact_rational: non-finite input");
  Rational q(x);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

}  // namespace ncb
