#include "ncb/groebner/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ncb {

Monomial variable_monomial(std::size_t var) {
  if (var >= kMaxVariables) throw std::invalid_argument("monomial: variable index out of range");
  Monomial m;
  m.exp[var] = 1;
  m.degree = 1;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    const int e = a.exp[i] + b.exp[i];
    if (e > 255) throw std::overflow_error("monomial: exponent overflow");
    out.exp[i] = static_cast<std::uint8_t>(e);
  }
  out.degree = a.degree + b.degree;
  return out;
}

bool divides(const Monomial& a, const Monomial& b) {
  if (a.degree > b.degree) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) out.exp[i] = static_cast<std::uint8_t>(b.exp[i] - a.exp[i]);
  out.degree = b.degree - a.degree;
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    out.exp[i] = std::max(a.exp[i], b.exp[i]);
    out.degree += out.exp[i];
  }
  return out;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (a.exp[i] && b.exp[i]) return false;
  return true;
}

bool greater(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (order == MonomialOrder::Lex) {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
    return false;
  }
  if (a.degree != b.degree) return a.degree > b.degree;
  for (std::size_t i = kMaxVariables; i-- > 0;)
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i];
  return false;
}

Polynomial::Polynomial(std::size_t nvars, MonomialOrder order) : nvars_(nvars), order_(order) {
  if (nvars > kMaxVariables) throw std::invalid_argument("polynomial: more than 64 variables");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c, MonomialOrder order) {
  Polynomial p(nvars, order);
  p.add_term(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t var, MonomialOrder order) {
  if (var >= nvars) throw std::invalid_argument("polynomial: variable index out of range");
  Polynomial p(nvars, order);
  p.add_term(variable_monomial(var), 1);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree);
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [&](const Term& t, const Monomial& x) { return greater(t.mono, x, order_); });
  if (it != terms_.end() && it->mono == m) {
    it->coeff += c;
    if (sgn(it->coeff) == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{m, c});
  }
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (o.nvars_ != nvars_ || o.order_ != order_)
    throw std::invalid_argument("polynomial: operands differ in variable count or order");
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign, MonomialOrder order) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && greater(a[i].mono, b[j].mono, order))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || greater(b[j].mono, a[i].mono, order)) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = a[i].coeff;
      if (sign > 0) c += b[j].coeff;
      else c -= b[j].coeff;
      if (sgn(c) != 0) out.push_back(Term{a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  terms_ = merge(terms_, o.terms_, 1, order_);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  terms_ = merge(terms_, o.terms_, -1, order_);
  return *this;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out(nvars_, order_);
  if (sgn(c) == 0) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  Polynomial out(nvars_, order_);
  if (sgn(c) == 0) return out;
  out.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves any monomial order.
  for (const auto& t : terms_) out.terms_.push_back(Term{t.mono * m, t.coeff * c});
  return out;
}

void Polynomial::make_monic() {
  if (terms_.empty()) return;
  const Rational inv = 1 / terms_.front().coeff;
  for (auto& t : terms_) t.coeff *= inv;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial out(a.nvars_, a.order_);
  for (const auto& t : a.terms_) out += b.times_term(t.mono, t.coeff);
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Polynomial Polynomial::with_order(MonomialOrder order) const {
  Polynomial out(nvars_, order);
  out.terms_ = terms_;
  std::sort(out.terms_.begin(), out.terms_.end(),
            [&](const Term& x, const Term& y) { return greater(x.mono, y.mono, order); });
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Term& t = terms_[k];
    Rational c = t.coeff;
    if (k == 0) {
      if (sgn(c) < 0) out += '-';
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    c = abs(c);
    std::string factors;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (!t.mono.exp[v]) continue;
      if (!factors.empty()) factors += '*';
      factors += 'x' + std::to_string(v + 1);
      if (t.mono.exp[v] > 1) factors += '^' + std::to_string(t.mono.exp[v]);
    }
    if (factors.empty()) out += c.get_str();
    else if (c == 1) out += factors;
    else out += c.get_str() + '*' + factors;
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw std::invalid_argument("malformed polynomial '" + std::string(text) + "': " + why);
}

std::size_t parse_count(std::string_view s, std::string_view whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    parse_fail(whole, "expected a number");
  return std::stoul(std::string(s));
}

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t nvars, MonomialOrder order) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') s.push_back(c);
  if (s.empty()) parse_fail(text, "empty");
  Polynomial out(nvars, order);
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      parse_fail(text, "expected '+' or '-'");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string_view term(s.data() + pos, end - pos);
    if (term.empty()) parse_fail(text, "empty term");

    Rational coeff = sign;
    Monomial mono;
    std::size_t f = 0;
    while (f <= term.size()) {
      std::size_t g = term.find('*', f);
      if (g == std::string_view::npos) g = term.size();
      const std::string_view factor = term.substr(f, g - f);
      if (factor.empty()) parse_fail(text, "empty factor");
      if (factor.front() == 'x') {
        const std::size_t caret = factor.find('^');
        const std::size_t var = parse_count(factor.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1), text);
        if (var < 1 || var > nvars) parse_fail(text, "variable x" + std::to_string(var) + " out of range");
        const std::size_t e = caret == std::string_view::npos ? 1 : parse_count(factor.substr(caret + 1), text);
        for (std::size_t r = 0; r < e; ++r) mono = mono * variable_monomial(var - 1);
      } else {
        if (factor.find('i') != std::string_view::npos) parse_fail(text, "complex coefficient");
        coeff *= GaussianRational::parse(factor).real();
      }
      f = g + 1;
    }
    out.add_term(mono, coeff);
    pos = end;
  }
  return out;
}

std::string write_polynomial_system(const std::vector<Polynomial>& system) {
  std::string out;
  for (const auto& p : system) out += p.to_string() + '\n';
  return out;
}

std::vector<Polynomial> read_polynomial_system(std::string_view text, std::size_t nvars) {
  std::vector<Polynomial> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(Polynomial::parse(line, nvars));
  }
  return out;
}

}  // namespace ncb
