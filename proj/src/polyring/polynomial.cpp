#include "rinehart/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "rinehart/error.hpp"

namespace rinehart {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  Monomial m(nvars);
  m.exps_.at(index) = power;
  return m;
}

unsigned Monomial::degree() const noexcept {
  return std::accumulate(exps_.begin(), exps_.end(), 0u);
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](std::uint32_t e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] += other.exps_[i];
  return m;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial m(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (divisor.exps_[i] > exps_[i]) throw InvalidArgument("monomial division is not exact");
    m.exps_[i] -= divisor.exps_[i];
  }
  return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial m(a);
  for (std::size_t i = 0; i < a.exps_.size(); ++i) m.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
  return m;
}

// ------------------------------------------------------------------ orders

std::string to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::GRevLex: return "grevlex";
    case OrderKind::Lex: return "lex";
    case OrderKind::GrLex: return "grlex";
  }
  return "grevlex";
}

OrderKind order_kind_from_string(std::string_view name) {
  if (name == "grevlex") return OrderKind::GRevLex;
  if (name == "lex") return OrderKind::Lex;
  if (name == "grlex") return OrderKind::GrLex;
  throw ParseError("unknown monomial order '" + std::string(name) + "'");
}

MonomialOrder::MonomialOrder(OrderKind kind, std::size_t nvars) : kind_(kind), precedence_(nvars) {
  std::iota(precedence_.begin(), precedence_.end(), std::size_t{0});
}

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence)
    : kind_(kind), precedence_(std::move(precedence)) {
  std::vector<std::size_t> sorted = precedence_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw InvalidArgument("variable precedence must be a permutation");
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = precedence_.size();
  if (kind_ != OrderKind::Lex) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
  }
  if (kind_ == OrderKind::GRevLex) {
    for (std::size_t k = n; k-- > 0;) {
      std::size_t v = precedence_[k];
      if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t v = precedence_[k];
    if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
  }
  return 0;
}

// -------------------------------------------------------------------- Ring

Ring::Ring(std::vector<std::string> vars, OrderKind kind)
    : vars_(std::move(vars)), order_(kind, vars_.size()) {}

Ring::Ring(std::vector<std::string> vars, MonomialOrder order)
    : vars_(std::move(vars)), order_(std::move(order)) {
  if (order_.precedence().size() != vars_.size())
    throw InvalidArgument("monomial order does not match variable count");
}

std::size_t Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return vars_.size();
}

bool Ring::operator==(const Ring& other) const {
  return vars_ == other.vars_ && order_.kind() == other.order_.kind() &&
         order_.precedence() == other.order_.precedence();
}

RingPtr make_ring(std::vector<std::string> vars, OrderKind kind) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw InvalidArgument("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw InvalidArgument("duplicate variable '" + v + "'");
  }
  return std::make_shared<const Ring>(std::move(vars), kind);
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(ring);
  if (sgn(c) != 0) p.terms_.push_back({Monomial(ring->nvars()), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  Polynomial p(ring);
  p.terms_.push_back({Monomial::variable(ring->nvars(), index), Rational(1)});
  return p;
}

Polynomial Polynomial::term(RingPtr ring, Monomial mono, const Rational& c) {
  Polynomial p(ring);
  if (sgn(c) != 0) p.terms_.push_back({std::move(mono), c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const MonomialOrder& ord = ring->order();
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
  Polynomial p(ring);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    } else if (sgn(t.coeff) != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Polynomial::is_unit() const noexcept { return !terms_.empty() && is_constant(); }

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
  return terms_.front();
}

int Polynomial::total_degree() const noexcept {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
  return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return Rational(0);
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (ring_ && other.ring_ && ring_ != other.ring_ && !(*ring_ == *other.ring_))
    throw InvalidArgument("polynomials belong to different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial p(*this);
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

void Polynomial::add_scaled(const Polynomial& other, const Rational& c, const Monomial& m) {
  require_same_ring(other);
  if (!ring_) ring_ = other.ring_;
  if (sgn(c) == 0 || other.terms_.empty()) return;
  const MonomialOrder& ord = ring_->order();
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size()) {
      out.push_back(std::move(terms_[i++]));
      continue;
    }
    Monomial shifted = other.terms_[j].mono * m;
    int cmp = i == terms_.size() ? -1 : ord.compare(terms_[i].mono, shifted);
    if (cmp > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (cmp < 0) {
      out.push_back({std::move(shifted), c * other.terms_[j].coeff});
      ++j;
    } else {
      Rational v = terms_[i].coeff + c * other.terms_[j].coeff;
      if (sgn(v) != 0) out.push_back({std::move(shifted), std::move(v)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (!ring_) ring_ = other.ring_;
  if (!ring_) return *this;
  add_scaled(other, Rational(1), Monomial(ring_->nvars()));
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (!ring_) ring_ = other.ring_;
  if (!ring_) return *this;
  add_scaled(other, Rational(-1), Monomial(ring_->nvars()));
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ring(b);
  RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
  if (a.terms_.empty() || b.terms_.empty()) return Polynomial(ring);
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) terms.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Polynomial::from_terms(ring, std::move(terms));
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
  Polynomial p(*this);
  for (auto& t : p.terms_) t.mono = t.mono * m;
  return p;
}

Polynomial Polynomial::diff(std::size_t var) const {
  if (!ring_) return *this;
  if (var >= ring_->nvars()) throw InvalidArgument("diff: variable index out of range");
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    Monomial m = t.mono;
    m[var] -= 1;
    terms.push_back({std::move(m), t.coeff * t.mono[var]});
  }
  return from_terms(ring_, std::move(terms));
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Polynomial p(*this);
  Rational inv = 1 / terms_.front().coeff;
  for (auto& t : p.terms_) t.coeff *= inv;
  return p;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, Rational(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += vars[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Term& t = terms_[k];
    Rational mag = abs(t.coeff);
    bool negative = sgn(t.coeff) < 0;
    if (k == 0)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    bool one = t.mono.is_one();
    if (one) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += monomial_to_string(t.mono, ring_->vars());
    }
  }
  return out;
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty polynomial", pos_);
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return p;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool starts_factor(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '_' || c == '(';
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool first = true;
    while (true) {
      char c = peek();
      bool negate = false;
      if (c == '+' || c == '-') {
        negate = c == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      if (negate)
        acc -= t;
      else
        acc += t;
      first = false;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor(c)) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      Integer e = integer();
      if (e <= 0) throw ParseError("exponent must be a positive integer", start);
      if (e > 100000) throw ParseError("exponent too large", start);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    char c = peek();
    std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer();
      Integer den = 1;
      if (peek() == '/') {
        ++pos_;
        std::size_t dpos = pos_;
        den = integer();
        if (den == 0) throw ParseError("zero denominator", dpos);
      }
      return Polynomial::constant(ring_, make_rational(num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      std::size_t idx = ring_->index_of(name);
      if (idx == ring_->nvars())
        throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Polynomial::variable(ring_, idx);
    }
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  if (!ring) throw InvalidArgument("parse_polynomial: null ring");
  return Parser(text, ring).parse();
}

std::vector<std::string> identifiers_in(std::string_view text) {
  std::set<std::string> names;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isalpha(c) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      names.emplace(text.substr(start, i - start));
    } else if (std::isdigit(c)) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    } else {
      ++i;
    }
  }
  return {names.begin(), names.end()};
}

}  // namespace rinehart
