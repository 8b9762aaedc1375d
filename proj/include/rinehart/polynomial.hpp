#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rinehart/rational.hpp"

namespace rinehart {

/// Exponent vector, one entry per ring variable.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  unsigned degree() const noexcept;
  bool is_one() const noexcept;
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; requires divides(other) in the reverse sense (this is a multiple).
  Monomial operator/(const Monomial& divisor) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);

  // Storage order only; use MonomialOrder for term orders.
  auto operator<=>(const Monomial&) const = default;

private:
  std::vector<std::uint32_t> exps_;
};

enum class OrderKind { GRevLex, Lex, GrLex };

std::string to_string(OrderKind kind);
OrderKind order_kind_from_string(std::string_view name);

/// Term order. `precedence[k]` is the variable index with the k-th highest
/// priority; the default is textual order (first variable largest).
class MonomialOrder {
public:
  MonomialOrder() = default;
  MonomialOrder(OrderKind kind, std::size_t nvars);
  MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence);

  OrderKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& precedence() const noexcept { return precedence_; }
  bool degree_compatible() const noexcept { return kind_ != OrderKind::Lex; }

  /// Negative if a < b, zero if equal, positive if a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

private:
  OrderKind kind_ = OrderKind::GRevLex;
  std::vector<std::size_t> precedence_;
};

/// Variable names together with the active monomial order.
class Ring {
public:
  Ring(std::vector<std::string> vars, OrderKind kind = OrderKind::GRevLex);
  Ring(std::vector<std::string> vars, MonomialOrder order);

  std::size_t nvars() const noexcept { return vars_.size(); }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const MonomialOrder& order() const noexcept { return order_; }
  /// Index of a variable name, or nvars() if unknown.
  std::size_t index_of(std::string_view name) const;

  bool operator==(const Ring& other) const;

private:
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> vars, OrderKind kind = OrderKind::GRevLex);

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse polynomial over ℚ; terms sorted in descending active order, no zero
/// coefficients stored.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial term(RingPtr ring, Monomial mono, const Rational& c);
  /// Sorts and combines arbitrary terms.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Nonzero constant.
  bool is_unit() const noexcept;
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().mono; }
  const Rational& leading_coeff() const { return leading_term().coeff; }
  /// Maximum total degree of a term; -1 for the zero polynomial.
  int total_degree() const noexcept;
  Rational coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  /// this + c * m * other
  void add_scaled(const Polynomial& other, const Rational& c, const Monomial& m);
  Polynomial times_monomial(const Monomial& m) const;

  Polynomial diff(std::size_t var) const;
  Polynomial monic() const;
  Polynomial pow(unsigned e) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
  void require_same_ring(const Polynomial& other) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Parses the polynomial grammar: integers and `a/b` coefficients, `*`
/// (optional), `^` with positive integer exponents, `+`, `-`, parentheses,
/// ASCII identifiers naming ring variables. Whitespace is ignored.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

/// Canonical monomial rendering such as `x^2*y`; "1" for the empty monomial.
std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars);

/// Collects the identifiers appearing in a polynomial expression, sorted.
std::vector<std::string> identifiers_in(std::string_view text);

}  // namespace rinehart
