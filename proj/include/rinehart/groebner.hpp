#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rinehart/module.hpp"
#include "rinehart/polynomial.hpp"

namespace rinehart {

/// Reduced Gröbner basis of an ideal: monic generators sorted ascending by
/// leading monomial under the ring's order.
class GroebnerBasis {
public:
  GroebnerBasis() = default;
  /// Wraps generators that are already a reduced basis; no check performed.
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool is_zero_ideal() const noexcept { return gens_.empty(); }
  bool is_unit_ideal() const noexcept;

  Polynomial normal_form(const Polynomial& p) const;
  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }
  /// True when some leading monomial divides m.
  bool lead_divides(const Monomial& m) const;
  /// Monic, and no term of any generator divisible by another's leading term.
  bool is_reduced() const;

private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::vector<SparseModuleElement> sparse_;
  ModuleOrder order_;
};

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens);
/// Recomputes in a copy of the ring carrying a different order.
GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens, OrderKind kind);

/// Same polynomial viewed in another ring with identical variables.
Polynomial change_ring(const Polynomial& p, const RingPtr& target);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division: p = Σ q_i g_i + r, no term of r divisible by any
/// LM(g_i), and LM(q_i g_i) ≤ LM(p).
DivisionResult divide(const Polynomial& p, const std::vector<Polynomial>& divisors);

class QuotientRing;
using QuotientRingPtr = std::shared_ptr<const QuotientRing>;

/// S/I with S = ℚ[vars] and I carried by its reduced Gröbner basis.
class QuotientRing {
public:
  static QuotientRingPtr create(RingPtr ring, std::vector<Polynomial> ideal_gens);
  static QuotientRingPtr polynomial_ring(RingPtr ring) { return create(std::move(ring), {}); }

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return ring_->nvars(); }
  const std::vector<std::string>& vars() const noexcept { return ring_->vars(); }
  const std::vector<Polynomial>& ideal_generators() const noexcept { return ideal_gens_; }
  const GroebnerBasis& gb() const noexcept { return gb_; }

  bool is_polynomial_ring() const noexcept { return gb_.is_zero_ideal(); }
  bool is_zero_ring() const noexcept { return gb_.is_unit_ideal(); }

  Polynomial reduce(const Polynomial& p) const { return gb_.normal_form(p); }
  bool is_zero(const Polynomial& p) const { return gb_.contains(p); }
  Polynomial parse(std::string_view text) const;

  /// Monomials of total degree ≤ d outside the leading-term ideal; sorted by
  /// degree, then descending order.
  std::vector<Monomial> standard_monomials(unsigned d) const;
  bool is_finite_dimensional() const;
  /// Full ℚ-basis when finite dimensional, otherwise nullopt.
  std::optional<std::vector<Monomial>> finite_basis() const;

  /// e.g. "Q[x,y]/(x*y - 1)"
  std::string describe() const;

private:
  QuotientRing() = default;
  RingPtr ring_;
  std::vector<Polynomial> ideal_gens_;
  GroebnerBasis gb_;
};

/// Element of a quotient ring, always held in normal form.
class RingElement {
public:
  RingElement(QuotientRingPtr parent, const Polynomial& p);

  const QuotientRingPtr& parent() const noexcept { return parent_; }
  const Polynomial& nf() const noexcept { return nf_; }
  bool is_zero() const noexcept { return nf_.is_zero(); }
  int degree() const noexcept { return nf_.total_degree(); }

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  bool operator==(const RingElement& o) const { return nf_ == o.nf_; }
  std::string to_string() const { return nf_.to_string(); }

private:
  QuotientRingPtr parent_;
  Polynomial nf_;
};

/// All monomials in n variables of total degree exactly d, descending in
/// `order`.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d, const MonomialOrder& order);

}  // namespace rinehart
