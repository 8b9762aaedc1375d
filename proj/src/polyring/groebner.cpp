#include "rinehart/groebner.hpp"

#include <algorithm>

#include "rinehart/error.hpp"

namespace rinehart {

namespace {

SparseModuleElement poly_to_sparse(const Polynomial& p) {
  SparseModuleElement e;
  e.reserve(p.size());
  for (const auto& t : p.terms()) e.push_back({0, t.mono, t.coeff});
  return e;
}

Polynomial sparse_to_poly(const SparseModuleElement& e, const RingPtr& ring) {
  std::vector<Term> terms;
  terms.reserve(e.size());
  for (const auto& t : e) terms.push_back({t.mono, t.coeff});
  // already sorted descending under the ring order
  Polynomial p = Polynomial::from_terms(ring, std::move(terms));
  return p;
}

}  // namespace

GroebnerBasis::GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)) {
  order_ = ModuleOrder::position_over_term(ring_->order());
  for (const auto& g : gens_) sparse_.push_back(poly_to_sparse(g));
}

bool GroebnerBasis::is_unit_ideal() const noexcept {
  return gens_.size() == 1 && gens_.front().is_unit();
}

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const {
  if (gens_.empty() || p.is_zero()) return p.ring() ? p : Polynomial(ring_);
  return sparse_to_poly(module_reduce(poly_to_sparse(p), sparse_, order_), ring_);
}

bool GroebnerBasis::lead_divides(const Monomial& m) const {
  for (const auto& g : gens_)
    if (g.leading_monomial().divides(m)) return true;
  return false;
}

bool GroebnerBasis::is_reduced() const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].is_zero() || gens_[i].leading_coeff() != 1) return false;
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : gens_[i].terms())
        if (gens_[j].leading_monomial().divides(t.mono)) return false;
    }
  }
  return true;
}

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  std::vector<SparseModuleElement> sparse;
  for (const auto& g : gens) {
    if (g.ring() && !(*g.ring() == *ring)) throw InvalidArgument("buchberger: generator from another ring");
    if (!g.is_zero()) sparse.push_back(poly_to_sparse(g));
  }
  ModuleOrder order = ModuleOrder::position_over_term(ring->order());
  std::vector<SparseModuleElement> gb = module_buchberger(std::move(sparse), order, 1);
  std::vector<Polynomial> out;
  for (const auto& e : gb) out.push_back(sparse_to_poly(e, ring));
  return GroebnerBasis(ring, std::move(out));
}

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens, OrderKind kind) {
  RingPtr other = std::make_shared<const Ring>(ring->vars(), MonomialOrder(kind, ring->nvars()));
  std::vector<Polynomial> moved;
  for (const auto& g : gens) moved.push_back(change_ring(g, other));
  return buchberger(other, moved);
}

Polynomial change_ring(const Polynomial& p, const RingPtr& target) {
  if (p.ring() && p.ring()->vars() != target->vars())
    throw InvalidArgument("change_ring: variable lists differ");
  return Polynomial::from_terms(target, p.terms());
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
  Polynomial s(f.ring());
  s.add_scaled(f, 1 / f.leading_coeff(), l / f.leading_monomial());
  s.add_scaled(g, -1 / g.leading_coeff(), l / g.leading_monomial());
  return s;
}

DivisionResult divide(const Polynomial& p, const std::vector<Polynomial>& divisors) {
  const RingPtr& ring = p.ring();
  DivisionResult res;
  for (std::size_t i = 0; i < divisors.size(); ++i) res.quotients.emplace_back(ring);
  res.remainder = Polynomial(ring);
  Polynomial rest = p;
  while (!rest.is_zero()) {
    const Term lt = rest.leading_term();
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size() && !divided; ++i) {
      const Polynomial& g = divisors[i];
      if (g.is_zero() || !g.leading_monomial().divides(lt.mono)) continue;
      Monomial m = lt.mono / g.leading_monomial();
      Rational c = lt.coeff / g.leading_coeff();
      res.quotients[i] += Polynomial::term(ring, m, c);
      rest.add_scaled(g, -c, m);
      divided = true;
    }
    if (!divided) {
      res.remainder += Polynomial::term(ring, lt.mono, lt.coeff);
      rest -= Polynomial::term(ring, lt.mono, lt.coeff);
    }
  }
  return res;
}

// ------------------------------------------------------------- QuotientRing

QuotientRingPtr QuotientRing::create(RingPtr ring, std::vector<Polynomial> ideal_gens) {
  auto q = std::shared_ptr<QuotientRing>(new QuotientRing());
  q->gb_ = buchberger(ring, ideal_gens);
  q->ring_ = std::move(ring);
  q->ideal_gens_ = std::move(ideal_gens);
  return q;
}

Polynomial QuotientRing::parse(std::string_view text) const {
  return reduce(parse_polynomial(text, ring_));
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d, const MonomialOrder& order) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  Monomial m(nvars);
  // enumerate compositions of d into nvars parts
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      m[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) > 0; });
  return out;
}

std::vector<Monomial> QuotientRing::standard_monomials(unsigned d) const {
  std::vector<Monomial> out;
  for (unsigned k = 0; k <= d; ++k)
    for (auto& m : monomials_of_degree(nvars(), k, ring_->order()))
      if (!gb_.lead_divides(m)) out.push_back(std::move(m));
  return out;
}

bool QuotientRing::is_finite_dimensional() const {
  for (std::size_t v = 0; v < nvars(); ++v) {
    bool pure = false;
    for (const auto& g : gb_.generators()) {
      const Monomial& lm = g.leading_monomial();
      if (lm.degree() == lm[v] && lm[v] > 0) pure = true;
    }
    if (!pure) return false;
  }
  return true;
}

std::optional<std::vector<Monomial>> QuotientRing::finite_basis() const {
  if (!is_finite_dimensional()) return std::nullopt;
  unsigned bound = 0;
  for (std::size_t v = 0; v < nvars(); ++v) {
    unsigned best = 0;
    for (const auto& g : gb_.generators()) {
      const Monomial& lm = g.leading_monomial();
      if (lm.degree() == lm[v] && lm[v] > 0 && (best == 0 || lm[v] < best)) best = lm[v];
    }
    bound += best - 1;
  }
  return standard_monomials(bound);
}

std::string QuotientRing::describe() const {
  std::string s = "Q";
  if (nvars() > 0) {
    s += "[";
    for (std::size_t i = 0; i < nvars(); ++i) s += (i ? "," : "") + vars()[i];
    s += "]";
  }
  if (!ideal_gens_.empty()) {
    s += "/(";
    for (std::size_t i = 0; i < ideal_gens_.size(); ++i) s += (i ? ", " : "") + ideal_gens_[i].to_string();
    s += ")";
  }
  return s;
}

// -------------------------------------------------------------- RingElement

RingElement::RingElement(QuotientRingPtr parent, const Polynomial& p)
    : parent_(std::move(parent)), nf_(parent_->reduce(p)) {}

RingElement RingElement::operator+(const RingElement& o) const { return {parent_, nf_ + o.nf_}; }
RingElement RingElement::operator-(const RingElement& o) const { return {parent_, nf_ - o.nf_}; }
RingElement RingElement::operator*(const RingElement& o) const { return {parent_, nf_ * o.nf_}; }

}  // namespace rinehart
