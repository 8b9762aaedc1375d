#pragma once

// Randomized checks of the exact kernels, shared by the unit tests and the
// acceptance runner.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rinehart/groebner.hpp"
#include "rinehart/module.hpp"
#include "rinehart/qlinalg.hpp"
#include "test_util.hpp"

namespace kernel_checks {

using namespace rinehart;

struct Tally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
};

inline RingPtr random_ring(std::mt19937_64& rng) {
  static const std::vector<std::vector<std::string>> choices{{"x", "y"}, {"x", "y", "z"}};
  static const std::vector<OrderKind> orders{OrderKind::GRevLex, OrderKind::Lex, OrderKind::GrLex};
  return make_ring(choices[rng() % choices.size()], orders[rng() % orders.size()]);
}

inline std::vector<Polynomial> random_gens(std::mt19937_64& rng, const RingPtr& ring, std::size_t count, unsigned deg) {
  std::vector<Polynomial> gens;
  while (gens.size() < count) {
    Polynomial p = testutil::random_poly(rng, ring, deg, 3);
    if (!p.is_zero()) gens.push_back(p);
  }
  return gens;
}

inline std::string show(const std::vector<Polynomial>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : ", ") + p.to_string();
  return "{" + s + "}";
}

/// Reduced basis, S-pairs reduce to zero, and both ideals contain each other.
inline Tally buchberger_suite(std::mt19937_64& rng, std::size_t n) {
  Tally t;
  for (std::size_t k = 0; k < n; ++k) {
    RingPtr ring = random_ring(rng);
    auto gens = random_gens(rng, ring, 2 + rng() % 2, 2);
    GroebnerBasis gb = buchberger(ring, gens);
    ++t.instances;
    const auto& g = gb.generators();
    if (!gb.is_reduced()) t.fail("basis of " + show(gens) + " is not reduced");
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        if (!divide(s_polynomial(g[i], g[j]), g).remainder.is_zero()) t.fail("S-pair does not reduce for " + show(gens));
    for (const auto& f : gens)
      if (!gb.contains(f)) t.fail(f.to_string() + " not in the ideal of its own basis");
    std::vector<ModuleVector> as_vectors;
    for (const auto& f : gens) as_vectors.push_back({f});
    for (const auto& b : g)
      if (!module_lift(ring, 1, as_vectors, {}, {b})) t.fail(b.to_string() + " not in the ideal " + show(gens));
  }
  return t;
}

/// p = Σ q_i g_i + r, no term of r divisible by a leading monomial, and
/// LM(q_i g_i) ≤ LM(p).
inline Tally division_suite(std::mt19937_64& rng, std::size_t n) {
  Tally t;
  for (std::size_t k = 0; k < n; ++k) {
    RingPtr ring = random_ring(rng);
    Polynomial p = testutil::random_poly(rng, ring, 4, 5);
    auto divisors = random_gens(rng, ring, 1 + rng() % 3, 2);
    DivisionResult d = divide(p, divisors);
    ++t.instances;
    Polynomial sum = d.remainder;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      Polynomial qg = d.quotients[i] * divisors[i];
      sum += qg;
      if (!qg.is_zero() && (p.is_zero() || ring->order().greater(qg.leading_monomial(), p.leading_monomial())))
        t.fail("quotient term exceeds the leading term of " + p.to_string());
    }
    if (!(sum == p)) t.fail("division of " + p.to_string() + " by " + show(divisors) + " does not recombine");
    for (const auto& term : d.remainder.terms())
      for (const auto& g : divisors)
        if (g.leading_monomial().divides(term.mono)) t.fail("remainder of " + p.to_string() + " is reducible");
  }
  return t;
}

inline Tally rank_nullity_suite(std::mt19937_64& rng, std::size_t n) {
  Tally t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t rows = 1 + rng() % 30, cols = 1 + rng() % 30;
    qlinalg::QMatrix m = testutil::random_matrix(rng, rows, cols, 0.2 + 0.1 * static_cast<double>(rng() % 5));
    ++t.instances;
    auto ker = qlinalg::kernel_basis(m);
    if (qlinalg::rank(m) + ker.dim() != cols)
      t.fail("rank + nullity != " + std::to_string(cols) + " for a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    for (const auto& v : ker.basis)
      if (!qlinalg::is_zero(m.apply(v))) t.fail("kernel vector is not annihilated");
    if (qlinalg::rank(m) != qlinalg::rank(m.transpose())) t.fail("row rank differs from column rank");
  }
  return t;
}

/// Every syzygy with components of degree ≤ 2, found by linear algebra, lies
/// in the module generated by syzygy_basis, and each basis element is a
/// syzygy.
inline Tally syzygy_suite(std::mt19937_64& rng, std::size_t n) {
  Tally t;
  for (std::size_t k = 0; k < n; ++k) {
    RingPtr ring = make_ring({"x", "y"}, rng() % 2 ? OrderKind::GRevLex : OrderKind::Lex);
    auto f = random_gens(rng, ring, 2 + rng() % 2, 2);
    ++t.instances;
    auto syz = syzygy_basis(f);
    for (const auto& s : syz) {
      Polynomial acc(ring);
      for (std::size_t i = 0; i < f.size(); ++i) acc += s[i] * f[i];
      if (!acc.is_zero()) t.fail("syzygy_basis element is not a syzygy of " + show(f));
    }

    // unknowns: coefficient of monomial μ (deg ≤ 2) in component i
    std::vector<std::pair<std::size_t, Monomial>> unknowns;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (unsigned d = 0; d <= 2; ++d)
        for (const auto& mu : monomials_of_degree(2, d, ring->order())) unknowns.push_back({i, mu});
    std::vector<Monomial> targets;
    for (unsigned d = 0; d <= 4; ++d)
      for (const auto& mu : monomials_of_degree(2, d, ring->order())) targets.push_back(mu);
    std::map<Monomial, std::size_t> row;
    for (std::size_t r = 0; r < targets.size(); ++r) row[targets[r]] = r;
    qlinalg::QMatrix m(targets.size(), unknowns.size());
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
      Polynomial shifted = f[unknowns[c].first].times_monomial(unknowns[c].second);
      for (const auto& term : shifted.terms()) m.add_to(row.at(term.mono), c, term.coeff);
    }

    ModuleGroebnerBasis gb = ModuleGroebnerBasis::compute(ring, f.size(), syz);
    for (const auto& v : qlinalg::kernel_basis(m).basis) {
      ModuleVector s(f.size(), Polynomial(ring));
      for (std::size_t c = 0; c < unknowns.size(); ++c)
        if (sgn(v[c]) != 0) s[unknowns[c].first] += Polynomial::term(ring, unknowns[c].second, v[c]);
      if (!gb.contains(s)) t.fail("degree-2 syzygy " + module_vector_to_string(s) + " of " + show(f) + " is missed");
    }
  }
  return t;
}

}  // namespace kernel_checks
