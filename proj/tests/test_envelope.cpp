#include <random>

#include "doctest.h"
#include "rinehart/derham.hpp"
#include "rinehart/envelope.hpp"
#include "rinehart/error.hpp"
#include "test_util.hpp"

using namespace rinehart;

namespace {

Derivation der(const RingPtr& r, std::vector<std::string> coords) {
  Derivation d;
  for (const auto& c : coords) d.push_back(parse_polynomial(c, r));
  return d;
}

QuotientRingPtr rationals() { return QuotientRing::polynomial_ring(make_ring({})); }

LieRinehartAlgebra affine_line_lie() {  // [e1, e2] = e2 over Q
  return LieRinehartAlgebra::lie_algebra(rationals(), 2, {{0, 1, 1, Rational(1)}});
}

LieRinehartAlgebra euler_line() {  // ⟨x∂x⟩ over Q[x]
  RingPtr r = make_ring({"x"});
  return LieRinehartAlgebra(QuotientRing::polynomial_ring(r), {der(r, {"x"})}, {});
}

LieRinehartAlgebra torus() {  // ⟨x∂x, y∂y⟩ over Q[x, y]
  RingPtr r = make_ring({"x", "y"});
  return LieRinehartAlgebra(QuotientRing::polynomial_ring(r), {der(r, {"x", "0"}), der(r, {"0", "y"})}, {});
}

LieRinehartAlgebra shear() {  // ⟨x∂x, x∂y⟩, [e1, e2] = e2
  RingPtr r = make_ring({"x", "y"});
  auto base = QuotientRing::polynomial_ring(r);
  std::vector<std::vector<std::vector<Polynomial>>> c(2, std::vector<std::vector<Polynomial>>(2, std::vector<Polynomial>(2, Polynomial(r))));
  c[0][1][1] = Polynomial::constant(r, Rational(1));
  return LieRinehartAlgebra(base, {der(r, {"x", "0"}), der(r, {"0", "x"})}, c);
}

LieRinehartAlgebra sl2() {
  return LieRinehartAlgebra::lie_algebra(rationals(), 3,
                                         {{0, 1, 1, Rational(2)}, {0, 2, 2, Rational(-2)}, {1, 2, 0, Rational(1)}});
}

LieRinehartAlgebra hyperbola_log() { return log_derivations(parse_polynomial("x*y - 1", make_ring({"x", "y"}))).algebra; }

std::vector<LieRinehartAlgebra> suite() {
  return {LieRinehartAlgebra::abelian(rationals(), 2), affine_line_lie(), euler_line(), torus(), shear(), sl2(),
          hyperbola_log()};
}

MultiIndex mi(std::initializer_list<std::uint32_t> xs) { return MultiIndex(xs); }

/// Random word with `gens` generator letters and a few ring letters.
Word random_word(std::mt19937_64& rng, const LieRinehartAlgebra& l, unsigned gens) {
  Word w;
  std::uniform_int_distribution<std::size_t> pick(0, l.rank() - 1);
  std::uniform_int_distribution<int> coin(0, 2);
  for (unsigned k = 0; k < gens; ++k) {
    if (coin(rng) == 0) w.emplace_back(testutil::random_poly(rng, l.ring(), 2, 2));
    w.emplace_back(pick(rng));
  }
  if (coin(rng) == 0) w.emplace_back(testutil::random_poly(rng, l.ring(), 2, 2));
  return w;
}

UElement random_element(std::mt19937_64& rng, const Envelope& u, unsigned max_order) {
  UElement out;
  std::uniform_int_distribution<int> coin(0, 1);
  for (const auto& a : multi_indices_upto(u.rank(), max_order))
    if (coin(rng)) {
      Polynomial f = u.algebra().base()->reduce(testutil::random_poly(rng, u.ring(), 1, 2));
      if (!f.is_zero()) out[a] += f;
    }
  return out;
}

/// Factorwise product of tensors over Q.
TensorElement tensor_product(const Envelope& u, const TensorElement& a, const TensorElement& b) {
  TensorElement out;
  for (const auto& [ka, fa] : a)
    for (const auto& [kb, fb] : b) {
      TensorElement part{{{}, fa * fb}};
      for (std::size_t i = 0; i < ka.size(); ++i) {
        UElement prod = u.multiply(u.monomial(ka[i], Polynomial::constant(u.ring(), Rational(1))),
                                   u.monomial(kb[i], Polynomial::constant(u.ring(), Rational(1))));
        TensorElement next;
        for (const auto& [k, c] : part)
          for (const auto& [d, g] : prod) {
            auto k2 = k;
            k2.push_back(d);
            next[k2] += c * g;
          }
        part = std::move(next);
      }
      for (const auto& [k, c] : part) out[k] += c;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

Polynomial one(const RingPtr& r) { return Polynomial::constant(r, Rational(1)); }

}  // namespace

TEST_CASE("multi-indices") {
  CHECK(multi_indices(2, 2) == std::vector<MultiIndex>{mi({2, 0}), mi({1, 1}), mi({0, 2})});
  CHECK(multi_indices_upto(3, 2).size() == 10);
  CHECK(multi_indices(0, 0).size() == 1);
  CHECK(multi_index_to_string(mi({1, 2})) == "e1*e2^2");
  CHECK(multi_index_to_string(mi({0, 0})) == "1");
}

TEST_CASE("PBW normal form examples") {
  Envelope u(euler_line(), 3);
  Polynomial x = parse_polynomial("x", u.ring());
  CHECK(u.to_string(u.normal_form({std::size_t{0}, x})) == "x*e1 + x");
  CHECK(u.to_string(u.normal_form({x})) == "x");

  Envelope v(affine_line_lie(), 3);
  CHECK(v.to_string(v.normal_form({std::size_t{1}, std::size_t{0}})) == "e1*e2 - e2");
  CHECK(v.to_string(v.normal_form({std::size_t{0}, std::size_t{1}})) == "e1*e2");

  CHECK_THROWS_AS(v.normal_form({std::size_t{0}, std::size_t{0}, std::size_t{1}, std::size_t{1}}), OrderOverflow);
  CHECK_THROWS_AS(v.rewrite({std::size_t{0}, std::size_t{0}, std::size_t{1}, std::size_t{1}}, 1), OrderOverflow);
}

TEST_CASE("products") {
  Envelope a(LieRinehartAlgebra::abelian(rationals(), 1), 3);
  CHECK(a.to_string(a.multiply(a.generator(0), a.generator(0))) == "e1^2");
  UElement w = a.multiply(a.generator(0), a.generator(0));
  CHECK(a.multiply(a.one(), w) == w);
  CHECK_THROWS_AS(a.multiply(w, w), OrderOverflow);

  Envelope v(affine_line_lie(), 2);
  UElement e12 = v.multiply(v.generator(0), v.generator(1));
  UElement e21 = v.multiply(v.generator(1), v.generator(0));
  UElement diff = e12;
  for (const auto& [k, f] : e21) diff[k] -= f;
  std::erase_if(diff, [](const auto& kv) { return kv.second.is_zero(); });
  CHECK(diff == v.generator(1));  // e1e2 − e2e1 = [e1, e2]
}

TEST_CASE("PBW confluence under random rewriting") {
  std::mt19937_64 rng(7);
  for (const auto& l : suite()) {
    Envelope u(l, 4);
    for (int trial = 0; trial < 12; ++trial) {
      Word w = random_word(rng, l, static_cast<unsigned>(trial % 5));
      UElement expect = u.normal_form(w);
      CHECK(u.rewrite(w, 11 + trial) == expect);
      CHECK(u.rewrite(w, 97 * trial + 3) == expect);
    }
  }
}

TEST_CASE("associativity and associated graded") {
  std::mt19937_64 rng(8);
  for (const auto& l : suite()) {
    Envelope u(l, 4);
    for (int trial = 0; trial < 6; ++trial) {
      UElement a = random_element(rng, u, 1), b = random_element(rng, u, 2), c = random_element(rng, u, 1);
      CHECK(u.multiply(u.multiply(a, b), c) == u.multiply(a, u.multiply(b, c)));
    }
    // top symbol of e^α e^β is e^(α+β) with coefficient 1
    for (const auto& a : multi_indices_upto(l.rank(), 2))
      for (const auto& b : multi_indices_upto(l.rank(), 2)) {
        UElement p = u.multiply(u.monomial(a, one(l.ring())), u.monomial(b, one(l.ring())));
        MultiIndex s = a;
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
        CHECK(u.filtration_degree(p) == static_cast<int>(order_of(s)));
        for (const auto& [k, f] : p)
          if (order_of(k) == order_of(s)) {
            CHECK(k == s);
            CHECK(f == one(l.ring()));
          }
      }
  }
}

TEST_CASE("coproduct and counit") {
  Envelope a(LieRinehartAlgebra::abelian(rationals(), 1), 3);
  CHECK(a.to_string(a.coproduct(a.generator(0))) == "e1⊗1 + 1⊗e1");
  CHECK(a.to_string(a.coproduct(a.multiply(a.generator(0), a.generator(0)))) == "e1^2⊗1 + 2*e1⊗e1 + 1⊗e1^2");

  Envelope e(euler_line(), 3);
  Polynomial x = parse_polynomial("x^2 + 1", e.ring());
  CHECK(e.counit(e.scalar(x)) == x);

  std::mt19937_64 rng(9);
  for (const auto& l : suite()) {
    Envelope u(l, 4);
    for (int trial = 0; trial < 5; ++trial) {
      UElement v = random_element(rng, u, 4);
      TensorElement d = u.coproduct(v);
      CHECK(u.coproduct_at(d, 0) == u.coproduct_at(d, 1));
      CHECK(u.counit_left(d) == v);
      CHECK(u.counit_right(d) == v);
    }
  }
}

TEST_CASE("coproduct is multiplicative over Q") {
  for (const auto& l : {affine_line_lie(), sl2()}) {
    Envelope u(l, 4);
    for (const auto& a : multi_indices_upto(l.rank(), 2))
      for (const auto& b : multi_indices_upto(l.rank(), 2)) {
        UElement ua = u.monomial(a, one(l.ring())), ub = u.monomial(b, one(l.ring()));
        CHECK(u.coproduct(u.multiply(ua, ub)) == tensor_product(u, u.coproduct(ua), u.coproduct(ub)));
      }
  }
}

TEST_CASE("PBW symmetrization") {
  Envelope v(affine_line_lie(), 3);
  CHECK(v.to_string(v.symmetrize(v.monomial(mi({1, 1}), one(v.ring())))) == "e1*e2 - 1/2*e2");
  CHECK(v.symmetrize(v.generator(1)) == v.generator(1));
  Envelope a(LieRinehartAlgebra::abelian(rationals(), 2), 3);
  CHECK(a.symmetrize(a.monomial(mi({1, 1}), one(a.ring()))) == a.monomial(mi({1, 1}), one(a.ring())));

  for (const auto& l : suite()) {
    Envelope u(l, 3);
    for (const auto& s : multi_indices_upto(l.rank(), 3)) {
      UElement sym = u.monomial(s, one(l.ring()));
      UElement th = u.symmetrize(sym);
      CHECK(u.coproduct(th) == u.symmetrize_tensor(u.symmetric_coproduct(sym)));
      // top-order part is s itself
      for (const auto& [k, f] : th)
        if (order_of(k) == order_of(s)) {
          CHECK(k == s);
          CHECK(f == one(l.ring()));
        }
    }
  }
}

TEST_CASE("Koszul differential examples") {
  Envelope v(affine_line_lie(), 3);
  RingPtr r = v.ring();
  KoszulElement e1{{{mi({0, 0}), {0}}, one(r)}};
  CHECK(v.to_string(v.koszul_differential(e1)) == "e1⊗1");
  KoszulElement top{{{mi({0, 0}), {0, 1}}, one(r)}};
  KoszulElement d = v.koszul_differential(top);
  CHECK(v.to_string(d) == "e1⊗e2 - e2⊗e1 - 1⊗e2");
  CHECK(v.koszul_differential(d).empty());

  Envelope a(LieRinehartAlgebra::abelian(rationals(), 2), 3);
  CHECK(a.koszul_differential(a.koszul_differential(top)).empty());
}

TEST_CASE("Koszul checks") {
  KoszulReport one_var = koszul_checks(LieRinehartAlgebra::abelian(rationals(), 1), 4, 0);
  CHECK(one_var.ok());
  CHECK(one_var.homology == std::vector<std::size_t>{1, 0});
  CHECK(one_var.faithful == std::vector<bool>{true, true});

  KoszulReport two_var = koszul_checks(LieRinehartAlgebra::abelian(rationals(), 2), 4, 0);
  CHECK(two_var.ok());
  CHECK(two_var.chain_dims == std::vector<std::size_t>{15, 20, 6});
  CHECK(two_var.homology == std::vector<std::size_t>{1, 0, 0});

  KoszulReport euler = koszul_checks(euler_line(), 3, 4);
  CHECK(euler.ok());
  CHECK(euler.base_dim == 5);
  CHECK(euler.homology[0] == 5);

  for (const auto& l : suite()) {
    KoszulReport rep = koszul_checks(l, 3, 2);
    CHECK(rep.d_squared_zero);
    CHECK(rep.augmentation_ok);
    CHECK(rep.h0_is_base);
  }
}

TEST_CASE("induced differential equals CE") {
  auto ab = LieRinehartAlgebra::abelian(rationals(), 2);
  auto t = torus();
  RingPtr r = t.ring();
  auto nc = QuotientRing::create(r, {parse_polynomial("x*y", r)});
  std::vector<std::pair<LieRinehartAlgebra, LRModule>> cases{
      {ab, LRModule::trivial(ab)},
      {t, LRModule::trivial(t)},
      {t, LRModule::quotient(t, nc)},
      {affine_line_lie(), LRModule::trivial(affine_line_lie())},
      {shear(), LRModule::trivial(shear())},
      {sl2(), LRModule::trivial(sl2())},
      {hyperbola_log(), LRModule::trivial(hyperbola_log())},
  };
  // rank-2 connection on the torus: ∇_1 = x∂x + diag(1, 0), ∇_2 = y∂y
  LRModule twisted = LRModule::trivial(t);
  twisted.rank = 2;
  twisted.connection.assign(2, std::vector<std::vector<Polynomial>>(2, std::vector<Polynomial>(2, Polynomial(r))));
  twisted.connection[0][0][0] = one(r);
  cases.emplace_back(t, twisted);

  for (const auto& [l, e] : cases)
    for (std::size_t p = 0; p <= l.rank(); ++p) {
      HomCompareReport rep = hom_complex_compare(l, e, p);
      CHECK_MESSAGE(rep.ok, rep.witness);
      if (p < l.rank()) CHECK(rep.checked > 0);
    }
}

TEST_CASE("Alt and P") {
  WedgeElement e2{{{1}, one(make_ring({}))}};
  TensorElement alt1 = alt_map(e2, 2);
  CHECK(alt1.size() == 1);
  CHECK(proj_map(alt1) == e2);

  RingPtr r = make_ring({});
  TensorElement alt2 = alt_map({{{0, 1}, one(r)}}, 2);
  TensorElement expect{{{mi({1, 0}), mi({0, 1})}, Polynomial::constant(r, testutil::q(1, 2))},
                       {{mi({0, 1}), mi({1, 0})}, Polynomial::constant(r, testutil::q(-1, 2))}};
  CHECK(alt2 == expect);

  TensorElement degenerate{{{mi({0, 0}), mi({1, 0})}, one(r)}};
  CHECK(proj_map(degenerate).empty());
  TensorElement repeated{{{mi({1, 0}), mi({1, 0})}, one(r)}};
  CHECK(proj_map(repeated).empty());

  RingPtr s = make_ring({"x", "y"});
  std::mt19937_64 rng(10);
  for (std::size_t rank = 1; rank <= 4; ++rank)
    for (std::size_t p = 1; p <= std::min<std::size_t>(3, rank); ++p) {
      WedgeElement w;
      for (const auto& I : subsets(rank, p)) {
        Polynomial f = testutil::random_poly(rng, s, 2, 3);
        if (!f.is_zero()) w[I] = f;
      }
      CHECK(proj_map(alt_map(w, rank)) == w);
    }
}

TEST_CASE("reduced Koszul differential vanishes") {
  for (const auto& l : suite())
    for (std::size_t p = 1; p <= l.rank(); ++p) {
      auto m = reduced_koszul_differential(l, p);
      CHECK(m.size() == subsets(l.rank(), p - 1).size());
      for (const auto& row : m)
        for (const auto& f : row) CHECK(f.is_zero());
    }
  auto m = reduced_koszul_differential(LieRinehartAlgebra::abelian(rationals(), 2), 2);
  CHECK(m.size() == 2);
  CHECK(m[0].size() == 1);
}

TEST_CASE("jets") {
  Envelope a(LieRinehartAlgebra::abelian(rationals(), 1), 4);
  RingPtr r = a.ring();
  Jet w = jet_from_symbols(a, {{mi({1}), one(r)}});
  Jet ww = jet_product(a, w, w);
  CHECK(jet_evaluate(a, ww, a.monomial(mi({2}), one(r))) == Polynomial::constant(r, Rational(2)));
  CHECK(jet_evaluate(a, ww, a.generator(0)).is_zero());
  CHECK(jet_equal(jet_product(a, jet_counit(a), w), w));

  Jet f = jet_from_symbols(a, {{mi({0}), Polynomial::constant(r, Rational(3))}});
  Jet g = jet_from_symbols(a, {{mi({0}), Polynomial::constant(r, Rational(5))}});
  CHECK(jet_equal(jet_product(a, f, g), jet_from_symbols(a, {{mi({0}), Polynomial::constant(r, Rational(15))}})));

  // translations: ∇ε = 0, ∇w = −ε
  Jet de = grothendieck_connection(a, jet_counit(a), 0);
  CHECK(de.order == 3);
  CHECK(de.values.empty());
  Jet dw = grothendieck_connection(a, w, 0);
  CHECK(dw.values.size() == 1);
  CHECK(dw.values.at(mi({0})) == Polynomial::constant(r, Rational(-1)));

  Envelope e(euler_line(), 3);
  Jet cx = jet_from_symbols(e, {{mi({0}), parse_polynomial("x", e.ring())}});
  CHECK(jet_evaluate(e, grothendieck_connection(e, cx, 0), e.one()).to_string() == "x");
  Jet zero_order;
  CHECK_THROWS_AS(grothendieck_connection(e, zero_order, 0), OrderOverflow);
}

TEST_CASE("jet algebra laws and flat Grothendieck connection") {
  std::mt19937_64 rng(12);
  for (const auto& l : suite()) {
    Envelope u(l, 4);
    auto random_jet = [&] {
      std::map<MultiIndex, Polynomial> sym;
      for (const auto& b : multi_indices_upto(l.rank(), 4)) sym[b] = testutil::random_poly(rng, l.ring(), 1, 2);
      return jet_from_symbols(u, sym);
    };
    for (int trial = 0; trial < 3; ++trial) {
      Jet p = random_jet(), q = random_jet(), s = random_jet();
      CHECK(jet_equal(jet_product(u, p, q), jet_product(u, q, p)));
      CHECK(jet_equal(jet_product(u, jet_product(u, p, q), s), jet_product(u, p, jet_product(u, q, s))));
      CHECK(jet_equal(jet_product(u, jet_counit(u), p), p));
      // [∇_i, ∇_j] = Σ_k c_ij^k ∇_k
      for (std::size_t i = 0; i < l.rank(); ++i)
        for (std::size_t j = i + 1; j < l.rank(); ++j) {
          Jet lhs = grothendieck_connection(u, grothendieck_connection(u, p, j), i);
          Jet rhs = grothendieck_connection(u, grothendieck_connection(u, p, i), j);
          for (const auto& [k, v] : rhs.values) lhs.values[k] -= v;
          for (std::size_t k = 0; k < l.rank(); ++k) {
            if (l.bracket(i, j, k).is_zero()) continue;
            Jet dk = grothendieck_connection(u, p, k);
            for (const auto& a : multi_indices_upto(l.rank(), 2)) {
              auto it = dk.values.find(a);
              if (it != dk.values.end()) lhs.values[a] -= l.bracket(i, j, k) * it->second;
            }
          }
          for (const auto& [k, v] : lhs.values) CHECK(l.base()->reduce(v).is_zero());
        }
    }
  }
}

TEST_CASE("truncated cobar cohomology") {
  auto rank1 = LieRinehartAlgebra::abelian(rationals(), 1);
  CohomologyReport u1 = cobar_truncated_cohomology(rank1, CobarSource::Enveloping, 2, 4);
  CHECK(u1.dims == std::vector<std::size_t>{1, 1});
  CHECK(u1.faithful == std::vector<bool>{true, true});
  CHECK(u1.representatives[1].size() == 1);

  CohomologyReport j1 = cobar_truncated_cohomology(rank1, CobarSource::Jets, 3, 4);
  CHECK(j1.dims == std::vector<std::size_t>{1, 1, 0});

  auto rank2 = LieRinehartAlgebra::abelian(rationals(), 2);
  CohomologyReport j2 = cobar_truncated_cohomology(rank2, CobarSource::Jets, 3, 3);
  CHECK(j2.dims == std::vector<std::size_t>{1, 2, 1});
  CohomologyReport u2 = cobar_truncated_cohomology(rank2, CobarSource::Enveloping, 3, 3);
  CHECK(u2.dims == std::vector<std::size_t>{1, 2, 1});

  // dual numbers as base: H^n = ∧^n L ⊗ R, dim 2·C(1, n)
  RingPtr x = make_ring({"x"});
  auto dual = QuotientRing::create(x, {parse_polynomial("x^2", x)});
  CohomologyReport d1 = cobar_truncated_cohomology(LieRinehartAlgebra::abelian(dual, 1), CobarSource::Jets, 3, 3);
  CHECK(d1.dims == std::vector<std::size_t>{2, 2, 0});

  CHECK_THROWS_AS(cobar_truncated_cohomology(euler_line(), CobarSource::Enveloping, 2, 3), InvalidArgument);
  CHECK_THROWS_AS(cobar_truncated_cohomology(rank1, CobarSource::Jets, 0, 3), InvalidArgument);
}
