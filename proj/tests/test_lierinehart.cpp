#include <random>

#include "doctest.h"
#include "rinehart/derham.hpp"
#include "rinehart/error.hpp"
#include "rinehart/lierinehart.hpp"
#include "test_util.hpp"

using namespace rinehart;

namespace {

RingPtr plane() { return make_ring({"x", "y"}); }

Derivation der(const RingPtr& r, std::vector<std::string> coords) {
  Derivation d;
  for (const auto& c : coords) d.push_back(parse_polynomial(c, r));
  return d;
}

// ⟨x∂x, y∂y⟩ over base
LieRinehartAlgebra torus_algebra(const QuotientRingPtr& base) {
  const RingPtr& r = base->ring();
  return LieRinehartAlgebra(base, {der(r, {"x", "0"}), der(r, {"0", "y"})}, {});
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

TEST_CASE("derivation helpers") {
  RingPtr r = plane();
  Derivation e = der(r, {"x", "-y"});
  CHECK(derivation_to_string(e, r->vars()) == "x*∂x - y*∂y");
  CHECK(apply_derivation(e, parse_polynomial("x^2*y", r)).to_string() == "x^2*y");
  CHECK(apply_derivation(e, parse_polynomial("x*y", r)).is_zero());
  Derivation c = commutator(der(r, {"x", "0"}), der(r, {"1", "0"}));
  CHECK(derivation_to_string(c, r->vars()) == "-∂x");
}

TEST_CASE("axiom checks") {
  auto q = QuotientRing::polynomial_ring(plane());
  CHECK(lr_check_axioms(LieRinehartAlgebra::abelian(q, 3)).ok);
  CHECK(lr_check_axioms(torus_algebra(q)).ok);

  auto point = QuotientRing::polynomial_ring(make_ring({}));
  auto aff = LieRinehartAlgebra::lie_algebra(point, 2, {{0, 1, 1, Rational(1)}});
  CHECK(lr_check_axioms(aff).ok);
  CHECK(aff.bracket(1, 0, 1).to_string() == "-1");

  // sl2: [h,e]=2e, [h,f]=−2f, [e,f]=h satisfies Jacobi; breaking [e,f] does not
  auto sl2 = LieRinehartAlgebra::lie_algebra(point, 3, {{0, 1, 1, Rational(2)}, {0, 2, 2, Rational(-2)}, {1, 2, 0, Rational(1)}});
  CHECK(lr_check_axioms(sl2).ok);
  auto broken = LieRinehartAlgebra::lie_algebra(point, 3, {{0, 1, 1, Rational(2)}, {0, 2, 2, Rational(-2)}, {1, 2, 1, Rational(1)}});
  AxiomReport rep = lr_check_axioms(broken);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.jacobi);
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures[0].find("(e1,e2,e3)") != std::string::npos);

  // anchor that does not match the bracket
  RingPtr r = plane();
  LieRinehartAlgebra bad(q, {der(r, {"x", "0"}), der(r, {"1", "0"})}, {});
  AxiomReport b = lr_check_axioms(bad);
  CHECK_FALSE(b.anchor_homomorphism);

  // ∂x does not preserve (xy)
  auto nc = QuotientRing::create(r, {parse_polynomial("x*y", r)});
  LieRinehartAlgebra leaky(nc, {der(r, {"1", "0"})}, {});
  CHECK_FALSE(lr_check_axioms(leaky).ideal_preserved);
}

TEST_CASE("connection flatness") {
  RingPtr r = plane();
  auto s = QuotientRing::polynomial_ring(r);
  LieRinehartAlgebra t = torus_algebra(s);
  CHECK(connection_flatness(t, LRModule::trivial(t)).flat);

  auto nc = QuotientRing::create(r, {parse_polynomial("x*y", r)});
  FlatnessReport f = connection_flatness(t, LRModule::quotient(t, nc));
  CHECK(f.flat);
  CHECK(f.ideal_preserved);
  CHECK(f.contains_base_ideal);

  LieRinehartAlgebra one(s, {der(r, {"x", "-y"})}, {});
  LRModule e = LRModule::trivial(one);
  e.connection[0][0][0] = parse_polynomial("x", r);
  CHECK(connection_flatness(one, e).flat);

  // A_1 = 0, A_2 = (x) on ⟨x∂x, y∂y⟩: curvature a(e1)(x) = x
  LRModule bent = LRModule::trivial(t);
  bent.connection[1][0][0] = parse_polynomial("x", r);
  FlatnessReport fr = connection_flatness(t, bent);
  CHECK_FALSE(fr.flat);
  CHECK(fr.i == 0);
  CHECK(fr.j == 1);
  CHECK(fr.curvature[0][0] == "x");
  CHECK_THROWS_AS(ce_cohomology(t, bent, 4, 2), InvariantViolation);
}

TEST_CASE("CE differential examples") {
  RingPtr r = plane();
  auto s = QuotientRing::polynomial_ring(r);
  LieRinehartAlgebra hyp(s, {der(r, {"x", "-y"})}, {});
  LRModule e = LRModule::trivial(hyp);
  Cochain w0{{parse_polynomial("x", r)}};
  Cochain dw = ce_differential(hyp, e, 0, w0);
  REQUIRE(dw.size() == 1);
  CHECK(dw[0][0].to_string() == "x");

  auto ab = LieRinehartAlgebra::abelian(s, 2);
  CHECK(ce_differential(ab, LRModule::trivial(ab), 0, {{parse_polynomial("5", r)}})[0][0].is_zero());

  LieRinehartAlgebra t = torus_algebra(s);
  Cochain eps1{{parse_polynomial("1", r)}, {Polynomial(r)}};
  Cochain d1 = ce_differential(t, LRModule::trivial(t), 1, eps1);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0][0].is_zero());
  // x·ε² ↦ a(e1)(x) = x on (e1, e2)
  Cochain xeps2{{Polynomial(r)}, {parse_polynomial("x", r)}};
  CHECK(ce_differential(t, LRModule::trivial(t), 1, xeps2)[0][0].to_string() == "x");
}

TEST_CASE("CE differential squares to zero on random cochains") {
  std::mt19937_64 rng(5);
  RingPtr r = plane();
  auto s = QuotientRing::polynomial_ring(r);
  // ⟨x∂x, x∂y⟩ with [x∂x, x∂y] = x∂y, so c_12^2 = 1
  std::vector<std::vector<std::vector<Polynomial>>> br(2, std::vector<std::vector<Polynomial>>(2));
  br[0][1] = {Polynomial(r), parse_polynomial("1", r)};
  LieRinehartAlgebra l(s, {der(r, {"x", "0"}), der(r, {"0", "x"})}, br);
  REQUIRE(lr_check_axioms(l).ok);
  LRModule e = LRModule::trivial(l);
  for (int t = 0; t < 20; ++t) {
    Cochain w0{{testutil::random_poly(rng, r, 4, 5)}};
    for (const auto& v : ce_differential(l, e, 1, ce_differential(l, e, 0, w0))) CHECK(v[0].is_zero());
  }
  FilteredComplex c = ce_complex(l, e, 5);
  CHECK(c.d_squared_zero());
  CHECK(c.filtration_compatible());
}

TEST_CASE("CE cohomology of the torus algebra") {
  RingPtr r = plane();
  LieRinehartAlgebra t = torus_algebra(QuotientRing::polynomial_ring(r));
  CohomologyReport rep = ce_cohomology(t, LRModule::trivial(t), 8, 3);
  CHECK(rep.dims == std::vector<std::size_t>{1, 2, 1});
  CHECK(rep.all_stabilized());

  auto nc = QuotientRing::create(r, {parse_polynomial("x*y", r)});
  CohomologyReport q = ce_cohomology(t, LRModule::quotient(t, nc), 8, 3);
  CHECK(q.dims == std::vector<std::size_t>{1, 2, 1});
  CHECK(q.all_stabilized());
}

TEST_CASE("abelian Lie algebras over Q give the exterior algebra") {
  auto point = QuotientRing::polynomial_ring(make_ring({}));
  for (std::size_t rank = 1; rank <= 4; ++rank) {
    auto l = LieRinehartAlgebra::abelian(point, rank);
    CohomologyReport rep = ce_cohomology(l, LRModule::trivial(l), 3, 2);
    REQUIRE(rep.dims.size() == rank + 1);
    for (std::size_t p = 0; p <= rank; ++p) CHECK(rep.dims[p] == binom(rank, p));
  }
}

TEST_CASE("nonabelian two-dimensional Lie algebra") {
  // [e1, e2] = e2: H⁰ = Q, H¹ = Q (dual of e1), H² = 0
  auto point = QuotientRing::polynomial_ring(make_ring({}));
  auto l = LieRinehartAlgebra::lie_algebra(point, 2, {{0, 1, 1, Rational(1)}});
  CHECK(ce_cohomology(l, LRModule::trivial(l), 3, 2).dims == std::vector<std::size_t>{1, 1, 0});
}

TEST_CASE("Poincare lemma through the tangent algebra of the line") {
  RingPtr r = make_ring({"x"});
  auto s = QuotientRing::polynomial_ring(r);
  LieRinehartAlgebra l(s, {der(r, {"1"})}, {});
  CohomologyReport rep = ce_cohomology(l, LRModule::trivial(l), 6, 3);
  CHECK(rep.dims == std::vector<std::size_t>{1, 0});
  CHECK(rep.all_stabilized());
  CHECK(ce_degree_shift(l, LRModule::trivial(l)) == -1);
  CHECK(rep.dims == de_rham_cohomology(s, 6, 3).dims);
}

TEST_CASE("Saito criterion") {
  RingPtr r = plane();
  Polynomial f = parse_polynomial("x*y", r);
  CHECK(saito_check({der(r, {"x", "0"}), der(r, {"0", "y"})}, f));
  CHECK(saito_check({der(r, {"-2*x", "0"}), der(r, {"x", "3*y"})}, f));
  CHECK_FALSE(saito_check({der(r, {"1", "0"}), der(r, {"0", "1"})}, f));
  CHECK_THROWS_AS(saito_check({der(r, {"x", "-y"})}, f), InvalidArgument);
  CHECK(determinant({{parse_polynomial("x", r), parse_polynomial("y", r)}, {parse_polynomial("1", r), parse_polynomial("x", r)}}, r)
            .to_string() == "x^2 - y");
}

TEST_CASE("bracket structure constants") {
  RingPtr r = plane();
  auto s = QuotientRing::polynomial_ring(r);
  auto c = bracket_structure_constants({der(r, {"x", "0"}), der(r, {"0", "y"})}, s);
  for (const auto& a : c)
    for (const auto& b : a)
      for (const auto& p : b) CHECK(p.is_zero());
  CHECK(bracket_structure_constants({der(r, {"x", "0"})}, s)[0][0][0].is_zero());

  RingPtr line = make_ring({"x"});
  auto sl = QuotientRing::polynomial_ring(line);
  auto c2 = bracket_structure_constants({der(line, {"x"}), der(line, {"1"})}, sl);
  CHECK(c2[0][1][1].to_string() == "-1");
  CHECK(c2[0][1][0].is_zero());
  CHECK(c2[1][0][1].to_string() == "1");

  // [∂x, x²∂y] = 2x∂y is outside the span
  CHECK_THROWS_AS(bracket_structure_constants({der(r, {"1", "0"}), der(r, {"0", "x^2"})}, s), InvariantViolation);
}

TEST_CASE("logarithmic derivations") {
  RingPtr r = plane();
  LogDerivations h = log_derivations(parse_polynomial("x*y - 1", r));
  CHECK(h.kind == LogAlgebroidKind::Divisor);
  REQUIRE(h.divisor_basis);
  REQUIRE(h.divisor_basis->size() == 1);
  CHECK(derivation_to_string((*h.divisor_basis)[0], r->vars()) == "x*∂x - y*∂y");
  CHECK(h.algebra.rank() == 1);
  CHECK(h.algebra.base()->describe() == "Q[x,y]/(x*y - 1)");

  LogDerivations nc = log_derivations(parse_polynomial("x*y", r));
  CHECK(nc.kind == LogAlgebroidKind::Ambient);
  REQUIRE(nc.saito_basis);
  REQUIRE(nc.saito_basis->size() == 2);
  CHECK(derivation_to_string((*nc.saito_basis)[0], r->vars()) == "x*∂x");
  CHECK(derivation_to_string((*nc.saito_basis)[1], r->vars()) == "y*∂y");
  CHECK(saito_check(*nc.saito_basis, nc.f));
  CHECK(nc.algebra.is_abelian());
  CHECK(nc.algebra.base()->is_polynomial_ring());

  RingPtr line = make_ring({"x"});
  LogDerivations lx = log_derivations(parse_polynomial("x", line));
  CHECK(lx.kind == LogAlgebroidKind::Ambient);
  REQUIRE(lx.saito_basis);
  REQUIRE(lx.saito_basis->size() == 1);
  CHECK(derivation_to_string((*lx.saito_basis)[0], line->vars()) == "x*∂x");

  CHECK_THROWS_AS(log_derivations(parse_polynomial("3", r)), InvalidArgument);
  CHECK_THROWS_AS(log_derivations(Polynomial(r)), InvalidArgument);
}

TEST_CASE("log derivations preserve f and ignore scaling") {
  RingPtr r = plane();
  for (const char* text : {"x*y - 1", "x*y", "x^2 - y^3", "x*y*(x - y)", "y - x^2"}) {
    Polynomial f = parse_polynomial(text, r);
    LogDerivations a = log_derivations(f);
    for (const auto& d : a.raw_generators) CHECK(divide(apply_derivation(d, f), {f}).remainder.is_zero());
    for (const auto& d : a.algebra.anchors()) CHECK(a.algebra.base()->reduce(divide(apply_derivation(d, f), {f}).remainder).is_zero());
    CHECK(lr_check_axioms(a.algebra).ok);
    LogDerivations b = log_derivations(f * Rational(-7, 3));
    CHECK(a.kind == b.kind);
    REQUIRE(a.algebra.rank() == b.algebra.rank());
    for (std::size_t i = 0; i < a.algebra.rank(); ++i) CHECK(a.algebra.anchor(i) == b.algebra.anchor(i));
  }
}

TEST_CASE("log de Rham of the hyperbola") {
  RingPtr r = plane();
  LogDerivations h = log_derivations(parse_polynomial("x*y - 1", r));
  CohomologyReport rep = ce_cohomology(h.algebra, LRModule::trivial(h.algebra), 8, 3);
  CHECK(rep.dims == std::vector<std::size_t>{1, 1});
  CHECK(rep.all_stabilized());

  // the same algebra over Q[x,y] is not finite in any degree: invariants (xy)^k
  LieRinehartAlgebra ambient(QuotientRing::polynomial_ring(r), {der(r, {"x", "-y"})}, {});
  CohomologyReport amb = ce_cohomology(ambient, LRModule::trivial(ambient), 8, 3);
  CHECK_FALSE(amb.all_stabilized());
}
