#pragma once

// Order-truncated enveloping algebra U(R, L) of a free Lie–Rinehart algebra,
// its coalgebra structure, the Koszul–Rinehart complex U ⊗ ∧L, PBW
// symmetrization, and the truncated jet algebra Hom_R(U, R).
//
// Elements of U are Σ f_α e^α over weakly increasing PBW monomials
// e^α = e_1^α_1 ⋯ e_r^α_r with left coefficients f_α in normal form modulo the
// base ideal.  The filtration degree of e^α is |α|.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rinehart/complex.hpp"
#include "rinehart/lierinehart.hpp"

namespace rinehart {

using MultiIndex = std::vector<std::uint32_t>;

unsigned order_of(const MultiIndex& a);
/// All α with |α| = k over r generators, lexicographically descending.
std::vector<MultiIndex> multi_indices(std::size_t r, unsigned k);
/// All α with |α| ≤ n, by degree then as in multi_indices.
std::vector<MultiIndex> multi_indices_upto(std::size_t r, unsigned n);

/// Σ f_α e^α (also used for symmetric-algebra elements s^α).
using UElement = std::map<MultiIndex, Polynomial>;
/// Σ f · x_1 ⊗ ⋯ ⊗ x_k with the coefficient on the left (left R-module
/// convention); keys are the PBW indices of the factors.
using TensorElement = std::map<std::vector<MultiIndex>, Polynomial>;
/// Σ f_I e_I over increasing index sets I.
using WedgeElement = std::map<std::vector<std::size_t>, Polynomial>;
/// Σ f u ⊗ e_I in U ⊗ ∧^p L, keyed by (α, I).
using KoszulElement = std::map<std::pair<MultiIndex, std::vector<std::size_t>>, Polynomial>;

/// A letter of a word in U: a generator index or a ring element.
using Letter = std::variant<std::size_t, Polynomial>;
using Word = std::vector<Letter>;

class Envelope {
public:
  Envelope(LieRinehartAlgebra l, unsigned order);

  const LieRinehartAlgebra& algebra() const noexcept { return l_; }
  unsigned order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return l_.rank(); }
  const RingPtr& ring() const noexcept { return l_.ring(); }

  UElement one() const;
  UElement scalar(const Polynomial& f) const;
  UElement generator(std::size_t i) const;
  UElement monomial(const MultiIndex& a, const Polynomial& f) const;
  /// Highest |α| with a nonzero coefficient, −1 for zero.
  int filtration_degree(const UElement& u) const;

  /// Left-to-right evaluation of a word; OrderOverflow when it has more than
  /// N generator letters.
  UElement normal_form(const Word& w) const;
  /// The same normal form reached by applying the rewrite rules
  ///   e_i f → f e_i + a(e_i)(f),   e_j e_i → e_i e_j − [e_i, e_j]  (i < j)
  /// at positions chosen by a seeded generator.
  UElement rewrite(const Word& w, std::uint64_t seed) const;
  /// OrderOverflow when the filtration degrees add up to more than N.
  UElement multiply(const UElement& u, const UElement& v) const;

  Polynomial counit(const UElement& u) const;
  /// Δ(f e^α) = f Σ_β C(α, β) e^β ⊗ e^(α−β).
  TensorElement coproduct(const UElement& u) const;
  /// Applies Δ to one tensor factor.
  TensorElement coproduct_at(const TensorElement& t, std::size_t factor) const;
  /// (ε ⊗ id) on a two-factor tensor.
  UElement counit_left(const TensorElement& t) const;
  UElement counit_right(const TensorElement& t) const;

  /// θ(f s^α) = f/k! Σ_σ e_σ(1) ⋯ e_σ(k) over the letters of α (no sign).
  UElement symmetrize(const UElement& s) const;
  /// Symmetric-algebra coproduct; the same binomial formula as for U.
  TensorElement symmetric_coproduct(const UElement& s) const;
  /// θ applied to every factor.
  TensorElement symmetrize_tensor(const TensorElement& t) const;

  /// ∂(u ⊗ e_I) = Σ_t (−1)^(t+1) u e_(i_t) ⊗ e_(I∖i_t)
  ///            + Σ_(t<s) (−1)^(t+s) u ⊗ [e_(i_t), e_(i_s)] ∧ e_(I∖{i_t,i_s})  (1-based t, s).
  KoszulElement koszul_differential(const KoszulElement& x) const;

  /// e^α acting on a vector of E through the connection.
  std::vector<Polynomial> act(const UElement& u, const LRModule& e, const std::vector<Polynomial>& v) const;

  std::string to_string(const UElement& u, const std::string& unit = "1") const;
  std::string to_string(const TensorElement& t) const;
  std::string to_string(const KoszulElement& x) const;

private:
  UElement times_generator(const UElement& u, std::size_t j) const;
  UElement times_ring(const UElement& u, const Polynomial& g) const;
  UElement monomial_times_generator(const MultiIndex& a, std::size_t j) const;
  void add_to(UElement& acc, const UElement& u, const Polynomial& c) const;

  LieRinehartAlgebra l_;
  unsigned order_;
  mutable std::map<std::pair<MultiIndex, std::size_t>, UElement> gen_cache_;
};

std::string multi_index_to_string(const MultiIndex& a, const std::string& letter = "e");

// ------------------------------------------------------------ Koszul checks

struct KoszulReport {
  unsigned order = 0;
  int weight_bound = 0;
  std::vector<std::size_t> chain_dims;
  /// dims of the truncated homology H_0 .. H_r
  std::vector<std::size_t> homology;
  /// H_p is only claimed exact for p ≤ N − r
  std::vector<bool> faithful;
  bool d_squared_zero = true;
  bool augmentation_ok = true;
  bool h0_is_base = true;
  std::size_t base_dim = 0;
  std::vector<std::string> notes;
  bool ok() const { return d_squared_zero && augmentation_ok && h0_is_base; }
};

/// Builds the truncation of U≤(N−p) ⊗ ∧^p L whose coefficient monomials have
/// weight deg μ + κ(|α| + p) ≤ weight_bound, κ the degree shift of L.
KoszulReport koszul_checks(const LieRinehartAlgebra& l, unsigned order, int weight_bound);

/// Verifies that ∂ induces the CE differential on Hom_R(∧^p L, E): for each
/// (p+1)-wedge and a family of sample cochains, φ(∂(1 ⊗ e_K)) is compared
/// with the CE formula.
struct HomCompareReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string witness;
};
HomCompareReport hom_complex_compare(const LieRinehartAlgebra& l, const LRModule& e, std::size_t p);

// ---------------------------------------------------------------- Alt and P

/// Alt(f e_I) = f/p! Σ_σ sgn(σ) e_(i_σ1) ⊗ ⋯ ⊗ e_(i_σp).
TensorElement alt_map(const WedgeElement& w, std::size_t rank);
/// Degree-one projection in each factor, then wedge.
WedgeElement proj_map(const TensorElement& t);

/// Matrix (rows: (p−1)-subsets, cols: p-subsets) of the differential induced
/// on ∧•L by the counit applied to the Koszul differential of S(L) ⊗ ∧L.
std::vector<std::vector<Polynomial>> reduced_koszul_differential(const LieRinehartAlgebra& l, std::size_t p);

// -------------------------------------------------------------------- jets

/// R-linear functional on U≤N, stored by its values on PBW monomials.
struct Jet {
  unsigned order = 0;
  std::map<MultiIndex, Polynomial> values;
};

Jet jet_counit(const Envelope& u);
/// Σ c_β w^β ↦ the jet with value β!·c_β on e^β (w_i dual to e_i).
Jet jet_from_symbols(const Envelope& u, const std::map<MultiIndex, Polynomial>& symbols);
/// (φ ∗ ψ)(e^α) = Σ_β C(α, β) φ(e^β) ψ(e^(α−β)).
Jet jet_product(const Envelope& u, const Jet& a, const Jet& b);
/// (∇_i φ)(u) = a(e_i)(φ(u)) − φ(e_i u), of order N − 1.
Jet grothendieck_connection(const Envelope& u, const Jet& phi, std::size_t i);
Polynomial jet_evaluate(const Envelope& u, const Jet& phi, const UElement& x);
bool jet_equal(const Jet& a, const Jet& b);

// ------------------------------------------------------------------- cobar

enum class CobarSource { Enveloping, Jets };

/// Reduced cobar complex Ā^⊗n, n = 0..tensor_degree_max, of the truncated
/// coalgebra (U, Δ) or of the jets (dual of the product of U), with total
/// order ≤ N.  Reports degrees 0..tensor_degree_max − 1.  Requires a zero
/// anchor for jets and a finite-dimensional base.
CohomologyReport cobar_truncated_cohomology(const LieRinehartAlgebra& l, CobarSource source,
                                            unsigned tensor_degree_max, unsigned order);

}  // namespace rinehart
