#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rinehart/complex.hpp"
#include "rinehart/groebner.hpp"
#include "rinehart/module.hpp"

namespace rinehart {

/// Finitely presented module F/N over a quotient ring, F free on named
/// generators with integer weights.  N is held as a module Gröbner basis over
/// the ambient polynomial ring under the weighted-degree order, and always
/// contains the ideal multiples of every generator.
class PresentedModule {
public:
  PresentedModule() = default;
  PresentedModule(QuotientRingPtr base, std::vector<std::vector<std::string>> generator_names,
                  std::vector<int> weights, std::vector<ModuleVector> relations);

  const QuotientRingPtr& base() const noexcept { return base_; }
  std::size_t rank() const noexcept { return names_.size(); }
  const std::vector<std::vector<std::string>>& generator_names() const noexcept { return names_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  /// Relation rows as given (before Gröbner closure), ideal rows excluded.
  const std::vector<ModuleVector>& relations() const noexcept { return relations_; }
  const ModuleGroebnerBasis& gb() const noexcept { return gb_; }

  ModuleVector normal_form(const ModuleVector& v) const { return gb_.normal_form(v); }
  SparseModuleElement normal_form(SparseModuleElement v) const { return gb_.normal_form(std::move(v)); }
  bool is_zero(const ModuleVector& v) const { return gb_.contains(v); }

  /// Standard basis of the weight ≤ level part, sorted by weight, then
  /// descending module order.
  std::vector<BasisElement> slice(int level) const;

private:
  QuotientRingPtr base_;
  std::vector<std::vector<std::string>> names_;
  std::vector<int> weights_;
  std::vector<ModuleVector> relations_;
  ModuleGroebnerBasis gb_;
};

/// Ω¹ of S/I: free on dx_i modulo Σ ∂f/∂x_i dx_i for f among the ideal
/// generators, and the ideal multiples f·dx_i.
PresentedModule kaehler_presentation(const QuotientRingPtr& r);

/// ∧^p of a module: p-subsets of generators, relations r∧g_J.  p = 0 gives
/// the ring itself.
PresentedModule exterior_power_presentation(const PresentedModule& m, std::size_t p);

/// Ordered p-subsets of {0..n-1}, lexicographic.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t p);

/// Differential form: coefficients indexed like the generators of Ω^p.
struct FormElement {
  std::size_t degree = 0;
  ModuleVector coords;
};

/// The de Rham complex Ω^•_{S/I}.
class DeRhamComplex {
public:
  explicit DeRhamComplex(QuotientRingPtr r);

  const QuotientRingPtr& base() const noexcept { return base_; }
  std::size_t top_degree() const noexcept { return omega_.size() - 1; }
  const PresentedModule& omega(std::size_t p) const { return omega_.at(p); }

  /// Builds a form from coefficients and reduces it to normal form.
  FormElement form(std::size_t p, ModuleVector coords) const;
  FormElement form(std::size_t p, const std::map<std::string, std::string>& coords) const;
  /// d(Σ a_J dx_J) = Σ_i Σ_J ∂a_J/∂x_i dx_i∧dx_J, on the given coefficient
  /// lifts, then normal form.
  FormElement d(const FormElement& w) const;
  bool is_zero(const FormElement& w) const;
  std::string to_string(const FormElement& w, const std::string& wedge = "^") const;

  /// Degrees 0..n with bases of weight ≤ d_max (dx_i has weight 1).
  FilteredComplex truncated(int d_max) const;
  /// Coordinates of a form in the degree-p basis of a truncation made by
  /// this complex; throws if the form has weight above the truncation.
  qlinalg::Vector vectorize(const FormElement& w, const FilteredComplex& c) const;

private:
  QuotientRingPtr base_;
  std::vector<PresentedModule> omega_;
};

CohomologyReport de_rham_cohomology(const QuotientRingPtr& r, int d_max, int window);

/// Coordinates of a normal-form sparse element in a basis slice; throws if
/// some term is outside the slice.
qlinalg::Vector coordinates(const SparseModuleElement& e, const std::map<std::pair<std::size_t, Monomial>, std::size_t>& index,
                            std::size_t size);

}  // namespace rinehart
