#pragma once

// Cochain complexes of finite-dimensional ℚ-spaces carrying an increasing
// filtration by integer weights, and their truncated cohomology.
//
// Each degree has a basis sorted by weight, so the level-d truncation of a
// degree is a prefix of its basis and the truncated differentials are
// top-left blocks of the full ones.

#include <cstddef>
#include <string>
#include <vector>

#include "rinehart/polynomial.hpp"
#include "rinehart/qlinalg.hpp"

namespace rinehart {

/// mono · generator, where generators are named per degree.
struct BasisElement {
  std::size_t generator = 0;
  Monomial mono;
  int weight = 0;
};

struct GradedBasis {
  std::vector<BasisElement> elems;
  /// Generator names as factor lists, e.g. {"dx", "dy"} for dx∧dy; an
  /// empty list is the unit generator.
  std::vector<std::vector<std::string>> generator_names;

  std::size_t size() const noexcept { return elems.size(); }
  /// Number of elements of weight ≤ level.
  std::size_t prefix(int level) const;
};

struct FilteredComplex {
  RingPtr ring;  // for rendering monomials
  std::vector<GradedBasis> bases;
  /// d[p] : C^p → C^{p+1}, a dim C^{p+1} × dim C^p matrix.
  std::vector<qlinalg::QMatrix> d;

  std::size_t degrees() const noexcept { return bases.size(); }
  /// Throws InvariantViolation if d∘d ≠ 0 or some differential raises weight.
  void verify() const;
  bool d_squared_zero() const;
  bool filtration_compatible() const;
};

/// Per-level evidence used for stabilization.
struct LevelData {
  int level = 0;
  std::vector<std::size_t> chain_dims;
  std::vector<std::size_t> dims;
  /// Rank of H^p(level) → H^p(level + 1); empty for the last level.
  std::vector<std::size_t> comparison_ranks;
};

struct CohomologyReport {
  std::vector<std::size_t> dims;
  std::vector<bool> stabilized;
  /// Per degree, whether the truncation is known to compute the true
  /// answer in that degree (used by the order-truncated complexes).
  std::vector<bool> faithful;
  std::vector<std::vector<qlinalg::Vector>> representative_vectors;
  std::vector<std::vector<std::string>> representatives;
  int d_max = 0;
  int window = 0;
  std::vector<LevelData> levels;
  bool d_squared_zero = true;
  std::vector<std::string> notes;

  bool all_stabilized() const;
};

/// Cohomology of the truncations at levels d_max − window .. d_max.
/// Representatives come from the top level.
CohomologyReport filtered_cohomology(const FilteredComplex& c, int d_max, int window);

/// Cohomology of a complex without filtration (single level).
CohomologyReport plain_cohomology(const FilteredComplex& c);

/// Σ coeff·mono·generator, grouped per generator; `wedge` joins factors.
std::string render_vector(const FilteredComplex& c, std::size_t degree, const qlinalg::Vector& v,
                          const std::string& wedge = "^");

/// Dimension of the cohomology classes spanned by `vectors` in degree p at
/// the top level, i.e. rank of their images in Z/B.  Vectors must be cocycles.
std::size_t class_rank(const FilteredComplex& c, std::size_t p, const std::vector<qlinalg::Vector>& vectors);

}  // namespace rinehart
