#pragma once

// Submodules of free modules S^m over a polynomial ring, Gröbner bases for
// them, syzygies and lifts.  Ideals are the rank-1 case.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rinehart/polynomial.hpp"

namespace rinehart {

using ModuleVector = std::vector<Polynomial>;

enum class ModuleOrderKind {
  /// Lower position first (e_0 > e_1 > ...), then the monomial order.
  PositionOverTerm,
  /// weight[pos] + deg(mono) first, then position, then the monomial order.
  /// Degree compatible, which makes degree truncations well defined.
  WeightedDegree,
};

class ModuleOrder {
public:
  ModuleOrder() = default;
  static ModuleOrder position_over_term(MonomialOrder mono);
  static ModuleOrder weighted_degree(MonomialOrder mono, std::vector<int> weights);

  ModuleOrderKind kind() const noexcept { return kind_; }
  const MonomialOrder& monomial_order() const noexcept { return mono_; }
  int weight(std::size_t pos) const { return weights_.empty() ? 0 : weights_.at(pos); }

  int compare(std::size_t pa, const Monomial& a, std::size_t pb, const Monomial& b) const;

private:
  ModuleOrderKind kind_ = ModuleOrderKind::PositionOverTerm;
  MonomialOrder mono_;
  std::vector<int> weights_;
};

struct ModuleTerm {
  std::size_t pos;
  Monomial mono;
  Rational coeff;
};

/// Terms sorted descending under a ModuleOrder, no zero coefficients.
using SparseModuleElement = std::vector<ModuleTerm>;

SparseModuleElement to_sparse(const ModuleVector& v, const ModuleOrder& order);
ModuleVector from_sparse(const SparseModuleElement& e, const RingPtr& ring, std::size_t rank);
SparseModuleElement sort_terms(std::vector<ModuleTerm> terms, const ModuleOrder& order);

/// Full reduction of f against `basis` (whose elements need not be monic).
SparseModuleElement module_reduce(SparseModuleElement f, const std::vector<SparseModuleElement>& basis,
                                  const ModuleOrder& order);

/// Reduced, monic Gröbner basis sorted ascending by leading term.
std::vector<SparseModuleElement> module_buchberger(std::vector<SparseModuleElement> gens,
                                                   const ModuleOrder& order, std::size_t rank);

class ModuleGroebnerBasis {
public:
  ModuleGroebnerBasis() = default;
  static ModuleGroebnerBasis compute(RingPtr ring, std::size_t rank, const std::vector<ModuleVector>& gens,
                                     const ModuleOrder& order);
  static ModuleGroebnerBasis compute(RingPtr ring, std::size_t rank, const std::vector<ModuleVector>& gens);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t rank() const noexcept { return rank_; }
  const ModuleOrder& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return elems_.size(); }
  const std::vector<SparseModuleElement>& elements() const noexcept { return elems_; }
  std::vector<ModuleVector> basis() const;

  ModuleVector normal_form(const ModuleVector& v) const;
  SparseModuleElement normal_form(SparseModuleElement v) const;
  bool contains(const ModuleVector& v) const;
  /// True when (pos, m) is not divisible by any leading term.
  bool is_standard(std::size_t pos, const Monomial& m) const;

private:
  RingPtr ring_;
  std::size_t rank_ = 0;
  ModuleOrder order_;
  std::vector<SparseModuleElement> elems_;
};

/// Generators of { g : Σ g_i v_i = 0 } for vectors v_i in S^rank, as a
/// reduced position-over-term basis of the syzygy module, largest leading
/// term first.
std::vector<ModuleVector> syzygy_basis(const RingPtr& ring, std::size_t rank,
                                       const std::vector<ModuleVector>& vectors);
/// Ideal case: syzygies of polynomials.
std::vector<ModuleVector> syzygy_basis(const std::vector<Polynomial>& v);

/// Coefficients c with target = Σ c_i generators_i modulo the submodule
/// spanned by `relations`, or nullopt when target is not in the sum.
std::optional<std::vector<Polynomial>> module_lift(const RingPtr& ring, std::size_t rank,
                                                   const std::vector<ModuleVector>& generators,
                                                   const std::vector<ModuleVector>& relations,
                                                   const ModuleVector& target);

std::string module_vector_to_string(const ModuleVector& v);

}  // namespace rinehart
