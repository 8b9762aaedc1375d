#pragma once

#include <cstddef>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "rinehart/complex.hpp"
#include "rinehart/error.hpp"
#include "rinehart/groebner.hpp"

namespace rinehart {

/// Derivation of ℚ[x_1..x_n], stored by its values on the variables.
using Derivation = std::vector<Polynomial>;

Polynomial apply_derivation(const Derivation& d, const Polynomial& f);
/// [a, b](x_j) = a(b(x_j)) − b(a(x_j))
Derivation commutator(const Derivation& a, const Derivation& b);
/// e.g. "x*∂x - y*∂y" with partial = "∂", or "x*d/dx - y*d/dy" with partial = "d/d".
std::string derivation_to_string(const Derivation& d, const std::vector<std::string>& vars,
                                 const std::string& partial = "∂");

/// Free Lie–Rinehart algebra of finite rank over S/I: anchor rows a(e_i)(x_j)
/// and structure functions [e_i, e_j] = Σ_k c_ij^k e_k.
class LieRinehartAlgebra {
public:
  LieRinehartAlgebra() = default;
  /// `bracket[i][j][k]` for i < j; other entries are ignored and filled by
  /// antisymmetry.  Everything is reduced modulo the base ideal.
  LieRinehartAlgebra(QuotientRingPtr base, std::vector<Derivation> anchor,
                     std::vector<std::vector<std::vector<Polynomial>>> bracket,
                     std::vector<std::string> names = {});

  /// Zero anchor and zero bracket.
  static LieRinehartAlgebra abelian(QuotientRingPtr base, std::size_t rank);
  /// Zero anchor, constant structure constants given as (i, j, k, c) with
  /// 0-based indices, i < j.
  static LieRinehartAlgebra lie_algebra(QuotientRingPtr base, std::size_t rank,
                                        const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>>& c);

  const QuotientRingPtr& base() const noexcept { return base_; }
  const RingPtr& ring() const noexcept { return base_->ring(); }
  std::size_t rank() const noexcept { return anchor_.size(); }
  std::size_t nvars() const noexcept { return base_->nvars(); }
  const Derivation& anchor(std::size_t i) const { return anchor_.at(i); }
  const std::vector<Derivation>& anchors() const noexcept { return anchor_; }
  /// c_ij^k (antisymmetric in i, j).
  const Polynomial& bracket(std::size_t i, std::size_t j, std::size_t k) const { return c_.at(i).at(j).at(k); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// a(e_i)(f), reduced modulo the base ideal.
  Polynomial anchor_apply(std::size_t i, const Polynomial& f) const;
  bool is_abelian() const;
  bool has_zero_anchor() const;
  /// max(deg a(e_i)(x_j) − 1, deg c_ij^k) over nonzero entries, 0 if there are
  /// none: the most a structure map can raise degree.  −1 for ∂x.
  int degree_shift() const;

private:
  QuotientRingPtr base_;
  std::vector<Derivation> anchor_;
  std::vector<std::vector<std::vector<Polynomial>>> c_;
  std::vector<std::string> names_;
};

struct AxiomReport {
  bool ok = true;
  bool jacobi = true;
  bool anchor_homomorphism = true;
  bool leibniz = true;
  bool ideal_preserved = true;
  std::vector<std::string> failures;
};

/// Jacobi on generator triples, anchor–bracket compatibility on variables,
/// preservation of the base ideal by the anchor, and a seeded spot check of
/// the Leibniz rule on f·e_j.
AxiomReport lr_check_axioms(const LieRinehartAlgebra& l);

/// Coefficient module E = (S/J)^m with connection ∇_i v = a(e_i)(v) + A_i v.
struct LRModule {
  QuotientRingPtr ring;
  std::size_t rank = 1;
  /// connection[i][row][col] = (A_i)_{row,col}
  std::vector<std::vector<std::vector<Polynomial>>> connection;

  /// E = base ring of L, A = 0.
  static LRModule trivial(const LieRinehartAlgebra& l);
  /// E = S/J of rank 1 with A = 0.
  static LRModule quotient(const LieRinehartAlgebra& l, QuotientRingPtr ring);
  int degree() const;
};

struct FlatnessReport {
  bool flat = true;
  bool ideal_preserved = true;
  bool contains_base_ideal = true;
  std::size_t i = 0, j = 0;
  /// Curvature matrix of the first failing pair, rendered.
  std::vector<std::vector<std::string>> curvature;
  std::vector<std::string> failures;
};

FlatnessReport connection_flatness(const LieRinehartAlgebra& l, const LRModule& e);

/// E-valued alternating p-cochain: values on the increasing p-subsets of the
/// basis (lexicographic order), each a vector of length rank(E).
using Cochain = std::vector<std::vector<Polynomial>>;

Cochain ce_differential(const LieRinehartAlgebra& l, const LRModule& e, std::size_t p, const Cochain& w);

/// Degrees 0..r; a basis element μ·ε_I⊗v_s has weight deg μ − p·δ with δ the
/// combined degree shift (see degree_shift, together with deg A), so the
/// differential never raises weight.
FilteredComplex ce_complex(const LieRinehartAlgebra& l, const LRModule& e, int d_max);
int ce_degree_shift(const LieRinehartAlgebra& l, const LRModule& e);

CohomologyReport ce_cohomology(const LieRinehartAlgebra& l, const LRModule& e, int d_max, int window);

/// True iff det(rows of gens) = c·f for a nonzero rational c.  Requires
/// exactly n derivations over n variables.
bool saito_check(const std::vector<Derivation>& gens, const Polynomial& f);
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring);

/// c_ij^k with [D_i, D_j] = Σ_k c_ij^k D_k over `base`.  Throws
/// InvariantViolation when a commutator is outside the span.
std::vector<std::vector<std::vector<Polynomial>>> bracket_structure_constants(const std::vector<Derivation>& gens,
                                                                               const QuotientRingPtr& base);

class NotCertifiedFree : public Error {
public:
  NotCertifiedFree(const std::string& what, std::vector<std::string> generators)
      : Error(what), generators_(std::move(generators)) {}
  const std::vector<std::string>& generators() const noexcept { return generators_; }

private:
  std::vector<std::string> generators_;
};

enum class LogAlgebroidKind {
  /// Free over S/(f): the image of T(−log f) in Der(S/(f)).
  Divisor,
  /// Free over S, certified by Saito's criterion.
  Ambient,
};

struct LogDerivations {
  Polynomial f;
  /// First n coordinates of the syzygies of (∂_1 f, …, ∂_n f, f).
  std::vector<Derivation> raw_generators;
  /// Reduced Gröbner basis of T(−log f) over S (position over term).
  std::vector<Derivation> module_basis;
  std::optional<std::vector<Derivation>> saito_basis;
  std::optional<std::vector<Derivation>> divisor_basis;
  QuotientRingPtr divisor_ring;
  LogAlgebroidKind kind = LogAlgebroidKind::Ambient;
  LieRinehartAlgebra algebra;
};

/// Logarithmic derivations of f.  The result prefers the free divisor
/// algebroid over S/(f) and falls back to a Saito basis over S; throws
/// NotCertifiedFree when neither exists.
LogDerivations log_derivations(const Polynomial& f);

}  // namespace rinehart
