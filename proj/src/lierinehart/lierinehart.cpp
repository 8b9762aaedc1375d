#include "rinehart/lierinehart.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "rinehart/derham.hpp"
#include "rinehart/module.hpp"

namespace rinehart {

using qlinalg::QMatrix;
using qlinalg::Vector;

namespace {

int max_degree(const std::vector<Polynomial>& v) {
  int d = -1;
  for (const auto& p : v) d = std::max(d, p.total_degree());
  return d;
}

std::map<std::vector<std::size_t>, std::size_t> index_of_subsets(std::size_t n, std::size_t p) {
  std::map<std::vector<std::size_t>, std::size_t> idx;
  auto subs = subsets(n, p);
  for (std::size_t k = 0; k < subs.size(); ++k) idx[subs[k]] = k;
  return idx;
}

Polynomial reduce_in(const QuotientRingPtr& q, const Polynomial& p) { return q->reduce(p); }

std::string gen(std::size_t i) { return "e" + std::to_string(i + 1); }

}  // namespace

// --------------------------------------------------------------- derivations

Polynomial apply_derivation(const Derivation& d, const Polynomial& f) {
  Polynomial out(f.ring());
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d[j].is_zero()) continue;
    Polynomial df = f.diff(j);
    if (!df.is_zero()) out += d[j] * df;
  }
  return out;
}

Derivation commutator(const Derivation& a, const Derivation& b) {
  if (a.size() != b.size()) throw InvalidArgument("commutator: derivations over different rings");
  Derivation out;
  for (std::size_t j = 0; j < a.size(); ++j) out.push_back(apply_derivation(a, b[j]) - apply_derivation(b, a[j]));
  return out;
}

std::string derivation_to_string(const Derivation& d, const std::vector<std::string>& vars, const std::string& partial) {
  std::string out;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const Polynomial& c = d[j];
    if (c.is_zero()) continue;
    std::string g = partial + vars.at(j);
    std::string cs = c.to_string();
    std::string piece;
    if (cs == "1")
      piece = g;
    else if (cs == "-1")
      piece = "-" + g;
    else if (c.size() == 1)
      piece = cs + "*" + g;
    else
      piece = "(" + cs + ")*" + g;
    if (out.empty())
      out = piece;
    else if (piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out.empty() ? "0" : out;
}

// ----------------------------------------------------------- LieRinehartAlgebra

LieRinehartAlgebra::LieRinehartAlgebra(QuotientRingPtr base, std::vector<Derivation> anchor,
                                       std::vector<std::vector<std::vector<Polynomial>>> bracket,
                                       std::vector<std::string> names)
    : base_(std::move(base)), anchor_(std::move(anchor)), names_(std::move(names)) {
  if (!base_) throw InvalidArgument("Lie-Rinehart algebra: missing base ring");
  const std::size_t r = anchor_.size(), n = base_->nvars();
  const RingPtr& ring = base_->ring();
  for (auto& a : anchor_) {
    if (a.size() != n) throw InvalidArgument("Lie-Rinehart algebra: anchor row has wrong length");
    for (auto& p : a) p = p.ring() ? base_->reduce(p) : Polynomial(ring);
  }
  if (!bracket.empty() && bracket.size() != r) throw InvalidArgument("Lie-Rinehart algebra: bracket has wrong shape");
  c_.assign(r, std::vector<std::vector<Polynomial>>(r, std::vector<Polynomial>(r, Polynomial(ring))));
  for (std::size_t i = 0; i < r && !bracket.empty(); ++i) {
    if (bracket[i].size() != r) throw InvalidArgument("Lie-Rinehart algebra: bracket has wrong shape");
    for (std::size_t j = i + 1; j < r; ++j) {
      if (bracket[i][j].empty()) continue;
      if (bracket[i][j].size() != r) throw InvalidArgument("Lie-Rinehart algebra: bracket has wrong shape");
      for (std::size_t k = 0; k < r; ++k) {
        const Polynomial& c = bracket[i][j][k];
        if (!c.ring()) continue;
        c_[i][j][k] = base_->reduce(c);
        c_[j][i][k] = -c_[i][j][k];
      }
    }
  }
  if (names_.empty())
    for (std::size_t i = 0; i < r; ++i) names_.push_back("e" + std::to_string(i + 1));
  if (names_.size() != r) throw InvalidArgument("Lie-Rinehart algebra: wrong number of names");
}

LieRinehartAlgebra LieRinehartAlgebra::abelian(QuotientRingPtr base, std::size_t rank) {
  const RingPtr& ring = base->ring();
  std::vector<Derivation> anchor(rank, Derivation(base->nvars(), Polynomial(ring)));
  return LieRinehartAlgebra(std::move(base), std::move(anchor), {});
}

LieRinehartAlgebra LieRinehartAlgebra::lie_algebra(
    QuotientRingPtr base, std::size_t rank,
    const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>>& c) {
  const RingPtr& ring = base->ring();
  std::vector<std::vector<std::vector<Polynomial>>> br(
      rank, std::vector<std::vector<Polynomial>>(rank, std::vector<Polynomial>(rank, Polynomial(ring))));
  for (const auto& [i, j, k, v] : c) {
    if (i >= rank || j >= rank || k >= rank || i == j) throw InvalidArgument("lie_algebra: bad structure constant index");
    if (i < j)
      br[i][j][k] += Polynomial::constant(ring, v);
    else
      br[j][i][k] -= Polynomial::constant(ring, v);
  }
  std::vector<Derivation> anchor(rank, Derivation(base->nvars(), Polynomial(ring)));
  return LieRinehartAlgebra(std::move(base), std::move(anchor), std::move(br));
}

Polynomial LieRinehartAlgebra::anchor_apply(std::size_t i, const Polynomial& f) const {
  return base_->reduce(apply_derivation(anchor_.at(i), f));
}

bool LieRinehartAlgebra::is_abelian() const {
  for (const auto& a : c_)
    for (const auto& b : a)
      for (const auto& p : b)
        if (!p.is_zero()) return false;
  return true;
}

bool LieRinehartAlgebra::has_zero_anchor() const {
  for (const auto& a : anchor_)
    if (max_degree(a) >= 0) return false;
  return true;
}

int LieRinehartAlgebra::degree_shift() const {
  if (has_zero_anchor() && is_abelian()) return 0;
  int d = -1;
  for (const auto& a : anchor_)
    for (const auto& p : a)
      if (!p.is_zero()) d = std::max(d, p.total_degree() - 1);
  for (const auto& a : c_)
    for (const auto& b : a) d = std::max(d, max_degree(b));
  return d;
}

// ------------------------------------------------------------------- axioms

AxiomReport lr_check_axioms(const LieRinehartAlgebra& l) {
  AxiomReport rep;
  const std::size_t r = l.rank(), n = l.nvars();
  const RingPtr& ring = l.ring();
  const auto& base = l.base();

  for (std::size_t i = 0; i < r; ++i)
    for (const auto& g : base->gb().generators()) {
      Polynomial v = l.anchor_apply(i, g);
      if (!v.is_zero()) {
        rep.ideal_preserved = false;
        rep.failures.push_back("anchor of " + gen(i) + " does not preserve the ideal: a(" +
                               gen(i) + ")(" + g.to_string() + ") = " + v.to_string());
      }
    }

  // Jacobi: Σ_cyc [[e_i, e_j], e_k] = 0 with [f X, Y] = f[X, Y] − Y(f) X.
  auto nested = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t b) {
    Polynomial s(ring);
    for (std::size_t a = 0; a < r; ++a)
      if (!l.bracket(i, j, a).is_zero()) s += l.bracket(i, j, a) * l.bracket(a, k, b);
    s -= l.anchor_apply(k, l.bracket(i, j, b));
    return s;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t k = j + 1; k < r; ++k)
        for (std::size_t b = 0; b < r; ++b) {
          Polynomial s = base->reduce(nested(i, j, k, b) + nested(j, k, i, b) + nested(k, i, j, b));
          if (!s.is_zero()) {
            rep.jacobi = false;
            rep.failures.push_back("Jacobi fails on (" + gen(i) + "," + gen(j) + "," +
                                   gen(k) + "): component " + gen(b) + " = " +
                                   s.to_string());
          }
        }

  // a([e_i, e_j]) = [a(e_i), a(e_j)] on the variables.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        Polynomial lhs(ring);
        for (std::size_t k = 0; k < r; ++k) lhs += l.bracket(i, j, k) * l.anchor(k)[m];
        Polynomial rhs = apply_derivation(l.anchor(i), l.anchor(j)[m]) - apply_derivation(l.anchor(j), l.anchor(i)[m]);
        Polynomial diff = base->reduce(lhs - rhs);
        if (!diff.is_zero()) {
          rep.anchor_homomorphism = false;
          rep.failures.push_back("anchor is not a homomorphism on (" + gen(i) + "," +
                                 gen(j) + ") at " + ring->vars()[m] + ": defect " + diff.to_string());
        }
      }

  // Leibniz spot check: a([e_i, f e_j]) = [a(e_i), f a(e_j)] for seeded f.
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (std::size_t i = 0; i < r && rep.anchor_homomorphism; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      Polynomial f = Polynomial::constant(ring, Rational(coeff(rng)));
      for (unsigned d = 1; d <= 2; ++d)
        for (const auto& mono : monomials_of_degree(n, d, ring->order())) f += Polynomial::term(ring, mono, Rational(coeff(rng)));
      for (std::size_t m = 0; m < n; ++m) {
        Polynomial lhs = apply_derivation(l.anchor(i), f) * l.anchor(j)[m];
        for (std::size_t k = 0; k < r; ++k) lhs += f * l.bracket(i, j, k) * l.anchor(k)[m];
        Polynomial rhs = apply_derivation(l.anchor(i), f * l.anchor(j)[m]) - f * apply_derivation(l.anchor(j), l.anchor(i)[m]);
        Polynomial diff = base->reduce(lhs - rhs);
        if (!diff.is_zero()) {
          rep.leibniz = false;
          rep.failures.push_back("Leibniz rule fails on (" + gen(i) + ", f*" + gen(j) +
                                 ") with f = " + f.to_string());
          break;
        }
      }
    }

  rep.ok = rep.jacobi && rep.anchor_homomorphism && rep.leibniz && rep.ideal_preserved;
  return rep;
}

// ------------------------------------------------------------------ modules

LRModule LRModule::trivial(const LieRinehartAlgebra& l) { return quotient(l, l.base()); }

LRModule LRModule::quotient(const LieRinehartAlgebra& l, QuotientRingPtr ring) {
  LRModule e;
  const RingPtr& rr = ring->ring();
  e.ring = std::move(ring);
  e.rank = 1;
  e.connection.assign(l.rank(), {{Polynomial(rr)}});
  return e;
}

int LRModule::degree() const {
  int d = -1;
  for (const auto& a : connection)
    for (const auto& row : a) d = std::max(d, max_degree(row));
  return d;
}

namespace {

void check_module_shape(const LieRinehartAlgebra& l, const LRModule& e) {
  if (!e.ring) throw InvalidArgument("coefficient module: missing ring");
  if (!(*e.ring->ring() == *l.ring())) throw InvalidArgument("coefficient module: ring differs from the base ring");
  if (e.connection.size() != l.rank()) throw InvalidArgument("coefficient module: need one connection matrix per generator");
  for (const auto& a : e.connection) {
    if (a.size() != e.rank) throw InvalidArgument("coefficient module: connection matrix has wrong size");
    for (const auto& row : a)
      if (row.size() != e.rank) throw InvalidArgument("coefficient module: connection matrix has wrong size");
  }
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b, const RingPtr& ring) {
  std::size_t m = a.size();
  PolyMatrix out(m, std::vector<Polynomial>(m, Polynomial(ring)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

}  // namespace

FlatnessReport connection_flatness(const LieRinehartAlgebra& l, const LRModule& e) {
  check_module_shape(l, e);
  FlatnessReport rep;
  const RingPtr& ring = l.ring();
  const std::size_t r = l.rank(), m = e.rank;

  for (const auto& g : l.base()->gb().generators())
    if (!e.ring->is_zero(g)) {
      rep.contains_base_ideal = false;
      rep.failures.push_back("coefficient ideal does not contain " + g.to_string());
    }
  for (std::size_t i = 0; i < r; ++i)
    for (const auto& g : e.ring->gb().generators()) {
      Polynomial v = e.ring->reduce(apply_derivation(l.anchor(i), g));
      if (!v.is_zero()) {
        rep.ideal_preserved = false;
        rep.failures.push_back("anchor of e" + std::to_string(i + 1) + " does not preserve the coefficient ideal at " +
                               g.to_string());
      }
    }

  for (std::size_t i = 0; i < r && rep.flat; ++i)
    for (std::size_t j = i + 1; j < r && rep.flat; ++j) {
      PolyMatrix curv = mat_mul(e.connection[i], e.connection[j], ring);
      PolyMatrix ji = mat_mul(e.connection[j], e.connection[i], ring);
      bool zero = true;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          Polynomial& c = curv[a][b];
          c -= ji[a][b];
          c += apply_derivation(l.anchor(i), e.connection[j][a][b]);
          c -= apply_derivation(l.anchor(j), e.connection[i][a][b]);
          for (std::size_t k = 0; k < r; ++k)
            if (!l.bracket(i, j, k).is_zero()) c -= l.bracket(i, j, k) * e.connection[k][a][b];
          c = e.ring->reduce(c);
          if (!c.is_zero()) zero = false;
        }
      if (!zero) {
        rep.flat = false;
        rep.i = i;
        rep.j = j;
        for (const auto& row : curv) {
          std::vector<std::string> s;
          for (const auto& c : row) s.push_back(c.to_string());
          rep.curvature.push_back(std::move(s));
        }
        rep.failures.push_back("curvature of (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ") is nonzero");
      }
    }
  return rep;
}

// ----------------------------------------------------------- Chevalley–Eilenberg

Cochain ce_differential(const LieRinehartAlgebra& l, const LRModule& e, std::size_t p, const Cochain& w) {
  check_module_shape(l, e);
  const std::size_t r = l.rank(), m = e.rank;
  const RingPtr& ring = l.ring();
  auto in_subs = subsets(r, p);
  if (w.size() != in_subs.size()) throw InvalidArgument("ce_differential: cochain has wrong number of components");
  for (const auto& v : w)
    if (v.size() != m) throw InvalidArgument("ce_differential: cochain value has wrong length");
  if (p >= r) return {};
  auto in_idx = index_of_subsets(r, p);
  auto zero_ok = [&](const Polynomial& q) { return q.ring() ? q : Polynomial(ring); };

  Cochain out;
  for (const auto& K : subsets(r, p + 1)) {
    std::vector<Polynomial> acc(m, Polynomial(ring));
    for (std::size_t t = 0; t <= p; ++t) {
      const std::size_t i = K[t];
      std::vector<std::size_t> rest;
      for (std::size_t u = 0; u <= p; ++u)
        if (u != t) rest.push_back(K[u]);
      const auto& v = w[in_idx.at(rest)];
      for (std::size_t s = 0; s < m; ++s) {
        Polynomial nab = apply_derivation(l.anchor(i), zero_ok(v[s]));
        for (std::size_t s2 = 0; s2 < m; ++s2)
          if (!e.connection[i][s][s2].is_zero() && v[s2].ring()) nab += e.connection[i][s][s2] * v[s2];
        if (t % 2) acc[s] -= nab;
        else acc[s] += nab;
      }
    }
    for (std::size_t t = 0; t <= p; ++t)
      for (std::size_t u = t + 1; u <= p; ++u) {
        std::vector<std::size_t> rest;
        for (std::size_t x = 0; x <= p; ++x)
          if (x != t && x != u) rest.push_back(K[x]);
        for (std::size_t k = 0; k < r; ++k) {
          const Polynomial& c = l.bracket(K[t], K[u], k);
          if (c.is_zero() || std::find(rest.begin(), rest.end(), k) != rest.end()) continue;
          std::size_t pos = static_cast<std::size_t>(std::lower_bound(rest.begin(), rest.end(), k) - rest.begin());
          std::vector<std::size_t> sorted = rest;
          sorted.insert(sorted.begin() + static_cast<std::ptrdiff_t>(pos), k);
          bool negative = ((t + u + pos) % 2) != 0;
          const auto& v = w[in_idx.at(sorted)];
          for (std::size_t s = 0; s < m; ++s) {
            if (!v[s].ring() || v[s].is_zero()) continue;
            Polynomial term = c * v[s];
            if (negative) acc[s] -= term;
            else acc[s] += term;
          }
        }
      }
    for (auto& a : acc) a = reduce_in(e.ring, a);
    out.push_back(std::move(acc));
  }
  return out;
}

int ce_degree_shift(const LieRinehartAlgebra& l, const LRModule& e) {
  if (e.degree() < 0) return l.degree_shift();
  if (l.has_zero_anchor() && l.is_abelian()) return e.degree();
  return std::max(l.degree_shift(), e.degree());
}

FilteredComplex ce_complex(const LieRinehartAlgebra& l, const LRModule& e, int d_max) {
  check_module_shape(l, e);
  if (d_max < 0) throw InvalidArgument("ce_complex: d_max must be non-negative");
  const std::size_t r = l.rank(), m = e.rank;
  const RingPtr& ring = l.ring();
  const int delta = ce_degree_shift(l, e);
  const MonomialOrder& ord = ring->order();

  FilteredComplex c;
  c.ring = ring;
  std::vector<std::map<std::pair<std::size_t, Monomial>, std::size_t>> index(r + 1);
  for (std::size_t p = 0; p <= r; ++p) {
    GradedBasis b;
    auto subs = subsets(r, p);
    for (const auto& I : subs)
      for (std::size_t s = 0; s < m; ++s) {
        std::vector<std::string> name;
        for (std::size_t i : I) name.push_back("e" + std::to_string(i + 1) + "*");
        if (m > 1) name.push_back("[v" + std::to_string(s + 1) + "]");
        b.generator_names.push_back(std::move(name));
      }
    const int shift = static_cast<int>(p) * delta;
    std::vector<Monomial> monos;
    if (d_max + shift >= 0) monos = e.ring->standard_monomials(static_cast<unsigned>(d_max + shift));
    for (std::size_t g = 0; g < subs.size() * m; ++g)
      for (const auto& mono : monos) b.elems.push_back({g, mono, static_cast<int>(mono.degree()) - shift});
    std::stable_sort(b.elems.begin(), b.elems.end(), [&](const BasisElement& x, const BasisElement& y) {
      if (x.weight != y.weight) return x.weight < y.weight;
      if (x.generator != y.generator) return x.generator < y.generator;
      return ord.compare(x.mono, y.mono) > 0;
    });
    for (std::size_t k = 0; k < b.elems.size(); ++k) index[p][{b.elems[k].generator, b.elems[k].mono}] = k;
    c.bases.push_back(std::move(b));
  }

  for (std::size_t p = 0; p < r; ++p) {
    const std::size_t ncomp = subsets(r, p).size();
    QMatrix mat(c.bases[p + 1].size(), c.bases[p].size());
    for (std::size_t col = 0; col < c.bases[p].size(); ++col) {
      const BasisElement& be = c.bases[p].elems[col];
      Cochain w(ncomp, std::vector<Polynomial>(m, Polynomial(ring)));
      w[be.generator / m][be.generator % m] = Polynomial::term(ring, be.mono, Rational(1));
      Cochain dw = ce_differential(l, e, p, w);
      for (std::size_t k = 0; k < dw.size(); ++k)
        for (std::size_t s = 0; s < m; ++s)
          for (const auto& t : dw[k][s].terms()) {
            auto it = index[p + 1].find({k * m + s, t.mono});
            if (it == index[p + 1].end()) throw InvariantViolation("Chevalley-Eilenberg differential left the truncation");
            mat.set(it->second, col, t.coeff);
          }
    }
    c.d.push_back(std::move(mat));
  }
  return c;
}

CohomologyReport ce_cohomology(const LieRinehartAlgebra& l, const LRModule& e, int d_max, int window) {
  if (window < 0 || d_max < window) throw InvalidArgument("ce_cohomology: need d_max >= window >= 0");
  FlatnessReport flat = connection_flatness(l, e);
  if (!flat.contains_base_ideal) throw InvalidArgument("ce_cohomology: coefficient ideal must contain the base ideal");
  if (!flat.ideal_preserved) throw InvalidArgument("ce_cohomology: anchor does not preserve the coefficient ideal");
  if (!flat.flat) throw InvariantViolation("ce_cohomology: connection is not flat; " + flat.failures.front());
  FilteredComplex c = ce_complex(l, e, d_max);
  c.verify();
  CohomologyReport rep = filtered_cohomology(c, d_max, window);
  if (e.ring->is_finite_dimensional()) {
    // everything fits below the top level once the basis is finite
    rep.notes.push_back("coefficient ring is finite dimensional");
  }
  return rep;
}

// ------------------------------------------------------------------- Saito

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw InvalidArgument("determinant: matrix is not square");
  if (n == 0) return Polynomial::constant(ring, Rational(1));
  if (n == 1) return m[0][0];
  Polynomial out(ring);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial t = m[0][c] * determinant(minor, ring);
    if (c % 2) out -= t;
    else out += t;
  }
  return out;
}

bool saito_check(const std::vector<Derivation>& gens, const Polynomial& f) {
  const std::size_t n = f.ring()->nvars();
  if (gens.size() != n) throw InvalidArgument("saito_check: need exactly one derivation per variable");
  Polynomial det = determinant(gens, f.ring());
  if (det.is_zero() || f.is_zero()) return false;
  return det * f.leading_coeff() == f * det.leading_coeff();
}

std::vector<std::vector<std::vector<Polynomial>>> bracket_structure_constants(const std::vector<Derivation>& gens,
                                                                               const QuotientRingPtr& base) {
  const std::size_t r = gens.size(), n = base->nvars();
  const RingPtr& ring = base->ring();
  std::vector<ModuleVector> g;
  for (const auto& d : gens) {
    ModuleVector v;
    for (const auto& p : d) v.push_back(base->reduce(p));
    g.push_back(std::move(v));
  }
  std::vector<ModuleVector> rel;
  for (const auto& h : base->gb().generators())
    for (std::size_t p = 0; p < n; ++p) {
      ModuleVector v(n, Polynomial(ring));
      v[p] = h;
      rel.push_back(std::move(v));
    }
  std::vector<std::vector<std::vector<Polynomial>>> c(
      r, std::vector<std::vector<Polynomial>>(r, std::vector<Polynomial>(r, Polynomial(ring))));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      Derivation comm = commutator(gens[i], gens[j]);
      for (auto& p : comm) p = base->reduce(p);
      auto lift = module_lift(ring, n, g, rel, comm);
      if (!lift)
        throw InvariantViolation("bracket of generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                 " is not in their span");
      for (std::size_t k = 0; k < r; ++k) {
        c[i][j][k] = base->reduce((*lift)[k]);
        c[j][i][k] = -c[i][j][k];
      }
    }
  return c;
}

// --------------------------------------------------------- log derivations

namespace {

ModuleOrder pot(const RingPtr& ring) { return ModuleOrder::position_over_term(ring->order()); }

/// Leading term under position over term: first nonzero slot.
std::pair<std::size_t, const Term*> pot_lead(const Derivation& d) {
  for (std::size_t k = 0; k < d.size(); ++k)
    if (!d[k].is_zero()) return {k, &d[k].leading_term()};
  return {d.size(), nullptr};
}

Derivation monic_vector(Derivation d) {
  auto [pos, t] = pot_lead(d);
  if (!t) return d;
  Rational inv = Rational(1) / t->coeff;
  for (auto& p : d) p *= inv;
  return d;
}

void sort_descending(std::vector<Derivation>& v, const RingPtr& ring) {
  ModuleOrder ord = pot(ring);
  std::stable_sort(v.begin(), v.end(), [&](const Derivation& a, const Derivation& b) {
    auto [pa, ta] = pot_lead(a);
    auto [pb, tb] = pot_lead(b);
    if (!ta || !tb) return ta != nullptr;
    return ord.compare(pa, ta->mono, pb, tb->mono) > 0;
  });
}

bool same_vector(const Derivation& a, const Derivation& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!(a[k] == b[k])) return false;
  return true;
}

bool generates(const RingPtr& ring, std::size_t n, const std::vector<ModuleVector>& basis,
               const std::vector<ModuleVector>& rel, const std::vector<ModuleVector>& targets) {
  for (const auto& t : targets)
    if (!module_lift(ring, n, basis, rel, t)) return false;
  return true;
}

bool independent_mod(const RingPtr& ring, std::size_t n, const std::vector<ModuleVector>& basis,
                     const std::vector<ModuleVector>& rel, const QuotientRingPtr& q) {
  std::vector<ModuleVector> all = basis;
  all.insert(all.end(), rel.begin(), rel.end());
  for (const auto& syz : syzygy_basis(ring, n, all))
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!q->is_zero(syz[k])) return false;
  return true;
}

template <class F>
bool for_each_subset(std::size_t n, std::size_t k, std::size_t budget, F&& f) {
  std::size_t visited = 0;
  for (const auto& s : subsets(n, k)) {
    if (++visited > budget) return false;
    if (f(s)) return true;
  }
  return false;
}

constexpr std::size_t kSubsetBudget = 20000;

}  // namespace

LogDerivations log_derivations(const Polynomial& f) {
  if (!f.ring()) throw InvalidArgument("log_derivations: polynomial without a ring");
  if (f.is_zero() || f.is_constant()) throw InvalidArgument("log_derivations: f must be a non-constant polynomial");
  const RingPtr& ring = f.ring();
  const std::size_t n = ring->nvars();
  LogDerivations out;
  out.f = f;

  std::vector<Polynomial> grad;
  for (std::size_t i = 0; i < n; ++i) grad.push_back(f.diff(i));
  grad.push_back(f);
  for (auto& s : syzygy_basis(grad)) {
    s.pop_back();
    out.raw_generators.push_back(std::move(s));
  }
  for (const auto& d : out.raw_generators) {
    Polynomial q = divide(apply_derivation(d, f), {f}).remainder;
    if (!q.is_zero()) throw InvariantViolation("log_derivations: generator does not preserve (f)");
  }

  std::vector<ModuleVector> gens = out.raw_generators;
  for (std::size_t i = 0; i < n; ++i) {
    ModuleVector v(n, Polynomial(ring));
    v[i] = f;
    gens.push_back(std::move(v));
  }
  out.module_basis = ModuleGroebnerBasis::compute(ring, n, gens, pot(ring)).basis();

  // Saito: n candidates whose determinant is a unit multiple of f.
  std::vector<Derivation> cand = out.module_basis;
  for (const auto& d : out.raw_generators)
    if (std::none_of(cand.begin(), cand.end(), [&](const Derivation& c) { return same_vector(c, d); })) cand.push_back(d);
  if (cand.size() >= n) {
    for_each_subset(cand.size(), n, kSubsetBudget, [&](const std::vector<std::size_t>& s) {
      std::vector<Derivation> pick;
      for (std::size_t k : s) pick.push_back(cand[k]);
      if (!saito_check(pick, f)) return false;
      for (auto& d : pick) d = monic_vector(std::move(d));
      sort_descending(pick, ring);
      out.saito_basis = std::move(pick);
      return true;
    });
  }

  // Divisor algebroid over S/(f).
  out.divisor_ring = QuotientRing::create(ring, {f});
  const QuotientRingPtr& q = out.divisor_ring;
  std::vector<ModuleVector> images;
  for (const auto& d : out.module_basis) {
    ModuleVector v;
    bool zero = true;
    for (const auto& p : d) {
      v.push_back(q->reduce(p));
      if (!v.back().is_zero()) zero = false;
    }
    if (zero) continue;
    if (std::none_of(images.begin(), images.end(), [&](const ModuleVector& c) { return same_vector(c, v); }))
      images.push_back(std::move(v));
  }
  std::vector<ModuleVector> rel;
  for (const auto& g : q->gb().generators())
    for (std::size_t p = 0; p < n; ++p) {
      ModuleVector v(n, Polynomial(ring));
      v[p] = g;
      rel.push_back(std::move(v));
    }
  for (std::size_t k = 1; k <= std::min(images.size(), n) && !out.divisor_basis; ++k) {
    for_each_subset(images.size(), k, kSubsetBudget, [&](const std::vector<std::size_t>& s) {
      std::vector<ModuleVector> basis;
      for (std::size_t i : s) basis.push_back(images[i]);
      if (!generates(ring, n, basis, rel, images)) return false;
      if (!independent_mod(ring, n, basis, rel, q)) return false;
      out.divisor_basis = std::move(basis);
      return true;
    });
  }
  if (out.divisor_basis) {
    // Lower degrees where a monomial multiple still generates, e.g. x·(1, −y²) ≡ (x, −y).
    auto& basis = *out.divisor_basis;
    std::vector<Monomial> multipliers;
    for (unsigned d = 1; d <= 2; ++d)
      for (auto& m : monomials_of_degree(n, d, ring->order())) multipliers.push_back(std::move(m));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      bool improved = true;
      for (int round = 0; improved && round < 8; ++round) {
        improved = false;
        for (const auto& mono : multipliers) {
          ModuleVector cand_v;
          for (const auto& p : basis[b]) cand_v.push_back(q->reduce(p.times_monomial(mono)));
          if (max_degree(cand_v) < 0 || max_degree(cand_v) >= max_degree(basis[b])) continue;
          std::vector<ModuleVector> trial = basis;
          trial[b] = cand_v;
          if (!generates(ring, n, trial, rel, {basis[b]})) continue;
          basis[b] = std::move(cand_v);
          improved = true;
          break;
        }
      }
    }
    for (auto& d : basis) d = monic_vector(std::move(d));
    sort_descending(basis, ring);
  }

  std::vector<std::string> vars = ring->vars();
  auto names_of = [&](const std::vector<Derivation>& b) {
    std::vector<std::string> s;
    for (const auto& d : b) s.push_back(derivation_to_string(d, vars));
    return s;
  };
  if (out.divisor_basis) {
    out.kind = LogAlgebroidKind::Divisor;
    const auto& b = *out.divisor_basis;
    out.algebra = LieRinehartAlgebra(q, b, bracket_structure_constants(b, q), names_of(b));
  } else if (out.saito_basis) {
    out.kind = LogAlgebroidKind::Ambient;
    const auto& b = *out.saito_basis;
    QuotientRingPtr s = QuotientRing::polynomial_ring(ring);
    out.algebra = LieRinehartAlgebra(s, b, bracket_structure_constants(b, s), names_of(b));
  } else {
    throw NotCertifiedFree("log derivations of " + f.to_string() + " are not certified free", names_of(out.raw_generators));
  }
  return out;
}

}  // namespace rinehart
