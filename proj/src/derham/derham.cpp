#include "rinehart/derham.hpp"

#include <algorithm>

#include "rinehart/error.hpp"

namespace rinehart {

using qlinalg::QMatrix;
using qlinalg::Vector;

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  if (p > n) return out;
  std::vector<std::size_t> cur(p);
  for (std::size_t i = 0; i < p; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t k = p;
    while (k > 0 && cur[k - 1] == n - p + k - 1) --k;
    if (k == 0) break;
    ++cur[k - 1];
    for (std::size_t j = k; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// ------------------------------------------------------------ PresentedModule

PresentedModule::PresentedModule(QuotientRingPtr base, std::vector<std::vector<std::string>> generator_names,
                                 std::vector<int> weights, std::vector<ModuleVector> relations)
    : base_(std::move(base)),
      names_(std::move(generator_names)),
      weights_(std::move(weights)),
      relations_(std::move(relations)) {
  if (weights_.size() != names_.size()) throw InvalidArgument("presented module: weights do not match generators");
  const RingPtr& ring = base_->ring();
  std::vector<ModuleVector> rows = relations_;
  for (const auto& f : base_->gb().generators()) {
    for (std::size_t g = 0; g < rank(); ++g) {
      ModuleVector v(rank(), Polynomial(ring));
      v[g] = f;
      rows.push_back(std::move(v));
    }
  }
  gb_ = ModuleGroebnerBasis::compute(ring, rank(), rows, ModuleOrder::weighted_degree(ring->order(), weights_));
}

std::vector<BasisElement> PresentedModule::slice(int level) const {
  const RingPtr& ring = base_->ring();
  std::vector<BasisElement> out;
  for (std::size_t g = 0; g < rank(); ++g) {
    int budget = level - weights_[g];
    for (int k = 0; k <= budget; ++k)
      for (auto& m : monomials_of_degree(ring->nvars(), static_cast<unsigned>(k), ring->order()))
        if (gb_.is_standard(g, m)) out.push_back({g, std::move(m), weights_[g] + k});
  }
  const ModuleOrder& ord = gb_.order();
  std::stable_sort(out.begin(), out.end(), [&](const BasisElement& a, const BasisElement& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return ord.compare(a.generator, a.mono, b.generator, b.mono) > 0;
  });
  return out;
}

PresentedModule kaehler_presentation(const QuotientRingPtr& r) {
  const RingPtr& ring = r->ring();
  const std::size_t n = ring->nvars();
  std::vector<std::vector<std::string>> names;
  for (const auto& v : ring->vars()) names.push_back({"d" + v});
  std::vector<ModuleVector> rel;
  for (const auto& f : r->ideal_generators()) {
    if (f.is_zero()) continue;
    ModuleVector row;
    for (std::size_t i = 0; i < n; ++i) row.push_back(f.diff(i));
    rel.push_back(std::move(row));
  }
  return PresentedModule(r, std::move(names), std::vector<int>(n, 1), std::move(rel));
}

namespace {

// position of `i` inside sorted J ∪ {i}, and the merged subset; nullopt if i ∈ J
std::optional<std::pair<std::size_t, std::vector<std::size_t>>> insert_index(const std::vector<std::size_t>& j,
                                                                              std::size_t i) {
  std::size_t pos = 0;
  for (std::size_t x : j) {
    if (x == i) return std::nullopt;
    if (x < i) ++pos;
  }
  std::vector<std::size_t> merged(j);
  merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(pos), i);
  return std::make_pair(pos, merged);
}

std::map<std::vector<std::size_t>, std::size_t> subset_index(std::size_t n, std::size_t p) {
  std::map<std::vector<std::size_t>, std::size_t> idx;
  auto subs = subsets(n, p);
  for (std::size_t k = 0; k < subs.size(); ++k) idx[subs[k]] = k;
  return idx;
}

}  // namespace

PresentedModule exterior_power_presentation(const PresentedModule& m, std::size_t p) {
  const RingPtr& ring = m.base()->ring();
  const std::size_t r = m.rank();
  auto subs = subsets(r, p);
  std::vector<std::vector<std::string>> names;
  std::vector<int> weights;
  for (const auto& s : subs) {
    std::vector<std::string> nm;
    int w = 0;
    for (std::size_t i : s) {
      nm.insert(nm.end(), m.generator_names()[i].begin(), m.generator_names()[i].end());
      w += m.weights()[i];
    }
    names.push_back(std::move(nm));
    weights.push_back(w);
  }
  std::vector<ModuleVector> rel;
  if (p > 0) {
    auto idx = subset_index(r, p);
    for (const auto& row : m.relations()) {
      for (const auto& j : subsets(r, p - 1)) {
        ModuleVector out(subs.size(), Polynomial(ring));
        bool nonzero = false;
        for (std::size_t i = 0; i < r; ++i) {
          if (row[i].is_zero()) continue;
          auto ins = insert_index(j, i);
          if (!ins) continue;
          Polynomial term = row[i];
          if (ins->first % 2) term = -term;
          out[idx.at(ins->second)] += term;
          nonzero = true;
        }
        if (nonzero) rel.push_back(std::move(out));
      }
    }
  }
  return PresentedModule(m.base(), std::move(names), std::move(weights), std::move(rel));
}

Vector coordinates(const SparseModuleElement& e, const std::map<std::pair<std::size_t, Monomial>, std::size_t>& index,
                   std::size_t size) {
  Vector v(size);
  for (const auto& t : e) {
    auto it = index.find({t.pos, t.mono});
    if (it == index.end()) throw InvariantViolation("normal form left the truncated basis");
    v[it->second] = t.coeff;
  }
  return v;
}

// --------------------------------------------------------------- DeRhamComplex

DeRhamComplex::DeRhamComplex(QuotientRingPtr r) : base_(std::move(r)) {
  PresentedModule omega1 = kaehler_presentation(base_);
  const std::size_t n = base_->nvars();
  for (std::size_t p = 0; p <= n; ++p) omega_.push_back(exterior_power_presentation(omega1, p));
}

FormElement DeRhamComplex::form(std::size_t p, ModuleVector coords) const {
  const PresentedModule& m = omega(p);
  if (coords.size() != m.rank()) throw InvalidArgument("form: wrong number of coefficients");
  for (auto& c : coords)
    if (!c.ring()) c = Polynomial(base_->ring());
  return {p, m.normal_form(coords)};
}

FormElement DeRhamComplex::form(std::size_t p, const std::map<std::string, std::string>& coords) const {
  const PresentedModule& m = omega(p);
  ModuleVector v(m.rank(), Polynomial(base_->ring()));
  for (const auto& [gen, text] : coords) {
    std::size_t k = 0;
    for (; k < m.rank(); ++k) {
      std::string name;
      for (std::size_t f = 0; f < m.generator_names()[k].size(); ++f)
        name += (f ? "^" : "") + m.generator_names()[k][f];
      if (name == gen || (gen == "1" && name.empty())) break;
    }
    if (k == m.rank()) throw InvalidArgument("form: unknown generator '" + gen + "'");
    v[k] += parse_polynomial(text, base_->ring());
  }
  return form(p, std::move(v));
}

FormElement DeRhamComplex::d(const FormElement& w) const {
  const std::size_t n = base_->nvars();
  const RingPtr& ring = base_->ring();
  if (w.degree >= n) return {w.degree + 1, {}};
  auto subs = subsets(n, w.degree);
  auto idx = subset_index(n, w.degree + 1);
  ModuleVector out(idx.size(), Polynomial(ring));
  for (std::size_t k = 0; k < subs.size(); ++k) {
    const Polynomial& a = w.coords.at(k);
    if (a.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      auto ins = insert_index(subs[k], i);
      if (!ins) continue;
      Polynomial da = a.diff(i);
      if (ins->first % 2) da = -da;
      out[idx.at(ins->second)] += da;
    }
  }
  return {w.degree + 1, omega(w.degree + 1).normal_form(out)};
}

bool DeRhamComplex::is_zero(const FormElement& w) const {
  if (w.degree > top_degree()) return true;
  return omega(w.degree).is_zero(w.coords);
}

std::string DeRhamComplex::to_string(const FormElement& w, const std::string& wedge) const {
  if (w.degree > top_degree()) return "0";
  const PresentedModule& m = omega(w.degree);
  std::string out;
  for (std::size_t k = 0; k < w.coords.size(); ++k) {
    const Polynomial& c = w.coords[k];
    if (c.is_zero()) continue;
    std::string gname;
    for (std::size_t f = 0; f < m.generator_names()[k].size(); ++f)
      gname += (f ? wedge : "") + m.generator_names()[k][f];
    std::string cs = c.to_string();
    std::string piece;
    if (gname.empty())
      piece = cs;
    else if (cs == "1")
      piece = gname;
    else if (cs == "-1")
      piece = "-" + gname;
    else if (c.size() == 1)
      piece = cs + "*" + gname;
    else
      piece = "(" + cs + ")*" + gname;
    if (out.empty())
      out = piece;
    else if (piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out.empty() ? "0" : out;
}

FilteredComplex DeRhamComplex::truncated(int d_max) const {
  if (d_max < 0) throw InvalidArgument("de Rham complex: d_max must be non-negative");
  const std::size_t n = base_->nvars();
  const RingPtr& ring = base_->ring();
  FilteredComplex c;
  c.ring = ring;
  std::vector<std::map<std::pair<std::size_t, Monomial>, std::size_t>> index(n + 1);
  for (std::size_t p = 0; p <= n; ++p) {
    GradedBasis b;
    b.elems = omega(p).slice(d_max);
    b.generator_names = omega(p).generator_names();
    for (std::size_t k = 0; k < b.elems.size(); ++k) index[p][{b.elems[k].generator, b.elems[k].mono}] = k;
    c.bases.push_back(std::move(b));
  }
  for (std::size_t p = 0; p < n; ++p) {
    auto subs = subsets(n, p);
    auto idx = subset_index(n, p + 1);
    const ModuleOrder& ord = omega(p + 1).gb().order();
    QMatrix m(c.bases[p + 1].size(), c.bases[p].size());
    for (std::size_t col = 0; col < c.bases[p].size(); ++col) {
      const BasisElement& e = c.bases[p].elems[col];
      std::vector<ModuleTerm> terms;
      for (std::size_t i = 0; i < n; ++i) {
        if (e.mono[i] == 0) continue;
        auto ins = insert_index(subs[e.generator], i);
        if (!ins) continue;
        Monomial dm = e.mono;
        dm[i] -= 1;
        Rational coeff(e.mono[i]);
        if (ins->first % 2) coeff = -coeff;
        terms.push_back({idx.at(ins->second), std::move(dm), coeff});
      }
      SparseModuleElement img = omega(p + 1).normal_form(sort_terms(std::move(terms), ord));
      Vector v = coordinates(img, index[p + 1], c.bases[p + 1].size());
      for (std::size_t r = 0; r < v.size(); ++r)
        if (sgn(v[r]) != 0) m.set(r, col, v[r]);
    }
    c.d.push_back(std::move(m));
  }
  return c;
}

Vector DeRhamComplex::vectorize(const FormElement& w, const FilteredComplex& c) const {
  const GradedBasis& b = c.bases.at(w.degree);
  std::map<std::pair<std::size_t, Monomial>, std::size_t> index;
  for (std::size_t k = 0; k < b.size(); ++k) index[{b.elems[k].generator, b.elems[k].mono}] = k;
  SparseModuleElement e = omega(w.degree).normal_form(to_sparse(w.coords, omega(w.degree).gb().order()));
  return coordinates(e, index, b.size());
}

CohomologyReport de_rham_cohomology(const QuotientRingPtr& r, int d_max, int window) {
  if (window < 2 || d_max <= window) throw InvalidArgument("de_rham_cohomology: need d_max > window >= 2");
  DeRhamComplex dr(r);
  FilteredComplex c = dr.truncated(d_max);
  c.verify();
  return filtered_cohomology(c, d_max, window);
}

}  // namespace rinehart
