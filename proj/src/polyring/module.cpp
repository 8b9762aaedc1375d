#include "rinehart/module.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "rinehart/error.hpp"

namespace rinehart {

ModuleOrder ModuleOrder::position_over_term(MonomialOrder mono) {
  ModuleOrder o;
  o.kind_ = ModuleOrderKind::PositionOverTerm;
  o.mono_ = std::move(mono);
  return o;
}

ModuleOrder ModuleOrder::weighted_degree(MonomialOrder mono, std::vector<int> weights) {
  if (!mono.degree_compatible())
    throw InvalidArgument("weighted module order needs a degree-compatible monomial order");
  ModuleOrder o;
  o.kind_ = ModuleOrderKind::WeightedDegree;
  o.mono_ = std::move(mono);
  o.weights_ = std::move(weights);
  return o;
}

int ModuleOrder::compare(std::size_t pa, const Monomial& a, std::size_t pb, const Monomial& b) const {
  if (kind_ == ModuleOrderKind::WeightedDegree) {
    int wa = weight(pa) + static_cast<int>(a.degree());
    int wb = weight(pb) + static_cast<int>(b.degree());
    if (wa != wb) return wa < wb ? -1 : 1;
  }
  if (pa != pb) return pa < pb ? 1 : -1;
  return mono_.compare(a, b);
}

namespace {

int cmp_terms(const ModuleOrder& o, const ModuleTerm& a, const ModuleTerm& b) {
  return o.compare(a.pos, a.mono, b.pos, b.mono);
}

// f += c * m * g, where every term of m*g is strictly below f[from-1].
void axpy_from(SparseModuleElement& f, std::size_t from, const SparseModuleElement& g, const Rational& c,
               const Monomial& m, const ModuleOrder& o) {
  SparseModuleElement out;
  out.reserve(f.size() + g.size());
  for (std::size_t i = 0; i < from; ++i) out.push_back(std::move(f[i]));
  std::size_t i = from, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(std::move(f[i++]));
      continue;
    }
    ModuleTerm shifted{g[j].pos, g[j].mono * m, c * g[j].coeff};
    int cmp = i == f.size() ? -1 : cmp_terms(o, f[i], shifted);
    if (cmp > 0) {
      out.push_back(std::move(f[i++]));
    } else if (cmp < 0) {
      out.push_back(std::move(shifted));
      ++j;
    } else {
      f[i].coeff += shifted.coeff;
      if (sgn(f[i].coeff) != 0) out.push_back(std::move(f[i]));
      ++i;
      ++j;
    }
  }
  f = std::move(out);
}

void make_monic(SparseModuleElement& f) {
  if (f.empty() || f.front().coeff == 1) return;
  Rational inv = 1 / f.front().coeff;
  for (auto& t : f) t.coeff *= inv;
}

const SparseModuleElement* find_reducer(const ModuleTerm& t, const std::vector<SparseModuleElement>& basis,
                                        std::size_t skip = static_cast<std::size_t>(-1)) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (k == skip || basis[k].empty()) continue;
    const ModuleTerm& lt = basis[k].front();
    if (lt.pos == t.pos && lt.mono.divides(t.mono)) return &basis[k];
  }
  return nullptr;
}

SparseModuleElement reduce_impl(SparseModuleElement f, const std::vector<SparseModuleElement>& basis,
                                const ModuleOrder& order, std::size_t skip) {
  std::size_t i = 0;
  while (i < f.size()) {
    const SparseModuleElement* g = find_reducer(f[i], basis, skip);
    if (!g) {
      ++i;
      continue;
    }
    const ModuleTerm& lt = g->front();
    Monomial m = f[i].mono / lt.mono;
    Rational c = -f[i].coeff / lt.coeff;
    // the leading term cancels exactly; drop it and merge the tail below it
    SparseModuleElement tail(g->begin() + 1, g->end());
    f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
    axpy_from(f, i, tail, c, m, order);
  }
  return f;
}

SparseModuleElement spoly(const SparseModuleElement& f, const SparseModuleElement& g, const ModuleOrder& o) {
  const ModuleTerm& a = f.front();
  const ModuleTerm& b = g.front();
  Monomial l = Monomial::lcm(a.mono, b.mono);
  SparseModuleElement s;
  Monomial ma = l / a.mono;
  Monomial mb = l / b.mono;
  axpy_from(s, 0, SparseModuleElement(f.begin() + 1, f.end()), 1 / a.coeff, ma, o);
  axpy_from(s, 0, SparseModuleElement(g.begin() + 1, g.end()), -1 / b.coeff, mb, o);
  return s;
}

}  // namespace

SparseModuleElement sort_terms(std::vector<ModuleTerm> terms, const ModuleOrder& order) {
  std::sort(terms.begin(), terms.end(),
            [&](const ModuleTerm& a, const ModuleTerm& b) { return cmp_terms(order, a, b) > 0; });
  SparseModuleElement out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().pos == t.pos && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
      if (sgn(out.back().coeff) == 0) out.pop_back();
    } else if (sgn(t.coeff) != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

SparseModuleElement to_sparse(const ModuleVector& v, const ModuleOrder& order) {
  std::vector<ModuleTerm> terms;
  for (std::size_t p = 0; p < v.size(); ++p)
    for (const auto& t : v[p].terms()) terms.push_back({p, t.mono, t.coeff});
  return sort_terms(std::move(terms), order);
}

ModuleVector from_sparse(const SparseModuleElement& e, const RingPtr& ring, std::size_t rank) {
  std::vector<std::vector<Term>> buckets(rank);
  for (const auto& t : e) {
    if (t.pos >= rank) throw InvalidArgument("module element position out of range");
    buckets[t.pos].push_back({t.mono, t.coeff});
  }
  ModuleVector v;
  v.reserve(rank);
  for (auto& b : buckets) v.push_back(Polynomial::from_terms(ring, std::move(b)));
  return v;
}

SparseModuleElement module_reduce(SparseModuleElement f, const std::vector<SparseModuleElement>& basis,
                                  const ModuleOrder& order) {
  return reduce_impl(std::move(f), basis, order, static_cast<std::size_t>(-1));
}

std::vector<SparseModuleElement> module_buchberger(std::vector<SparseModuleElement> gens,
                                                   const ModuleOrder& order, std::size_t rank) {
  std::vector<SparseModuleElement> g;
  for (auto& f : gens) {
    if (f.empty()) continue;
    make_monic(f);
    g.push_back(std::move(f));
  }

  struct Pair {
    std::size_t i, j;
    ModuleTerm lcm;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (g[i].empty() || g[i].front().pos != g[k].front().pos) continue;
      pairs.push_back({i, k, {g[k].front().pos, Monomial::lcm(g[i].front().mono, g[k].front().mono), 1}});
      pending.insert({i, k});
    }
  };
  for (std::size_t k = 0; k < g.size(); ++k) add_pairs(k);

  auto pending_pair = [&](std::size_t a, std::size_t b) {
    return pending.count({std::min(a, b), std::max(a, b)}) != 0;
  };

  while (!pairs.empty()) {
    // normal strategy: smallest lcm first, ties by creation indices
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      int c = cmp_terms(order, a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair p = *best;
    pairs.erase(best);
    pending.erase({p.i, p.j});

    const ModuleTerm& lti = g[p.i].front();
    const ModuleTerm& ltj = g[p.j].front();
    if (rank == 1 && lti.mono.coprime(ltj.mono)) continue;

    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == p.i || k == p.j || g[k].empty()) continue;
      const ModuleTerm& ltk = g[k].front();
      if (ltk.pos != p.lcm.pos || !ltk.mono.divides(p.lcm.mono)) continue;
      if (!pending_pair(p.i, k) && !pending_pair(p.j, k)) chain = true;
    }
    if (chain) continue;

    SparseModuleElement s = module_reduce(spoly(g[p.i], g[p.j], order), g, order);
    if (s.empty()) continue;
    make_monic(s);
    g.push_back(std::move(s));
    add_pairs(g.size() - 1);
  }

  // minimalize
  std::vector<std::size_t> idx(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    int c = cmp_terms(order, g[a].front(), g[b].front());
    return c != 0 ? c < 0 : a < b;
  });
  std::vector<SparseModuleElement> minimal;
  for (std::size_t k : idx) {
    const ModuleTerm& lt = g[k].front();
    bool redundant = false;
    for (const auto& h : minimal)
      if (h.front().pos == lt.pos && h.front().mono.divides(lt.mono)) redundant = true;
    if (!redundant) minimal.push_back(g[k]);
  }
  // interreduce tails
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    SparseModuleElement head{minimal[k].front()};
    SparseModuleElement tail(minimal[k].begin() + 1, minimal[k].end());
    tail = reduce_impl(std::move(tail), minimal, order, k);
    head.insert(head.end(), std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
    minimal[k] = std::move(head);
  }
  return minimal;
}

// ---------------------------------------------------------- ModuleGroebnerBasis

ModuleGroebnerBasis ModuleGroebnerBasis::compute(RingPtr ring, std::size_t rank,
                                                 const std::vector<ModuleVector>& gens,
                                                 const ModuleOrder& order) {
  std::vector<SparseModuleElement> sparse;
  for (const auto& v : gens) {
    if (v.size() != rank) throw InvalidArgument("module generator has the wrong rank");
    sparse.push_back(to_sparse(v, order));
  }
  ModuleGroebnerBasis gb;
  gb.ring_ = std::move(ring);
  gb.rank_ = rank;
  gb.order_ = order;
  gb.elems_ = module_buchberger(std::move(sparse), order, rank);
  return gb;
}

ModuleGroebnerBasis ModuleGroebnerBasis::compute(RingPtr ring, std::size_t rank,
                                                 const std::vector<ModuleVector>& gens) {
  ModuleOrder order = ModuleOrder::position_over_term(ring->order());
  return compute(std::move(ring), rank, gens, order);
}

std::vector<ModuleVector> ModuleGroebnerBasis::basis() const {
  std::vector<ModuleVector> out;
  for (const auto& e : elems_) out.push_back(from_sparse(e, ring_, rank_));
  return out;
}

ModuleVector ModuleGroebnerBasis::normal_form(const ModuleVector& v) const {
  if (v.size() != rank_) throw InvalidArgument("module vector has the wrong rank");
  return from_sparse(module_reduce(to_sparse(v, order_), elems_, order_), ring_, rank_);
}

SparseModuleElement ModuleGroebnerBasis::normal_form(SparseModuleElement v) const {
  return module_reduce(std::move(v), elems_, order_);
}

bool ModuleGroebnerBasis::contains(const ModuleVector& v) const {
  if (v.size() != rank_) throw InvalidArgument("module vector has the wrong rank");
  return module_reduce(to_sparse(v, order_), elems_, order_).empty();
}

bool ModuleGroebnerBasis::is_standard(std::size_t pos, const Monomial& m) const {
  for (const auto& e : elems_)
    if (e.front().pos == pos && e.front().mono.divides(m)) return false;
  return true;
}

// ------------------------------------------------------------------ syzygies

std::vector<ModuleVector> syzygy_basis(const RingPtr& ring, std::size_t rank,
                                       const std::vector<ModuleVector>& vectors) {
  const std::size_t k = vectors.size();
  ModuleOrder order = ModuleOrder::position_over_term(ring->order());
  const Monomial one(ring->nvars());
  std::vector<SparseModuleElement> aug;
  for (std::size_t i = 0; i < k; ++i) {
    if (vectors[i].size() != rank) throw InvalidArgument("syzygy input has the wrong rank");
    std::vector<ModuleTerm> terms;
    for (std::size_t p = 0; p < rank; ++p)
      for (const auto& t : vectors[i][p].terms()) terms.push_back({p, t.mono, t.coeff});
    terms.push_back({rank + i, one, Rational(1)});
    aug.push_back(sort_terms(std::move(terms), order));
  }
  std::vector<SparseModuleElement> gb = module_buchberger(std::move(aug), order, rank + k);
  std::vector<ModuleVector> out;
  for (const auto& e : gb) {
    if (e.front().pos < rank) continue;
    SparseModuleElement shifted = e;
    for (auto& t : shifted) t.pos -= rank;
    out.push_back(from_sparse(shifted, ring, k));
  }
  // largest leading term first, i.e. by leading position
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<ModuleVector> syzygy_basis(const std::vector<Polynomial>& v) {
  if (v.empty()) throw InvalidArgument("syzygy_basis: empty input");
  RingPtr ring = v.front().ring();
  std::vector<ModuleVector> cols;
  for (const auto& p : v) cols.push_back({p});
  return syzygy_basis(ring, 1, cols);
}

std::optional<std::vector<Polynomial>> module_lift(const RingPtr& ring, std::size_t rank,
                                                   const std::vector<ModuleVector>& generators,
                                                   const std::vector<ModuleVector>& relations,
                                                   const ModuleVector& target) {
  const std::size_t k = generators.size();
  ModuleOrder order = ModuleOrder::position_over_term(ring->order());
  const Monomial one(ring->nvars());
  std::vector<SparseModuleElement> aug;
  auto push = [&](const ModuleVector& v, std::optional<std::size_t> marker) {
    if (v.size() != rank) throw InvalidArgument("module_lift input has the wrong rank");
    std::vector<ModuleTerm> terms;
    for (std::size_t p = 0; p < rank; ++p)
      for (const auto& t : v[p].terms()) terms.push_back({p, t.mono, t.coeff});
    if (marker) terms.push_back({rank + *marker, one, Rational(1)});
    aug.push_back(sort_terms(std::move(terms), order));
  };
  for (std::size_t i = 0; i < k; ++i) push(generators[i], i);
  for (const auto& r : relations) push(r, std::nullopt);
  std::vector<SparseModuleElement> gb = module_buchberger(std::move(aug), order, rank + k);

  if (target.size() != rank) throw InvalidArgument("module_lift target has the wrong rank");
  SparseModuleElement r = module_reduce(to_sparse(target, order), gb, order);
  for (const auto& t : r)
    if (t.pos < rank) return std::nullopt;
  std::vector<std::vector<Term>> buckets(k);
  for (const auto& t : r) buckets[t.pos - rank].push_back({t.mono, -t.coeff});
  std::vector<Polynomial> coeffs;
  for (auto& b : buckets) coeffs.push_back(Polynomial::from_terms(ring, std::move(b)));
  return coeffs;
}

std::string module_vector_to_string(const ModuleVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

}  // namespace rinehart
