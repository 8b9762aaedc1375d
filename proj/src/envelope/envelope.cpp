#include "rinehart/envelope.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "rinehart/derham.hpp"
#include "rinehart/error.hpp"

namespace rinehart {

using qlinalg::QMatrix;

// ------------------------------------------------------------ multi-indices

unsigned order_of(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0u); }

std::vector<MultiIndex> multi_indices(std::size_t r, unsigned k) {
  std::vector<MultiIndex> out;
  if (r == 0) {
    if (k == 0) out.push_back({});
    return out;
  }
  MultiIndex cur(r, 0);
  // first coordinate largest first gives lexicographically descending order
  auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
    if (pos + 1 == r) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned v = left + 1; v-- > 0;) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

std::vector<MultiIndex> multi_indices_upto(std::size_t r, unsigned n) {
  std::vector<MultiIndex> out;
  for (unsigned k = 0; k <= n; ++k)
    for (auto& a : multi_indices(r, k)) out.push_back(std::move(a));
  return out;
}

std::string multi_index_to_string(const MultiIndex& a, const std::string& letter) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += letter + std::to_string(i + 1);
    if (a[i] > 1) s += "^" + std::to_string(a[i]);
  }
  return s.empty() ? "1" : s;
}

namespace {

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational factorial_of(const MultiIndex& a) {
  mpz_class f = 1;
  for (auto v : a) {
    mpz_class t;
    mpz_fac_ui(t.get_mpz_t(), v);
    f *= t;
  }
  return Rational(f);
}

/// All β ≤ α componentwise.
std::vector<MultiIndex> below(const MultiIndex& a) {
  std::vector<MultiIndex> out{MultiIndex(a.size(), 0)};
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<MultiIndex> next;
    for (const auto& b : out)
      for (unsigned v = 0; v <= a[i]; ++v) {
        MultiIndex c = b;
        c[i] = v;
        next.push_back(std::move(c));
      }
    out = std::move(next);
  }
  return out;
}

Rational binomial(const MultiIndex& a, const MultiIndex& b) {
  Rational c(1);
  for (std::size_t i = 0; i < a.size(); ++i) c *= binomial(a[i], b[i]);
  return c;
}

MultiIndex minus(MultiIndex a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

MultiIndex unit_index(std::size_t r, std::size_t i) {
  MultiIndex a(r, 0);
  a[i] = 1;
  return a;
}

/// Generator letters of e^α in PBW order.
std::vector<std::size_t> letters_of(const MultiIndex& a) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (unsigned k = 0; k < a[i]; ++k) out.push_back(i);
  return out;
}

template <class Map>
void add_term(Map& m, const typename Map::key_type& key, const Polynomial& c) {
  if (c.is_zero()) return;
  auto it = m.find(key);
  if (it == m.end()) {
    m.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m.erase(it);
}

std::string with_coeff(const Polynomial& c, const std::string& name) {
  std::string cs = c.to_string();
  if (name.empty() || name == "1") return cs;
  if (cs == "1") return name;
  if (cs == "-1") return "-" + name;
  if (c.size() == 1) return cs + "*" + name;
  return "(" + cs + ")*" + name;
}

std::string join_terms(const std::vector<std::string>& pieces) {
  std::string out;
  for (const auto& p : pieces) {
    if (out.empty())
      out = p;
    else if (p[0] == '-')
      out += " - " + p.substr(1);
    else
      out += " + " + p;
  }
  return out.empty() ? "0" : out;
}

bool index_greater(const MultiIndex& a, const MultiIndex& b) {
  unsigned da = order_of(a), db = order_of(b);
  if (da != db) return da > db;
  return a > b;
}

}  // namespace

// ------------------------------------------------------------------ Envelope

Envelope::Envelope(LieRinehartAlgebra l, unsigned order) : l_(std::move(l)), order_(order) {}

UElement Envelope::one() const { return scalar(Polynomial::constant(ring(), Rational(1))); }

UElement Envelope::scalar(const Polynomial& f) const { return monomial(MultiIndex(rank(), 0), f); }

UElement Envelope::generator(std::size_t i) const {
  if (i >= rank()) throw InvalidArgument("envelope: generator index out of range");
  return monomial(unit_index(rank(), i), Polynomial::constant(ring(), Rational(1)));
}

UElement Envelope::monomial(const MultiIndex& a, const Polynomial& f) const {
  if (a.size() != rank()) throw InvalidArgument("envelope: multi-index has wrong length");
  UElement u;
  Polynomial c = l_.base()->reduce(f);
  if (!c.is_zero()) u.emplace(a, std::move(c));
  return u;
}

int Envelope::filtration_degree(const UElement& u) const {
  int d = -1;
  for (const auto& [a, f] : u)
    if (!f.is_zero()) d = std::max(d, static_cast<int>(order_of(a)));
  return d;
}

void Envelope::add_to(UElement& acc, const UElement& u, const Polynomial& c) const {
  for (const auto& [a, f] : u) add_term(acc, a, l_.base()->reduce(c * f));
}

UElement Envelope::monomial_times_generator(const MultiIndex& a, std::size_t j) const {
  auto key = std::make_pair(a, j);
  if (auto it = gen_cache_.find(key); it != gen_cache_.end()) return it->second;
  std::size_t m = rank();
  for (std::size_t i = rank(); i-- > 0;)
    if (a[i] > 0) {
      m = i;
      break;
    }
  UElement out;
  if (m == rank() || j >= m) {
    MultiIndex b = a;
    ++b[j];
    out.emplace(std::move(b), Polynomial::constant(ring(), Rational(1)));
  } else {
    // e^a' e_m e_j = (e^a' e_j) e_m + e^a' [e_m, e_j]
    MultiIndex rest = a;
    --rest[m];
    out = times_generator(monomial_times_generator(rest, j), m);
    UElement base_rest = monomial(rest, Polynomial::constant(ring(), Rational(1)));
    for (std::size_t k = 0; k < rank(); ++k) {
      const Polynomial& c = l_.bracket(m, j, k);
      if (c.is_zero()) continue;
      add_to(out, times_generator(times_ring(base_rest, c), k), Polynomial::constant(ring(), Rational(1)));
    }
  }
  gen_cache_.emplace(std::move(key), out);
  return out;
}

UElement Envelope::times_generator(const UElement& u, std::size_t j) const {
  UElement out;
  for (const auto& [a, f] : u) add_to(out, monomial_times_generator(a, j), f);
  return out;
}

UElement Envelope::times_ring(const UElement& u, const Polynomial& g) const {
  UElement out;
  if (g.is_zero()) return out;
  if (l_.has_zero_anchor()) {
    for (const auto& [a, f] : u) add_term(out, a, l_.base()->reduce(f * g));
    return out;
  }
  for (const auto& [a, f] : u) {
    std::size_t m = rank();
    for (std::size_t i = rank(); i-- > 0;)
      if (a[i] > 0) {
        m = i;
        break;
      }
    if (m == rank()) {
      add_term(out, a, l_.base()->reduce(f * g));
      continue;
    }
    // e^a' e_m g = (e^a' g) e_m + e^a' a_m(g)
    MultiIndex rest = a;
    --rest[m];
    UElement head = monomial(rest, Polynomial::constant(ring(), Rational(1)));
    add_to(out, times_generator(times_ring(head, g), m), f);
    Polynomial ag = l_.anchor_apply(m, g);
    if (!ag.is_zero()) add_to(out, times_ring(head, ag), f);
  }
  return out;
}

UElement Envelope::normal_form(const Word& w) const {
  std::size_t gens = 0;
  for (const auto& letter : w)
    if (std::holds_alternative<std::size_t>(letter)) ++gens;
  if (gens > order_) throw OrderOverflow("word of filtration degree " + std::to_string(gens) + " exceeds order " + std::to_string(order_));
  UElement u = one();
  for (const auto& letter : w) {
    if (const auto* i = std::get_if<std::size_t>(&letter)) {
      if (*i >= rank()) throw InvalidArgument("envelope: generator index out of range");
      u = times_generator(u, *i);
    } else {
      u = times_ring(u, std::get<Polynomial>(letter));
    }
  }
  return u;
}

UElement Envelope::rewrite(const Word& w, std::uint64_t seed) const {
  std::size_t gens = 0;
  for (const auto& letter : w)
    if (std::holds_alternative<std::size_t>(letter)) ++gens;
  if (gens > order_) throw OrderOverflow("word of filtration degree " + std::to_string(gens) + " exceeds order " + std::to_string(order_));
  const RingPtr& R = ring();
  std::mt19937_64 rng(seed);
  std::vector<Word> pending{w}, done;
  auto reducible = [](const Word& x) {
    std::vector<std::size_t> pos;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      bool a_gen = std::holds_alternative<std::size_t>(x[k]);
      bool b_gen = std::holds_alternative<std::size_t>(x[k + 1]);
      if (!b_gen)
        pos.push_back(k);  // ring·ring or gen·ring
      else if (a_gen && b_gen && std::get<std::size_t>(x[k]) > std::get<std::size_t>(x[k + 1])) pos.push_back(k);
    }
    return pos;
  };
  while (!pending.empty()) {
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(rng);
    Word x = std::move(pending[pick]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
    auto pos = reducible(x);
    if (pos.empty()) {
      done.push_back(std::move(x));
      continue;
    }
    std::size_t k = pos[std::uniform_int_distribution<std::size_t>(0, pos.size() - 1)(rng)];
    auto splice = [&](std::vector<Letter> middle) {
      Word y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
      y.insert(y.end(), middle.begin(), middle.end());
      y.insert(y.end(), x.begin() + static_cast<std::ptrdiff_t>(k + 2), x.end());
      return y;
    };
    const Letter& a = x[k];
    const Letter& b = x[k + 1];
    if (!std::holds_alternative<std::size_t>(a)) {
      Polynomial prod = l_.base()->reduce(std::get<Polynomial>(a) * std::get<Polynomial>(b));
      if (!prod.is_zero()) pending.push_back(splice({prod}));
    } else if (!std::holds_alternative<std::size_t>(b)) {
      std::size_t i = std::get<std::size_t>(a);
      const Polynomial& f = std::get<Polynomial>(b);
      if (!f.is_zero()) pending.push_back(splice({f, i}));
      Polynomial af = l_.anchor_apply(i, f);
      if (!af.is_zero()) pending.push_back(splice({af}));
    } else {
      std::size_t j = std::get<std::size_t>(a), i = std::get<std::size_t>(b);
      pending.push_back(splice({i, j}));
      for (std::size_t m = 0; m < rank(); ++m) {
        const Polynomial& c = l_.bracket(i, j, m);
        if (!c.is_zero()) pending.push_back(splice({-c, m}));
      }
    }
  }
  UElement out;
  for (const auto& x : done) {
    Polynomial coeff = Polynomial::constant(R, Rational(1));
    MultiIndex a(rank(), 0);
    for (const auto& letter : x) {
      if (const auto* i = std::get_if<std::size_t>(&letter))
        ++a[*i];
      else
        coeff = coeff * std::get<Polynomial>(letter);
    }
    add_term(out, a, l_.base()->reduce(coeff));
  }
  return out;
}

UElement Envelope::multiply(const UElement& u, const UElement& v) const {
  int du = filtration_degree(u), dv = filtration_degree(v);
  if (du < 0 || dv < 0) return {};
  if (static_cast<unsigned>(du + dv) > order_)
    throw OrderOverflow("product of filtration degrees " + std::to_string(du) + " and " + std::to_string(dv) +
                        " exceeds order " + std::to_string(order_));
  UElement out;
  for (const auto& [b, g] : v) {
    UElement t = times_ring(u, g);
    for (std::size_t i : letters_of(b)) t = times_generator(t, i);
    add_to(out, t, Polynomial::constant(ring(), Rational(1)));
  }
  return out;
}

Polynomial Envelope::counit(const UElement& u) const {
  auto it = u.find(MultiIndex(rank(), 0));
  return it == u.end() ? Polynomial(ring()) : it->second;
}

TensorElement Envelope::coproduct(const UElement& u) const {
  TensorElement out;
  for (const auto& [a, f] : u)
    for (const auto& b : below(a)) add_term(out, {b, minus(a, b)}, f * binomial(a, b));
  return out;
}

TensorElement Envelope::coproduct_at(const TensorElement& t, std::size_t factor) const {
  TensorElement out;
  for (const auto& [key, f] : t) {
    if (factor >= key.size()) throw InvalidArgument("coproduct_at: factor out of range");
    const MultiIndex& a = key[factor];
    for (const auto& b : below(a)) {
      std::vector<MultiIndex> k2(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(factor));
      k2.push_back(b);
      k2.push_back(minus(a, b));
      k2.insert(k2.end(), key.begin() + static_cast<std::ptrdiff_t>(factor + 1), key.end());
      add_term(out, k2, f * binomial(a, b));
    }
  }
  return out;
}

UElement Envelope::counit_left(const TensorElement& t) const {
  UElement out;
  const MultiIndex zero(rank(), 0);
  for (const auto& [key, f] : t) {
    if (key.size() != 2) throw InvalidArgument("counit_left: need a two-factor tensor");
    if (key[0] == zero) add_term(out, key[1], f);
  }
  return out;
}

UElement Envelope::counit_right(const TensorElement& t) const {
  UElement out;
  const MultiIndex zero(rank(), 0);
  for (const auto& [key, f] : t) {
    if (key.size() != 2) throw InvalidArgument("counit_right: need a two-factor tensor");
    if (key[1] == zero) add_term(out, key[0], f);
  }
  return out;
}

UElement Envelope::symmetrize(const UElement& s) const {
  UElement out;
  for (const auto& [a, f] : s) {
    if (order_of(a) > order_) throw OrderOverflow("symmetrize: order exceeds truncation");
    std::vector<std::size_t> letters = letters_of(a);
    UElement sum;
    std::size_t count = 0;
    do {
      Word w(letters.begin(), letters.end());
      add_to(sum, normal_form(w), Polynomial::constant(ring(), Rational(1)));
      ++count;
    } while (std::next_permutation(letters.begin(), letters.end()));
    add_to(out, sum, f * Rational(1, static_cast<long>(count)));
  }
  return out;
}

TensorElement Envelope::symmetric_coproduct(const UElement& s) const { return coproduct(s); }

TensorElement Envelope::symmetrize_tensor(const TensorElement& t) const {
  TensorElement out;
  const Polynomial unit = Polynomial::constant(ring(), Rational(1));
  for (const auto& [key, f] : t) {
    // built from the right: u ⊗ c·rest = (u c) ⊗ rest
    TensorElement acc{{{}, unit}};
    for (auto it = key.rbegin(); it != key.rend(); ++it) {
      UElement th = symmetrize(monomial(*it, unit));
      TensorElement next;
      for (const auto& [rest, c] : acc)
        for (const auto& [b, g] : th)
          for (const auto& [d, h] : times_ring(monomial(b, g), c)) {
            std::vector<MultiIndex> k2{d};
            k2.insert(k2.end(), rest.begin(), rest.end());
            add_term(next, k2, h);
          }
      acc = std::move(next);
    }
    for (const auto& [k, c] : acc) add_term(out, k, l_.base()->reduce(f * c));
  }
  return out;
}

KoszulElement Envelope::koszul_differential(const KoszulElement& x) const {
  KoszulElement out;
  for (const auto& [key, f] : x) {
    const auto& [a, I] = key;
    const std::size_t p = I.size();
    if (p == 0) continue;
    if (order_of(a) + 1 > order_) throw OrderOverflow("koszul differential: order exceeds truncation");
    UElement u = monomial(a, f);
    for (std::size_t t = 0; t < p; ++t) {
      std::vector<std::size_t> rest;
      for (std::size_t s = 0; s < p; ++s)
        if (s != t) rest.push_back(I[s]);
      UElement ue = times_generator(u, I[t]);
      for (const auto& [b, g] : ue) add_term(out, {b, rest}, t % 2 ? -g : g);
    }
    for (std::size_t t = 0; t < p; ++t)
      for (std::size_t s = t + 1; s < p; ++s) {
        std::vector<std::size_t> rest;
        for (std::size_t q = 0; q < p; ++q)
          if (q != t && q != s) rest.push_back(I[q]);
        for (std::size_t k = 0; k < rank(); ++k) {
          const Polynomial& c = l_.bracket(I[t], I[s], k);
          if (c.is_zero() || std::find(rest.begin(), rest.end(), k) != rest.end()) continue;
          std::size_t pos = static_cast<std::size_t>(std::lower_bound(rest.begin(), rest.end(), k) - rest.begin());
          std::vector<std::size_t> sorted = rest;
          sorted.insert(sorted.begin() + static_cast<std::ptrdiff_t>(pos), k);
          bool negative = ((t + s + pos) % 2) != 0;
          for (const auto& [b, g] : times_ring(u, c)) add_term(out, {b, sorted}, negative ? -g : g);
        }
      }
  }
  return out;
}

std::vector<Polynomial> Envelope::act(const UElement& u, const LRModule& e, const std::vector<Polynomial>& v) const {
  if (v.size() != e.rank) throw InvalidArgument("envelope action: vector has wrong length");
  std::vector<Polynomial> out(e.rank, Polynomial(ring()));
  for (const auto& [a, f] : u) {
    std::vector<Polynomial> w = v;
    auto letters = letters_of(a);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      std::size_t i = *it;
      std::vector<Polynomial> next(e.rank, Polynomial(ring()));
      for (std::size_t s = 0; s < e.rank; ++s) {
        Polynomial acc = apply_derivation(l_.anchor(i), w[s]);
        for (std::size_t s2 = 0; s2 < e.rank; ++s2)
          if (!e.connection[i][s][s2].is_zero()) acc += e.connection[i][s][s2] * w[s2];
        next[s] = e.ring->reduce(acc);
      }
      w = std::move(next);
    }
    for (std::size_t s = 0; s < e.rank; ++s) out[s] = e.ring->reduce(out[s] + f * w[s]);
  }
  return out;
}

std::string Envelope::to_string(const UElement& u, const std::string& unit) const {
  std::vector<MultiIndex> keys;
  for (const auto& [a, f] : u)
    if (!f.is_zero()) keys.push_back(a);
  std::sort(keys.begin(), keys.end(), index_greater);
  std::vector<std::string> pieces;
  for (const auto& a : keys) {
    std::string name = multi_index_to_string(a);
    pieces.push_back(with_coeff(u.at(a), name == "1" ? unit : name));
  }
  return join_terms(pieces);
}

std::string Envelope::to_string(const TensorElement& t) const {
  std::vector<std::string> pieces;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    std::string name;
    for (std::size_t k = 0; k < it->first.size(); ++k) name += (k ? "⊗" : "") + multi_index_to_string(it->first[k]);
    pieces.push_back(with_coeff(it->second, name.empty() ? "1" : name));
  }
  return join_terms(pieces);
}

std::string Envelope::to_string(const KoszulElement& x) const {
  std::vector<std::string> pieces;
  for (auto it = x.rbegin(); it != x.rend(); ++it) {
    const auto& [a, I] = it->first;
    std::string wedge;
    for (std::size_t k = 0; k < I.size(); ++k) wedge += (k ? "^" : "") + std::string("e") + std::to_string(I[k] + 1);
    if (wedge.empty()) wedge = "1";
    pieces.push_back(with_coeff(it->second, multi_index_to_string(a) + "⊗" + wedge));
  }
  return join_terms(pieces);
}

// ------------------------------------------------------------ Koszul checks

KoszulReport koszul_checks(const LieRinehartAlgebra& l, unsigned order, int weight_bound) {
  Envelope u(l, order);
  const std::size_t r = l.rank();
  const int kappa = l.degree_shift();
  const auto& base = l.base();
  KoszulReport rep;
  rep.order = order;
  rep.weight_bound = weight_bound;

  struct Elem {
    MultiIndex a;
    std::vector<std::size_t> I;
    Monomial mu;
  };
  std::vector<std::vector<Elem>> basis(r + 1);
  std::vector<std::map<std::tuple<MultiIndex, std::vector<std::size_t>, Monomial>, std::size_t>> index(r + 1);
  for (std::size_t p = 0; p <= r; ++p) {
    if (p > order) continue;
    for (const auto& I : subsets(r, p))
      for (const auto& a : multi_indices_upto(r, order - static_cast<unsigned>(p))) {
        int budget = weight_bound - kappa * static_cast<int>(order_of(a) + p);
        if (budget < 0) continue;
        for (const auto& mu : base->standard_monomials(static_cast<unsigned>(budget))) {
          index[p][{a, I, mu}] = basis[p].size();
          basis[p].push_back({a, I, mu});
        }
      }
    rep.chain_dims.push_back(basis[p].size());
  }
  rep.chain_dims.resize(r + 1, 0);
  rep.base_dim = base->standard_monomials(static_cast<unsigned>(std::max(weight_bound, 0))).size();
  if (weight_bound < 0) rep.base_dim = 0;

  std::vector<QMatrix> d(r + 1);  // d[p] : C_p → C_{p−1}
  for (std::size_t p = 1; p <= r; ++p) {
    QMatrix m(basis[p - 1].size(), basis[p].size());
    for (std::size_t col = 0; col < basis[p].size(); ++col) {
      const Elem& e = basis[p][col];
      KoszulElement x{{{e.a, e.I}, Polynomial::term(l.ring(), e.mu, Rational(1))}};
      for (const auto& [key, g] : u.koszul_differential(x))
        for (const auto& t : g.terms()) {
          auto it = index[p - 1].find({key.first, key.second, t.mono});
          if (it == index[p - 1].end()) throw InvariantViolation("Koszul differential left the truncation");
          m.set(it->second, col, t.coeff);
        }
    }
    d[p] = std::move(m);
  }
  for (std::size_t p = 2; p <= r; ++p)
    if (d[p - 1].cols() > 0 && d[p].cols() > 0 && !d[p - 1].multiply(d[p]).is_zero()) rep.d_squared_zero = false;
  if (r >= 1) {
    const MultiIndex zero(r, 0);
    for (std::size_t row = 0; row < basis[0].size(); ++row)
      if (basis[0][row].a == zero && !d[1].row(row).empty()) rep.augmentation_ok = false;
  }
  std::vector<std::size_t> ranks(r + 2, 0);
  for (std::size_t p = 1; p <= r; ++p) ranks[p] = qlinalg::rank(d[p]);
  for (std::size_t p = 0; p <= r; ++p) {
    rep.homology.push_back(rep.chain_dims[p] - ranks[p] - ranks[p + 1]);
    rep.faithful.push_back(p + r <= order);
  }
  rep.h0_is_base = rep.homology[0] == rep.base_dim;
  rep.notes.push_back("exactness of H_p, p >= 1, is only claimed for p <= N - r");
  return rep;
}

HomCompareReport hom_complex_compare(const LieRinehartAlgebra& l, const LRModule& e, std::size_t p) {
  const std::size_t r = l.rank();
  if (p > r) throw InvalidArgument("hom_complex_compare: p exceeds the rank");
  FlatnessReport flat = connection_flatness(l, e);
  if (!flat.flat || !flat.ideal_preserved || !flat.contains_base_ideal)
    throw InvalidArgument("hom_complex_compare: coefficient module is not a flat L-module");
  HomCompareReport rep;
  if (p == r) return rep;
  Envelope u(l, 1);
  const RingPtr& ring = l.ring();
  const std::size_t n = ring->nvars(), m = e.rank;

  std::vector<Polynomial> samples;
  for (unsigned d = 0; d <= 2; ++d)
    for (const auto& mono : monomials_of_degree(n, d, ring->order())) samples.push_back(Polynomial::term(ring, mono, Rational(1)));
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int k = 0; k < 3; ++k) {
    Polynomial f = Polynomial::constant(ring, Rational(coeff(rng)));
    for (unsigned d = 1; d <= 3; ++d)
      for (const auto& mono : monomials_of_degree(n, d, ring->order())) f += Polynomial::term(ring, mono, Rational(coeff(rng), 1 + (coeff(rng) + 4) % 3));
    samples.push_back(f);
  }

  auto in_subs = subsets(r, p);
  auto out_subs = subsets(r, p + 1);
  std::map<std::vector<std::size_t>, std::size_t> in_idx;
  for (std::size_t k = 0; k < in_subs.size(); ++k) in_idx[in_subs[k]] = k;

  // ∂(1 ⊗ e_K) once per wedge
  std::vector<KoszulElement> boundaries;
  for (const auto& K : out_subs)
    boundaries.push_back(u.koszul_differential({{{MultiIndex(r, 0), K}, Polynomial::constant(ring, Rational(1))}}));

  for (std::size_t J = 0; J < in_subs.size(); ++J)
    for (std::size_t s = 0; s < m; ++s)
      for (const auto& val : samples) {
        Cochain w(in_subs.size(), std::vector<Polynomial>(m, Polynomial(ring)));
        w[J][s] = e.ring->reduce(val);
        Cochain ce = ce_differential(l, e, p, w);
        for (std::size_t k = 0; k < out_subs.size(); ++k) {
          std::vector<Polynomial> lhs(m, Polynomial(ring));
          for (const auto& [key, g] : boundaries[k]) {
            const auto& vals = w[in_idx.at(key.second)];
            auto acted = u.act(u.monomial(key.first, g), e, vals);
            for (std::size_t q = 0; q < m; ++q) lhs[q] += acted[q];
          }
          ++rep.checked;
          for (std::size_t q = 0; q < m; ++q) {
            Polynomial diff = e.ring->reduce(lhs[q] - ce[k][q]);
            if (!diff.is_zero() && rep.ok) {
              rep.ok = false;
              std::string wedge;
              for (std::size_t t = 0; t < out_subs[k].size(); ++t) wedge += (t ? "^" : "") + std::string("e") + std::to_string(out_subs[k][t] + 1);
              rep.witness = "on " + wedge + " with cochain value " + val.to_string() + ": induced " +
                            e.ring->reduce(lhs[q]).to_string() + " vs CE " + ce[k][q].to_string();
            }
          }
        }
      }
  return rep;
}

// ---------------------------------------------------------------- Alt and P

TensorElement alt_map(const WedgeElement& w, std::size_t rank) {
  TensorElement out;
  for (const auto& [I, f] : w) {
    std::vector<std::size_t> perm(I.size());
    std::iota(perm.begin(), perm.end(), 0);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), I.size());
    Rational scale = Rational(1) / Rational(fact);
    do {
      std::size_t inversions = 0;
      for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
          if (perm[a] > perm[b]) ++inversions;
      std::vector<MultiIndex> key;
      for (std::size_t k : perm) key.push_back(unit_index(rank, I[k]));
      add_term(out, key, f * (inversions % 2 ? -scale : scale));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

WedgeElement proj_map(const TensorElement& t) {
  WedgeElement out;
  for (const auto& [key, f] : t) {
    std::vector<std::size_t> idx;
    bool ok = true;
    for (const auto& a : key) {
      if (order_of(a) != 1) {
        ok = false;
        break;
      }
      idx.push_back(static_cast<std::size_t>(std::find(a.begin(), a.end(), 1u) - a.begin()));
    }
    if (!ok) continue;
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (idx[a] > idx[b]) ++inversions;
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
    add_term(out, idx, inversions % 2 ? -f : f);
  }
  return out;
}

std::vector<std::vector<Polynomial>> reduced_koszul_differential(const LieRinehartAlgebra& l, std::size_t p) {
  const std::size_t r = l.rank();
  if (p == 0 || p > r) return {};
  Envelope sym(LieRinehartAlgebra::abelian(l.base(), r), static_cast<unsigned>(p));
  auto rows = subsets(r, p - 1);
  auto cols = subsets(r, p);
  std::map<std::vector<std::size_t>, std::size_t> row_idx;
  for (std::size_t k = 0; k < rows.size(); ++k) row_idx[rows[k]] = k;
  std::vector<std::vector<Polynomial>> m(rows.size(), std::vector<Polynomial>(cols.size(), Polynomial(l.ring())));
  const MultiIndex zero(r, 0);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    KoszulElement x{{{zero, cols[c]}, Polynomial::constant(l.ring(), Rational(1))}};
    for (const auto& [key, g] : sym.koszul_differential(x))
      if (key.first == zero) m[row_idx.at(key.second)][c] += g;  // counit on the symmetric factor
  }
  return m;
}

// -------------------------------------------------------------------- jets

Jet jet_counit(const Envelope& u) {
  Jet j;
  j.order = u.order();
  j.values.emplace(MultiIndex(u.rank(), 0), Polynomial::constant(u.ring(), Rational(1)));
  return j;
}

Jet jet_from_symbols(const Envelope& u, const std::map<MultiIndex, Polynomial>& symbols) {
  Jet j;
  j.order = u.order();
  for (const auto& [b, c] : symbols) {
    if (b.size() != u.rank()) throw InvalidArgument("jet_from_symbols: multi-index has wrong length");
    if (order_of(b) > u.order()) continue;
    add_term(j.values, b, u.algebra().base()->reduce(c * factorial_of(b)));
  }
  return j;
}

Jet jet_product(const Envelope& u, const Jet& a, const Jet& b) {
  Jet out;
  out.order = std::min(a.order, b.order);
  const RingPtr& ring = u.ring();
  for (const auto& al : multi_indices_upto(u.rank(), out.order)) {
    Polynomial acc(ring);
    for (const auto& be : below(al)) {
      auto ia = a.values.find(be);
      auto ib = b.values.find(minus(al, be));
      if (ia == a.values.end() || ib == b.values.end()) continue;
      acc += ia->second * ib->second * binomial(al, be);
    }
    add_term(out.values, al, u.algebra().base()->reduce(acc));
  }
  return out;
}

Polynomial jet_evaluate(const Envelope& u, const Jet& phi, const UElement& x) {
  Polynomial acc(u.ring());
  for (const auto& [a, f] : x) {
    if (f.is_zero()) continue;
    if (order_of(a) > phi.order) throw OrderOverflow("jet evaluated beyond its order");
    auto it = phi.values.find(a);
    if (it != phi.values.end()) acc += f * it->second;
  }
  return u.algebra().base()->reduce(acc);
}

Jet grothendieck_connection(const Envelope& u, const Jet& phi, std::size_t i) {
  if (phi.order == 0) throw OrderOverflow("Grothendieck connection needs a jet of order at least 1");
  if (phi.order > u.order()) throw InvalidArgument("Grothendieck connection: jet order exceeds the envelope order");
  Jet out;
  out.order = phi.order - 1;
  const RingPtr& ring = u.ring();
  for (const auto& a : multi_indices_upto(u.rank(), out.order)) {
    auto it = phi.values.find(a);
    Polynomial v = it == phi.values.end() ? Polynomial(ring) : u.algebra().anchor_apply(i, it->second);
    v -= jet_evaluate(u, phi, u.multiply(u.generator(i), u.monomial(a, Polynomial::constant(ring, Rational(1)))));
    add_term(out.values, a, u.algebra().base()->reduce(v));
  }
  return out;
}

bool jet_equal(const Jet& a, const Jet& b) { return a.order == b.order && a.values == b.values; }

// ------------------------------------------------------------------- cobar

CohomologyReport cobar_truncated_cohomology(const LieRinehartAlgebra& l, CobarSource source, unsigned tensor_degree_max,
                                            unsigned order) {
  if (tensor_degree_max < 1) throw InvalidArgument("cobar: tensor_degree_max must be at least 1");
  auto fin = l.base()->finite_basis();
  if (!fin) throw InvalidArgument("cobar: base ring must be finite dimensional over Q");
  if (source == CobarSource::Jets && !l.has_zero_anchor())
    throw InvalidArgument("cobar: the jet coalgebra is only built for a zero anchor");
  const std::size_t r = l.rank();
  const RingPtr& ring = l.ring();
  const auto& base = l.base();
  Envelope u(l, order);

  // reduced coproduct of one factor: list of (left, right, coefficient)
  struct Split {
    MultiIndex left, right;
    Polynomial coeff;
  };
  std::map<MultiIndex, std::vector<Split>> split;
  const MultiIndex zero(r, 0);
  if (source == CobarSource::Enveloping) {
    for (const auto& g : multi_indices_upto(r, order))
      for (const auto& b : below(g)) {
        if (b == zero || b == g) continue;
        split[g].push_back({b, minus(g, b), Polynomial::constant(ring, binomial(g, b))});
      }
  } else {
    // Δ_J(δ_γ) = Σ (coefficient of e^γ in e^α e^β) δ_α ⊗ δ_β
    for (unsigned da = 1; da < order; ++da)
      for (const auto& a : multi_indices(r, da))
        for (unsigned db = 1; da + db <= order; ++db)
          for (const auto& b : multi_indices(r, db)) {
            UElement prod = u.multiply(u.monomial(a, Polynomial::constant(ring, Rational(1))),
                                       u.monomial(b, Polynomial::constant(ring, Rational(1))));
            for (const auto& [g, c] : prod) split[g].push_back({a, b, c});
          }
  }

  // basis of degree n: μ ⊗ (α_1, …, α_n), |α_i| ≥ 1, Σ|α_i| ≤ N
  std::vector<std::vector<std::vector<MultiIndex>>> tuples(tensor_degree_max + 1);
  tuples[0].push_back({});
  for (unsigned n = 1; n <= tensor_degree_max; ++n)
    for (const auto& t : tuples[n - 1]) {
      unsigned used = 0;
      for (const auto& a : t) used += order_of(a);
      for (unsigned k = 1; used + k <= order; ++k)
        for (const auto& a : multi_indices(r, k)) {
          auto t2 = t;
          t2.push_back(a);
          tuples[n].push_back(std::move(t2));
        }
    }

  const std::string letter = source == CobarSource::Jets ? "w" : "e";
  FilteredComplex c;
  c.ring = ring;
  std::vector<std::map<std::pair<std::size_t, Monomial>, std::size_t>> index(tensor_degree_max + 1);
  std::vector<std::map<std::vector<MultiIndex>, std::size_t>> tuple_idx(tensor_degree_max + 1);
  for (unsigned n = 0; n <= tensor_degree_max; ++n) {
    GradedBasis b;
    for (std::size_t g = 0; g < tuples[n].size(); ++g) {
      tuple_idx[n][tuples[n][g]] = g;
      std::string name;
      for (std::size_t k = 0; k < tuples[n][g].size(); ++k) name += (k ? "|" : "") + multi_index_to_string(tuples[n][g][k], letter);
      b.generator_names.push_back(name.empty() ? std::vector<std::string>{} : std::vector<std::string>{"[" + name + "]"});
      for (const auto& mu : *fin) b.elems.push_back({g, mu, 0});
    }
    for (std::size_t k = 0; k < b.elems.size(); ++k) index[n][{b.elems[k].generator, b.elems[k].mono}] = k;
    c.bases.push_back(std::move(b));
  }
  for (unsigned n = 0; n < tensor_degree_max; ++n) {
    QMatrix m(c.bases[n + 1].size(), c.bases[n].size());
    for (std::size_t col = 0; col < c.bases[n].size(); ++col) {
      const BasisElement& be = c.bases[n].elems[col];
      const auto& t = tuples[n][be.generator];
      Polynomial mu = Polynomial::term(ring, be.mono, Rational(1));
      for (std::size_t i = 0; i < t.size(); ++i) {
        auto it = split.find(t[i]);
        if (it == split.end()) continue;
        for (const auto& s : it->second) {
          std::vector<MultiIndex> t2(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
          t2.push_back(s.left);
          t2.push_back(s.right);
          t2.insert(t2.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 1), t.end());
          auto ti = tuple_idx[n + 1].find(t2);
          if (ti == tuple_idx[n + 1].end()) continue;  // beyond total order N
          Polynomial v = base->reduce(mu * s.coeff);
          if ((i + 1) % 2) v = -v;
          for (const auto& term : v.terms()) m.add_to(index[n + 1].at({ti->second, term.mono}), col, term.coeff);
        }
      }
    }
    c.d.push_back(std::move(m));
  }
  c.verify();
  CohomologyReport rep = plain_cohomology(c);
  rep.dims.resize(tensor_degree_max);
  rep.stabilized.resize(tensor_degree_max);
  rep.representatives.resize(tensor_degree_max);
  rep.representative_vectors.resize(tensor_degree_max);
  rep.faithful.assign(tensor_degree_max, false);
  bool graded = source == CobarSource::Enveloping || l.is_abelian();
  for (unsigned k = 0; k < tensor_degree_max; ++k) rep.faithful[k] = graded && k <= order;
  rep.d_max = static_cast<int>(order);
  rep.notes.push_back(graded ? "the complex is graded by total order, so every degree n <= N is exact"
                             : "total order is only filtered; degrees are not certified");
  return rep;
}

}  // namespace rinehart
