#include "rinehart/complex.hpp"

#include <algorithm>
#include <map>

#include "rinehart/error.hpp"

namespace rinehart {

using qlinalg::QMatrix;
using qlinalg::Subspace;
using qlinalg::Vector;

std::size_t GradedBasis::prefix(int level) const {
  auto it = std::partition_point(elems.begin(), elems.end(),
                                 [&](const BasisElement& e) { return e.weight <= level; });
  return static_cast<std::size_t>(it - elems.begin());
}

bool FilteredComplex::d_squared_zero() const {
  for (std::size_t p = 0; p + 2 < bases.size(); ++p)
    if (!d[p + 1].multiply(d[p]).is_zero()) return false;
  return true;
}

bool FilteredComplex::filtration_compatible() const {
  for (std::size_t p = 0; p + 1 < bases.size(); ++p) {
    const QMatrix& m = d[p];
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& [c, x] : m.row(r))
        if (bases[p + 1].elems[r].weight > bases[p].elems[c].weight) return false;
  }
  return true;
}

void FilteredComplex::verify() const {
  if (d.size() + 1 != bases.size() && !(bases.empty() && d.empty()))
    throw InvariantViolation("complex: differential count does not match degrees");
  for (std::size_t p = 0; p + 1 < bases.size(); ++p)
    if (d[p].rows() != bases[p + 1].size() || d[p].cols() != bases[p].size())
      throw InvariantViolation("complex: differential " + std::to_string(p) + " has the wrong shape");
  if (!d_squared_zero()) throw InvariantViolation("complex: d∘d is not zero");
  if (!filtration_compatible()) throw InvariantViolation("complex: differential raises the weight");
}

bool CohomologyReport::all_stabilized() const {
  return std::all_of(stabilized.begin(), stabilized.end(), [](bool b) { return b; });
}

namespace {

struct LevelSpaces {
  std::vector<std::size_t> sizes;
  std::vector<Subspace> z;  // cocycles, embedded in the top-level space
  std::vector<Subspace> b;  // coboundaries
};

Vector pad(const Vector& v, std::size_t n) {
  Vector out(v);
  out.resize(n);
  return out;
}

LevelSpaces level_spaces(const FilteredComplex& c, int level, const std::vector<std::size_t>& full) {
  LevelSpaces s;
  const std::size_t n = c.degrees();
  for (std::size_t p = 0; p < n; ++p) s.sizes.push_back(c.bases[p].prefix(level));
  for (std::size_t p = 0; p < n; ++p) {
    Subspace z;
    if (p + 1 < n)
      z = qlinalg::kernel_basis(c.d[p].top_left(s.sizes[p + 1], s.sizes[p]));
    else
      z = Subspace::whole(s.sizes[p]);
    Subspace b = p == 0 ? Subspace::zero(s.sizes[p])
                        : qlinalg::image(c.d[p - 1].top_left(s.sizes[p], s.sizes[p - 1]));
    Subspace zf{full[p], {}}, bf{full[p], {}};
    for (const auto& v : z.basis) zf.basis.push_back(pad(v, full[p]));
    for (const auto& v : b.basis) bf.basis.push_back(pad(v, full[p]));
    s.z.push_back(std::move(zf));
    s.b.push_back(std::move(bf));
  }
  return s;
}

std::size_t span_dim(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  std::vector<Vector> all(a);
  all.insert(all.end(), b.begin(), b.end());
  if (all.empty()) return 0;
  return qlinalg::rank(QMatrix::from_dense(all));
}

}  // namespace

CohomologyReport filtered_cohomology(const FilteredComplex& c, int d_max, int window) {
  if (window < 0 || window > d_max) throw InvalidArgument("cohomology: need 0 <= window <= d_max");
  const std::size_t n = c.degrees();
  CohomologyReport rep;
  rep.d_max = d_max;
  rep.window = window;
  rep.d_squared_zero = c.d_squared_zero();
  if (!rep.d_squared_zero) throw InvariantViolation("complex: d∘d is not zero");
  if (!c.filtration_compatible()) throw InvariantViolation("complex: differential raises the weight");

  std::vector<std::size_t> full(n);
  for (std::size_t p = 0; p < n; ++p) full[p] = c.bases[p].prefix(d_max);

  std::vector<LevelSpaces> spaces;
  for (int level = d_max - window; level <= d_max; ++level) {
    LevelSpaces s = level_spaces(c, level, full);
    LevelData ld;
    ld.level = level;
    ld.chain_dims = s.sizes;
    for (std::size_t p = 0; p < n; ++p) ld.dims.push_back(s.z[p].dim() - s.b[p].dim());
    rep.levels.push_back(std::move(ld));
    spaces.push_back(std::move(s));
  }
  for (std::size_t k = 0; k + 1 < spaces.size(); ++k) {
    for (std::size_t p = 0; p < n; ++p) {
      // image of Z_k in Z_{k+1}/B_{k+1}
      std::size_t r = span_dim(spaces[k].z[p].basis, spaces[k + 1].b[p].basis) - spaces[k + 1].b[p].dim();
      rep.levels[k].comparison_ranks.push_back(r);
    }
  }

  const LevelSpaces& top = spaces.back();
  for (std::size_t p = 0; p < n; ++p) {
    rep.dims.push_back(rep.levels.back().dims[p]);
    bool stable = true;
    for (std::size_t k = 0; k < rep.levels.size(); ++k) {
      if (rep.levels[k].dims[p] != rep.dims[p]) stable = false;
      if (k + 1 < rep.levels.size() && rep.levels[k].comparison_ranks[p] != rep.dims[p]) stable = false;
    }
    if (window == 0) stable = false;
    rep.stabilized.push_back(stable);
    rep.faithful.push_back(true);

    qlinalg::Subquotient sq = qlinalg::subquotient_dim(top.z[p], top.b[p]);
    std::vector<std::string> rendered;
    for (const auto& v : sq.representatives) rendered.push_back(render_vector(c, p, v));
    rep.representative_vectors.push_back(sq.representatives);
    rep.representatives.push_back(std::move(rendered));
  }
  return rep;
}

CohomologyReport plain_cohomology(const FilteredComplex& c) {
  int top = 0;
  for (const auto& b : c.bases)
    for (const auto& e : b.elems) top = std::max(top, e.weight);
  CohomologyReport rep = filtered_cohomology(c, top, 0);
  rep.stabilized.assign(rep.dims.size(), true);
  return rep;
}

std::string render_vector(const FilteredComplex& c, std::size_t degree, const Vector& v, const std::string& wedge) {
  const GradedBasis& basis = c.bases.at(degree);
  std::map<std::size_t, std::vector<Term>> per_gen;
  for (std::size_t i = 0; i < v.size() && i < basis.size(); ++i)
    if (sgn(v[i]) != 0) per_gen[basis.elems[i].generator].push_back({basis.elems[i].mono, v[i]});
  if (per_gen.empty()) return "0";
  std::string out;
  for (auto& [g, terms] : per_gen) {
    Polynomial coeff = Polynomial::from_terms(c.ring, std::move(terms));
    std::string gname;
    for (std::size_t k = 0; k < basis.generator_names[g].size(); ++k)
      gname += (k ? wedge : "") + basis.generator_names[g][k];
    std::string cs = coeff.to_string();
    std::string piece;
    if (gname.empty()) {
      piece = cs;
    } else if (cs == "1") {
      piece = gname;
    } else if (cs == "-1") {
      piece = "-" + gname;
    } else if (coeff.size() == 1) {
      piece = cs + "*" + gname;
    } else {
      piece = "(" + cs + ")*" + gname;
    }
    if (out.empty())
      out = piece;
    else if (piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out;
}

std::size_t class_rank(const FilteredComplex& c, std::size_t p, const std::vector<Vector>& vectors) {
  const std::size_t n = c.bases.at(p).size();
  std::vector<Vector> b;
  if (p > 0) b = qlinalg::image(c.d[p - 1]).basis;
  std::vector<Vector> padded;
  for (const auto& v : vectors) padded.push_back(pad(v, n));
  return span_dim(padded, b) - span_dim({}, b);
}

}  // namespace rinehart
