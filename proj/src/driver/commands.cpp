#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "rinehart/derham.hpp"
#include "rinehart/driver.hpp"
#include "rinehart/envelope.hpp"
#include "rinehart/error.hpp"

namespace rinehart::driver {

namespace {

struct Outcome {
  int code = Ok;
  std::string witness;
  std::vector<std::string> warnings;

  void falsify(const std::string& w) {
    if (code != Falsified) witness = w;
    code = Falsified;
  }
};

std::vector<std::string> poly_strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::vector<std::string> derivation_strings(const std::vector<Derivation>& ds, const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(derivation_to_string(d, vars));
  return out;
}

json describe_algebra(const LieRinehartAlgebra& l) {
  json brackets = json::array();
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = i + 1; j < l.rank(); ++j)
      for (std::size_t k = 0; k < l.rank(); ++k)
        if (!l.bracket(i, j, k).is_zero())
          brackets.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"c", l.bracket(i, j, k).to_string()}});
  return {{"base", l.base()->describe()},
          {"rank", l.rank()},
          {"names", l.names()},
          {"anchor", derivation_strings(l.anchors(), l.base()->vars())},
          {"bracket", brackets},
          {"degree_shift", l.degree_shift()}};
}

json describe_module(const LRModule& e) {
  json conn = json::array();
  for (const auto& a : e.connection) {
    json m = json::array();
    for (const auto& row : a) m.push_back(poly_strings(row));
    conn.push_back(m);
  }
  return {{"ring", e.ring->describe()}, {"rank", e.rank}, {"connection", conn}};
}

json axioms_json(const AxiomReport& a) {
  return {{"ok", a.ok},
          {"jacobi", a.jacobi},
          {"anchor_homomorphism", a.anchor_homomorphism},
          {"leibniz", a.leibniz},
          {"ideal_preserved", a.ideal_preserved},
          {"failures", a.failures}};
}

json flatness_json(const FlatnessReport& f) {
  json j = {{"flat", f.flat},
            {"ideal_preserved", f.ideal_preserved},
            {"contains_base_ideal", f.contains_base_ideal},
            {"failures", f.failures}};
  if (!f.flat) {
    j["pair"] = {f.i + 1, f.j + 1};
    j["curvature"] = f.curvature;
  }
  return j;
}

void require_stable(const CohomologyReport& r, const Overrides& o, Outcome& out) {
  if (r.all_stabilized()) return;
  out.warnings.push_back("some degrees did not stabilize within the window");
  if (o.require_stable && out.code == Ok) out.code = NotStable;
}

json cmd_gb(const SpecFile& s, const Overrides&, Outcome&) {
  RingPtr ring = build_ring(s);
  std::vector<Polynomial> gens;
  for (const auto& p : s.ideal) gens.push_back(parse_polynomial(p, ring));
  QuotientRingPtr q = QuotientRing::create(ring, gens);
  json j = {{"basis", poly_strings(q->gb().generators())},
            {"order", s.order},
            {"ring", q->describe()},
            {"reduced", q->gb().is_reduced()}};
  auto fin = q->finite_basis();
  j["dimension"] = fin ? json(fin->size()) : json(nullptr);
  return j;
}

json cmd_derham(const SpecFile& s, const Overrides& o, Outcome& out) {
  QuotientRingPtr q = build_base(s, build_ring(s));
  CohomologyReport r = de_rham_cohomology(q, s.options.d_max, s.options.window);
  require_stable(r, o, out);
  json j = to_json(r);
  j["ring"] = q->describe();
  return j;
}

json cmd_logder(const SpecFile& s, const Overrides&, Outcome& out) {
  RingPtr ring = build_ring(s);
  Polynomial f = parse_polynomial(*s.divisor, ring);
  json j = {{"f", f.to_string()}};
  LogDerivations ld;
  try {
    ld = log_derivations(f);
  } catch (const NotCertifiedFree& e) {
    j["free"] = false;
    j["generators"] = e.generators();
    j["reason"] = e.what();
    out.warnings.push_back("module of logarithmic derivations is not certified free");
    return j;
  }
  const auto& vars = ring->vars();
  j["free"] = true;
  j["kind"] = ld.kind == LogAlgebroidKind::Divisor ? "divisor" : "ambient";
  j["base_ring"] = ld.algebra.base()->describe();
  j["basis"] = derivation_strings(ld.algebra.anchors(), vars);
  j["module_basis"] = derivation_strings(ld.module_basis, vars);
  j["raw_generators"] = derivation_strings(ld.raw_generators, vars);
  j["saito"] = ld.saito_basis.has_value();
  if (ld.saito_basis) {
    std::vector<std::vector<Polynomial>> m;
    for (const auto& d : *ld.saito_basis) m.push_back(d);
    j["saito_basis"] = derivation_strings(*ld.saito_basis, vars);
    j["saito_determinant"] = determinant(m, ring).to_string();
  }
  j["algebra"] = describe_algebra(ld.algebra);
  return j;
}

json cmd_lr_cohomology(const SpecFile& s, const Overrides& o, Outcome& out) {
  LieRinehartAlgebra l = build_algebra(s, build_ring(s));
  LRModule e = build_module(s, l);
  json j = {{"algebra", describe_algebra(l)}, {"coefficients", describe_module(e)}};
  AxiomReport ax = lr_check_axioms(l);
  if (!ax.ok) {
    j["axioms"] = axioms_json(ax);
    out.falsify(ax.failures.empty() ? "Lie-Rinehart axioms fail" : ax.failures.front());
    return j;
  }
  FlatnessReport fl = connection_flatness(l, e);
  if (!fl.flat || !fl.ideal_preserved || !fl.contains_base_ideal) {
    j["flatness"] = flatness_json(fl);
    out.falsify(fl.failures.empty() ? "coefficient module is not a flat L-module" : fl.failures.front());
    return j;
  }
  CohomologyReport r = ce_cohomology(l, e, s.options.d_max, s.options.window);
  require_stable(r, o, out);
  j["cohomology"] = to_json(r);
  j["dims"] = r.dims;
  j["degree_shift"] = ce_degree_shift(l, e);
  return j;
}

json cmd_check(const SpecFile& s, const Overrides&, Outcome& out) {
  LieRinehartAlgebra l = build_algebra(s, build_ring(s));
  LRModule e = build_module(s, l);
  AxiomReport ax = lr_check_axioms(l);
  FlatnessReport fl = connection_flatness(l, e);
  if (!ax.ok) out.falsify(ax.failures.empty() ? "Lie-Rinehart axioms fail" : ax.failures.front());
  if (!fl.flat || !fl.ideal_preserved || !fl.contains_base_ideal)
    out.falsify(fl.failures.empty() ? "coefficient module is not a flat L-module" : fl.failures.front());
  return {{"algebra", describe_algebra(l)},
          {"coefficients", describe_module(e)},
          {"axioms", axioms_json(ax)},
          {"flatness", flatness_json(fl)}};
}

json cmd_koszul(const SpecFile& s, const Overrides&, Outcome& out) {
  LieRinehartAlgebra l = build_algebra(s, build_ring(s));
  KoszulReport k = koszul_checks(l, s.options.order, s.options.d_max);
  if (!k.d_squared_zero) out.falsify("Koszul differential does not square to zero");
  else if (!k.augmentation_ok) out.falsify("augmentation does not vanish on the image of the first differential");
  else if (!k.h0_is_base) out.falsify("H_0 has dimension " + std::to_string(k.homology[0]) + ", base slice has " + std::to_string(k.base_dim));
  return {{"algebra", describe_algebra(l)},
          {"order", k.order},
          {"weight_bound", k.weight_bound},
          {"chain_dims", k.chain_dims},
          {"homology", k.homology},
          {"faithful", k.faithful},
          {"d_squared_zero", k.d_squared_zero},
          {"augmentation_ok", k.augmentation_ok},
          {"h0_is_base", k.h0_is_base},
          {"base_dim", k.base_dim},
          {"notes", k.notes}};
}

json cmd_hkr(const SpecFile& s, const Overrides&, Outcome& out) {
  LieRinehartAlgebra l = build_algebra(s, build_ring(s));
  const std::size_t r = l.rank();
  const unsigned n = s.options.order;
  Envelope u(l, n);
  const Polynomial unit = Polynomial::constant(l.ring(), Rational(1));

  json reduced = json::array();
  bool reduced_zero = true;
  for (std::size_t p = 1; p <= r; ++p) {
    auto m = reduced_koszul_differential(l, p);
    auto rows = subsets(r, p - 1), cols = subsets(r, p);
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m[a].size(); ++b)
        if (!m[a][b].is_zero()) {
          reduced_zero = false;
          reduced.push_back({{"p", p}, {"row", a}, {"col", b}, {"value", m[a][b].to_string()}});
        }
  }
  if (!reduced_zero) out.falsify("reduced Koszul differential is not zero");

  std::size_t theta_checked = 0;
  std::string theta_witness;
  for (const auto& a : multi_indices_upto(r, n)) {
    UElement sym = u.monomial(a, unit);
    ++theta_checked;
    if (u.coproduct(u.symmetrize(sym)) != u.symmetrize_tensor(u.symmetric_coproduct(sym)) && theta_witness.empty())
      theta_witness = "coproduct does not commute with symmetrization on " + multi_index_to_string(a);
  }
  if (!theta_witness.empty()) out.falsify(theta_witness);

  std::size_t alt_checked = 0;
  std::string alt_witness;
  for (std::size_t p = 1; p <= std::min<std::size_t>(r, n); ++p)
    for (const auto& I : subsets(r, p)) {
      WedgeElement w{{I, unit}};
      ++alt_checked;
      if (proj_map(alt_map(w, r)) != w && alt_witness.empty()) {
        alt_witness = "P(Alt(e_I)) differs from e_I for I = {";
        for (std::size_t k = 0; k < I.size(); ++k) alt_witness += (k ? "," : "") + std::to_string(I[k] + 1);
        alt_witness += "}";
      }
    }
  if (!alt_witness.empty()) out.falsify(alt_witness);

  return {{"algebra", describe_algebra(l)},
          {"order", n},
          {"reduced_koszul", {{"zero", reduced_zero}, {"nonzero_entries", reduced}}},
          {"theta_coalgebra", {{"ok", theta_witness.empty()}, {"checked", theta_checked}, {"witness", theta_witness}}},
          {"p_alt", {{"ok", alt_witness.empty()}, {"checked", alt_checked}, {"witness", alt_witness}}}};
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

json cmd_dual_hkr(const SpecFile& s, const Overrides& o, Outcome& out) {
  LieRinehartAlgebra l = build_algebra(s, build_ring(s));
  const unsigned t = s.options.tensor_degree_max, n = s.options.order;
  CohomologyReport jets = cobar_truncated_cohomology(l, CobarSource::Jets, t, n);
  CohomologyReport env = cobar_truncated_cohomology(l, CobarSource::Enveloping, t, n);
  CohomologyReport ce = ce_cohomology(l, LRModule::trivial(l), s.options.d_max, s.options.window);
  require_stable(ce, o, out);
  const std::size_t base_dim = l.base()->finite_basis()->size();

  std::vector<std::size_t> ce_dims, exterior;
  json mismatches = json::array();
  for (std::size_t k = 0; k < t; ++k) {
    ce_dims.push_back(k < ce.dims.size() ? ce.dims[k] : 0);
    exterior.push_back(binomial(l.rank(), k) * base_dim);
    if (jets.faithful[k] && jets.dims[k] != ce_dims[k])
      mismatches.push_back({{"source", "jets"}, {"degree", k}, {"cobar", jets.dims[k]}, {"expected", ce_dims[k]}});
    if (env.faithful[k] && env.dims[k] != exterior[k])
      mismatches.push_back({{"source", "enveloping"}, {"degree", k}, {"cobar", env.dims[k]}, {"expected", exterior[k]}});
  }
  if (!mismatches.empty())
    out.falsify("cobar dimension " + mismatches[0]["cobar"].dump() + " differs from " + mismatches[0]["expected"].dump() +
                " in degree " + mismatches[0]["degree"].dump() + " (" + mismatches[0]["source"].get<std::string>() + ")");
  return {{"algebra", describe_algebra(l)},
          {"jets", to_json(jets)},
          {"enveloping", to_json(env)},
          {"ce_dims", ce_dims},
          {"exterior_dims", exterior},
          {"agree", mismatches.empty()},
          {"mismatches", mismatches}};
}

using Handler = std::function<json(const SpecFile&, const Overrides&, Outcome&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"gb", cmd_gb},         {"derham", cmd_derham}, {"logder", cmd_logder}, {"lr-cohomology", cmd_lr_cohomology},
      {"check", cmd_check},   {"koszul", cmd_koszul}, {"hkr", cmd_hkr},       {"dual-hkr", cmd_dual_hkr},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"gb", "derham", "logder", "lr-cohomology", "check", "koszul", "hkr", "dual-hkr"};
  return c;
}

json to_json(const CohomologyReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"level", l.level}, {"chain_dims", l.chain_dims}, {"dims", l.dims}, {"comparison_ranks", l.comparison_ranks}});
  return {{"dims", r.dims},
          {"stabilized", r.stabilized},
          {"all_stabilized", r.all_stabilized()},
          {"faithful", r.faithful},
          {"representatives", r.representatives},
          {"d_max", r.d_max},
          {"window", r.window},
          {"d_squared_zero", r.d_squared_zero},
          {"levels", levels},
          {"notes", r.notes}};
}

RunResult run(const std::string& command, const std::optional<SpecFile>& spec, const Overrides& o) {
  auto start = std::chrono::steady_clock::now();
  RunResult res;
  json& report = res.report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = command;
  Outcome out;
  auto fail_input = [&](const std::string& msg) {
    res.exit_code = InputError;
    res.error = msg;
    report["status"] = "input_error";
    report["error"] = msg;
  };
  try {
    auto it = handlers().find(command);
    if (it == handlers().end()) throw InvalidArgument("unknown command '" + command + "'");
    SpecFile s = spec ? *spec : SpecFile{};
    if (o.d_max) s.options.d_max = *o.d_max;
    if (o.window) s.options.window = *o.window;
    if (o.order) s.options.order = *o.order;
    if (o.tensor_degree_max) s.options.tensor_degree_max = *o.tensor_degree_max;
    if (o.f) {
      s.divisor = *o.f;
      if (!spec) s.vars = identifiers(*o.f);
    }
    if (!spec && !(command == "logder" && o.f)) throw InvalidArgument(command + " needs a spec file");
    if (command == "logder" && !s.divisor) throw InvalidArgument("logder needs --f or a divisor in the spec file");
    s.validate();
    report["input"] = s.to_json();
    report["result"] = it->second(s, o, out);
    res.exit_code = out.code;
    report["status"] = out.code == Ok ? "ok" : out.code == Falsified ? "falsified" : "unstable";
    if (out.code == Falsified) {
      report["witness"] = out.witness;
      res.error = out.witness;
    }
  } catch (const InvariantViolation& e) {
    res.exit_code = Falsified;
    res.error = e.what();
    report["status"] = "falsified";
    report["witness"] = e.what();
  } catch (const Error& e) {
    fail_input(e.what());
  } catch (const std::exception& e) {
    fail_input(std::string("internal error: ") + e.what());
  }
  report["warnings"] = out.warnings;
  report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace rinehart::driver
