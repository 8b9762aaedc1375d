#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rinehart/rinehart.h"

using nlohmann::json;

namespace {

struct Flags {
  std::string spec_path;
  std::string spec_json;
  bool json_out = false;
  bool require_stable = false;
  std::optional<int> d_max, window;
  std::optional<unsigned> order, tensor_degree_max;
  std::optional<std::string> f;
};

const char* describe(const std::string& cmd) {
  if (cmd == "gb") return "reduced Groebner basis of the ring ideal";
  if (cmd == "derham") return "truncated algebraic de Rham cohomology of the ring";
  if (cmd == "logder") return "logarithmic derivations of a divisor";
  if (cmd == "lr-cohomology") return "Chevalley-Eilenberg cohomology of a Lie-Rinehart algebra";
  if (cmd == "check") return "Lie-Rinehart axioms and flatness of the coefficients";
  if (cmd == "koszul") return "checks on the truncated Koszul-Rinehart complex";
  if (cmd == "hkr") return "reduced Koszul differential, PBW coalgebra map and P.Alt";
  if (cmd == "dual-hkr") return "truncated cobar cohomology of jets against CE cohomology";
  return "";
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// "dx^dy" → "dx∧dy"; exponents ("x^2") are left alone.
std::string wedges(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '^' && i + 1 < s.size() && !std::isdigit(static_cast<unsigned char>(s[i + 1])))
      out += "∧";
    else
      out += s[i];
  }
  return out;
}

std::string yes_no(const json& b) { return b.get<bool>() ? "yes" : "no"; }

void print_algebra(const json& a) {
  std::cout << "algebra: rank " << a["rank"] << " over " << a["base"].get<std::string>() << "\n";
  const auto& names = a["names"];
  for (std::size_t i = 0; i < a["anchor"].size(); ++i) {
    const std::string name = names[i].get<std::string>(), anchor = a["anchor"][i].get<std::string>();
    std::cout << "  " << (name == anchor ? anchor : name + " -> " + anchor) << "\n";
  }
  for (const auto& b : a["bracket"]) {
    std::size_t i = b["i"], j = b["j"], k = b["k"];
    std::cout << "  [" << names[i - 1].get<std::string>() << ", " << names[j - 1].get<std::string>()
              << "] has coefficient " << b["c"].get<std::string>() << " on " << names[k - 1].get<std::string>() << "\n";
  }
}

void print_cohomology(const json& c) {
  std::cout << "degree  dim  stable  representatives\n";
  for (std::size_t p = 0; p < c["dims"].size(); ++p) {
    std::string reps;
    for (const auto& r : c["representatives"][p]) reps += (reps.empty() ? "" : ", ") + wedges(r.get<std::string>());
    std::printf("%6zu  %3zu  %-6s  %s\n", p, c["dims"][p].get<std::size_t>(), c["stabilized"][p].get<bool>() ? "yes" : "no",
                reps.c_str());
  }
  for (const auto& n : c["notes"]) std::cout << "note: " << n.get<std::string>() << "\n";
}

void print_human(const std::string& cmd, const json& rep) {
  std::cout << "rinehart " << cmd << ": " << rep.value("status", "?") << "\n";
  if (rep.contains("witness")) std::cout << "witness: " << wedges(rep["witness"].get<std::string>()) << "\n";
  if (!rep.contains("result")) return;
  const json& r = rep["result"];
  if (cmd == "gb") {
    std::cout << "ring: " << r["ring"].get<std::string>() << "\n";
    for (const auto& g : r["basis"]) std::cout << "  " << g.get<std::string>() << "\n";
    std::cout << "dimension over Q: " << (r["dimension"].is_null() ? std::string("infinite") : r["dimension"].dump()) << "\n";
  } else if (cmd == "derham") {
    std::cout << "ring: " << r["ring"].get<std::string>() << "\n";
    print_cohomology(r);
  } else if (cmd == "logder") {
    std::cout << "f = " << r["f"].get<std::string>() << "\n";
    if (!r["free"].get<bool>()) {
      std::cout << "not certified free; generators:\n";
      for (const auto& g : r["generators"]) std::cout << "  " << g.get<std::string>() << "\n";
      return;
    }
    std::cout << "free over " << r["base_ring"].get<std::string>() << " (" << r["kind"].get<std::string>() << ")\nbasis:\n";
    for (const auto& g : r["basis"]) std::cout << "  " << g.get<std::string>() << "\n";
    std::cout << "saito: " << yes_no(r["saito"]);
    if (r.contains("saito_determinant")) std::cout << ", determinant " << r["saito_determinant"].get<std::string>();
    std::cout << "\n";
  } else if (cmd == "lr-cohomology") {
    print_algebra(r["algebra"]);
    std::cout << "coefficients: " << r["coefficients"]["ring"].get<std::string>() << ", rank " << r["coefficients"]["rank"] << "\n";
    if (r.contains("cohomology")) print_cohomology(r["cohomology"]);
  } else if (cmd == "check") {
    print_algebra(r["algebra"]);
    const json& a = r["axioms"];
    std::cout << "jacobi: " << yes_no(a["jacobi"]) << "\nanchor homomorphism: " << yes_no(a["anchor_homomorphism"])
              << "\nleibniz: " << yes_no(a["leibniz"]) << "\nideal preserved: " << yes_no(a["ideal_preserved"]) << "\n";
    for (const auto& f : a["failures"]) std::cout << "  " << f.get<std::string>() << "\n";
    const json& fl = r["flatness"];
    std::cout << "connection flat: " << yes_no(fl["flat"]) << "\n";
    for (const auto& f : fl["failures"]) std::cout << "  " << f.get<std::string>() << "\n";
  } else if (cmd == "koszul") {
    print_algebra(r["algebra"]);
    std::cout << "order " << r["order"] << ", weight bound " << r["weight_bound"] << "\n";
    std::cout << "degree  chains  homology  faithful\n";
    for (std::size_t p = 0; p < r["homology"].size(); ++p)
      std::printf("%6zu  %6zu  %8zu  %s\n", p, r["chain_dims"][p].get<std::size_t>(), r["homology"][p].get<std::size_t>(),
                  r["faithful"][p].get<bool>() ? "yes" : "no");
    std::cout << "d^2 = 0: " << yes_no(r["d_squared_zero"]) << "\naugmentation: " << yes_no(r["augmentation_ok"])
              << "\nH0 = base (" << r["base_dim"] << "): " << yes_no(r["h0_is_base"]) << "\n";
  } else if (cmd == "hkr") {
    print_algebra(r["algebra"]);
    std::cout << "reduced Koszul differential zero: " << yes_no(r["reduced_koszul"]["zero"]) << "\n";
    std::cout << "PBW map is a coalgebra map: " << yes_no(r["theta_coalgebra"]["ok"]) << " (" << r["theta_coalgebra"]["checked"]
              << " basis elements)\n";
    std::cout << "P.Alt = id: " << yes_no(r["p_alt"]["ok"]) << " (" << r["p_alt"]["checked"] << " wedges)\n";
  } else if (cmd == "dual-hkr") {
    print_algebra(r["algebra"]);
    std::cout << "degree  jets  CE  U  exterior  faithful\n";
    for (std::size_t p = 0; p < r["ce_dims"].size(); ++p)
      std::printf("%6zu  %4zu  %2zu  %1zu  %8zu  %s\n", p, r["jets"]["dims"][p].get<std::size_t>(), r["ce_dims"][p].get<std::size_t>(),
                  r["enveloping"]["dims"][p].get<std::size_t>(), r["exterior_dims"][p].get<std::size_t>(),
                  r["jets"]["faithful"][p].get<bool>() ? "yes" : "no");
    std::cout << "agree: " << yes_no(r["agree"]) << "\n";
  }
  for (const auto& w : rep["warnings"]) std::cout << "warning: " << w.get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Lie-Rinehart algebras, de Rham and HKR complexes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rinehart_version());
  Flags flags;

  std::vector<std::string> names;
  std::istringstream list(rinehart_commands());
  for (std::string c; list >> c;) names.push_back(c);
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->add_option("spec", flags.spec_path, "spec file (key = value with [sections])");
    sub->add_option("--spec-json", flags.spec_json, "spec file in JSON");
    sub->add_flag("--json", flags.json_out, "print the JSON report");
    sub->add_option("--d-max", flags.d_max, "top filtration level");
    sub->add_option("--window", flags.window, "levels compared for stabilization");
    sub->add_option("--order", flags.order, "order N of the enveloping truncation");
    sub->add_option("--tensor-degree-max", flags.tensor_degree_max, "cobar tensor degree bound");
    sub->add_flag("--require-stable", flags.require_stable, "exit 3 when a degree does not stabilize");
    sub->add_option("--f", flags.f, "divisor polynomial (logder)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  if (!flags.spec_path.empty() && !flags.spec_json.empty()) {
    std::cerr << "rinehart: give either a spec file or --spec-json, not both\n";
    return 1;
  }
  std::optional<std::string> text;
  int format = RINEHART_SPEC_NONE;
  const std::string& path = flags.spec_json.empty() ? flags.spec_path : flags.spec_json;
  if (!path.empty()) {
    text = read_file(path);
    if (!text) {
      std::cerr << "rinehart: cannot read " << path << "\n";
      return 1;
    }
    format = flags.spec_json.empty() ? RINEHART_SPEC_TEXT : RINEHART_SPEC_JSON;
  }

  json opts = json::object();
  if (flags.d_max) opts["d_max"] = *flags.d_max;
  if (flags.window) opts["window"] = *flags.window;
  if (flags.order) opts["order"] = *flags.order;
  if (flags.tensor_degree_max) opts["tensor_degree_max"] = *flags.tensor_degree_max;
  if (flags.f) opts["f"] = *flags.f;
  if (flags.require_stable) opts["require_stable"] = true;

  char* report = nullptr;
  char* error = nullptr;
  int code = rinehart_run(cmd.c_str(), text ? text->c_str() : nullptr, format, opts.dump().c_str(), &report, &error);
  if (code == RINEHART_INPUT_ERROR) std::cerr << "rinehart: error: " << (error ? error : "unknown") << "\n";
  if (report) {
    if (flags.json_out)
      std::cout << report << "\n";
    else if (code != RINEHART_INPUT_ERROR)
      print_human(cmd, json::parse(report));
  }
  rinehart_free(report);
  rinehart_free(error);
  return code;
}
