#pragma once

// Spec files and command dispatch shared by the C API and the tests.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rinehart/lierinehart.hpp"

namespace rinehart::driver {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// c_ij^k with 1-based indices, i < j.
struct BracketEntry {
  std::size_t i = 0, j = 0, k = 0;
  std::string c;
  bool operator==(const BracketEntry&) const = default;
};

struct LieRinehartSpec {
  std::size_t rank = 0;
  /// anchor[i][j] = a(e_i)(x_j)
  std::vector<std::vector<std::string>> anchor;
  std::vector<BracketEntry> bracket;
  std::vector<std::string> names;
  bool operator==(const LieRinehartSpec&) const = default;
};

struct CoefficientSpec {
  /// Extra generators of J; E = (S/(I + J))^rank.
  std::vector<std::string> ideal;
  std::size_t rank = 1;
  /// connection[i][row][col]; empty means A = 0.
  std::vector<std::vector<std::vector<std::string>>> connection;
  bool operator==(const CoefficientSpec&) const = default;
};

struct Options {
  int d_max = 10;
  int window = 3;
  unsigned order = 3;
  unsigned tensor_degree_max = 3;
  bool operator==(const Options&) const = default;
};

struct SpecFile {
  std::vector<std::string> vars;
  std::string order = "grevlex";
  std::vector<std::string> ideal;
  std::optional<std::string> divisor;
  std::optional<LieRinehartSpec> lie_rinehart;
  std::optional<CoefficientSpec> coefficients;
  Options options;

  /// Line-oriented format: `[section]` headers, `key = <json value>` lines,
  /// `#` comments; values may span lines while brackets are open.
  static SpecFile parse(std::string_view text);
  static SpecFile from_json(const json& j);
  json to_json() const;

  /// Parses every polynomial and checks sizes; throws ParseError or
  /// InvalidArgument.
  void validate() const;

  bool operator==(const SpecFile&) const = default;
};

/// Sorted unique identifiers appearing in a polynomial string.
std::vector<std::string> identifiers(std::string_view poly);

RingPtr build_ring(const SpecFile& s);
QuotientRingPtr build_base(const SpecFile& s, const RingPtr& ring);
/// From the lie_rinehart section, or the logarithmic algebroid of the divisor.
LieRinehartAlgebra build_algebra(const SpecFile& s, const RingPtr& ring);
LRModule build_module(const SpecFile& s, const LieRinehartAlgebra& l);

struct Overrides {
  std::optional<int> d_max, window;
  std::optional<unsigned> order, tensor_degree_max;
  std::optional<std::string> f;
  bool require_stable = false;
};
Overrides overrides_from_json(const json& j);

enum ExitCode : int { Ok = 0, InputError = 1, Falsified = 2, NotStable = 3 };

struct RunResult {
  int exit_code = Ok;
  json report;
  std::string error;
};

const std::vector<std::string>& commands();

/// Never throws; errors are reported through exit_code and error.
RunResult run(const std::string& command, const std::optional<SpecFile>& spec, const Overrides& o);

json to_json(const CohomologyReport& r);

}  // namespace rinehart::driver
