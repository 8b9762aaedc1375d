#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "rinehart/driver.hpp"
#include "rinehart/error.hpp"

namespace rinehart::driver {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_comment(const std::string& line) {
  bool in_string = false, escaped = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

/// Net count of open brackets and braces outside strings.
int nesting(const std::string& s) {
  int depth = 0;
  bool in_string = false, escaped = false;
  for (char c : s) {
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '[' || c == '{') {
      ++depth;
    } else if (c == ']' || c == '}') {
      --depth;
    }
  }
  return depth;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected a table");
  for (const auto& [key, value] : obj.items()) {
    bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + "." + key + ": " + (obj.contains(key) ? "wrong type" : "missing"));
  }
}

/// A polynomial given either as a string or as a bare number.
std::string poly_string(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(where + ": expected a polynomial string");
}

std::vector<std::string> poly_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(poly_string(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<std::string>> poly_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of rows");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(poly_list(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t index_value(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 1) throw ParseError(where + ": expected a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

std::vector<std::string> identifiers(std::string_view poly) {
  std::set<std::string> out;
  std::size_t i = 0;
  while (i < poly.size()) {
    if (std::isalpha(static_cast<unsigned char>(poly[i])) || poly[i] == '_') {
      std::size_t j = i;
      while (j < poly.size() && (std::isalnum(static_cast<unsigned char>(poly[j])) || poly[j] == '_')) ++j;
      out.emplace(poly.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  return {out.begin(), out.end()};
}

SpecFile SpecFile::parse(std::string_view text) {
  static const std::set<std::string> sections{"ring", "lie_rinehart", "coefficients", "options"};
  json root = json::object();
  std::string section;
  std::string key, value;
  std::size_t key_line = 0;
  bool pending = false;

  auto commit = [&]() {
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      throw ParseError("line " + std::to_string(key_line) + ": value of '" + key + "' is not valid");
    }
    json& target = section.empty() ? root : root[section];
    if (target.contains(key)) throw ParseError("line " + std::to_string(key_line) + ": duplicate key '" + key + "'");
    target[key] = std::move(parsed);
    pending = false;
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (pending) {
      value += "\n" + line;
      if (nesting(value) <= 0) commit();
      continue;
    }
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
      section = trim(line.substr(1, line.size() - 2));
      if (!sections.count(section)) throw ParseError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      if (root.contains(section)) throw ParseError("line " + std::to_string(lineno) + ": duplicate section [" + section + "]");
      root[section] = json::object();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    key = trim(line.substr(0, eq));
    value = trim(line.substr(eq + 1));
    key_line = lineno;
    if (!is_identifier(key)) throw ParseError("line " + std::to_string(lineno) + ": bad key '" + key + "'");
    if (value.empty()) throw ParseError("line " + std::to_string(lineno) + ": missing value for '" + key + "'");
    pending = true;
    if (nesting(value) <= 0) commit();
  }
  if (pending) throw ParseError("line " + std::to_string(key_line) + ": unterminated value for '" + key + "'");
  return from_json(root);
}

SpecFile SpecFile::from_json(const json& j) {
  check_keys(j, {"ring", "divisor", "lie_rinehart", "coefficients", "options"}, "spec");
  SpecFile s;
  if (!j.contains("ring")) throw ParseError("spec: missing [ring]");
  const json& ring = j.at("ring");
  check_keys(ring, {"vars", "ideal", "order"}, "ring");
  s.vars = get<std::vector<std::string>>(ring, "vars", "ring");
  if (ring.contains("ideal")) s.ideal = poly_list(ring.at("ideal"), "ring.ideal");
  if (ring.contains("order")) s.order = get<std::string>(ring, "order", "ring");
  if (j.contains("divisor")) s.divisor = poly_string(j.at("divisor"), "divisor");

  if (j.contains("lie_rinehart")) {
    const json& lr = j.at("lie_rinehart");
    check_keys(lr, {"rank", "anchor", "bracket", "names"}, "lie_rinehart");
    LieRinehartSpec l;
    l.rank = get<std::size_t>(lr, "rank", "lie_rinehart");
    if (lr.contains("anchor")) l.anchor = poly_matrix(lr.at("anchor"), "lie_rinehart.anchor");
    if (lr.contains("names")) l.names = get<std::vector<std::string>>(lr, "names", "lie_rinehart");
    if (lr.contains("bracket")) {
      const json& b = lr.at("bracket");
      if (!b.is_array()) throw ParseError("lie_rinehart.bracket: expected an array");
      for (std::size_t n = 0; n < b.size(); ++n) {
        std::string where = "lie_rinehart.bracket[" + std::to_string(n) + "]";
        BracketEntry e;
        if (b[n].is_array()) {
          if (b[n].size() != 4) throw ParseError(where + ": expected [i, j, k, c]");
          e = {index_value(b[n][0], where), index_value(b[n][1], where), index_value(b[n][2], where), poly_string(b[n][3], where)};
        } else {
          check_keys(b[n], {"i", "j", "k", "c"}, where);
          for (const char* f : {"i", "j", "k", "c"})
            if (!b[n].contains(f)) throw ParseError(where + ": missing '" + f + "'");
          e = {index_value(b[n]["i"], where), index_value(b[n]["j"], where), index_value(b[n]["k"], where),
               poly_string(b[n]["c"], where)};
        }
        l.bracket.push_back(std::move(e));
      }
    }
    s.lie_rinehart = std::move(l);
  }

  if (j.contains("coefficients")) {
    const json& c = j.at("coefficients");
    check_keys(c, {"ideal", "rank", "connection"}, "coefficients");
    CoefficientSpec e;
    if (c.contains("ideal")) e.ideal = poly_list(c.at("ideal"), "coefficients.ideal");
    if (c.contains("rank")) e.rank = get<std::size_t>(c, "rank", "coefficients");
    if (c.contains("connection")) {
      const json& m = c.at("connection");
      if (!m.is_array()) throw ParseError("coefficients.connection: expected an array of matrices");
      for (std::size_t i = 0; i < m.size(); ++i)
        e.connection.push_back(poly_matrix(m[i], "coefficients.connection[" + std::to_string(i) + "]"));
    }
    s.coefficients = std::move(e);
  }

  if (j.contains("options")) {
    const json& o = j.at("options");
    check_keys(o, {"d_max", "window", "order", "N", "tensor_degree_max"}, "options");
    if (o.contains("d_max")) s.options.d_max = get<int>(o, "d_max", "options");
    if (o.contains("window")) s.options.window = get<int>(o, "window", "options");
    if (o.contains("order") && o.contains("N")) throw ParseError("options: give only one of 'order' and 'N'");
    if (o.contains("order")) s.options.order = get<unsigned>(o, "order", "options");
    if (o.contains("N")) s.options.order = get<unsigned>(o, "N", "options");
    if (o.contains("tensor_degree_max")) s.options.tensor_degree_max = get<unsigned>(o, "tensor_degree_max", "options");
  }
  return s;
}

json SpecFile::to_json() const {
  json j;
  j["ring"] = {{"vars", vars}, {"ideal", ideal}, {"order", order}};
  if (divisor) j["divisor"] = *divisor;
  if (lie_rinehart) {
    json b = json::array();
    for (const auto& e : lie_rinehart->bracket) b.push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"c", e.c}});
    j["lie_rinehart"] = {{"rank", lie_rinehart->rank}, {"anchor", lie_rinehart->anchor}, {"bracket", b}, {"names", lie_rinehart->names}};
  }
  if (coefficients)
    j["coefficients"] = {{"ideal", coefficients->ideal}, {"rank", coefficients->rank}, {"connection", coefficients->connection}};
  j["options"] = {{"d_max", options.d_max},
                  {"window", options.window},
                  {"order", options.order},
                  {"tensor_degree_max", options.tensor_degree_max}};
  return j;
}

void SpecFile::validate() const {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!is_identifier(v)) throw ParseError("ring.vars: bad variable name '" + v + "'");
    if (!seen.insert(v).second) throw ParseError("ring.vars: duplicate variable '" + v + "'");
  }
  RingPtr ring = build_ring(*this);
  auto parse_all = [&](const std::vector<std::string>& ps, const std::string& where) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      try {
        parse_polynomial(ps[i], ring);
      } catch (const ParseError& e) {
        throw ParseError(where + "[" + std::to_string(i) + "]: " + e.what());
      }
    }
  };
  parse_all(ideal, "ring.ideal");
  if (divisor) parse_all({*divisor}, "divisor");
  if (lie_rinehart) {
    const auto& l = *lie_rinehart;
    if (l.rank == 0) throw InvalidArgument("lie_rinehart.rank must be positive");
    if (!l.anchor.empty()) {  // absent anchor means zero
      if (l.anchor.size() != l.rank)
        throw InvalidArgument("lie_rinehart.anchor: expected " + std::to_string(l.rank) + " rows");
      for (std::size_t i = 0; i < l.anchor.size(); ++i) {
        if (l.anchor[i].size() != vars.size())
          throw InvalidArgument("lie_rinehart.anchor[" + std::to_string(i) + "]: expected " + std::to_string(vars.size()) +
                                " entries");
        parse_all(l.anchor[i], "lie_rinehart.anchor[" + std::to_string(i) + "]");
      }
    }
    for (std::size_t n = 0; n < l.bracket.size(); ++n) {
      const auto& e = l.bracket[n];
      std::string where = "lie_rinehart.bracket[" + std::to_string(n) + "]";
      if (!(e.i < e.j) || e.j > l.rank || e.k > l.rank || e.i < 1 || e.k < 1)
        throw InvalidArgument(where + ": need 1 <= i < j <= rank and 1 <= k <= rank");
      parse_all({e.c}, where);
    }
    if (!l.names.empty() && l.names.size() != l.rank) throw InvalidArgument("lie_rinehart.names: expected one name per generator");
  }
  if (coefficients) {
    const auto& c = *coefficients;
    if (c.rank == 0) throw InvalidArgument("coefficients.rank must be positive");
    parse_all(c.ideal, "coefficients.ideal");
    for (std::size_t i = 0; i < c.connection.size(); ++i) {
      if (c.connection[i].size() != c.rank) throw InvalidArgument("coefficients.connection: matrices must be rank x rank");
      for (const auto& row : c.connection[i]) {
        if (row.size() != c.rank) throw InvalidArgument("coefficients.connection: matrices must be rank x rank");
        parse_all(row, "coefficients.connection[" + std::to_string(i) + "]");
      }
    }
  }
  if (options.d_max < 0 || options.window < 0) throw InvalidArgument("options: d_max and window must be non-negative");
}

RingPtr build_ring(const SpecFile& s) { return make_ring(s.vars, order_kind_from_string(s.order)); }

QuotientRingPtr build_base(const SpecFile& s, const RingPtr& ring) {
  std::vector<Polynomial> gens;
  for (const auto& p : s.ideal) gens.push_back(parse_polynomial(p, ring));
  return QuotientRing::create(ring, std::move(gens));
}

LieRinehartAlgebra build_algebra(const SpecFile& s, const RingPtr& ring) {
  if (s.lie_rinehart) {
    const auto& spec = *s.lie_rinehart;
    QuotientRingPtr base = build_base(s, ring);
    std::vector<Derivation> anchor(spec.rank, Derivation(ring->nvars(), Polynomial(ring)));
    for (std::size_t i = 0; i < spec.anchor.size(); ++i)
      for (std::size_t j = 0; j < spec.anchor[i].size(); ++j) anchor[i][j] = parse_polynomial(spec.anchor[i][j], ring);
    std::vector<std::vector<std::vector<Polynomial>>> c(
        spec.rank, std::vector<std::vector<Polynomial>>(spec.rank, std::vector<Polynomial>(spec.rank, Polynomial(ring))));
    for (const auto& e : spec.bracket) c[e.i - 1][e.j - 1][e.k - 1] += parse_polynomial(e.c, ring);
    return LieRinehartAlgebra(base, std::move(anchor), std::move(c), spec.names);
  }
  if (s.divisor) {
    if (!s.ideal.empty()) throw InvalidArgument("a divisor is only supported over a polynomial ring (empty ring.ideal)");
    return log_derivations(parse_polynomial(*s.divisor, ring)).algebra;
  }
  throw InvalidArgument("spec needs a [lie_rinehart] section or a divisor");
}

LRModule build_module(const SpecFile& s, const LieRinehartAlgebra& l) {
  if (!s.coefficients) return LRModule::trivial(l);
  const auto& c = *s.coefficients;
  const RingPtr& ring = l.ring();
  std::vector<Polynomial> gens = l.base()->ideal_generators();
  for (const auto& p : c.ideal) gens.push_back(parse_polynomial(p, ring));
  LRModule e;
  e.ring = QuotientRing::create(ring, std::move(gens));
  e.rank = c.rank;
  e.connection.assign(l.rank(), std::vector<std::vector<Polynomial>>(c.rank, std::vector<Polynomial>(c.rank, Polynomial(ring))));
  if (!c.connection.empty()) {
    if (c.connection.size() != l.rank())
      throw InvalidArgument("coefficients.connection: expected one matrix per generator (" + std::to_string(l.rank()) + ")");
    for (std::size_t i = 0; i < l.rank(); ++i)
      for (std::size_t a = 0; a < c.rank; ++a)
        for (std::size_t b = 0; b < c.rank; ++b) e.connection[i][a][b] = e.ring->reduce(parse_polynomial(c.connection[i][a][b], ring));
  }
  return e;
}

Overrides overrides_from_json(const json& j) {
  Overrides o;
  if (j.is_null()) return o;
  check_keys(j, {"d_max", "window", "order", "tensor_degree_max", "f", "require_stable"}, "options");
  if (j.contains("d_max")) o.d_max = get<int>(j, "d_max", "options");
  if (j.contains("window")) o.window = get<int>(j, "window", "options");
  if (j.contains("order")) o.order = get<unsigned>(j, "order", "options");
  if (j.contains("tensor_degree_max")) o.tensor_degree_max = get<unsigned>(j, "tensor_degree_max", "options");
  if (j.contains("f")) o.f = get<std::string>(j, "f", "options");
  if (j.contains("require_stable")) o.require_stable = get<bool>(j, "require_stable", "options");
  return o;
}

}  // namespace rinehart::driver
