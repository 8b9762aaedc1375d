#include <cstdlib>
#include <cstring>
#include <string>

#include "rinehart/driver.hpp"
#include "rinehart/error.hpp"
#include "rinehart/rinehart.h"

using namespace rinehart;
using driver::json;

namespace {

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set(char** slot, const std::string& s) {
  if (slot) *slot = dup(s);
}

driver::SpecFile load(const char* spec, int format) {
  if (!spec) throw InvalidArgument("no spec given");
  if (format == RINEHART_SPEC_TEXT) return driver::SpecFile::parse(spec);
  if (format == RINEHART_SPEC_JSON) {
    json j;
    try {
      j = json::parse(spec);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("spec JSON: ") + e.what());
    }
    return driver::SpecFile::from_json(j);
  }
  throw InvalidArgument("unknown spec format");
}

}  // namespace

extern "C" {

const char* rinehart_version(void) { return "0.1.0"; }

const char* rinehart_schema_version(void) { return driver::kSchemaVersion; }

const char* rinehart_commands(void) {
  static const std::string joined = [] {
    std::string s;
    for (const auto& c : driver::commands()) s += (s.empty() ? "" : " ") + c;
    return s;
  }();
  return joined.c_str();
}

int rinehart_run(const char* command, const char* spec, int spec_format, const char* options_json, char** report,
                 char** error) {
  if (report) *report = nullptr;
  if (error) *error = nullptr;
  std::string cmd = command ? command : "";
  driver::RunResult res;
  try {
    driver::Overrides o;
    if (options_json && *options_json) {
      try {
        o = driver::overrides_from_json(json::parse(options_json));
      } catch (const json::parse_error& e) {
        throw ParseError(std::string("options JSON: ") + e.what());
      }
    }
    std::optional<driver::SpecFile> s;
    if (spec_format != RINEHART_SPEC_NONE && spec) s = load(spec, spec_format);
    res = driver::run(cmd, s, o);
  } catch (const std::exception& e) {
    res.exit_code = RINEHART_INPUT_ERROR;
    res.error = e.what();
    res.report = {{"schema_version", driver::kSchemaVersion}, {"command", cmd}, {"status", "input_error"}, {"error", e.what()},
                  {"warnings", json::array()}};
  }
  set(report, res.report.dump(2));
  if (!res.error.empty()) set(error, res.error);
  return res.exit_code;
}

int rinehart_parse_spec(const char* spec, int spec_format, char** canonical_json, char** error) {
  if (canonical_json) *canonical_json = nullptr;
  if (error) *error = nullptr;
  try {
    driver::SpecFile s = load(spec, spec_format);
    s.validate();
    set(canonical_json, s.to_json().dump(2));
    return RINEHART_OK;
  } catch (const std::exception& e) {
    set(error, e.what());
    return RINEHART_INPUT_ERROR;
  }
}

void rinehart_free(char* s) { std::free(s); }

}  // extern "C"
