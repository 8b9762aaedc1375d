#ifndef RINEHART_H
#define RINEHART_H

/* C interface to the rinehart library.  Every call returns an exit code and
 * hands out heap strings that the caller releases with rinehart_free. */

#if defined(_WIN32)
#define RINEHART_API __declspec(dllexport)
#else
#define RINEHART_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum rinehart_status {
  RINEHART_OK = 0,
  RINEHART_INPUT_ERROR = 1,
  RINEHART_FALSIFIED = 2,
  RINEHART_NOT_STABLE = 3
};

enum rinehart_spec_format {
  RINEHART_SPEC_NONE = 0, /* spec may be NULL (logder with an "f" option) */
  RINEHART_SPEC_TEXT = 1, /* key = value with [section] headers */
  RINEHART_SPEC_JSON = 2
};

RINEHART_API const char* rinehart_version(void);
RINEHART_API const char* rinehart_schema_version(void);

/* Runs one of: gb, derham, logder, lr-cohomology, check, koszul, hkr,
 * dual-hkr.  options_json (may be NULL) holds overrides:
 *   {"d_max", "window", "order", "tensor_degree_max", "f", "require_stable"}
 * *report receives the JSON report (always set unless out of memory);
 * *error receives a message for codes 1 and 2, otherwise NULL. */
RINEHART_API int rinehart_run(const char* command, const char* spec, int spec_format, const char* options_json,
                              char** report, char** error);

/* Parses and validates a spec; *canonical_json receives its JSON form. */
RINEHART_API int rinehart_parse_spec(const char* spec, int spec_format, char** canonical_json, char** error);

/* Space-separated list of supported commands. */
RINEHART_API const char* rinehart_commands(void);

RINEHART_API void rinehart_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
