#ifndef ZW_ZW_H
#define ZW_ZW_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(ZW_BUILDING_LIBRARY)
#define ZW_API __declspec(dllexport)
#else
#define ZW_API __declspec(dllimport)
#endif
#else
#define ZW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct zw_diagram zw_diagram;

typedef enum zw_status {
  ZW_OK = 0,
  ZW_ERR_CHECK_FAILED = 1, /* a verification or fuzz check failed */
  ZW_ERR_PARSE = 2,        /* syntax, type or validation error in input */
  ZW_ERR_RESOURCE = 3,     /* leg cap or representation limit */
  ZW_ERR_INVALID_ARGUMENT = 4,
  ZW_ERR_INTERNAL = 5
} zw_status;

typedef enum zw_format { ZW_FORMAT_TERM = 0, ZW_FORMAT_JSON = 1 } zw_format;

typedef struct zw_options {
  uint64_t modulus; /* 0 selects the integers */
  int leg_cap;
} zw_options;

typedef struct zw_fuzz_config {
  int count;
  uint64_t seed;
  int max_vertices;
  int max_arity;
  int max_legs;
  uint64_t modulus;
} zw_fuzz_config;

ZW_API void zw_options_init(zw_options* opts);
ZW_API void zw_fuzz_config_init(zw_fuzz_config* cfg);

/* Message for the last failing call on this thread; empty if none. */
ZW_API const char* zw_last_error(void);

/* Frees strings returned through char** out-parameters. */
ZW_API void zw_string_free(char* s);

ZW_API zw_status zw_diagram_parse(const char* text, zw_format format, zw_diagram** out);
ZW_API void zw_diagram_free(zw_diagram* g);
ZW_API int zw_diagram_legs(const zw_diagram* g);
ZW_API zw_status zw_diagram_to_json(const zw_diagram* g, char** out);
ZW_API zw_status zw_diagram_to_dot(const zw_diagram* g, char** out);

/* Tensor text format: one `<bits> <coefficient>` line per nonzero entry. */
ZW_API zw_status zw_eval(const zw_diagram* g, const zw_options* opts, char** out);

/* out_graph receives the normal-form diagram as a JSON graph, out_form the
   NormalForm file. out_trace may be NULL; otherwise it receives JSON lines. */
ZW_API zw_status zw_normalize(const zw_diagram* g, const zw_options* opts, char** out_graph,
                              char** out_form, char** out_trace);

ZW_API zw_status zw_nf_of_tensor(const char* tensor_text, const zw_options* opts, char** out);

/* One `PASS name` or `FAIL name` line per catalog rule, followed by the
   extra rules given as rule-file JSON texts. Returns ZW_ERR_CHECK_FAILED when
   any rule fails. */
ZW_API zw_status zw_verify_rules(int max_arity, const zw_options* opts, const char* const* extra_rules,
                                 int extra_count, char** out);

/* Summary line, then one line per failure. Returns ZW_ERR_CHECK_FAILED on
   any mismatch. */
ZW_API zw_status zw_fuzz(const zw_fuzz_config* cfg, char** out);

#ifdef __cplusplus
}
#endif

#endif
