/*
 * halfcake.h - C interface to the half-the-cake DoF toolkit.
 *
 * Every call returns an hc_status.  On failure the out-pointers are left
 * untouched and hc_last_error_message() describes the problem (per thread).
 * Reports own a UTF-8 JSON document; free them with hc_report_free.
 */
#ifndef HALFCAKE_H
#define HALFCAKE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HC_API __declspec(dllexport)
#else
#define HC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hc_status {
  HC_OK = 0,
  HC_ERR_INVALID_ARGUMENT,
  HC_ERR_PARSE,
  HC_ERR_IO,
  HC_ERR_BAD_SHAPE,
  HC_ERR_RANK_EXCEEDS_DIMENSION,
  HC_ERR_NOT_SQUARE_CASE,
  HC_ERR_NOT_SQUARE,
  HC_ERR_WRONG_K,
  HC_ERR_NOT_SYMMETRIC,
  HC_ERR_CONDITION_FAILS,
  HC_ERR_CERTIFICATE_INFEASIBLE,
  HC_ERR_DOMINANT_USER,
  HC_ERR_PLAN_VIOLATES_REPLICATION_RULES,
  HC_ERR_BAD_PARTITION,
  HC_ERR_NON_UNIFORM_MU,
  HC_ERR_DIMENSION_MISMATCH,
  HC_ERR_NULL_SPACE_EMPTY,
  HC_ERR_DEGENERATE_DESIRED_DIFFERENCE,
  HC_ERR_UNKNOWN_TARGET,
  HC_ERR_INTERNAL
} hc_status;

typedef struct hc_spec hc_spec;
typedef struct hc_report hc_report;

typedef struct hc_options {
  uint64_t seed;
  int trials;   /* random field evaluations per generic rank */
  double tol;   /* relative numerical tolerance */
  int mu_max;   /* largest replica count in the bound search */
  int budget;   /* rank evaluations allowed in the bound search */
} hc_options;

HC_API void hc_options_default(hc_options* opts);

HC_API const char* hc_status_name(hc_status status);
HC_API const char* hc_last_error_message(void);

/* Network specs: {"K", "M", "N", "D"} with null on the diagonal of D. */
HC_API hc_status hc_spec_from_json(const char* json, hc_spec** out);
HC_API hc_status hc_spec_from_file(const char* path, hc_spec** out);
HC_API int hc_spec_users(const hc_spec* spec);
HC_API void hc_spec_free(hc_spec* spec);

/* Pipelines.  A report is produced whenever the call returns HC_OK. */
HC_API hc_status hc_analyze(const hc_spec* spec, const hc_options* opts, hc_report** out);
HC_API hc_status hc_feasibility(const hc_spec* spec, const hc_options* opts, hc_report** out);
/* plan_json may be NULL to search over plans instead. */
HC_API hc_status hc_bound(const hc_spec* spec, const hc_options* opts, const char* plan_json, hc_report** out);
HC_API hc_status hc_verify(const hc_spec* spec, const char* channel_json, const char* scheme_json, double tol,
                           hc_report** out);
/* With ergodic != 0 a two-slot pair is sampled and scheme_out (if not NULL)
 * receives the matching half-cake scheme. */
HC_API hc_status hc_sample(const hc_spec* spec, uint64_t seed, int ergodic, hc_report** channel_out,
                           hc_report** scheme_out);
HC_API hc_status hc_reproduce(const char* target, const hc_options* opts, hc_report** out);

HC_API size_t hc_reproduce_target_count(void);
HC_API const char* hc_reproduce_target_name(size_t index);
HC_API const char* hc_reproduce_target_description(size_t index);

/* Pretty-printed JSON, valid until the report is freed. */
HC_API const char* hc_report_json(const hc_report* report);
/* 1 when every check in the report passed, 0 otherwise. */
HC_API int hc_report_passed(const hc_report* report);
HC_API void hc_report_free(hc_report* report);

#ifdef __cplusplus
}
#endif

#endif /* HALFCAKE_H */
