/* Exercises the shared library through its C header only. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "halfcake/halfcake.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const char* kCounterexample =
    "{\"K\":3,\"M\":[10,8,6],\"D\":[[null,6,6],[5,null,6],[6,6,null]]}";

int main(void) {
  hc_options opts;
  hc_options_default(&opts);
  EXPECT(opts.trials == 8);
  EXPECT(opts.tol == 1e-9);

  hc_spec* spec = NULL;
  EXPECT(hc_spec_from_json(kCounterexample, &spec) == HC_OK);
  EXPECT(spec != NULL);
  EXPECT(hc_spec_users(spec) == 3);

  hc_report* report = NULL;
  EXPECT(hc_feasibility(spec, &opts, &report) == HC_OK);
  EXPECT(strstr(hc_report_json(report), "UNDECIDED") != NULL);
  hc_report_free(report);

  /* Sample an ergodic pair, then verify its scheme through the API. */
  hc_report* channel = NULL;
  hc_report* scheme = NULL;
  EXPECT(hc_sample(spec, 7, 1, &channel, &scheme) == HC_OK);
  EXPECT(channel != NULL && scheme != NULL);
  report = NULL;
  EXPECT(hc_verify(spec, hc_report_json(channel), hc_report_json(scheme), 1e-9, &report) == HC_OK);
  EXPECT(hc_report_passed(report) == 1);
  hc_report_free(report);

  /* A scheme for another network is a dimension error. */
  hc_spec* small = NULL;
  EXPECT(hc_spec_from_json("{\"K\":2,\"M\":[1,1],\"D\":[[null,1],[1,null]]}", &small) == HC_OK);
  report = NULL;
  EXPECT(hc_verify(small, hc_report_json(channel), hc_report_json(scheme), 1e-9, &report) ==
         HC_ERR_DIMENSION_MISMATCH);
  EXPECT(report == NULL);
  EXPECT(strlen(hc_last_error_message()) > 0);
  hc_spec_free(small);
  hc_report_free(channel);
  hc_report_free(scheme);

  /* Explicit plan bound. */
  report = NULL;
  EXPECT(hc_bound(spec, &opts, "{\"mu\":[2,2,2],\"assign\":\"mirror\"}", &report) == HC_OK);
  EXPECT(strstr(hc_report_json(report), "\"bound\"") != NULL);
  hc_report_free(report);
  report = NULL;
  EXPECT(hc_bound(spec, &opts, "{\"mu\":[2,2],\"assign\":\"mirror\"}", &report) ==
         HC_ERR_PLAN_VIOLATES_REPLICATION_RULES);

  /* Error paths. */
  hc_spec* bad = NULL;
  EXPECT(hc_spec_from_json("{\"K\":3,", &bad) == HC_ERR_PARSE);
  EXPECT(bad == NULL);
  EXPECT(hc_spec_from_json("{\"K\":2,\"M\":[1,1],\"D\":[[null,2],[1,null]]}", &bad) ==
         HC_ERR_RANK_EXCEEDS_DIMENSION);
  EXPECT(hc_spec_from_json(NULL, &bad) == HC_ERR_INVALID_ARGUMENT);
  EXPECT(hc_spec_from_file("/nonexistent/spec.json", &bad) == HC_ERR_IO);
  EXPECT(hc_analyze(NULL, &opts, &report) == HC_ERR_INVALID_ARGUMENT);
  EXPECT(hc_reproduce("no-such-target", &opts, &report) == HC_ERR_UNKNOWN_TARGET);
  opts.trials = 0;
  EXPECT(hc_feasibility(spec, &opts, &report) == HC_ERR_INVALID_ARGUMENT);
  hc_options_default(&opts);

  EXPECT(strcmp(hc_status_name(HC_OK), "OK") == 0);
  EXPECT(strcmp(hc_status_name(HC_ERR_UNKNOWN_TARGET), "UnknownTarget") == 0);

  /* Target listing and one cheap reproduction. */
  EXPECT(hc_reproduce_target_count() >= 6);
  EXPECT(hc_reproduce_target_name(hc_reproduce_target_count()) == NULL);
  report = NULL;
  EXPECT(hc_reproduce("example-2x3", &opts, &report) == HC_OK);
  EXPECT(hc_report_passed(report) == 1);
  hc_report_free(report);

  hc_report_free(NULL);
  hc_spec_free(NULL);
  hc_spec_free(spec);

  if (failures) fprintf(stderr, "%d C API check(s) failed\n", failures);
  else printf("C API: all checks passed\n");
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
