/* orthoqm: exact Fourier expansions of orthogonal quasimodular forms and
 * Borcherds theta lifts, with Gromov-Witten generating-series presets.
 *
 * C interface of the shared library. Jobs are described by a JSON document
 * (the same schema the `oqm` command-line tool produces from its flags) and
 * return a JSON document plus a status code:
 *
 *   0  success
 *   1  verification failure (an identity suite or cross-check failed)
 *   2  usage error (unknown command, malformed configuration)
 *   3  internal consistency error (an exactness assertion fired)
 *
 * Handles are opaque; every oqm_job_new must be paired with oqm_job_free.
 * A handle is not thread-safe; distinct handles may be used concurrently.
 */

#ifndef ORTHOQM_H
#define ORTHOQM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct oqm_job oqm_job;

/* Parse a JSON job configuration. Returns NULL only on allocation failure;
 * configuration errors are reported by oqm_job_run. */
oqm_job* oqm_job_new(const char* config_json);

/* Run the job; returns the status code (see above). Idempotent. */
int oqm_job_run(oqm_job* job);

/* JSON result of the last run ("" before a run). Owned by the handle. */
const char* oqm_job_output(const oqm_job* job);

/* Human-readable error message when the status is nonzero, else "". */
const char* oqm_job_error(const oqm_job* job);

void oqm_job_free(oqm_job* job);

/* One-shot convenience: runs the job and returns a malloc'd JSON string the
 * caller releases with oqm_string_free; status stored in *status_out. */
char* oqm_run(const char* config_json, int* status_out);
void oqm_string_free(char* s);

const char* oqm_version(void);

#ifdef __cplusplus
}
#endif

#endif /* ORTHOQM_H */
