#include "orthoqm.h"

#include "oqm/jobs.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct oqm_job {
	std::string config;
	oqm::JobResult result;
	bool ran = false;
};

extern "C" {

oqm_job* oqm_job_new(const char* config_json) {
	oqm_job* job = new (std::nothrow) oqm_job;
	if (!job) return nullptr;
	job->config = config_json ? config_json : "";
	return job;
}

int oqm_job_run(oqm_job* job) {
	if (!job) return 2;
	if (!job->ran) {
		job->result = oqm::run_job(job->config);
		job->ran = true;
	}
	return job->result.status;
}

const char* oqm_job_output(const oqm_job* job) {
	return job && job->ran ? job->result.output.c_str() : "";
}

const char* oqm_job_error(const oqm_job* job) {
	return job && job->ran ? job->result.error.c_str() : "";
}

void oqm_job_free(oqm_job* job) { delete job; }

char* oqm_run(const char* config_json, int* status_out) {
	oqm::JobResult res = oqm::run_job(config_json ? config_json : "");
	if (status_out) *status_out = res.status;
	const std::string& payload = res.status == 0 ? res.output : res.error;
	char* out = (char*)std::malloc(payload.size() + 1);
	if (!out) {
		if (status_out) *status_out = 2;
		return nullptr;
	}
	std::memcpy(out, payload.c_str(), payload.size() + 1);
	return out;
}

void oqm_string_free(char* s) { std::free(s); }

const char* oqm_version(void) { return "orthoqm 1.0.0"; }

} // extern "C"
