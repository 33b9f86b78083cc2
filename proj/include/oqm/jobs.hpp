#ifndef OQM_JOBS_HPP
#define OQM_JOBS_HPP

#include <string>

namespace oqm {

struct JobResult {
	int status = 0;       // 0 ok, 1 verification failure, 2 usage, 3 internal
	std::string output;   // JSON document
	std::string error;    // message when status != 0
};

// Run a job described by a JSON configuration (see README for the schema).
JobResult run_job(const std::string& configJson);

} // namespace oqm

#endif
