#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "lambdacf/lambda.hpp"

namespace lambdacf {

struct SurveyOptions {
  long from = 3;
  long to = 100;
  long p = 3;
  int n_max = 2;
  std::string out_path;            // JSON-lines cache, append-only
  std::optional<std::string> csv_path;
  int threads = 1;
};

struct SurveyStats {
  long computed = 0;
  long skipped = 0;   // recorded as skipped this run
  long cached = 0;    // already present, not recomputed
};

// One pass over primes ell = 3 mod 4 in [from, to]. Keys already present in
// the cache (same D, p, library version) are not recomputed; qualifying keys
// get a full iterate_n trace, the rest a skip record naming the failed
// hypothesis. Returns counters; a human summary goes to log.
SurveyStats run_survey(const SurveyOptions& opts, std::ostream& log);

// default cache location; the LAMBDACF_CACHE environment variable overrides
std::string default_cache_path();

}  // namespace lambdacf
