#pragma once

#include <string>

#include "gpcat/jsonio.hpp"
#include "gpcat/nerve.hpp"

namespace gpcat {

/// Knobs a job may set; the defaults mirror the library-wide caps.
struct JobParams {
  int degree = 1;                  // report homology through this degree
  std::string basepoint;           // object name; empty means the first object
  std::size_t max_cosets = 10000;
  std::size_t max_chains = kDefaultChainCap;
  std::size_t max_order = kDefaultOrderCap;
  int prime = 0;                   // coefficient field, 0 = integers
  int rank = 1;                    // constant coefficient rank
  int p = 0;                       // prime for the radicals pipeline
  std::size_t radical_max_order = 200;
};

struct JobResult {
  int exit_code = 0;  // 0 pass, 1 verified mathematical failure, 2 input or scale error
  Json report;
};

/// Runs one named pipeline over a parsed input document.  The input is a
/// poset descriptor (poset_from_json) or a generator spec
/// {"family": "GL", "n": .., "p": .., "links": "graded"|"trivial"};
/// borel-tits and flagposet accept only the spec form.  Never throws:
/// schema, scale and usage problems come back as exit code 2 with an
/// "error" field, verified mathematical failures as exit code 1, and the
/// report is deterministic for identical inputs.
JobResult run_pipeline(const std::string& pipeline, const Json& input,
                       const JobParams& params);

/// Writes through a temporary file and renames into place, so no failure
/// mode can leave a truncated document at `path`.
void write_json_atomic(const Json& j, const std::string& path);

}  // namespace gpcat
