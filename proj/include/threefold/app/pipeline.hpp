#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "threefold/app/cache.hpp"
#include "threefold/app/manifest.hpp"

namespace threefold {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,        // bad command line
  kExitInvalid = 2,      // manifest, parameter, parse or input-data validation failure
  kExitUnsupported = 3,  // no fixture or leafwise model for the input
  kExitRegularity = 4,   // an irreducible class is not a regular point
  kExitTautness = 5,     // tautness failure under --strict
  kExitCache = 6,        // cache directory or record could not be written
  kExitModuli = 7,       // infinite moduli, singular 1-form or degree headroom exceeded
  kExitInternal = 8,     // anything else
};

// Maps an exception to its exit code and a short type name.
int exit_code_for(const std::exception& e);
std::string error_type(const std::exception& e);

const std::vector<std::string>& subcommands();

struct RunOptions {
  int workers = 1;
  bool strict = false;
  std::optional<std::uint64_t> seed;  // overrides the manifest's top-level seed
};

struct RunResult {
  nlohmann::json report;  // schema threefold-report/1
  int exit_code = kExitOk;
};

// Runs one subcommand. Module errors are caught and recorded in the report
// ("status": "error") with the matching exit code; in `all`, sections whose
// inputs are outside a module's scope (unsupported, infinite moduli,
// irregular classes) are recorded as skipped and the run continues.
RunResult run(const std::string& subcommand, const Manifest& manifest, const RunOptions& options, Cache& cache);

// Report with the "runtime" block removed, dumped canonically.
std::string deterministic_dump(const nlohmann::json& report);

// Short human-readable digest for standard output.
std::string summarize(const nlohmann::json& report);

}  // namespace threefold
