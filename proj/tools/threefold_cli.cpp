#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "threefold/app/cache.hpp"
#include "threefold/app/manifest.hpp"
#include "threefold/app/pipeline.hpp"
#include "threefold/errors.hpp"

using namespace threefold;

int main(int argc, char** argv) {
  CLI::App app{"threefold: 3-manifold invariants from a JSON manifest"};
  std::string subcommand, manifest_path, out_path;
  int workers = 1;
  bool no_cache = false, strict = false;
  std::uint64_t seed = 0;

  app.add_option("subcommand", subcommand, "reps | torsion | casson | cs-check | gv | leafwise | cyclic | all")
      ->required()
      ->check(CLI::IsMember(subcommands()));
  app.add_option("--manifest,-m", manifest_path, "manifest JSON file")->required()->check(CLI::ExistingFile);
  app.add_option("--out,-o", out_path, "report path (overrides the manifest's output)");
  app.add_option("--workers,-j", workers, "worker threads")->check(CLI::Range(1, 256));
  app.add_flag("--no-cache", no_cache, "neither read nor write the on-disk cache");
  app.add_flag("--strict", strict, "tautness failures become errors");
  auto* seed_opt = app.add_option("--seed", seed, "override the manifest seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Manifest manifest;
  try {
    manifest = load_manifest(manifest_path);
  } catch (const std::exception& e) {
    std::cerr << "threefold: " << e.what() << "\n";
    return exit_code_for(e);
  }

  std::optional<Cache> cache;
  try {
    cache.emplace(no_cache ? Cache::disabled() : Cache::open(Cache::default_dir()));
  } catch (const std::exception& e) {
    std::cerr << "threefold: " << e.what() << "\n";
    return exit_code_for(e);
  }

  RunOptions options;
  options.workers = workers;
  options.strict = strict;
  if (*seed_opt) options.seed = seed;

  RunResult result;
  try {
    result = run(subcommand, manifest, options, *cache);
  } catch (const std::exception& e) {
    std::cerr << "threefold: " << e.what() << "\n";
    return exit_code_for(e);
  }

  const std::string text = result.report.dump(2) + "\n";
  const std::string target = !out_path.empty() ? out_path : manifest.output.value_or("");
  if (target.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(target);
    if (!os || !(os << text)) {
      std::cerr << "threefold: cannot write report " << target << "\n";
      return kExitInternal;
    }
    std::cout << summarize(result.report) << "report: " << target << "\n";
  }
  if (result.report.contains("error"))
    std::cerr << "threefold: " << result.report["error"].value("type", "") << ": "
              << result.report["error"].value("message", "") << "\n";
  return result.exit_code;
}
