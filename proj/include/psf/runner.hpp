#pragma once

#include <string>

#include <json.hpp>

namespace psf {

// Resolved experiment configuration. Precedence (flags > env > file >
// defaults) is applied by the callers; the runner only consumes the result.
struct RunConfig {
  nlohmann::json body_json = {{"type", "ball"}, {"radius", 1.0}, {"dim", 3}};
  int directions = 64;
  int nodes = 65;
  int n_max = 10;
  double tol = 1e-7;
  unsigned seed = 0;
  std::string out_dir;  // empty: no files written

  nlohmann::json to_json() const;

  // key=value text (with '#' comments) or a JSON object (detected by '{').
  static RunConfig from_file(const std::string& path);
  void apply_env();  // PSF_DIRS, PSF_NODES, PSF_NMAX, PSF_TOL, PSF_SEED, PSF_OUT
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 usage, 3 numeric failure, 4 out of tolerance,
                      // suite: 10 + index of the first failing stage
  nlohmann::json report;
};

// Subcommands: section, fracderiv, identities, integrability, reconstruct,
// suite. Writes <out_dir>/<name>.json (and CSV exports) when out_dir is set.
RunResult run_subcommand(const std::string& name, const RunConfig& cfg);

}  // namespace psf
