// Command-line front end. Exit codes: 0 pass, 2 usage/config error,
// 3 numeric failure, 4 out of tolerance, 10+i first failing suite stage.
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "psf/parallel.hpp"
#include "psf/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Parallel section function toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path, out_dir, body_json;
  int dirs = -1, nodes = -1, nmax = -1;
  double tol = -1.0;
  long long seed = -1;
  bool serial = false;

  app.add_option("--config", config_path, "key=value or JSON config file");
  app.add_option("--body", body_json, "body as inline JSON");
  app.add_option("--out", out_dir, "output directory for JSON/CSV reports");
  app.add_option("--dirs", dirs, "direction count");
  app.add_option("--nodes", nodes, "profile node count");
  app.add_option("--nmax", nmax, "max polynomial degree scanned");
  app.add_option("--tol", tol, "fit tolerance");
  app.add_option("--seed", seed, "direction sampling seed");
  app.add_flag("--serial", serial, "disable the OpenMP kernels");

  const char* names[] = {"section",        "fracderiv",   "identities",
                         "integrability",  "reconstruct", "suite"};
  const char* descs[] = {
      "section profiles and volume consistency", "derivatives of the profile at 0",
      "Fourier-side derivative identities",      "minimal polynomial degree scan",
      "ellipsoid reconstruction from the norm",  "all stages in order"};
  for (int i = 0; i < 6; ++i) app.add_subcommand(names[i], descs[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help is 0; any parse error is a usage error
  }

  try {
    psf::RunConfig cfg;
    if (!config_path.empty()) cfg = psf::RunConfig::from_file(config_path);
    cfg.apply_env();
    if (!body_json.empty()) cfg.body_json = nlohmann::json::parse(body_json);
    if (dirs >= 0) cfg.directions = dirs;
    if (nodes >= 0) cfg.nodes = nodes;
    if (nmax >= 0) cfg.n_max = nmax;
    if (tol >= 0.0) cfg.tol = tol;
    if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    psf::set_parallel(!serial);

    const psf::RunResult rr =
        psf::run_subcommand(app.get_subcommands().front()->get_name(), cfg);
    std::cout << rr.report.dump(2) << "\n";
    return rr.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}
