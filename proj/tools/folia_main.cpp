// folia — a numerical laboratory for leafwise holomorphic structures on
// foliated bundles over the genus-2 octagon lattice.
//
// Exit codes: 0 all checks passed, 1 at least one check failed,
// 2 configuration or IO error.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "folia/config.hpp"
#include "folia/report.hpp"
#include "folia/runners.hpp"

namespace {

void print_summary(const folia::Report& report) {
  for (const auto& c : report.checks) {
    std::ostringstream line;
    line << '[' << folia::name(c.status) << "] " << c.check
         << "  measured=" << std::setprecision(4) << std::scientific
         << c.measured << "  threshold=" << c.threshold;
    std::cout << line.str() << '\n';
  }
  for (const auto& w : report.warnings) std::cout << "warning: " << w << '\n';
  std::cout << report.command << ": "
            << (report.all_pass() ? "all checks passed" : "CHECKS FAILED")
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for leafwise holomorphic structures"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string rep_file;
  std::uint64_t seed = 0;
  bool no_timestamp = false;

  CLI::App* verify = app.add_subcommand(
      "verify-cone", "cone example suite: preservation, invariance, dbar, "
                     "relator loop, (non)constancy");
  CLI::App* classify = app.add_subcommand(
      "classify", "plainness classification of a linear representation");
  classify->add_option("rep_file", rep_file, "LinearRep JSON file")->required();
  CLI::App* laplacian =
      app.add_subcommand("laplacian-check", "dbar-Laplacian identity suite");
  CLI::App* orbit = app.add_subcommand(
      "universal-orbit", "precomposition action and orbit limits on Hol(D,D-)");
  CLI::App* grid =
      app.add_subcommand("leaf-grid", "CSV/PGM dump of a leaf function");

  for (CLI::App* sub : {verify, classify, laplacian, orbit, grid}) {
    sub->add_option("--config", config_path, "config JSON file");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out_dir, "output directory (default from config)");
    sub->add_flag("--no-timestamp", no_timestamp,
                  "omit timestamp and wall time for byte-identical reports");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();

  try {
    folia::Config cfg =
        config_path.empty() ? folia::Config{} : folia::load_config(config_path);
    if (sub->count("--seed") > 0) cfg.seed = seed;
    if (sub->count("--out") > 0) cfg.out_dir = out_dir;
    std::filesystem::create_directories(cfg.out_dir);

    const auto t0 = std::chrono::steady_clock::now();
    folia::Report report;
    const std::string name = sub->get_name();
    if (name == "verify-cone") {
      report = folia::run_verify_cone(cfg);
    } else if (name == "classify") {
      report = folia::run_classify(cfg, rep_file);
    } else if (name == "laplacian-check") {
      report = folia::run_laplacian_check(cfg);
    } else if (name == "universal-orbit") {
      report = folia::run_universal_orbit(cfg);
    } else {
      report = folia::run_leaf_grid(cfg);
    }
    report.with_timestamp = !no_timestamp;
    if (!no_timestamp) {
      report.timestamp = folia::iso8601_now();
      report.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }

    const std::string report_path = cfg.out_dir + "/report-" + name + ".json";
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << report_path << '\n';
      return 2;
    }
    out << report.to_json().dump(2) << '\n';
    out.close();

    print_summary(report);
    std::cout << "report: " << report_path << '\n';
    return report.all_pass() ? 0 : 1;
  } catch (const folia::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
