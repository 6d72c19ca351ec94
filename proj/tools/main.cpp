#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "gringcheck/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact verifier for group-ring transfer and logarithm "
               "congruences"};
  app.require_subcommand(1);

  std::string config_path, report_path;
  int jobs = 0;
  bool timings = false;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--config", config_path, "config JSON path")->required();
  verify->add_option("--report", report_path, "write the report here");
  verify->add_option("--jobs", jobs, "parallel jobs (default: env or cores)");
  verify->add_flag("--timings", timings, "include wall-clock in the report");

  bool as_json = false;
  int filter_l = 0;
  CLI::App* catalog =
      app.add_subcommand("catalog", "list groups and checks");
  catalog->add_flag("--json", as_json, "machine-readable output");
  catalog->add_option("--l", filter_l, "only entries for this prime");

  std::string table_group, table_out;
  CLI::App* table =
      app.add_subcommand("table", "export an exact character table as JSON");
  table->add_option("--group", table_group, "catalog group id")->required();
  table->add_option("--out", table_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (catalog->parsed()) {
    if (filter_l != 0 && filter_l != 3) {
      // the catalog is built for l = 3; other primes have no entries
      std::cout << (as_json ? "{\"groups\": [], \"checks\": []}\n" : "");
      return 0;
    }
    std::cout << (as_json ? gring::catalog_json() : gring::catalog_text());
    return 0;
  }
  if (table->parsed()) {
    try {
      gring::Group G = gring::build_group(table_group, gring::LevelParams{});
      std::string js = gring::character_table_json(gring::character_table(G));
      if (table_out.empty()) {
        std::cout << js;
      } else {
        std::ofstream f(table_out);
        f << js;
      }
      return 0;
    } catch (const gring::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
  }

  try {
    gring::RunConfig cfg = gring::RunConfig::from_json_file(config_path);
    if (jobs <= 0) {
      if (const char* e = std::getenv("GRINGCHECK_JOBS"))
        jobs = std::atoi(e);
      if (jobs <= 0) jobs = (int)std::thread::hardware_concurrency();
      if (jobs <= 0) jobs = 1;
    }
    gring::VerificationReport rep = gring::run_suite(cfg, jobs);
    std::string out = rep.to_json(timings);
    if (report_path.empty()) {
      std::cout << out;
    } else {
      std::ofstream f(report_path);
      f << out;
    }
    for (const auto& r : rep.results) {
      std::cerr << (r.skipped ? "skip" : r.pass ? "pass" : "FAIL") << "  "
                << r.check << " / " << r.group;
      if (r.skipped) std::cerr << "  (" << r.skip_reason << ")";
      std::cerr << "\n";
    }
    return rep.all_pass ? 0 : 1;
  } catch (const gring::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
