/*
 * intensity-lab: build the group families, analyze their structure, compute
 * intensity by exhaustive search, and run the claim-verification suite.
 *
 * Exit codes: 0 success, 2 check failure, 3 capacity/budget, 4 bad input.
 */
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "intenselab/kappa.hpp"
#include "intenselab/reports.hpp"

namespace {

using ilab::RunConfig;

ilab::GroupSpec read_spec(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ilab::BadInput("cannot open spec file " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ilab::BadInput(std::string("spec is not valid JSON: ") + e.what());
  }
  return ilab::GroupSpec::from_json(j);
}

void emit(const nlohmann::ordered_json &report, const RunConfig &config) {
  std::string text = config.format == "markdown" ? ilab::render_markdown(report)
                                                 : report.dump(2) + "\n";
  if (config.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(config.output_path);
    if (!os) throw ilab::BadInput("cannot open output file " + config.output_path);
    os << text;
  }
}

void print_check(const ilab::CheckResult &r) {
  std::string status = r.skipped ? "SKIPPED(" + r.skip_reason + ")"
                                 : (r.pass ? "PASS" : "FAIL");
  std::cout << std::left << std::setw(32) << r.id << " " << std::setw(16)
            << status << std::fixed << std::setprecision(2) << r.seconds
            << "s  " << r.claim << "\n";
  if (!r.skipped && !r.pass)
    std::cout << "    expected: " << r.expected << "\n    computed: " << r.computed
              << "\n";
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"finite p-group structure and intense-automorphism laboratory"};
  app.require_subcommand(1);

  RunConfig config;

  auto add_common = [&](CLI::App *cmd, bool with_spec) {
    if (with_spec)
      cmd->add_option("spec", config.spec_path, "GroupSpec JSON file")->required();
    cmd->add_option("-o,--output", config.output_path, "write the report here");
    cmd->add_option("--format", config.format, "json|markdown")
        ->check(CLI::IsMember({"json", "markdown"}));
    cmd->add_option("--max-order", config.max_group_order, "group order bound");
    cmd->add_option("--max-subgroups", config.max_subgroups, "subgroup count bound");
    cmd->add_option("--threads", config.threads, "worker threads");
    cmd->add_option("--seed", config.seed, "seed for the sampled checks");
    cmd->add_flag("--timing", config.with_timing,
                  "attach wall-clock timing to the report (non-deterministic)");
  };

  auto *analyze = app.add_subcommand("analyze", "structure report for one group");
  add_common(analyze, true);

  auto *intensity = app.add_subcommand("intensity", "intensity report for one group");
  add_common(intensity, true);
  intensity->add_option("--budget-candidates", config.candidate_budget,
                        "per-scalar candidate budget");

  auto *subgroups = app.add_subcommand("subgroups", "subgroup lattice summary");
  bool classes_only = false;
  add_common(subgroups, true);
  subgroups->add_flag("--classes-only", classes_only,
                      "report conjugacy classes only");

  auto *kappa_cmd =
      app.add_subcommand("kappa-structures", "certificate for the plane structures");
  add_common(kappa_cmd, false);

  auto *verify = app.add_subcommand("verify-thesis",
                                    "run the full claim-verification suite");
  ilab::VerifyOptions vopts;
  verify->add_flag("--strict", vopts.strict, "skipped checks fail the run");
  verify->add_option("--only", vopts.only,
                     "run only checks whose module tag starts with this "
                     "(yo, intensity, abelian, extraspecial, class3, kappa, "
                     "sn, sl2, properties, stretch)");
  verify->add_option("--budget-minutes", vopts.budget_minutes,
                     "overall wall-clock budget");
  verify->add_option("--threads", vopts.threads, "worker threads");
  bool no_stretch = false;
  verify->add_flag("--no-stretch", no_stretch, "skip the stretch check");

  auto *cache = app.add_subcommand("cache", "group cache maintenance");
  auto *cache_clear_cmd = cache->add_subcommand("clear", "remove cached snapshots");
  cache->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      emit(ilab::analyze_report(read_spec(config.spec_path), config), config);
    } else if (*intensity) {
      emit(ilab::intensity_report_json(read_spec(config.spec_path), config), config);
    } else if (*subgroups) {
      emit(ilab::subgroups_report(read_spec(config.spec_path), config, classes_only),
           config);
    } else if (*kappa_cmd) {
      emit(ilab::kappa::certificate(), config);
    } else if (*verify) {
      vopts.run_stretch = !no_stretch;
      auto summary = ilab::run_verification(vopts, print_check);
      int pass = 0, fail = 0, skip = 0;
      for (const auto &c : summary.checks)
        c.skipped ? ++skip : (c.pass ? ++pass : ++fail);
      std::cout << "\n" << pass << " passed, " << fail << " failed, " << skip
                << " skipped\n";
      return summary.exit_code;
    } else if (*cache_clear_cmd) {
      std::cout << "removed " << ilab::cache_clear() << " cached snapshots\n";
    }
  } catch (const ilab::CapacityExceeded &e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const ilab::BadInput &e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 4;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
