/*
 * Report generation, the group cache, and the claim-verification runner that
 * backs the `verify-thesis` CLI command and the acceptance test suite.
 *
 * All reports are deterministic: JSON objects use a fixed key order and
 * timing is attached only on request.  Markdown output is rendered from the
 * JSON document, never computed separately.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "intenselab/constructions.hpp"
#include "intenselab/intensity.hpp"

#include "json.hpp"

namespace ilab {

constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::string output_path;
  uint64_t max_group_order = 2'000'000;
  uint64_t max_subgroups = 500'000;
  uint64_t candidate_budget = 100'000'000;
  unsigned threads = 1;
  uint64_t seed = 0;
  std::string format = "json";  // json | markdown
  bool with_timing = false;
};

// Cache keyed by the content hash of the canonical GroupSpec; directory from
// INTENSITY_LAB_CACHE_DIR (no caching when unset).
std::optional<std::string> cache_dir_from_env();
BuiltGroup load_or_build(const GroupSpec &spec, const RunConfig &config);
int cache_clear();  // number of cache files removed

nlohmann::ordered_json analyze_report(const GroupSpec &spec, const RunConfig &config);
nlohmann::ordered_json intensity_report_json(const GroupSpec &spec,
                                             const RunConfig &config);
nlohmann::ordered_json subgroups_report(const GroupSpec &spec,
                                        const RunConfig &config,
                                        bool classes_only);

std::string render_markdown(const nlohmann::ordered_json &report);

// ---- verification runner ----------------------------------------------------

struct CheckResult {
  std::string id;
  std::string module;    // tag used by --only
  std::string claim;     // what is being asserted
  std::string expected;
  std::string computed;
  bool pass = false;
  bool skipped = false;
  std::string skip_reason;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct VerifyOptions {
  bool strict = false;
  std::string only;             // empty = all; otherwise module tag prefix
  double budget_minutes = 60;   // overall wall-clock budget
  unsigned threads = 1;
  bool run_stretch = true;      // stretch row still honours its own budget
};

struct VerifySummary {
  std::vector<CheckResult> checks;
  bool all_passed = false;      // no FAIL among executed checks
  bool any_skipped = false;
  bool non_stretch_skipped = false;
  int exit_code = 0;            // 0 ok, 2 failures, 3 budget/capacity
};

VerifySummary run_verification(const VerifyOptions &opts,
                               std::function<void(const CheckResult &)> on_check = {});

// Independent verification oracle: realized intense scalars by unrestricted
// brute force over all generator-image tuples, with the subgroup list rebuilt
// by join-closure of cyclic subgroups.  Only for |G| <= 81.
std::vector<uint32_t> verify_oracle_realized_scalars(GroupPtr G);

}  // namespace ilab
