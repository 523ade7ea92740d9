#include <cstdlib>
#include <filesystem>

#include "doctest.h"

#include "intenselab/reports.hpp"

using namespace ilab;

namespace {

GroupSpec parse_spec(const char *text) {
  return GroupSpec::from_json(nlohmann::json::parse(text));
}

}  // namespace

TEST_CASE("analyze report for the order-729 group") {
  RunConfig cfg;
  auto j = analyze_report(parse_spec(R"({"kind":"yo"})"), cfg);
  CHECK(j["order"] == 729);
  CHECK(j["class"] == 4);
  CHECK(j["widths"] == nlohmann::ordered_json::array({2, 1, 2, 1}));
  CHECK(j["predicates"]["kappa_group"] == true);
  CHECK(j["predicates"]["regular"]["value"] == false);
  CHECK(j["center_order"] == 3);
}

TEST_CASE("analyze report for a rank-1 abelian group") {
  RunConfig cfg;
  auto j = analyze_report(parse_spec(R"({"kind":"abelian","p":3,"type":[1]})"), cfg);
  CHECK(j["class"] == 1);
  CHECK(j["predicates"]["abelian"] == true);
}

TEST_CASE("analyze report for the norm-one tower at precision 2") {
  RunConfig cfg;
  auto j = analyze_report(parse_spec(R"({"kind":"sn_delta","p":5,"M":2})"), cfg);
  CHECK(j["order"] == 3125);
  CHECK(j["predicates"]["obelisk"] == true);
  CHECK(j["predicates"]["framed"] == true);
  CHECK(j["predicates"]["lines_criterion"] == true);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  RunConfig one;
  one.threads = 1;
  RunConfig four;
  four.threads = 4;
  GroupSpec spec = parse_spec(R"({"kind":"extraspecial","p":3,"n":1})");
  CHECK(analyze_report(spec, one).dump() == analyze_report(spec, four).dump());
  CHECK(intensity_report_json(spec, one).dump() ==
        intensity_report_json(spec, four).dump());
}

TEST_CASE("markdown rendering is derived from the json document") {
  RunConfig cfg;
  auto j = analyze_report(parse_spec(R"({"kind":"abelian","p":3,"type":[1]})"), cfg);
  std::string md = render_markdown(j);
  CHECK(md.find("| order | 3 |") != std::string::npos);
  CHECK(md.find("# analyze report") != std::string::npos);
}

TEST_CASE("subgroups report") {
  RunConfig cfg;
  auto j = subgroups_report(parse_spec(R"({"kind":"extraspecial","p":3,"n":1})"),
                            cfg, false);
  CHECK(j["subgroup_count"] == 19);
  CHECK(j["by_order"]["3"] == 13);
  CHECK(j["by_order"]["9"] == 4);
}

TEST_CASE("group cache stores and clears snapshots") {
  std::string dir = "/tmp/ilab_cache_test";
  std::filesystem::remove_all(dir);
  setenv("INTENSITY_LAB_CACHE_DIR", dir.c_str(), 1);
  RunConfig cfg;
  GroupSpec spec = parse_spec(R"({"kind":"extraspecial","p":3,"n":1})");
  auto first = analyze_report(spec, cfg);
  CHECK(std::filesystem::exists(dir));
  // second run loads from the snapshot and reports identically
  auto second = analyze_report(spec, cfg);
  CHECK(first["order"] == second["order"]);
  CHECK(first["class"] == second["class"]);
  CHECK(first["widths"] == second["widths"]);
  CHECK(cache_clear() >= 1);
  CHECK(cache_clear() == 0);
  unsetenv("INTENSITY_LAB_CACHE_DIR");
}

TEST_CASE("verification oracle on the tiny battery") {
  CHECK(verify_oracle_realized_scalars(build_abelian(5, {2})) ==
        std::vector<uint32_t>{1, 2, 3, 4});
  CHECK(verify_oracle_realized_scalars(build_semidirect_cyclic(4, 2, 3)) ==
        std::vector<uint32_t>{1});
  CHECK(verify_oracle_realized_scalars(build_abelian(3, {1, 1})) ==
        std::vector<uint32_t>{1, 2});
}

TEST_CASE("verification runner honours the module filter") {
  VerifyOptions opts;
  opts.only = "kappa";
  auto summary = run_verification(opts);
  REQUIRE(summary.checks.size() == 1);
  CHECK(summary.checks[0].module == "kappa");
  CHECK(summary.checks[0].pass);
  CHECK(summary.exit_code == 0);
}

TEST_CASE("verification runner marks budget exhaustion as skipped") {
  VerifyOptions opts;
  opts.only = "abelian";
  opts.budget_minutes = 0;  // nothing can run
  auto summary = run_verification(opts);
  REQUIRE(summary.checks.size() == 1);
  CHECK(summary.checks[0].skipped);
  CHECK(summary.exit_code == 3);  // a non-stretch check was skipped

  opts.strict = true;
  auto strict_summary = run_verification(opts);
  CHECK(strict_summary.exit_code == 3);
}
