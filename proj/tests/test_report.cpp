#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "pvc/report.hpp"

using namespace pvc;

namespace {

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

std::filesystem::path corrupted_fixture() {
  auto doc = nlohmann::json::parse(data::kBuiltinCatalog);
  for (auto& c : doc["cases"])
    if (c["id"] == "airy") c["target_potential"] = "z + 1";
  const auto path = temp_file("pvc_corrupted.json");
  std::ofstream(path) << doc.dump();
  return path;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PVCHECK_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Report, CorruptedFixtureNamesLayerA) {
  const auto cases = load_catalog(corrupted_fixture());
  SuiteReport r;
  r.command = "verify";
  r.cases = std::vector<CaseReport>{verify_case(*find_case(cases, "airy"))};
  EXPECT_EQ(r.failures(), 1u);
  const auto j = to_json(r);
  const auto& entry = j["cases"][0];
  EXPECT_EQ(entry["status"], "fail");
  ASSERT_FALSE(entry["failed_layers"].empty());
  EXPECT_EQ(entry["failed_layers"][0]["layer"], "a");
  EXPECT_GT(entry["failed_layers"][0]["residual_monomials"].get<int>(), 0);
  EXPECT_EQ(j["failures"], 1);
}

TEST(Report, StableKeys) {
  SuiteReport r;
  r.command = "isomono";
  r.isomonodromy = std::vector<IsomonodromyResult>{check_isomonodromy(PainleveKind::P1)};
  const auto j = to_json(r);
  for (const char* key : {"tool", "version", "schema", "command", "seed", "failures", "cases", "classifier", "series",
                          "isomonodromy", "numeric", "discrepancies", "timings_ms"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["cases"].is_null());
  EXPECT_EQ(j["isomonodromy"][0]["status"], "pass");
}

TEST(Report, SameSeedSameReport) {
  const auto cases = load_catalog();
  auto build = [&] {
    SuiteReport r;
    r.command = "numeric";
    r.seed = 11;
    r.numeric = timed(r, "numeric", [&] { return numeric_suite(cases, 11); });
    auto j = to_json(r);
    j.erase("timings_ms");
    return j.dump();
  };
  EXPECT_EQ(build(), build());
}

TEST(Report, DiscrepanciesAreNotFailures) {
  SuiteReport r;
  r.classifier = reproduce_table();
  EXPECT_EQ(r.failures(), 0u);
  EXPECT_FALSE(r.discrepancies().empty());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify --case airy"), 0);
  EXPECT_EQ(run_cli("verify --case nosuch"), 2);
  EXPECT_EQ(run_cli("classify --source DW --max-degree 6"), 0);
  EXPECT_EQ(run_cli("classify --source X"), 2);
  EXPECT_EQ(run_cli("nosuch"), 2);
  EXPECT_EQ(run_cli("numeric --points x"), 2);
  EXPECT_EQ(run_cli("isomono --kind P2"), 0);
  EXPECT_EQ(run_cli("series --check p2-zero"), 0);
  EXPECT_EQ(run_cli("numeric --case weber --points 5"), 0);
  EXPECT_EQ(run_cli("--fixtures " + corrupted_fixture().string() + " verify --case airy"), 1);
  EXPECT_EQ(run_cli("--fixtures /nonexistent.json list"), 2);
}

TEST(Cli, JsonFileWritten) {
  const auto path = temp_file("pvc_verify.json");
  std::filesystem::remove(path);
  ASSERT_EQ(run_cli("verify --all --json " + path.string()), 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["failures"], 0);
  EXPECT_EQ(j["cases"].size(), 18u);
}
