#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "crfdspam/util.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code = -1;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(CRFDSPAM_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("crfdspam_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("unknown flags and missing inputs exit with code 2") {
  CHECK(run_cli("evaluate --bogus-flag").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("evaluate").exit_code == 2);  // required flags missing
  CHECK(run_cli("").exit_code == 2);          // subcommand required
}

TEST_CASE("missing input file exits nonzero with a diagnostic") {
  TempDir tmp;
  const CliRun run = run_cli("evaluate --input /nonexistent/r.csv --profiles /nonexistent/p.csv "
                             "--mode basic --out " +
                             tmp.str("out.json"));
  CHECK(run.exit_code == 1);
}

TEST_CASE("synth then evaluate end to end") {
  TempDir tmp;
  const std::string data = tmp.str("data");
  CHECK(run_cli("synth --reviewers 200 --fake-ratio 0.2 --seed 7 --out " + data).exit_code == 0);
  CHECK(fs::exists(fs::path(data) / "reviews.csv"));
  CHECK(fs::exists(fs::path(data) / "profiles.csv"));

  const std::string report = tmp.str("report.json");
  const CliRun eval = run_cli("evaluate --input " + data + "/reviews.csv --profiles " + data +
                              "/profiles.csv --mode cumulative --crfd-scope full_dataset "
                              "--folds 3 --seed 11 --algorithms cart:depth=4,knn:k=3 --out " +
                              report);
  CHECK(eval.exit_code == 0);

  const auto payload = nlohmann::json::parse(crfdspam::util::read_file(report));
  CHECK(payload.at("config").at("mode") == "cumulative");
  CHECK(payload.at("config").at("seed") == 11);
  // The leaky paper protocol is flagged in the payload.
  CHECK(payload.at("results").at("protocol_note").get<std::string>().find("leaky") !=
        std::string::npos);
  CHECK(payload.at("results").at("algorithms").size() == 2);
  for (const auto& algo : payload.at("results").at("algorithms")) CHECK(algo.at("ok") == true);
}

TEST_CASE("extract writes a matrix CSV plus optional correlation and tables") {
  TempDir tmp;
  const std::string data = tmp.str("data");
  REQUIRE(run_cli("synth --reviewers 100 --seed 3 --out " + data).exit_code == 0);
  const CliRun run = run_cli("extract --input " + data + "/reviews.csv --profiles " + data +
                             "/profiles.csv --mode cumulative --out " + tmp.str("matrix.csv") +
                             " --corr " + tmp.str("corr.csv") + " --tables " +
                             tmp.str("tables.json"));
  CHECK(run.exit_code == 0);
  CHECK(fs::exists(tmp.str("matrix.csv")));
  CHECK(fs::exists(tmp.str("corr.csv")));
  CHECK(fs::exists(tmp.str("tables.json")));

  std::ifstream in(tmp.str("matrix.csv"));
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "instance_id,photo_count,review_count,useful_votes,reviewer_expertise,avg_gap,"
        "avg_rating_deviation,first_review,reviewer_activity,label");

  const auto tables = nlohmann::json::parse(crfdspam::util::read_file(tmp.str("tables.json")));
  CHECK(tables.contains("photo_count"));
  CHECK(tables.at("photo_count").contains("n_total"));
}

TEST_CASE("importance emits a ranking and a plot CSV") {
  TempDir tmp;
  const std::string data = tmp.str("data");
  REQUIRE(run_cli("synth --reviewers 150 --seed 9 --out " + data).exit_code == 0);
  const CliRun run = run_cli("importance --input " + data + "/reviews.csv --profiles " + data +
                             "/profiles.csv --folds 3 --seed 5 --top-k 3 --out " +
                             tmp.str("imp.json") + " --csv " + tmp.str("imp.csv"));
  CHECK(run.exit_code == 0);
  const auto payload = nlohmann::json::parse(crfdspam::util::read_file(tmp.str("imp.json")));
  CHECK(payload.at("results").at("ranking").size() == 8);
  CHECK(payload.at("results").at("selected_features").size() == 3);
  CHECK(payload.at("results").at("with_selection").at("algorithms").size() == 2);

  std::ifstream csv(tmp.str("imp.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "feature,importance");
}

}  // TEST_SUITE
