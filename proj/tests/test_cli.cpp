#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* path = std::getenv("ENCORE_CLI");
  REQUIRE_MESSAGE(path != nullptr, "ENCORE_CLI must point at the encore binary");
  return path;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  fs::path dir = fs::temp_directory_path() / "encore_cli_io";
  fs::create_directories(dir);
  fs::path out = dir / "stdout.txt";
  fs::path err = dir / "stderr.txt";
  std::string cmd = cli() + " " + args + " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  RunResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("synth then strict ingest succeeds") {
  TempDir dir("encore_cli_synth");
  auto gen = run("synth --out " + (dir.path / "data").string() +
                 " --seed 7 --customers 60 --performances 12 --year-begin 2012 --year-end 2013");
  CHECK(gen.exit_code == 0);
  CHECK(fs::exists(dir.path / "data" / "transactions.csv"));
  CHECK(fs::exists(dir.path / "data" / "manifest.json"));

  auto ing = run("ingest --transactions " + (dir.path / "data" / "transactions.csv").string() +
                 " --catalog " + (dir.path / "data" / "catalog.csv").string() + " --strict");
  CHECK(ing.exit_code == 0);
  CHECK(ing.out.find("\"transaction_diagnostics\": 0") != std::string::npos);
}

TEST_CASE("train fails with exit 1 naming a fully masked account") {
  TempDir dir("encore_cli_masked");
  {
    std::ofstream cat(dir.path / "catalog.csv");
    cat << "performance_id,name,date,venue,capacity,genre,subscription_series,description_path\n"
        << "P1,Show One,2012-03-01,Hall,100,Jazz,,\n"
        << "P2,Show Two,2012-04-01,Hall,100,Jazz,,\n";
    std::ofstream tx(dir.path / "transactions.csv");
    tx << "account_id,account_created,customer_type,performance_id,order_date,seats,price_paid,"
          "price_group,promotion_code,mode_of_sale,postal_code\n"
       // Normal customer, observes everything.
       << "OK1,2010-01-01,individual,P1,2012-02-01,1,40,regular,,web,\n"
       << "OK2,2010-01-01,individual,P2,2012-03-05,1,40,regular,,web,\n"
       // Account created after both shows: the whole row is missing.
       << "GHOST,2013-01-01,individual,P1,2013-02-01,1,40,regular,,web,\n";
  }
  auto res = run("train --transactions " + (dir.path / "transactions.csv").string() +
                 " --catalog " + (dir.path / "catalog.csv").string() + " --out " +
                 (dir.path / "model").string() + " --k 1");
  CHECK(res.exit_code == 1);
  CHECK(res.err.find("GHOST") != std::string::npos);
}

TEST_CASE("recommend prints n rows in descending score order") {
  TempDir dir("encore_cli_rec");
  REQUIRE(run("synth --out " + (dir.path / "data").string() +
              " --seed 3 --customers 80 --performances 16 --year-begin 2012 --year-end 2013")
              .exit_code == 0);
  REQUIRE(run("train --transactions " + (dir.path / "data" / "transactions.csv").string() +
              " --catalog " + (dir.path / "data" / "catalog.csv").string() + " --out " +
              (dir.path / "model").string() + " --k 2 --seed 5")
              .exit_code == 0);

  auto res = run("recommend --model " + (dir.path / "model" / "model.json").string() +
                 " --customer C000001 --n 5");
  CHECK(res.exit_code == 0);
  std::istringstream lines(res.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "performance_id,score");
  double previous = 1e300;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    double score = std::stod(line.substr(comma + 1));
    CHECK(score <= previous);
    previous = score;
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("identical inputs, flags and seed give identical outputs") {
  TempDir dir("encore_cli_repro");
  REQUIRE(run("synth --out " + (dir.path / "data").string() +
              " --seed 11 --customers 50 --performances 10 --year-begin 2013 --year-end 2014")
              .exit_code == 0);
  std::string train_args = " --transactions " + (dir.path / "data" / "transactions.csv").string() +
                           " --catalog " + (dir.path / "data" / "catalog.csv").string() +
                           " --k 2 --seed 9 --lambda 0.2";
  REQUIRE(run("train --out " + (dir.path / "m1").string() + train_args).exit_code == 0);
  REQUIRE(run("train --out " + (dir.path / "m2").string() + train_args).exit_code == 0);
  CHECK(slurp(dir.path / "m1" / "model.json") == slurp(dir.path / "m2" / "model.json"));
  CHECK(slurp(dir.path / "m1" / "manifest.json") == slurp(dir.path / "m2" / "manifest.json"));
}

TEST_CASE("manifest records inputs, parameters and outputs") {
  TempDir dir("encore_cli_manifest");
  REQUIRE(run("synth --out " + (dir.path / "data").string() +
              " --seed 2 --customers 50 --performances 10 --year-begin 2013 --year-end 2014")
              .exit_code == 0);
  REQUIRE(run("report --transactions " + (dir.path / "data" / "transactions.csv").string() +
              " --catalog " + (dir.path / "data" / "catalog.csv").string() + " --out " +
              (dir.path / "rep").string() + " --year 2013")
              .exit_code == 0);
  auto doc = nlohmann::json::parse(slurp(dir.path / "rep" / "manifest.json"));
  CHECK(doc["command"] == "report");
  CHECK(doc["inputs"].size() == 2);
  for (const auto& [path, meta] : doc["inputs"].items()) {
    CHECK(meta.contains("fnv1a64"));
    CHECK(meta["bytes"].get<long>() > 0);
  }
  CHECK(doc["parameters"]["format"] == "csv");
  bool has_activity = false;
  for (const auto& name : doc["outputs"]) has_activity |= name == "activity.csv";
  CHECK(has_activity);
  CHECK(fs::exists(dir.path / "rep" / "activity.csv"));
  CHECK(fs::exists(dir.path / "rep" / "heatmap_2013_regular.csv"));
  CHECK(fs::exists(dir.path / "rep" / "heatmap_2013_subscription.csv"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("definitely-not-a-command").exit_code == 2);
  CHECK(run("train --k 3").exit_code == 2);  // missing required options
}

TEST_CASE("similar prints a cosine in [-1, 1]") {
  TempDir dir("encore_cli_sim");
  REQUIRE(run("synth --out " + (dir.path / "data").string() +
              " --seed 4 --customers 60 --performances 12 --year-begin 2012 --year-end 2013")
              .exit_code == 0);
  REQUIRE(run("train --transactions " + (dir.path / "data" / "transactions.csv").string() +
              " --catalog " + (dir.path / "data" / "catalog.csv").string() + " --out " +
              (dir.path / "model").string() + " --k 2 --seed 5")
              .exit_code == 0);
  auto res = run("similar --model " + (dir.path / "model" / "model.json").string() +
                 " --a P0001 --b P0002");
  CHECK(res.exit_code == 0);
  double value = std::stod(res.out);
  CHECK(value >= -1.0 - 1e-9);
  CHECK(value <= 1.0 + 1e-9);

  auto missing = run("similar --model " + (dir.path / "model" / "model.json").string() +
                     " --a P0001 --b NOPE");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("embed and lifecycle write their tables") {
  TempDir dir("encore_cli_embed");
  REQUIRE(run("synth --out " + (dir.path / "data").string() +
              " --seed 6 --customers 80 --performances 12 --year-begin 2012 --year-end 2014")
              .exit_code == 0);
  REQUIRE(run("train --transactions " + (dir.path / "data" / "transactions.csv").string() +
              " --catalog " + (dir.path / "data" / "catalog.csv").string() + " --out " +
              (dir.path / "model").string() + " --k 3 --seed 5")
              .exit_code == 0);

  auto emb = run("embed --model " + (dir.path / "model" / "model.json").string() +
                 " --transactions " + (dir.path / "data" / "transactions.csv").string() +
                 " --catalog " + (dir.path / "data" / "catalog.csv").string() + " --out " +
                 (dir.path / "emb").string() + " --dims 2");
  CHECK(emb.exit_code == 0);
  auto header = slurp(dir.path / "emb" / "embedding.csv");
  CHECK(header.rfind("entity,kind,group,dim1,dim2,magnitude\n", 0) == 0);

  auto life = run("lifecycle --transactions " + (dir.path / "data" / "transactions.csv").string() +
                  " --out " + (dir.path / "life").string());
  CHECK(life.exit_code == 0);
  CHECK(fs::exists(dir.path / "life" / "transitions.csv"));
  CHECK(fs::exists(dir.path / "life" / "sequences.csv"));
  auto doc = nlohmann::json::parse(slurp(dir.path / "life" / "lifecycle.json"));
  CHECK(doc.contains("transition_probs"));
  CHECK(doc["transition_probs"]["dead"][2] == 1.0);
}
