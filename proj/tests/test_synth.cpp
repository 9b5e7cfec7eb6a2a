#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "encore/errors.hpp"
#include "encore/ingest.hpp"
#include "encore/reports.hpp"
#include "encore/synth.hpp"

using namespace encore;
using namespace encore::synth;

namespace fs = std::filesystem;

namespace {

GeneratorConfig small_config(uint64_t seed = 1) {
  GeneratorConfig c;
  c.seed = seed;
  c.n_customers = 80;
  c.n_performances = 18;
  c.year_begin = 2012;
  c.year_end = 2014;
  return c;
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
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("same config twice gives byte-identical files") {
  TempDir a("encore_synth_a"), b("encore_synth_b");
  auto ds1 = generate(small_config(42));
  auto ds2 = generate(small_config(42));
  write_dataset(ds1, a.path);
  write_dataset(ds2, b.path);
  for (const char* name : {"transactions.csv", "catalog.csv", "truth.json"})
    CHECK(slurp(a.path / name) == slurp(b.path / name));
  for (const auto& [rel, text] : ds1.descriptions)
    CHECK(slurp(a.path / rel) == slurp(b.path / rel));
  CHECK(ds1.transactions.size() == ds2.transactions.size());
}

TEST_CASE("different seeds give different datasets") {
  auto ds1 = generate(small_config(1));
  auto ds2 = generate(small_config(2));
  bool differ = ds1.transactions.size() != ds2.transactions.size();
  if (!differ) {
    for (size_t t = 0; t < ds1.transactions.size(); ++t)
      if (ds1.transactions[t].account_id != ds2.transactions[t].account_id ||
          ds1.transactions[t].performance_id != ds2.transactions[t].performance_id ||
          ds1.transactions[t].order_date != ds2.transactions[t].order_date) {
        differ = true;
        break;
      }
  }
  CHECK(differ);
}

TEST_CASE("student_fraction zero means no student-priced rows") {
  auto config = small_config(3);
  config.student_fraction = 0.0;
  auto ds = generate(config);
  for (const auto& tx : ds.transactions)
    CHECK(tx.price_group != ingest::PriceGroup::student);
}

TEST_CASE("subscription_fraction zero means no subscription rows") {
  auto config = small_config(3);
  config.subscription_fraction = 0.0;
  auto ds = generate(config);
  for (const auto& tx : ds.transactions)
    CHECK(tx.price_group != ingest::PriceGroup::subscription);
}

TEST_CASE("configured shares concentrate on their targets") {
  GeneratorConfig config;
  config.seed = 5;
  config.n_customers = 10000;
  config.n_performances = 50;
  config.year_begin = 2011;
  config.year_end = 2015;
  config.single_purchase_target = 0.66;
  auto ds = generate(config);
  auto report = reports::activity_durations(ds.transactions);
  CHECK(report.single_purchase_share == doctest::Approx(0.66).epsilon(0.02 / 0.66));

  auto flags = ingest::student_flags(ds.transactions);
  long students = 0;
  for (const auto& [id, flag] : flags) students += flag ? 1 : 0;
  double student_share = static_cast<double>(students) / static_cast<double>(flags.size());
  CHECK(std::abs(student_share - config.student_fraction) <= 0.02);

  std::set<std::string> sub_buyers;
  for (const auto& tx : ds.transactions)
    if (tx.price_group == ingest::PriceGroup::subscription) sub_buyers.insert(tx.account_id);
  double sub_share = static_cast<double>(sub_buyers.size()) / static_cast<double>(flags.size());
  CHECK(std::abs(sub_share - config.subscription_fraction) <= 0.02);
}

TEST_CASE("generated files round-trip through strict ingest") {
  TempDir dir("encore_synth_rt");
  auto ds = generate(small_config(7));
  write_dataset(ds, dir.path);

  std::ifstream tx_in(dir.path / "transactions.csv", std::ios::binary);
  auto txp = ingest::parse_transactions(tx_in, true);
  CHECK(txp.diagnostics.empty());
  CHECK(txp.transactions.size() == ds.transactions.size());

  std::ifstream cat_in(dir.path / "catalog.csv", std::ios::binary);
  auto cat = ingest::parse_catalog(cat_in, true);
  CHECK(cat.diagnostics.empty());
  CHECK(cat.performances.size() == ds.catalog.size());

  std::vector<ingest::Diagnostic> diags;
  ingest::load_descriptions(cat.performances, dir.path, diags);
  CHECK(diags.empty());
  for (const auto& p : cat.performances) CHECK(p.description.has_value());

  // Parsed rows reproduce the in-memory dataset.
  for (size_t t = 0; t < txp.transactions.size(); ++t) {
    CHECK(txp.transactions[t].account_id == ds.transactions[t].account_id);
    CHECK(txp.transactions[t].order_date == ds.transactions[t].order_date);
    CHECK(txp.transactions[t].price_paid == ds.transactions[t].price_paid);
  }

  // And the matrix is trainable: no all-missing rows or columns.
  auto matrix = ingest::build_matrix(txp.transactions, cat.performances, false);
  for (size_t i = 0; i < matrix.n_customers(); ++i) {
    bool observed = false;
    for (size_t j = 0; j < matrix.n_performances(); ++j)
      observed = observed || matrix.cell(i, j) != ingest::Cell::missing;
    CHECK(observed);
  }
}

TEST_CASE("planted truth is identical across calls and matches generate") {
  auto config = small_config(11);
  auto t1 = planted_truth(config);
  auto t2 = planted_truth(config);
  auto ds = generate(config);
  CHECK(t1.L == t2.L);
  CHECK(t1.R == t2.R);
  CHECK(t1.L == ds.truth.L);
  CHECK(t1.customers == ds.truth.customers);
  CHECK(t1.readability_vertex == config.readability_vertex);

  for (int s = 0; s < 3; ++s) {
    double row = 0;
    for (int t = 0; t < 3; ++t) row += t1.transition_matrix[s][t];
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(t1.L.cols() == config.latent_dim);
}

TEST_CASE("every performance sells at least one non-subscription seat") {
  auto ds = generate(small_config(13));
  std::map<std::string, long> sold;
  for (const auto& tx : ds.transactions)
    if (tx.price_group != ingest::PriceGroup::subscription) sold[tx.performance_id] += tx.seats;
  for (const auto& p : ds.catalog) {
    CHECK(sold.count(p.performance_id));
    CHECK(sold[p.performance_id] >= 1);
    CHECK(sold[p.performance_id] <= p.capacity);
  }
}

TEST_CASE("order dates never precede account creation") {
  auto ds = generate(small_config(17));
  for (const auto& tx : ds.transactions) CHECK(!(tx.order_date < tx.account_created));
}

TEST_CASE("infeasible configs are rejected") {
  auto config = small_config();
  config.n_performances = 0;
  CHECK_THROWS_AS(generate(config), ContractError);

  config = small_config();
  config.n_performances = 2;  // fewer than the three years
  CHECK_THROWS_AS(generate(config), ContractError);

  config = small_config();
  config.single_purchase_target = 1.5;
  CHECK_THROWS_AS(generate(config), ContractError);

  config = small_config();
  config.true_transition_matrix[0] = {0.5, 0.2, 0.2};
  CHECK_THROWS_AS(generate(config), ContractError);

  config = small_config();
  config.true_transition_matrix[2] = {0.5, 0.0, 0.5};
  CHECK_THROWS_AS(generate(config), ContractError);
}

TEST_CASE("planted factor matrix has the advertised structure") {
  auto planted = planted_factor_matrix(23, 15, 8, 3, 0.25);
  CHECK(planted.matrix.rows() == 15);
  CHECK(planted.matrix.cols() == 8);
  long masked = 0;
  for (Eigen::Index i = 0; i < 15; ++i)
    for (Eigen::Index j = 0; j < 8; ++j) {
      double expected = planted.L.row(i).dot(planted.R.row(j)) + planted.bL(i) + planted.bR(j);
      CHECK(planted.matrix.values(i, j) == doctest::Approx(expected).epsilon(1e-12));
      if (!planted.matrix.observed(i, j)) ++masked;
    }
  CHECK(masked > 0);

  auto again = planted_factor_matrix(23, 15, 8, 3, 0.25);
  CHECK(planted.matrix.values == again.matrix.values);
  CHECK(planted.matrix.observed == again.matrix.observed);
}
