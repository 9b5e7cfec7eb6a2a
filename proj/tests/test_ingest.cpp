#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "encore/errors.hpp"
#include "encore/ingest.hpp"

using namespace encore;
using namespace encore::ingest;

namespace {

const char* kHeader =
    "account_id,account_created,customer_type,performance_id,order_date,seats,price_paid,"
    "price_group,promotion_code,mode_of_sale,postal_code\n";

TransactionParse parse(const std::string& body, bool strict = false) {
  std::istringstream in(std::string(kHeader) + body);
  return parse_transactions(in, strict);
}

Transaction tx(const std::string& account, const std::string& perf, const std::string& order,
               const std::string& created = "2010-01-01", PriceGroup group = PriceGroup::regular) {
  Transaction t;
  t.account_id = account;
  t.account_created = *Date::parse(created);
  t.performance_id = perf;
  t.order_date = *Date::parse(order);
  t.seats = 1;
  t.price_paid = 40.0;
  t.price_group = group;
  return t;
}

Performance perf(const std::string& id, const std::string& date, int capacity = 100) {
  Performance p;
  p.performance_id = id;
  p.date = *Date::parse(date);
  p.capacity = capacity;
  return p;
}

}  // namespace

TEST_CASE("three valid rows parse clean") {
  auto result = parse(
      "A1,2010-01-01,individual,P1,2012-03-01,2,80.00,regular,,web,48104\n"
      "A2,2011-06-15,household,P2,2012-03-02,4,160,subscription,,phone,\n"
      "A3,2012-01-01,organization,P1,2012-04-01,1,15.50,student,STU,web,48109\n");
  CHECK(result.transactions.size() == 3);
  CHECK(result.diagnostics.empty());
  CHECK(result.transactions[0].seats == 2);
  CHECK(result.transactions[1].price_group == PriceGroup::subscription);
  CHECK(result.transactions[2].promotion_code == std::optional<std::string>("STU"));
  CHECK(!result.transactions[0].promotion_code.has_value());
}

TEST_CASE("zero seats rejected with a row diagnostic") {
  auto result = parse(
      "A1,2010-01-01,individual,P1,2012-03-01,1,40,regular,,web,\n"
      "A2,2010-01-01,individual,P1,2012-03-01,0,40,regular,,web,\n"
      "A3,2010-01-01,individual,P1,2012-03-01,1,40,regular,,web,\n");
  CHECK(result.transactions.size() == 2);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].record == 3);  // header is record 1
  CHECK(result.diagnostics[0].message.find("seats") != std::string::npos);
}

TEST_CASE("order before account creation is rejected with the documented text") {
  auto result = parse("A1,2012-06-01,individual,P1,2012-03-01,1,40,regular,,web,\n");
  CHECK(result.transactions.empty());
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].message == "order precedes account creation");
}

TEST_CASE("strict mode aborts on the first diagnostic") {
  CHECK_THROWS_AS(parse("A1,2010-01-01,individual,P1,2012-03-01,0,40,regular,,web,\n", true),
                  DataError);
}

TEST_CASE("missing required column is a schema error in any mode") {
  std::istringstream in("account_id,order_date\nA1,2012-01-01\n");
  CHECK_THROWS_AS(parse_transactions(in, false), SchemaError);
}

TEST_CASE("unparseable fields produce row diagnostics, not aborts") {
  auto result = parse(
      "A1,2010-01-01,individual,P1,not-a-date,1,40,regular,,web,\n"
      "A2,2010-01-01,butler,P1,2012-03-01,1,40,regular,,web,\n"
      "A3,2010-01-01,individual,P1,2012-03-01,x,40,regular,,web,\n"
      "A4,2010-01-01,individual,P1,2012-03-01,1,-3,regular,,web,\n");
  CHECK(result.transactions.empty());
  CHECK(result.diagnostics.size() == 4);
}

TEST_CASE("unknown price group passes through as other") {
  auto result = parse("A1,2010-01-01,individual,P1,2012-03-01,1,40,comp,,web,\n");
  REQUIRE(result.transactions.size() == 1);
  CHECK(result.transactions[0].price_group == PriceGroup::other);
}

TEST_CASE("catalog parses and flags duplicates") {
  std::istringstream in(
      "performance_id,name,date,venue,capacity,genre,subscription_series,description_path\n"
      "P1,Opening Night,2012-09-20,Hall,500,Orchestra,Fall Series,desc/p1.txt\n"
      "P1,Clone,2012-09-21,Hall,500,Jazz,,\n"
      "P2,Quartet,2012-10-01,Studio,0,Chamber,,\n");
  auto result = parse_catalog(in, false);
  CHECK(result.performances.size() == 1);
  CHECK(result.diagnostics.size() == 2);  // duplicate id, capacity 0
  CHECK(result.performances[0].genre == Genre::orchestra);
  CHECK(result.performances[0].subscription_series == std::optional<std::string>("Fall Series"));
}

TEST_CASE("build_matrix lays out cells from the worked example") {
  // 2 customers, 3 performances, purchases {(c1,p1),(c2,p3)}; accounts
  // predate all shows, so no cell is missing.
  std::vector<Transaction> txs = {tx("c1", "p1", "2012-03-01"), tx("c2", "p3", "2012-04-05")};
  std::vector<Performance> catalog = {perf("p1", "2012-03-10"), perf("p2", "2012-04-01"),
                                      perf("p3", "2012-05-01")};
  auto m = build_matrix(txs, catalog, false);
  REQUIRE(m.n_customers() == 2);
  REQUIRE(m.n_performances() == 3);
  CHECK(m.cell(0, 0) == Cell::bought);
  CHECK(m.cell(0, 1) == Cell::not_bought);
  CHECK(m.cell(0, 2) == Cell::not_bought);
  CHECK(m.cell(1, 0) == Cell::not_bought);
  CHECK(m.cell(1, 1) == Cell::not_bought);
  CHECK(m.cell(1, 2) == Cell::bought);
}

TEST_CASE("performances before account creation are missing regardless of activity") {
  std::vector<Transaction> txs = {tx("c1", "p2", "2012-06-01", "2012-05-01"),
                                  tx("c1", "p1", "2012-06-02", "2012-05-01")};
  std::vector<Performance> catalog = {perf("p1", "2012-03-10"), perf("p2", "2012-07-01")};
  auto m = build_matrix(txs, catalog, false);
  CHECK(m.cell(0, 0) == Cell::missing);  // bought, but show predates the account
  CHECK(m.cell(0, 1) == Cell::bought);
}

TEST_CASE("same-day performance counts as observable") {
  std::vector<Transaction> txs = {tx("c1", "p1", "2012-03-10", "2012-03-10")};
  std::vector<Performance> catalog = {perf("p1", "2012-03-10")};
  auto m = build_matrix(txs, catalog, false);
  CHECK(m.cell(0, 0) == Cell::bought);
}

TEST_CASE("exclude_subscriptions drops subscription cells") {
  std::vector<Transaction> txs = {tx("c1", "p1", "2012-03-01"),
                                  tx("c2", "p3", "2012-04-05", "2010-01-01", PriceGroup::subscription)};
  std::vector<Performance> catalog = {perf("p1", "2012-03-10"), perf("p2", "2012-04-01"),
                                      perf("p3", "2012-05-01")};
  auto with = build_matrix(txs, catalog, false);
  auto without = build_matrix(txs, catalog, true);
  CHECK(with.cell(1, 2) == Cell::bought);
  CHECK(without.cell(1, 2) == Cell::not_bought);
  CHECK(without.cell(0, 0) == Cell::bought);
}

TEST_CASE("unknown performance reference is fatal") {
  std::vector<Transaction> txs = {tx("c1", "ghost", "2012-03-01")};
  std::vector<Performance> catalog = {perf("p1", "2012-03-10")};
  CHECK_THROWS_AS(build_matrix(txs, catalog, false), DataError);
}

TEST_CASE("matrix is insensitive to transaction order and repeat purchases") {
  std::vector<Transaction> txs;
  std::mt19937 gen(42);
  const char* accounts[] = {"a", "b", "c", "d"};
  const char* shows[] = {"p1", "p2", "p3", "p4", "p5"};
  for (int n = 0; n < 40; ++n) {
    Transaction t = tx(accounts[gen() % 4], shows[gen() % 5],
                       n % 2 ? "2012-03-05" : "2012-04-07");
    txs.push_back(t);
  }
  std::vector<Performance> catalog;
  for (const char* s : shows) catalog.push_back(perf(s, "2012-06-01"));

  auto reference = build_matrix(txs, catalog, false);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(txs.begin(), txs.end(), gen);
    auto shuffled = build_matrix(txs, catalog, false);
    CHECK(shuffled.customers == reference.customers);
    CHECK(shuffled.cells == reference.cells);
  }

  // Bought cells cannot exceed distinct (account, performance) pairs.
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& t : txs) pairs.insert({t.account_id, t.performance_id});
  size_t bought = std::count(reference.cells.begin(), reference.cells.end(), Cell::bought);
  CHECK(bought <= pairs.size());
}

TEST_CASE("missing cells match the mask rule exactly") {
  std::vector<Transaction> txs = {tx("early", "p2", "2012-06-01", "2011-01-01"),
                                  tx("late", "p2", "2012-06-01", "2012-05-01")};
  std::vector<Performance> catalog = {perf("p1", "2012-03-10"), perf("p2", "2012-07-01"),
                                      perf("p3", "2011-12-31")};
  auto m = build_matrix(txs, catalog, false);
  auto table = customer_table(txs);
  for (size_t i = 0; i < m.n_customers(); ++i) {
    Date created = table.at(m.customers[i]).account_created;
    for (size_t j = 0; j < m.n_performances(); ++j) {
      bool should_be_missing = catalog[j].date < created;
      CHECK((m.cell(i, j) == Cell::missing) == should_be_missing);
    }
  }
}

TEST_CASE("student flags from price group and configured promo codes") {
  std::vector<Transaction> txs = {
      tx("s1", "p1", "2012-03-01", "2010-01-01", PriceGroup::student),
      tx("s1", "p2", "2012-03-02"),
      tx("r1", "p1", "2012-03-01"),
      tx("s2", "p1", "2012-03-01"),
  };
  txs[3].promotion_code = "CAMPUS20";

  auto plain = student_flags(txs);
  CHECK(plain.at("s1"));
  CHECK(!plain.at("r1"));
  CHECK(!plain.at("s2"));  // code not configured

  auto configured = student_flags(txs, {"CAMPUS20"});
  CHECK(configured.at("s2"));
  CHECK(!configured.at("r1"));
}

TEST_CASE("customer_table keeps the earliest creation date") {
  std::vector<Transaction> txs = {tx("a", "p1", "2012-03-01", "2011-05-01"),
                                  tx("a", "p2", "2012-04-01", "2010-02-01")};
  auto table = customer_table(txs);
  CHECK(table.at("a").account_created == *Date::parse("2010-02-01"));
}
