#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "encore/errors.hpp"
#include "encore/reports.hpp"

using namespace encore;
using namespace encore::ingest;
using namespace encore::reports;

namespace {

Transaction tx(const std::string& account, const std::string& order, double price = 40.0,
               PriceGroup group = PriceGroup::regular, int seats = 1,
               const std::string& perf = "p1") {
  Transaction t;
  t.account_id = account;
  t.account_created = *Date::parse("2009-01-01");
  t.performance_id = perf;
  t.order_date = *Date::parse(order);
  t.seats = seats;
  t.price_paid = price;
  t.price_group = group;
  return t;
}

Performance perf(const std::string& id, Genre genre) {
  Performance p;
  p.performance_id = id;
  p.date = *Date::parse("2012-06-01");
  p.capacity = 100;
  p.genre = genre;
  return p;
}

}  // namespace

TEST_CASE("single account, single transaction") {
  auto report = activity_durations({tx("a", "2012-03-01")});
  REQUIRE(report.durations.size() == 1);
  CHECK(report.durations[0].span_days == 0);
  CHECK(report.durations[0].single_purchase);
  CHECK(report.single_purchase_share == 1.0);
}

TEST_CASE("two accounts, one repeat buyer 30 days apart") {
  auto report = activity_durations(
      {tx("A", "2012-03-01"), tx("A", "2012-03-31"), tx("B", "2012-05-05")});
  REQUIRE(report.durations.size() == 2);
  CHECK(report.single_purchase_share == 0.5);
  CHECK(report.durations[0].account_id == "A");
  CHECK(report.durations[0].span_days == 30);
  CHECK(!report.durations[0].single_purchase);
  CHECK(report.durations[1].single_purchase);
}

TEST_CASE("same-day basket is one purchase event") {
  auto report = activity_durations({tx("a", "2012-03-01"), tx("a", "2012-03-01", 60.0)});
  CHECK(report.durations[0].single_purchase);
  CHECK(report.durations[0].span_days == 0);
}

TEST_CASE("empty input is an error") {
  CHECK_THROWS_AS(activity_durations({}), DataError);
}

TEST_CASE("revenue shares: single group") {
  auto shares = revenue_composition({tx("a", "2012-01-01", 100.0)});
  CHECK(shares.at(PriceGroup::regular) == 1.0);
  CHECK(shares.at(PriceGroup::student) == 0.0);
}

TEST_CASE("revenue shares: 10 vs 30 split") {
  auto shares = revenue_composition({tx("a", "2012-01-01", 10.0),
                                     tx("b", "2012-01-01", 30.0, PriceGroup::subscription)});
  CHECK(shares.at(PriceGroup::regular) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(shares.at(PriceGroup::subscription) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("revenue shares always sum to one") {
  std::mt19937 gen(7);
  std::vector<Transaction> txs;
  PriceGroup groups[] = {PriceGroup::regular, PriceGroup::subscription, PriceGroup::student,
                         PriceGroup::other};
  for (int n = 0; n < 200; ++n)
    txs.push_back(tx("a" + std::to_string(n % 17), "2012-01-01",
                     0.25 * static_cast<double>(1 + gen() % 400), groups[gen() % 4]));
  auto shares = revenue_composition(txs);
  double total = 0;
  for (const auto& [g, s] : shares) {
    CHECK(s >= 0.0);
    total += s;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero revenue is an error") {
  CHECK_THROWS_AS(revenue_composition({tx("a", "2012-01-01", 0.0)}), DataError);
}

TEST_CASE("heatmap: one 4-seat order lands in one cell") {
  auto map = purchase_heatmap({tx("a", "2013-03-06", 40.0, PriceGroup::regular, 4)}, 2013, false);
  // 2013-03-06 is a Wednesday in ISO week 10.
  CHECK(map.seats[9][2] == 4);
  CHECK(map.total == 4);
  long sum = 0;
  for (const auto& row : map.seats)
    for (long v : row) sum += v;
  CHECK(sum == 4);
}

TEST_CASE("heatmap: same-day orders add up") {
  auto map = purchase_heatmap({tx("a", "2013-03-06", 40.0, PriceGroup::regular, 2),
                               tx("b", "2013-03-06", 40.0, PriceGroup::regular, 3)},
                              2013, false);
  CHECK(map.seats[9][2] == 5);
}

TEST_CASE("heatmap partition: subscription + regular = all seats in year") {
  std::mt19937 gen(11);
  std::vector<Transaction> txs;
  long expected = 0;
  for (int n = 0; n < 300; ++n) {
    int month = 1 + static_cast<int>(gen() % 12);
    int day = 1 + static_cast<int>(gen() % 28);
    int seats = 1 + static_cast<int>(gen() % 5);
    PriceGroup g = gen() % 3 ? PriceGroup::regular : PriceGroup::subscription;
    char buf[11];
    std::snprintf(buf, sizeof buf, "2013-%02d-%02d", month, day);
    txs.push_back(tx("a" + std::to_string(n % 23), buf, 40.0, g, seats));
    expected += seats;
  }
  auto subs = purchase_heatmap(txs, 2013, true);
  auto rest = purchase_heatmap(txs, 2013, false);
  CHECK(subs.total + rest.total == expected);
  long cellwise = 0;
  for (size_t w = 0; w < 53; ++w)
    for (size_t d = 0; d < 7; ++d) cellwise += subs.seats[w][d] + rest.seats[w][d];
  CHECK(cellwise == expected);
}

TEST_CASE("heatmap: absent year is an error") {
  CHECK_THROWS_AS(purchase_heatmap({tx("a", "2013-03-06")}, 2019, false), DataError);
}

TEST_CASE("genre breakdown: single genre catalog") {
  auto shares = genre_breakdown({tx("a", "2012-01-01")}, {perf("p1", Genre::jazz)});
  CHECK(shares.at(Genre::jazz).performance_share == 1.0);
  CHECK(shares.at(Genre::jazz).seat_share == 1.0);
}

TEST_CASE("genre breakdown mirrors the 1-in-10 dance example") {
  std::vector<Performance> catalog;
  catalog.push_back(perf("dance1", Genre::dance));
  for (int n = 0; n < 9; ++n)
    catalog.push_back(perf("o" + std::to_string(n), Genre::orchestra));
  std::vector<Transaction> txs;
  txs.push_back(tx("a", "2012-01-01", 40.0, PriceGroup::regular, 217, "dance1"));
  int left = 783;
  for (int n = 0; n < 9; ++n) {
    int seats = n == 8 ? left : 87;
    left -= seats;
    txs.push_back(tx("b", "2012-01-01", 40.0, PriceGroup::regular, seats, "o" + std::to_string(n)));
  }
  auto shares = genre_breakdown(txs, catalog);
  CHECK(shares.at(Genre::dance).performance_share == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(shares.at(Genre::dance).seat_share == doctest::Approx(0.217).epsilon(1e-12));

  double perf_total = 0, seat_total = 0;
  for (const auto& [g, s] : shares) {
    perf_total += s.performance_share;
    seat_total += s.seat_share;
  }
  CHECK(perf_total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(seat_total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("genre breakdown unchanged by transaction order") {
  std::vector<Performance> catalog = {perf("p1", Genre::jazz), perf("p2", Genre::choral)};
  std::vector<Transaction> txs = {tx("a", "2012-01-01", 40, PriceGroup::regular, 2, "p1"),
                                  tx("b", "2012-01-02", 40, PriceGroup::regular, 5, "p2"),
                                  tx("c", "2012-01-03", 40, PriceGroup::regular, 1, "p1")};
  auto before = genre_breakdown(txs, catalog);
  std::reverse(txs.begin(), txs.end());
  auto after = genre_breakdown(txs, catalog);
  CHECK(before.at(Genre::jazz).seat_share == after.at(Genre::jazz).seat_share);
  CHECK(before.at(Genre::choral).seat_share == after.at(Genre::choral).seat_share);
}
