#include "encore/reports.hpp"

#include <set>
#include <unordered_map>

#include "encore/errors.hpp"

namespace encore::reports {

ActivityReport activity_durations(const std::vector<Transaction>& txs) {
  if (txs.empty()) throw DataError("activity_durations: empty dataset");

  struct Acc {
    Date first, last;
    std::set<Date> order_dates;
  };
  std::map<std::string, Acc> by_account;
  for (const auto& tx : txs) {
    auto [it, inserted] = by_account.try_emplace(tx.account_id, Acc{tx.order_date, tx.order_date, {}});
    auto& acc = it->second;
    if (tx.order_date < acc.first) acc.first = tx.order_date;
    if (acc.last < tx.order_date) acc.last = tx.order_date;
    acc.order_dates.insert(tx.order_date);
  }

  ActivityReport report;
  size_t singles = 0;
  for (const auto& [id, acc] : by_account) {
    ActivityDuration d;
    d.account_id = id;
    d.first_purchase = acc.first;
    d.last_purchase = acc.last;
    d.span_days = acc.last.to_days() - acc.first.to_days();
    d.single_purchase = acc.order_dates.size() == 1;
    if (d.single_purchase) ++singles;
    report.durations.push_back(std::move(d));
  }
  report.single_purchase_share = static_cast<double>(singles) / static_cast<double>(by_account.size());
  return report;
}

std::map<PriceGroup, double> revenue_composition(const std::vector<Transaction>& txs) {
  std::map<PriceGroup, double> revenue = {{PriceGroup::regular, 0.0},
                                          {PriceGroup::subscription, 0.0},
                                          {PriceGroup::student, 0.0},
                                          {PriceGroup::other, 0.0}};
  double total = 0.0;
  for (const auto& tx : txs) {
    revenue[tx.price_group] += tx.price_paid;
    total += tx.price_paid;
  }
  if (total <= 0.0) throw DataError("revenue_composition: zero total revenue");
  for (auto& [group, value] : revenue) value /= total;
  return revenue;
}

Heatmap purchase_heatmap(const std::vector<Transaction>& txs, int year, bool subscription_only) {
  bool year_present = false;
  for (const auto& tx : txs) {
    if (tx.order_date.year == year) { year_present = true; break; }
  }
  if (!year_present) throw DataError("purchase_heatmap: no transactions in year " + std::to_string(year));

  Heatmap map;
  map.year = year;
  map.subscription_only = subscription_only;
  for (const auto& tx : txs) {
    if (tx.order_date.year != year) continue;
    bool is_sub = tx.price_group == PriceGroup::subscription;
    if (is_sub != subscription_only) continue;
    int week = tx.order_date.iso_week();
    int dow = tx.order_date.day_of_week();
    map.seats[week - 1][dow - 1] += tx.seats;
    map.total += tx.seats;
  }
  return map;
}

std::map<Genre, GenreShare> genre_breakdown(const std::vector<Transaction>& txs,
                                            const std::vector<Performance>& catalog) {
  if (catalog.empty()) throw DataError("genre_breakdown: empty catalog");

  std::unordered_map<std::string, Genre> genre_of;
  std::map<Genre, long> perf_counts;
  for (const auto& p : catalog) {
    genre_of[p.performance_id] = p.genre;
    ++perf_counts[p.genre];
  }

  std::map<Genre, long> seat_counts;
  long total_seats = 0;
  for (const auto& tx : txs) {
    auto it = genre_of.find(tx.performance_id);
    if (it == genre_of.end())
      throw DataError("transaction references unknown performance_id '" + tx.performance_id + "'");
    seat_counts[it->second] += tx.seats;
    total_seats += tx.seats;
  }
  if (total_seats == 0) throw DataError("genre_breakdown: no seats sold");

  std::map<Genre, GenreShare> shares;
  for (const auto& [genre, count] : perf_counts)
    shares[genre].performance_share = static_cast<double>(count) / static_cast<double>(catalog.size());
  for (const auto& [genre, seats] : seat_counts)
    shares[genre].seat_share = static_cast<double>(seats) / static_cast<double>(total_seats);
  return shares;
}

}  // namespace encore::reports
