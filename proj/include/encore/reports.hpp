#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "encore/ingest.hpp"

namespace encore::reports {

using ingest::Genre;
using ingest::Performance;
using ingest::PriceGroup;
using ingest::Transaction;

struct ActivityDuration {
  std::string account_id;
  Date first_purchase;
  Date last_purchase;
  long span_days = 0;
  bool single_purchase = false;  // exactly one distinct order date
};

struct ActivityReport {
  std::vector<ActivityDuration> durations;  // sorted by account id
  double single_purchase_share = 0.0;
};

ActivityReport activity_durations(const std::vector<Transaction>& txs);

// Revenue share per price group; shares sum to 1.
std::map<PriceGroup, double> revenue_composition(const std::vector<Transaction>& txs);

// Seats bought per (ISO week-of-year, ISO weekday) for one calendar year.
// subscription_only selects the subscription partition; its complement is
// every non-subscription ticket, so the two tables sum to the year total.
struct Heatmap {
  int year = 0;
  bool subscription_only = false;
  std::array<std::array<long, 7>, 53> seats{};  // [week-1][weekday-1]
  long total = 0;
};

Heatmap purchase_heatmap(const std::vector<Transaction>& txs, int year, bool subscription_only);

struct GenreShare {
  double performance_share = 0.0;
  double seat_share = 0.0;
};

std::map<Genre, GenreShare> genre_breakdown(const std::vector<Transaction>& txs,
                                            const std::vector<Performance>& catalog);

}  // namespace encore::reports
