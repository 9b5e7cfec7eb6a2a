#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "encore/ingest.hpp"

namespace encore::lifecycle {

enum class State : int { active = 0, inactive = 1, dead = 2 };
const char* to_string(State s);

// Annual state path for one account, starting at its first purchase year.
// A purchase after death opens a new sequence for the same account.
struct StateSequence {
  std::string account_id;
  int first_year = 0;
  std::vector<State> states;
};

struct AssignResult {
  std::vector<StateSequence> sequences;
  int resurrections = 0;  // purchases after two or more silent years
};

// States per year from each account's first purchase year to year_end:
// active = bought that year, inactive = one silent year, dead = two or more
// consecutive silent years (terminal). Years are calendar years of the
// order date, or season years when season_start_month > 1.
AssignResult assign_states(const std::vector<ingest::Transaction>& txs, int year_begin,
                           int year_end, int season_start_month = 1);

struct LifecycleModel {
  std::array<std::array<long, 3>, 3> counts{};
  std::array<std::array<double, 3>, 3> probs{};
  std::array<bool, 3> row_defined{};  // dead row always defined (absorbing)
  std::map<int, long> cohort_sizes;   // first_year -> sequence count
};

// Maximum-likelihood transition estimates from observed annual pairs. The
// dead row is structurally (0, 0, 1); a live row with no outgoing
// observations is flagged undefined rather than fabricated.
LifecycleModel fit_transitions(const std::vector<StateSequence>& sequences);

// Applies the transition matrix n_years times to a distribution over
// (active, inactive, dead).
std::array<double, 3> forecast(const LifecycleModel& model, std::array<double, 3> initial,
                               int n_years);

struct ChurnSummary {
  std::optional<double> active_to_inactive_share;
  std::optional<double> inactive_return_rate;
  std::map<int, long> new_customers_per_year;
};

ChurnSummary churn_summary(const LifecycleModel& model, const std::vector<StateSequence>& sequences);

}  // namespace encore::lifecycle
