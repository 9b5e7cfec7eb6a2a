#include "encore/lifecycle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "encore/errors.hpp"

namespace encore::lifecycle {

const char* to_string(State s) {
  switch (s) {
    case State::active: return "active";
    case State::inactive: return "inactive";
    case State::dead: return "dead";
  }
  return "?";
}

namespace {

int season_year(const Date& d, int start_month) {
  if (start_month <= 1) return d.year;
  return d.month >= start_month ? d.year : d.year - 1;
}

}  // namespace

AssignResult assign_states(const std::vector<ingest::Transaction>& txs, int year_begin,
                           int year_end, int season_start_month) {
  if (year_begin > year_end) throw ContractError("assign_states: empty year range");
  if (season_start_month < 1 || season_start_month > 12)
    throw ContractError("assign_states: season_start_month must be in [1, 12]");

  std::map<std::string, std::set<int>> active_years;
  for (const auto& tx : txs) {
    int y = season_year(tx.order_date, season_start_month);
    if (y < year_begin || y > year_end)
      throw DataError("assign_states: transaction year " + std::to_string(y) +
                      " outside range [" + std::to_string(year_begin) + ", " +
                      std::to_string(year_end) + "]");
    active_years[tx.account_id].insert(y);
  }

  AssignResult result;
  for (const auto& [account, years] : active_years) {
    StateSequence seq;
    seq.account_id = account;
    seq.first_year = *years.begin();

    int silent_run = 0;
    for (int y = seq.first_year; y <= year_end; ++y) {
      bool active = years.count(y) > 0;
      bool is_dead = !seq.states.empty() && seq.states.back() == State::dead;
      if (active && is_dead) {
        // Purchase after death: close this sequence and start a new one.
        result.sequences.push_back(std::move(seq));
        ++result.resurrections;
        seq = StateSequence{account, y, {}};
        silent_run = 0;
        is_dead = false;
      }
      if (active) {
        seq.states.push_back(State::active);
        silent_run = 0;
      } else {
        ++silent_run;
        seq.states.push_back(silent_run >= 2 ? State::dead : State::inactive);
      }
    }
    result.sequences.push_back(std::move(seq));
  }
  return result;
}

LifecycleModel fit_transitions(const std::vector<StateSequence>& sequences) {
  LifecycleModel model;
  long total = 0;
  for (const auto& seq : sequences) {
    for (size_t t = 0; t + 1 < seq.states.size(); ++t) {
      State from = seq.states[t];
      State to = seq.states[t + 1];
      if (from == State::dead && to != State::dead)
        throw ContractError("fit_transitions: sequence for '" + seq.account_id +
                            "' leaves the dead state");
      ++model.counts[static_cast<int>(from)][static_cast<int>(to)];
      ++total;
    }
    ++model.cohort_sizes[seq.first_year];
  }
  if (total == 0) throw DataError("fit_transitions: no observed transitions");

  for (int s = 0; s < 2; ++s) {
    long row_total = model.counts[s][0] + model.counts[s][1] + model.counts[s][2];
    if (row_total == 0) {
      model.row_defined[s] = false;
      continue;
    }
    model.row_defined[s] = true;
    for (int t = 0; t < 3; ++t)
      model.probs[s][t] = static_cast<double>(model.counts[s][t]) / static_cast<double>(row_total);
  }
  // Dead is absorbing by construction, observed or not.
  model.probs[2] = {0.0, 0.0, 1.0};
  model.row_defined[2] = true;
  return model;
}

std::array<double, 3> forecast(const LifecycleModel& model, std::array<double, 3> initial,
                               int n_years) {
  if (n_years < 0) throw ContractError("forecast: n_years must be >= 0");
  double mass = initial[0] + initial[1] + initial[2];
  if (std::abs(mass - 1.0) > 1e-9)
    throw ContractError("forecast: initial distribution must sum to 1");

  std::array<double, 3> dist = initial;
  for (int step = 0; step < n_years; ++step) {
    for (int s = 0; s < 3; ++s) {
      if (dist[s] > 0.0 && !model.row_defined[s])
        throw DataError(std::string("forecast: reachable state '") + to_string(static_cast<State>(s)) +
                        "' has an undefined transition row");
    }
    std::array<double, 3> next{};
    for (int s = 0; s < 3; ++s)
      for (int t = 0; t < 3; ++t) next[t] += dist[s] * model.probs[s][t];
    dist = next;
  }
  return dist;
}

ChurnSummary churn_summary(const LifecycleModel& model, const std::vector<StateSequence>& sequences) {
  ChurnSummary summary;
  if (model.row_defined[static_cast<int>(State::active)])
    summary.active_to_inactive_share = model.probs[0][1];
  if (model.row_defined[static_cast<int>(State::inactive)])
    summary.inactive_return_rate = model.probs[1][0];
  for (const auto& seq : sequences) ++summary.new_customers_per_year[seq.first_year];
  return summary;
}

}  // namespace encore::lifecycle
