#include "encore/exports.hpp"

#include <ostream>

#include "encore/csv.hpp"

namespace encore::exports {

using nlohmann::json;

json activity_json(const reports::ActivityReport& report) {
  json doc;
  doc["single_purchase_share"] = report.single_purchase_share;
  json rows = json::array();
  for (const auto& d : report.durations) {
    rows.push_back({{"account_id", d.account_id},
                    {"first_purchase", d.first_purchase.to_string()},
                    {"last_purchase", d.last_purchase.to_string()},
                    {"span_days", d.span_days},
                    {"single_purchase", d.single_purchase}});
  }
  doc["durations"] = std::move(rows);
  return doc;
}

void activity_csv(std::ostream& out, const reports::ActivityReport& report) {
  write_csv_record(out, {"account_id", "first_purchase", "last_purchase", "span_days",
                         "single_purchase"});
  for (const auto& d : report.durations) {
    write_csv_record(out, {d.account_id, d.first_purchase.to_string(), d.last_purchase.to_string(),
                           std::to_string(d.span_days), d.single_purchase ? "true" : "false"});
  }
}

json revenue_json(const std::map<ingest::PriceGroup, double>& shares) {
  json doc;
  for (const auto& [group, share] : shares) doc[ingest::to_string(group)] = share;
  return doc;
}

void revenue_csv(std::ostream& out, const std::map<ingest::PriceGroup, double>& shares) {
  write_csv_record(out, {"price_group", "revenue_share"});
  for (const auto& [group, share] : shares)
    write_csv_record(out, {ingest::to_string(group), format_double(share)});
}

json heatmap_json(const reports::Heatmap& map) {
  json doc;
  doc["year"] = map.year;
  doc["subscription_only"] = map.subscription_only;
  doc["total_seats"] = map.total;
  json weeks = json::array();
  for (const auto& week : map.seats) weeks.push_back(week);
  doc["seats"] = std::move(weeks);
  return doc;
}

void heatmap_csv(std::ostream& out, const reports::Heatmap& map) {
  write_csv_record(out, {"week", "mon", "tue", "wed", "thu", "fri", "sat", "sun"});
  for (size_t w = 0; w < map.seats.size(); ++w) {
    std::vector<std::string> row{std::to_string(w + 1)};
    for (long v : map.seats[w]) row.push_back(std::to_string(v));
    write_csv_record(out, row);
  }
}

json genre_json(const std::map<ingest::Genre, reports::GenreShare>& shares) {
  json doc;
  for (const auto& [genre, share] : shares) {
    doc[ingest::to_string(genre)] = {{"performance_share", share.performance_share},
                                     {"seat_share", share.seat_share}};
  }
  return doc;
}

void genre_csv(std::ostream& out, const std::map<ingest::Genre, reports::GenreShare>& shares) {
  write_csv_record(out, {"genre", "performance_share", "seat_share"});
  for (const auto& [genre, share] : shares)
    write_csv_record(out, {ingest::to_string(genre), format_double(share.performance_share),
                           format_double(share.seat_share)});
}

namespace {

json metric_json(const stylometrics::MetricAnalysis& m) {
  json doc;
  doc["metric"] = m.metric;
  doc["degree"] = m.degree;
  if (m.correlation) doc["pearson"] = *m.correlation;
  if (m.fit) {
    doc["fit_coefficients"] = m.fit->coeffs;
    doc["fit_rss"] = m.fit->rss;
  }
  if (m.vertex) doc["vertex"] = *m.vertex;
  if (m.note) doc["note"] = *m.note;
  return doc;
}

}  // namespace

json style_json(const stylometrics::StyleReport& report) {
  json doc;
  json rows = json::array();
  for (const auto& r : report.records) {
    rows.push_back({{"performance_id", r.performance_id},
                    {"readability", r.readability},
                    {"formality", r.formality},
                    {"length", r.length},
                    {"pct_seats_sold", r.pct_seats_sold}});
  }
  doc["records"] = std::move(rows);
  doc["readability"] = metric_json(report.readability);
  doc["formality"] = metric_json(report.formality);
  doc["length"] = metric_json(report.length);
  doc["diagnostics"] = report.diagnostics;
  return doc;
}

void style_csv(std::ostream& out, const stylometrics::StyleReport& report) {
  write_csv_record(out, {"performance_id", "readability", "formality", "length", "pct_seats_sold"});
  for (const auto& r : report.records) {
    write_csv_record(out, {r.performance_id, format_double(r.readability),
                           format_double(r.formality), std::to_string(r.length),
                           format_double(r.pct_seats_sold)});
  }
}

json lifecycle_json(const lifecycle::LifecycleModel& model, const lifecycle::ChurnSummary& churn,
                    int resurrections) {
  static const char* kStates[] = {"active", "inactive", "dead"};
  json doc;
  json counts = json::object();
  json probs = json::object();
  for (int s = 0; s < 3; ++s) {
    counts[kStates[s]] = model.counts[s];
    if (model.row_defined[s]) probs[kStates[s]] = model.probs[s];
  }
  doc["transition_counts"] = std::move(counts);
  doc["transition_probs"] = std::move(probs);
  json undefined = json::array();
  for (int s = 0; s < 3; ++s)
    if (!model.row_defined[s]) undefined.push_back(kStates[s]);
  doc["undefined_rows"] = std::move(undefined);
  doc["cohort_sizes"] = json::object();
  for (const auto& [year, count] : model.cohort_sizes)
    doc["cohort_sizes"][std::to_string(year)] = count;
  if (churn.active_to_inactive_share) doc["active_to_inactive_share"] = *churn.active_to_inactive_share;
  if (churn.inactive_return_rate) doc["inactive_return_rate"] = *churn.inactive_return_rate;
  doc["resurrections"] = resurrections;
  return doc;
}

void transitions_csv(std::ostream& out, const lifecycle::LifecycleModel& model) {
  static const char* kStates[] = {"active", "inactive", "dead"};
  write_csv_record(out, {"from", "to_active", "to_inactive", "to_dead", "defined"});
  for (int s = 0; s < 3; ++s) {
    write_csv_record(out, {kStates[s], format_double(model.probs[s][0]),
                           format_double(model.probs[s][1]), format_double(model.probs[s][2]),
                           model.row_defined[s] ? "true" : "false"});
  }
}

void sequences_csv(std::ostream& out, const std::vector<lifecycle::StateSequence>& sequences) {
  write_csv_record(out, {"account_id", "year", "state"});
  for (const auto& seq : sequences) {
    for (size_t t = 0; t < seq.states.size(); ++t) {
      write_csv_record(out, {seq.account_id, std::to_string(seq.first_year + static_cast<int>(t)),
                             lifecycle::to_string(seq.states[t])});
    }
  }
}

json embedding_json(const std::vector<factorization::EmbeddingRow>& rows) {
  json doc = json::array();
  for (const auto& r : rows) {
    doc.push_back({{"entity", r.entity},
                   {"kind", r.kind},
                   {"group", r.group},
                   {"coords", r.coords},
                   {"magnitude", r.magnitude}});
  }
  return doc;
}

void embedding_csv(std::ostream& out, const std::vector<factorization::EmbeddingRow>& rows) {
  if (rows.empty()) return;
  std::vector<std::string> header{"entity", "kind", "group"};
  for (size_t d = 0; d < rows.front().coords.size(); ++d)
    header.push_back("dim" + std::to_string(d + 1));
  header.push_back("magnitude");
  write_csv_record(out, header);
  for (const auto& r : rows) {
    std::vector<std::string> row{r.entity, r.kind, r.group};
    for (double c : r.coords) row.push_back(format_double(c));
    row.push_back(format_double(r.magnitude));
    write_csv_record(out, row);
  }
}

}  // namespace encore::exports
