#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "encore/factorization.hpp"
#include "encore/lifecycle.hpp"
#include "encore/reports.hpp"
#include "encore/stylometrics.hpp"

#include "json.hpp"

namespace encore::exports {

nlohmann::json activity_json(const reports::ActivityReport& report);
void activity_csv(std::ostream& out, const reports::ActivityReport& report);

nlohmann::json revenue_json(const std::map<ingest::PriceGroup, double>& shares);
void revenue_csv(std::ostream& out, const std::map<ingest::PriceGroup, double>& shares);

nlohmann::json heatmap_json(const reports::Heatmap& map);
void heatmap_csv(std::ostream& out, const reports::Heatmap& map);

nlohmann::json genre_json(const std::map<ingest::Genre, reports::GenreShare>& shares);
void genre_csv(std::ostream& out, const std::map<ingest::Genre, reports::GenreShare>& shares);

nlohmann::json style_json(const stylometrics::StyleReport& report);
void style_csv(std::ostream& out, const stylometrics::StyleReport& report);

nlohmann::json lifecycle_json(const lifecycle::LifecycleModel& model,
                              const lifecycle::ChurnSummary& churn, int resurrections);
void transitions_csv(std::ostream& out, const lifecycle::LifecycleModel& model);
void sequences_csv(std::ostream& out, const std::vector<lifecycle::StateSequence>& sequences);

nlohmann::json embedding_json(const std::vector<factorization::EmbeddingRow>& rows);
void embedding_csv(std::ostream& out, const std::vector<factorization::EmbeddingRow>& rows);

}  // namespace encore::exports
