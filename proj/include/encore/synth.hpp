#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "encore/factorization.hpp"
#include "encore/ingest.hpp"

#include "json.hpp"

namespace encore::synth {

// Deterministic synthetic-dataset generator. Every random quantity comes
// from one SplitMix64 stream (constants in rng.hpp) consumed in this order:
//
//   1. catalog: per performance, month, day, genre, venue, series presence
//   2. style: per performance, target grade, sentence count, sentence
//      templates and word fills, then the sold-fraction noise term
//   3. customers: per customer, type, student flag, single-shot flag,
//      subscriber flag, first year, cluster, latent noise, magnitude, bias
//   4. performance factors: per performance, latent noise, scale, bias
//   5. lifecycle: per multi-buyer, one draw per simulated year transition
//   6. purchases: per customer in id order, per active year ascending,
//      buy-count draws, weighted show picks, order dates, seats, prices
//   7. second-date fix-ups for multi-buyers with a single order date
//   8. account-creation offsets, one per customer in id order
//   9. mode-of-sale and postal-code dressing, one pass over the purchase
//      lines in build order
//
// The seat top-up between steps 7 and 8 consumes no draws. Style-cluster
// directions are fixed coordinate axes, not drawn.
//
// Same config (including seed) therefore reproduces the dataset byte for
// byte; re-implementations that honor the stream and this order do too.
struct GeneratorConfig {
  uint64_t seed = 1;
  int n_customers = 1000;
  int n_performances = 60;
  int latent_dim = 3;
  double student_fraction = 0.15;
  double student_magnitude_scale = 0.5;
  double single_purchase_target = 0.66;
  // Observed-state process: row/col order active, inactive, dead. The
  // data-side state rules make active->dead and inactive->inactive
  // unobservable, so keep those entries zero if the fitted chain is meant
  // to recover this matrix.
  std::array<std::array<double, 3>, 3> true_transition_matrix = {{{0.55, 0.45, 0.0},
                                                                  {0.25, 0.0, 0.75},
                                                                  {0.0, 0.0, 1.0}}};
  double readability_vertex = 15.0;
  int year_begin = 2011;
  int year_end = 2015;
  double subscription_fraction = 0.056;  // of all customers
};

struct PlantedTruth {
  Eigen::MatrixXd L;   // n_customers x latent_dim
  Eigen::MatrixXd R;   // n_performances x latent_dim
  Eigen::VectorXd bL;
  Eigen::VectorXd bR;
  std::array<std::array<double, 3>, 3> transition_matrix{};
  double readability_vertex = 0.0;
  double single_purchase_target = 0.0;
  double student_fraction = 0.0;
  double subscription_fraction = 0.0;
  std::vector<std::string> customers;
  std::vector<std::string> performances;
  std::vector<uint8_t> student;      // per customer
  std::vector<uint8_t> single_shot;  // per customer
};

struct Dataset {
  std::vector<ingest::Transaction> transactions;  // sorted by account, date, performance
  std::vector<ingest::Performance> catalog;       // descriptions loaded
  std::map<std::string, std::string> descriptions;  // relative path -> text
  PlantedTruth truth;
};

Dataset generate(const GeneratorConfig& config);

// The planted parameters alone; identical to generate(config).truth.
PlantedTruth planted_truth(const GeneratorConfig& config);

// Writes transactions.csv, catalog.csv, descriptions/, truth.json.
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

nlohmann::json truth_to_json(const PlantedTruth& truth);

// Noiseless low-rank test matrix: values = L R^T + bL + bR with factor
// entries uniform in [-1, 1] and biases in [-0.5, 0.5]. missing_fraction
// masks cells at random (observed values untouched).
struct PlantedFactorMatrix {
  factorization::MaskedMatrix matrix;
  Eigen::MatrixXd L;
  Eigen::MatrixXd R;
  Eigen::VectorXd bL;
  Eigen::VectorXd bR;
};

PlantedFactorMatrix planted_factor_matrix(uint64_t seed, int n_rows, int n_cols, int k,
                                          double missing_fraction = 0.0);

}  // namespace encore::synth
