#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "encore/ingest.hpp"

#include "json.hpp"

namespace encore::factorization {

// Dense real matrix with an observation mask. Values at unobserved cells
// are never read.
struct MaskedMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  Eigen::MatrixXd values;
  Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic> observed;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

// bought = observed && value == 1; missing cells are unobserved.
MaskedMatrix to_masked(const ingest::PurchaseMatrix& matrix);

struct AlsOptions {
  int k = 3;
  double lambda = 0.1;
  uint64_t seed = 1;
  int max_iters = 300;
  double tol = 1e-6;
};

// Low-rank model with per-customer and per-performance biases:
// score(i, j) = L_i . R_j + bL_i + bR_j.
struct FactorModel {
  int k = 0;
  double lambda = 0.0;
  std::vector<std::string> customers;
  std::vector<std::string> performances;
  Eigen::MatrixXd L;   // n_customers x k
  Eigen::MatrixXd R;   // n_performances x k
  Eigen::VectorXd bL;  // n_customers
  Eigen::VectorXd bR;  // n_performances
  std::vector<std::vector<int>> bought;  // per customer row, sorted column indices

  std::unordered_map<std::string, int> customer_index;
  std::unordered_map<std::string, int> performance_index;

  void rebuild_index();
  double score(int i, int j) const { return L.row(i).dot(R.row(j)) + bL(i) + bR(j); }
};

struct FitReport {
  std::vector<double> objective_trajectory;  // initial value, then one per half-iteration
  int iterations = 0;
  bool converged = false;
  double observed_rmse = 0.0;
};

// Masked squared error over observed cells plus (lambda/2) * (|L|_F^2 + |R|_F^2).
// Biases are unpenalized.
double objective(const FactorModel& model, const MaskedMatrix& matrix);

// Alternating least squares. Each half-iteration solves the exact
// regularized least-squares subproblem per customer (or performance) over
// that entity's observed cells, with the bias carried as an extra
// unregularized constant column. R starts uniform in [-0.01, 0.01] from the
// seeded generator; L and biases start at zero; the first half-step solves L.
std::pair<FactorModel, FitReport> als_fit(const MaskedMatrix& matrix, const AlsOptions& options);
std::pair<FactorModel, FitReport> als_fit(const ingest::PurchaseMatrix& matrix, const AlsOptions& options);

double predict(const FactorModel& model, const std::string& customer, const std::string& performance);

// Highest-scoring candidates the customer has not bought, descending score,
// ties broken by ascending performance id.
std::vector<std::pair<std::string, double>> recommend_top_k(const FactorModel& model,
                                                            const std::string& customer,
                                                            const std::vector<std::string>& candidates,
                                                            int n);

// Cosine between latent direction vectors, biases excluded.
double performance_similarity(const FactorModel& model, const std::string& a, const std::string& b);

struct EmbeddingRow {
  std::string entity;
  std::string kind;   // "customer" or "performance"
  std::string group;  // customers: student/general; performances: caller-supplied
  std::vector<double> coords;
  double magnitude = 0.0;  // Euclidean norm of the full latent vector
};

// Projects every entity onto the `dims` latent directions with the largest
// energy (sum of squared loadings across L and R), largest first.
std::vector<EmbeddingRow> embedding_export(const FactorModel& model, int dims,
                                           const std::map<std::string, bool>& student_flags,
                                           const std::map<std::string, std::string>& performance_groups = {});

nlohmann::json to_json(const FactorModel& model, const FitReport* fit = nullptr);
FactorModel model_from_json(const nlohmann::json& doc);

void save_model(const FactorModel& model, const FitReport& fit, const std::string& path);
FactorModel load_model(const std::string& path);

}  // namespace encore::factorization
