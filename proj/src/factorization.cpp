#include "encore/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "encore/errors.hpp"
#include "encore/rng.hpp"

namespace encore::factorization {

namespace {

double masked_objective(const MaskedMatrix& m, const Eigen::MatrixXd& L, const Eigen::MatrixXd& R,
                        const Eigen::VectorXd& bL, const Eigen::VectorXd& bR, double lambda) {
  double sse = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!m.observed(i, j)) continue;
      double r = m.values(i, j) - (L.row(i).dot(R.row(j)) + bL(i) + bR(j));
      sse += r * r;
    }
  }
  return sse + 0.5 * lambda * (L.squaredNorm() + R.squaredNorm());
}

double masked_rmse(const MaskedMatrix& m, const Eigen::MatrixXd& L, const Eigen::MatrixXd& R,
                   const Eigen::VectorXd& bL, const Eigen::VectorXd& bR) {
  double sse = 0.0;
  long count = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!m.observed(i, j)) continue;
      double r = m.values(i, j) - (L.row(i).dot(R.row(j)) + bL(i) + bR(j));
      sse += r * r;
      ++count;
    }
  }
  return count ? std::sqrt(sse / static_cast<double>(count)) : 0.0;
}

// Exact solve of one entity's regularized least-squares subproblem via the
// normal equations: fixed.row(t) are the k-dim factor vectors on the fixed
// side, y(t) the bias-corrected targets. Ridge weight lambda/2 on the factor
// coordinates, none on the trailing constant column. Returns [factor; bias].
Eigen::VectorXd solve_entity(const std::vector<Eigen::Index>& obs, const Eigen::MatrixXd& fixed,
                             const Eigen::VectorXd& fixed_bias, const MaskedMatrix& m,
                             bool row_side, Eigen::Index entity, double lambda) {
  const int k = static_cast<int>(fixed.cols());
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  Eigen::VectorXd a(k + 1);
  for (Eigen::Index t : obs) {
    a.head(k) = fixed.row(t).transpose();
    a(k) = 1.0;
    double y = (row_side ? m.values(entity, t) : m.values(t, entity)) - fixed_bias(t);
    normal.noalias() += a * a.transpose();
    rhs.noalias() += y * a;
  }
  for (int d = 0; d < k; ++d) normal(d, d) += 0.5 * lambda;

  // Minimum-norm solution; keeps rank-deficient subproblems (lambda = 0,
  // very sparse rows) well defined.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(normal);
  return cod.solve(rhs);
}

}  // namespace

MaskedMatrix to_masked(const ingest::PurchaseMatrix& matrix) {
  MaskedMatrix m;
  m.row_ids = matrix.customers;
  m.col_ids = matrix.performances;
  const auto rows = static_cast<Eigen::Index>(matrix.n_customers());
  const auto cols = static_cast<Eigen::Index>(matrix.n_performances());
  m.values.setZero(rows, cols);
  m.observed.setZero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      switch (matrix.cell(static_cast<size_t>(i), static_cast<size_t>(j))) {
        case ingest::Cell::bought:
          m.values(i, j) = 1.0;
          m.observed(i, j) = 1;
          break;
        case ingest::Cell::not_bought:
          m.observed(i, j) = 1;
          break;
        case ingest::Cell::missing:
          break;
      }
    }
  }
  return m;
}

void FactorModel::rebuild_index() {
  customer_index.clear();
  performance_index.clear();
  for (size_t i = 0; i < customers.size(); ++i) customer_index[customers[i]] = static_cast<int>(i);
  for (size_t j = 0; j < performances.size(); ++j) performance_index[performances[j]] = static_cast<int>(j);
}

double objective(const FactorModel& model, const MaskedMatrix& matrix) {
  if (model.L.rows() != matrix.rows() || model.R.rows() != matrix.cols())
    throw ContractError("objective: model and matrix dimensions do not match");
  return masked_objective(matrix, model.L, model.R, model.bL, model.bR, model.lambda);
}

std::pair<FactorModel, FitReport> als_fit(const MaskedMatrix& matrix, const AlsOptions& options) {
  const Eigen::Index n_rows = matrix.rows();
  const Eigen::Index n_cols = matrix.cols();
  if (options.k < 1) throw ContractError("als_fit: k must be >= 1");
  if (options.k > std::min(n_rows, n_cols))
    throw ContractError("als_fit: k exceeds min(customers, performances)");
  if (options.max_iters < 1) throw ContractError("als_fit: max_iters must be >= 1");

  std::vector<std::vector<Eigen::Index>> row_obs(n_rows), col_obs(n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i)
    for (Eigen::Index j = 0; j < n_cols; ++j)
      if (matrix.observed(i, j)) {
        row_obs[i].push_back(j);
        col_obs[j].push_back(i);
      }
  for (Eigen::Index i = 0; i < n_rows; ++i)
    if (row_obs[i].empty())
      throw DataError("als_fit: customer '" + matrix.row_ids[static_cast<size_t>(i)] +
                      "' has no observed cells");
  for (Eigen::Index j = 0; j < n_cols; ++j)
    if (col_obs[j].empty())
      throw DataError("als_fit: performance '" + matrix.col_ids[static_cast<size_t>(j)] +
                      "' has no observed cells");

  const int k = options.k;
  FactorModel model;
  model.k = k;
  model.lambda = options.lambda;
  model.customers = matrix.row_ids;
  model.performances = matrix.col_ids;
  model.L = Eigen::MatrixXd::Zero(n_rows, k);
  model.R = Eigen::MatrixXd::Zero(n_cols, k);
  model.bL = Eigen::VectorXd::Zero(n_rows);
  model.bR = Eigen::VectorXd::Zero(n_cols);

  SplitMix64 rng(options.seed);
  for (Eigen::Index j = 0; j < n_cols; ++j)
    for (int d = 0; d < k; ++d) model.R(j, d) = rng.uniform(-0.01, 0.01);

  FitReport report;
  double current = masked_objective(matrix, model.L, model.R, model.bL, model.bR, options.lambda);
  report.objective_trajectory.push_back(current);

  for (int iter = 0; iter < options.max_iters; ++iter) {
    double previous = current;

    for (Eigen::Index i = 0; i < n_rows; ++i) {
      Eigen::VectorXd w = solve_entity(row_obs[i], model.R, model.bR, matrix, true, i, options.lambda);
      model.L.row(i) = w.head(k).transpose();
      model.bL(i) = w(k);
    }
    current = masked_objective(matrix, model.L, model.R, model.bL, model.bR, options.lambda);
    report.objective_trajectory.push_back(current);

    for (Eigen::Index j = 0; j < n_cols; ++j) {
      Eigen::VectorXd w = solve_entity(col_obs[j], model.L, model.bL, matrix, false, j, options.lambda);
      model.R.row(j) = w.head(k).transpose();
      model.bR(j) = w(k);
    }
    current = masked_objective(matrix, model.L, model.R, model.bL, model.bR, options.lambda);
    report.objective_trajectory.push_back(current);

    report.iterations = iter + 1;
    double denom = std::max(std::abs(previous), 1e-300);
    if ((previous - current) / denom < options.tol) {
      report.converged = true;
      break;
    }
  }

  report.observed_rmse = masked_rmse(matrix, model.L, model.R, model.bL, model.bR);

  model.bought.assign(static_cast<size_t>(n_rows), {});
  for (Eigen::Index i = 0; i < n_rows; ++i)
    for (Eigen::Index j : row_obs[i])
      if (matrix.values(i, j) >= 0.5) model.bought[static_cast<size_t>(i)].push_back(static_cast<int>(j));

  model.rebuild_index();
  return {std::move(model), std::move(report)};
}

std::pair<FactorModel, FitReport> als_fit(const ingest::PurchaseMatrix& matrix, const AlsOptions& options) {
  return als_fit(to_masked(matrix), options);
}

namespace {

int require_customer(const FactorModel& model, const std::string& id) {
  auto it = model.customer_index.find(id);
  if (it == model.customer_index.end()) throw LookupError("unknown customer '" + id + "'");
  return it->second;
}

int require_performance(const FactorModel& model, const std::string& id) {
  auto it = model.performance_index.find(id);
  if (it == model.performance_index.end()) throw LookupError("unknown performance '" + id + "'");
  return it->second;
}

}  // namespace

double predict(const FactorModel& model, const std::string& customer, const std::string& performance) {
  return model.score(require_customer(model, customer), require_performance(model, performance));
}

std::vector<std::pair<std::string, double>> recommend_top_k(const FactorModel& model,
                                                            const std::string& customer,
                                                            const std::vector<std::string>& candidates,
                                                            int n) {
  if (candidates.empty()) throw ContractError("recommend_top_k: empty candidate set");
  if (n < 0) throw ContractError("recommend_top_k: n must be >= 0");
  int i = require_customer(model, customer);
  const auto& owned = model.bought[static_cast<size_t>(i)];

  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(candidates.size());
  for (const auto& id : candidates) {
    int j = require_performance(model, id);
    if (std::binary_search(owned.begin(), owned.end(), j)) continue;
    scored.emplace_back(id, model.score(i, j));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<size_t>(n) < scored.size()) scored.resize(static_cast<size_t>(n));
  return scored;
}

double performance_similarity(const FactorModel& model, const std::string& a, const std::string& b) {
  int ja = require_performance(model, a);
  int jb = require_performance(model, b);
  double na = model.R.row(ja).norm();
  double nb = model.R.row(jb).norm();
  if (na == 0.0 || nb == 0.0)
    throw DataError("performance_similarity: zero latent vector, direction undefined");
  return model.R.row(ja).dot(model.R.row(jb)) / (na * nb);
}

std::vector<EmbeddingRow> embedding_export(const FactorModel& model, int dims,
                                           const std::map<std::string, bool>& student_flags,
                                           const std::map<std::string, std::string>& performance_groups) {
  if (dims < 1 || dims > model.k) throw ContractError("embedding_export: dims must be in [1, k]");

  std::vector<std::pair<double, int>> energy(static_cast<size_t>(model.k));
  for (int d = 0; d < model.k; ++d)
    energy[static_cast<size_t>(d)] = {model.L.col(d).squaredNorm() + model.R.col(d).squaredNorm(), d};
  std::stable_sort(energy.begin(), energy.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<EmbeddingRow> rows;
  rows.reserve(model.customers.size() + model.performances.size());
  for (size_t i = 0; i < model.customers.size(); ++i) {
    EmbeddingRow row;
    row.entity = model.customers[i];
    row.kind = "customer";
    auto it = student_flags.find(row.entity);
    row.group = (it != student_flags.end() && it->second) ? "student" : "general";
    for (int d = 0; d < dims; ++d)
      row.coords.push_back(model.L(static_cast<Eigen::Index>(i), energy[static_cast<size_t>(d)].second));
    row.magnitude = model.L.row(static_cast<Eigen::Index>(i)).norm();
    rows.push_back(std::move(row));
  }
  for (size_t j = 0; j < model.performances.size(); ++j) {
    EmbeddingRow row;
    row.entity = model.performances[j];
    row.kind = "performance";
    auto it = performance_groups.find(row.entity);
    row.group = it != performance_groups.end() ? it->second : "";
    for (int d = 0; d < dims; ++d)
      row.coords.push_back(model.R(static_cast<Eigen::Index>(j), energy[static_cast<size_t>(d)].second));
    row.magnitude = model.R.row(static_cast<Eigen::Index>(j)).norm();
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const FactorModel& model, const FitReport* fit) {
  nlohmann::json doc;
  doc["format"] = "factor-model-v1";
  doc["k"] = model.k;
  doc["lambda"] = model.lambda;
  doc["customers"] = model.customers;
  doc["performances"] = model.performances;

  auto dump_matrix = [](const Eigen::MatrixXd& m) {
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
    return flat;
  };
  doc["L"] = dump_matrix(model.L);
  doc["R"] = dump_matrix(model.R);
  doc["bL"] = std::vector<double>(model.bL.data(), model.bL.data() + model.bL.size());
  doc["bR"] = std::vector<double>(model.bR.data(), model.bR.data() + model.bR.size());
  doc["bought"] = model.bought;

  if (fit) {
    doc["fit"] = {{"iterations", fit->iterations},
                  {"converged", fit->converged},
                  {"observed_rmse", fit->observed_rmse},
                  {"objective_trajectory", fit->objective_trajectory}};
  }
  return doc;
}

FactorModel model_from_json(const nlohmann::json& doc) {
  if (doc.value("format", "") != "factor-model-v1")
    throw DataError("model file: unrecognized format");

  FactorModel model;
  model.k = doc.at("k").get<int>();
  model.lambda = doc.at("lambda").get<double>();
  model.customers = doc.at("customers").get<std::vector<std::string>>();
  model.performances = doc.at("performances").get<std::vector<std::string>>();

  const auto n_rows = static_cast<Eigen::Index>(model.customers.size());
  const auto n_cols = static_cast<Eigen::Index>(model.performances.size());

  auto load_matrix = [&](const char* key, Eigen::Index rows) {
    auto flat = doc.at(key).get<std::vector<double>>();
    if (flat.size() != static_cast<size_t>(rows * model.k))
      throw DataError(std::string("model file: bad size for ") + key);
    Eigen::MatrixXd m(rows, model.k);
    size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
      for (int d = 0; d < model.k; ++d) m(i, d) = flat[idx++];
    return m;
  };
  model.L = load_matrix("L", n_rows);
  model.R = load_matrix("R", n_cols);

  auto bL = doc.at("bL").get<std::vector<double>>();
  auto bR = doc.at("bR").get<std::vector<double>>();
  if (bL.size() != static_cast<size_t>(n_rows) || bR.size() != static_cast<size_t>(n_cols))
    throw DataError("model file: bias vector size mismatch");
  model.bL = Eigen::Map<const Eigen::VectorXd>(bL.data(), n_rows);
  model.bR = Eigen::Map<const Eigen::VectorXd>(bR.data(), n_cols);

  model.bought = doc.value("bought", std::vector<std::vector<int>>(static_cast<size_t>(n_rows)));
  if (model.bought.size() != static_cast<size_t>(n_rows))
    throw DataError("model file: bought list size mismatch");
  for (const auto& row : model.bought)
    for (int j : row)
      if (j < 0 || j >= n_cols) throw DataError("model file: bought index out of range");

  if (!model.L.allFinite() || !model.R.allFinite() || !model.bL.allFinite() || !model.bR.allFinite())
    throw DataError("model file: non-finite entries");

  model.rebuild_index();
  return model;
}

void save_model(const FactorModel& model, const FitReport& fit, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open model file for writing: " + path);
  out << to_json(model, &fit).dump(2) << '\n';
}

FactorModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  return model_from_json(doc);
}

}  // namespace encore::factorization
