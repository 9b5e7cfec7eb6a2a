// encore - command line front end for the ticketing analytics library.
//
// Exit codes: 0 success, 1 data/pipeline error (diagnostic on stderr),
// 2 usage error. Machine-readable output goes to files or stdout; human
// summaries go to stderr.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "encore/csv.hpp"
#include "encore/errors.hpp"
#include "encore/exports.hpp"
#include "encore/factorization.hpp"
#include "encore/ingest.hpp"
#include "encore/lifecycle.hpp"
#include "encore/reports.hpp"
#include "encore/stylometrics.hpp"
#include "encore/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// ENCORE_LOG=quiet silences progress summaries; errors and data diagnostics
// always print.
bool verbose() {
  const char* level = std::getenv("ENCORE_LOG");
  return !(level && std::string(level) == "quiet");
}

void note(const std::string& message) {
  if (verbose()) std::cerr << message << '\n';
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw encore::DataError("cannot open input file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw encore::DataError("cannot open output file for writing: " + path.string());
  out << content;
}

// Reproducibility sidecar: inputs hash, parameters, version.
class Manifest {
 public:
  Manifest(std::string command) { doc_["command"] = std::move(command); doc_["version"] = kVersion; }

  void input(const fs::path& path) {
    std::string data = read_file(path);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    doc_["inputs"][path.string()] = {{"bytes", data.size()}, {"fnv1a64", hex}};
  }

  template <typename T>
  void param(const std::string& key, const T& value) { doc_["parameters"][key] = value; }

  void output(const std::string& name) { doc_["outputs"].push_back(name); }

  void write(const fs::path& dir) const {
    write_file(dir / "manifest.json", doc_.dump(2) + "\n");
  }

 private:
  json doc_;
};

encore::ingest::TransactionParse load_transactions(const fs::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw encore::DataError("cannot open transactions file: " + path.string());
  return encore::ingest::parse_transactions(in, strict);
}

encore::ingest::CatalogParse load_catalog(const fs::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw encore::DataError("cannot open catalog file: " + path.string());
  return encore::ingest::parse_catalog(in, strict);
}

void report_diagnostics(const char* table, const std::vector<encore::ingest::Diagnostic>& diags) {
  for (const auto& d : diags) {
    std::cerr << table;
    if (d.record) std::cerr << " row " << d.record;
    std::cerr << ": " << d.message << '\n';
  }
}

void write_table(const fs::path& dir, Manifest& manifest, const std::string& stem,
                 const std::string& format, const json& as_json,
                 const std::function<void(std::ostream&)>& as_csv) {
  if (format == "json") {
    write_file(dir / (stem + ".json"), as_json.dump(2) + "\n");
    manifest.output(stem + ".json");
  } else {
    std::ostringstream out;
    as_csv(out);
    write_file(dir / (stem + ".csv"), out.str());
    manifest.output(stem + ".csv");
  }
}

struct CommonArgs {
  std::string transactions;
  std::string catalog;
  std::string out_dir;
  std::string format = "csv";
  bool strict = false;
};

std::array<std::array<double, 3>, 3> parse_transition_matrix(const std::string& text) {
  std::array<std::array<double, 3>, 3> m{};
  std::istringstream rows(text);
  std::string row;
  int s = 0;
  while (std::getline(rows, row, ';')) {
    if (s >= 3) throw encore::ContractError("transition matrix: expected 3 rows");
    std::istringstream cells(row);
    std::string cell;
    int t = 0;
    while (std::getline(cells, cell, ',')) {
      if (t >= 3) throw encore::ContractError("transition matrix: expected 3 entries per row");
      m[s][t] = std::stod(cell);
      ++t;
    }
    if (t != 3) throw encore::ContractError("transition matrix: expected 3 entries per row");
    ++s;
  }
  if (s != 3) throw encore::ContractError("transition matrix: expected 3 rows");
  return m;
}

int run_synth(const encore::synth::GeneratorConfig& config, const std::string& out_dir) {
  auto dataset = encore::synth::generate(config);
  fs::path dir(out_dir);
  encore::synth::write_dataset(dataset, dir);

  Manifest manifest("synth");
  manifest.param("seed", config.seed);
  manifest.param("n_customers", config.n_customers);
  manifest.param("n_performances", config.n_performances);
  manifest.param("latent_dim", config.latent_dim);
  manifest.param("student_fraction", config.student_fraction);
  manifest.param("student_magnitude_scale", config.student_magnitude_scale);
  manifest.param("single_purchase_target", config.single_purchase_target);
  manifest.param("readability_vertex", config.readability_vertex);
  manifest.param("year_begin", config.year_begin);
  manifest.param("year_end", config.year_end);
  manifest.param("subscription_fraction", config.subscription_fraction);
  manifest.param("transition_matrix", config.true_transition_matrix);
  manifest.output("transactions.csv");
  manifest.output("catalog.csv");
  manifest.output("descriptions/");
  manifest.output("truth.json");
  manifest.write(dir);

  note("synth: wrote " + std::to_string(dataset.transactions.size()) + " transactions, " +
       std::to_string(dataset.catalog.size()) + " performances to " + out_dir);
  return 0;
}

int run_ingest(const CommonArgs& args) {
  auto txp = load_transactions(args.transactions, args.strict);
  auto cat = load_catalog(args.catalog, args.strict);
  report_diagnostics("transactions", txp.diagnostics);
  report_diagnostics("catalog", cat.diagnostics);

  auto matrix = encore::ingest::build_matrix(txp.transactions, cat.performances, false);
  long bought = 0, missing = 0;
  for (auto c : matrix.cells) {
    if (c == encore::ingest::Cell::bought) ++bought;
    if (c == encore::ingest::Cell::missing) ++missing;
  }

  json summary;
  summary["transactions"] = txp.transactions.size();
  summary["transaction_diagnostics"] = txp.diagnostics.size();
  summary["performances"] = cat.performances.size();
  summary["catalog_diagnostics"] = cat.diagnostics.size();
  summary["customers"] = matrix.n_customers();
  summary["matrix"] = {{"rows", matrix.n_customers()},
                       {"cols", matrix.n_performances()},
                       {"bought_cells", bought},
                       {"missing_cells", missing}};

  if (!args.out_dir.empty()) {
    fs::path dir(args.out_dir);
    fs::create_directories(dir);
    Manifest manifest("ingest");
    manifest.input(args.transactions);
    manifest.input(args.catalog);
    manifest.param("strict", args.strict);
    write_file(dir / "ingest_summary.json", summary.dump(2) + "\n");
    manifest.output("ingest_summary.json");
    manifest.write(dir);
  } else {
    std::cout << summary.dump(2) << '\n';
  }
  return 0;
}

int run_report(const CommonArgs& args, std::optional<int> year) {
  auto txp = load_transactions(args.transactions, args.strict);
  auto cat = load_catalog(args.catalog, args.strict);
  report_diagnostics("transactions", txp.diagnostics);
  report_diagnostics("catalog", cat.diagnostics);
  const auto& txs = txp.transactions;

  fs::path dir(args.out_dir);
  fs::create_directories(dir);
  Manifest manifest("report");
  manifest.input(args.transactions);
  manifest.input(args.catalog);
  manifest.param("format", args.format);
  manifest.param("strict", args.strict);

  auto activity = encore::reports::activity_durations(txs);
  write_table(dir, manifest, "activity", args.format, encore::exports::activity_json(activity),
              [&](std::ostream& out) { encore::exports::activity_csv(out, activity); });

  auto revenue = encore::reports::revenue_composition(txs);
  write_table(dir, manifest, "revenue", args.format, encore::exports::revenue_json(revenue),
              [&](std::ostream& out) { encore::exports::revenue_csv(out, revenue); });

  std::vector<int> years;
  if (year) {
    years.push_back(*year);
  } else {
    std::set<int> present;
    for (const auto& tx : txs) present.insert(tx.order_date.year);
    years.assign(present.begin(), present.end());
  }
  manifest.param("years", years);
  for (int y : years) {
    for (bool subs : {false, true}) {
      auto heat = encore::reports::purchase_heatmap(txs, y, subs);
      std::string stem = "heatmap_" + std::to_string(y) + (subs ? "_subscription" : "_regular");
      write_table(dir, manifest, stem, args.format, encore::exports::heatmap_json(heat),
                  [&](std::ostream& out) { encore::exports::heatmap_csv(out, heat); });
    }
  }

  auto genres = encore::reports::genre_breakdown(txs, cat.performances);
  write_table(dir, manifest, "genres", args.format, encore::exports::genre_json(genres),
              [&](std::ostream& out) { encore::exports::genre_csv(out, genres); });

  manifest.write(dir);
  note("report: wrote tables to " + args.out_dir);
  return 0;
}

int run_style(const CommonArgs& args, const std::string& descriptions_dir) {
  auto txp = load_transactions(args.transactions, args.strict);
  auto cat = load_catalog(args.catalog, args.strict);
  report_diagnostics("transactions", txp.diagnostics);
  report_diagnostics("catalog", cat.diagnostics);

  std::vector<encore::ingest::Diagnostic> desc_diags;
  encore::ingest::load_descriptions(cat.performances, descriptions_dir, desc_diags);
  report_diagnostics("descriptions", desc_diags);

  auto report = encore::stylometrics::style_report(cat.performances, txp.transactions);
  for (const auto& d : report.diagnostics) std::cerr << "style: " << d << '\n';

  fs::path dir(args.out_dir);
  fs::create_directories(dir);
  Manifest manifest("style");
  manifest.input(args.transactions);
  manifest.input(args.catalog);
  manifest.param("descriptions", descriptions_dir);
  manifest.param("format", args.format);

  // CSV carries the per-show records; the fits always ship as JSON.
  write_table(dir, manifest, "style", args.format, encore::exports::style_json(report),
              [&](std::ostream& out) { encore::exports::style_csv(out, report); });
  if (args.format != "json") {
    write_file(dir / "style_fits.json", encore::exports::style_json(report).dump(2) + "\n");
    manifest.output("style_fits.json");
  }
  manifest.write(dir);
  note("style: wrote report for " + std::to_string(report.records.size()) + " performances");
  return 0;
}

int run_train(const CommonArgs& args, const encore::factorization::AlsOptions& options,
              bool exclude_subscriptions) {
  auto txp = load_transactions(args.transactions, args.strict);
  auto cat = load_catalog(args.catalog, args.strict);
  report_diagnostics("transactions", txp.diagnostics);
  report_diagnostics("catalog", cat.diagnostics);

  auto matrix = encore::ingest::build_matrix(txp.transactions, cat.performances, exclude_subscriptions);
  auto [model, fit] = encore::factorization::als_fit(matrix, options);

  fs::path dir(args.out_dir);
  fs::create_directories(dir);
  Manifest manifest("train");
  manifest.input(args.transactions);
  manifest.input(args.catalog);
  manifest.param("k", options.k);
  manifest.param("lambda", options.lambda);
  manifest.param("seed", options.seed);
  manifest.param("max_iters", options.max_iters);
  manifest.param("tol", options.tol);
  manifest.param("exclude_subscriptions", exclude_subscriptions);

  encore::factorization::save_model(model, fit, (dir / "model.json").string());
  manifest.output("model.json");

  json fit_doc = {{"iterations", fit.iterations},
                  {"converged", fit.converged},
                  {"observed_rmse", fit.observed_rmse},
                  {"final_objective", fit.objective_trajectory.back()},
                  {"objective_trajectory", fit.objective_trajectory}};
  write_file(dir / "fit_report.json", fit_doc.dump(2) + "\n");
  manifest.output("fit_report.json");
  manifest.write(dir);

  note("train: " + std::to_string(fit.iterations) + " iterations, converged=" +
       (fit.converged ? "yes" : "no") + ", observed RMSE " + encore::format_double(fit.observed_rmse));
  return 0;
}

int run_recommend(const std::string& model_path, const std::string& customer, int n,
                  const std::string& out_dir) {
  auto model = encore::factorization::load_model(model_path);
  auto recs = encore::factorization::recommend_top_k(model, customer, model.performances, n);

  std::ostringstream out;
  out << "performance_id,score\n";
  for (const auto& [id, score] : recs) out << id << ',' << encore::format_double(score) << '\n';

  if (!out_dir.empty()) {
    fs::path dir(out_dir);
    fs::create_directories(dir);
    Manifest manifest("recommend");
    manifest.input(model_path);
    manifest.param("customer", customer);
    manifest.param("n", n);
    write_file(dir / "recommendations.csv", out.str());
    manifest.output("recommendations.csv");
    manifest.write(dir);
  } else {
    std::cout << out.str();
  }
  return 0;
}

int run_similar(const std::string& model_path, const std::string& a, const std::string& b,
                const std::string& out_dir) {
  auto model = encore::factorization::load_model(model_path);
  double cosine = encore::factorization::performance_similarity(model, a, b);
  if (!out_dir.empty()) {
    fs::path dir(out_dir);
    fs::create_directories(dir);
    Manifest manifest("similar");
    manifest.input(model_path);
    manifest.param("a", a);
    manifest.param("b", b);
    json doc = {{"a", a}, {"b", b}, {"cosine", cosine}};
    write_file(dir / "similarity.json", doc.dump(2) + "\n");
    manifest.output("similarity.json");
    manifest.write(dir);
  } else {
    std::cout << encore::format_double(cosine) << '\n';
  }
  return 0;
}

int run_embed(const std::string& model_path, const CommonArgs& args, int dims) {
  auto model = encore::factorization::load_model(model_path);
  std::map<std::string, bool> students;
  std::map<std::string, std::string> groups;
  if (!args.transactions.empty()) {
    auto txp = load_transactions(args.transactions, args.strict);
    students = encore::ingest::student_flags(txp.transactions);
  }
  if (!args.catalog.empty()) {
    auto cat = load_catalog(args.catalog, args.strict);
    for (const auto& p : cat.performances)
      if (p.subscription_series) groups[p.performance_id] = *p.subscription_series;
  }

  auto rows = encore::factorization::embedding_export(model, dims, students, groups);

  fs::path dir(args.out_dir);
  fs::create_directories(dir);
  Manifest manifest("embed");
  manifest.input(model_path);
  if (!args.transactions.empty()) manifest.input(args.transactions);
  if (!args.catalog.empty()) manifest.input(args.catalog);
  manifest.param("dims", dims);
  manifest.param("format", args.format);
  write_table(dir, manifest, "embedding", args.format, encore::exports::embedding_json(rows),
              [&](std::ostream& out) { encore::exports::embedding_csv(out, rows); });
  manifest.write(dir);
  note("embed: wrote " + std::to_string(rows.size()) + " rows");
  return 0;
}

int run_lifecycle(const CommonArgs& args, std::optional<int> year_begin,
                  std::optional<int> year_end, int season_start_month) {
  auto txp = load_transactions(args.transactions, args.strict);
  report_diagnostics("transactions", txp.diagnostics);
  if (txp.transactions.empty()) throw encore::DataError("lifecycle: no transactions");

  int lo = year_begin.value_or(0), hi = year_end.value_or(0);
  if (!year_begin || !year_end) {
    std::set<int> years;
    for (const auto& tx : txp.transactions) years.insert(tx.order_date.year);
    if (!year_begin) lo = *years.begin();
    if (!year_end) hi = *years.rbegin();
  }

  auto assigned = encore::lifecycle::assign_states(txp.transactions, lo, hi, season_start_month);
  auto model = encore::lifecycle::fit_transitions(assigned.sequences);
  auto churn = encore::lifecycle::churn_summary(model, assigned.sequences);

  fs::path dir(args.out_dir);
  fs::create_directories(dir);
  Manifest manifest("lifecycle");
  manifest.input(args.transactions);
  manifest.param("year_begin", lo);
  manifest.param("year_end", hi);
  manifest.param("season_start_month", season_start_month);
  manifest.param("format", args.format);

  write_table(dir, manifest, "transitions", args.format,
              encore::exports::lifecycle_json(model, churn, assigned.resurrections),
              [&](std::ostream& out) { encore::exports::transitions_csv(out, model); });
  if (args.format != "json") {
    write_file(dir / "lifecycle.json",
               encore::exports::lifecycle_json(model, churn, assigned.resurrections).dump(2) + "\n");
    manifest.output("lifecycle.json");
  }
  {
    std::ostringstream out;
    encore::exports::sequences_csv(out, assigned.sequences);
    write_file(dir / "sequences.csv", out.str());
    manifest.output("sequences.csv");
  }
  manifest.write(dir);
  note("lifecycle: " + std::to_string(assigned.sequences.size()) + " sequences, " +
       std::to_string(assigned.resurrections) + " resurrections");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"encore - performing-arts ticketing analytics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset with planted truth");
  encore::synth::GeneratorConfig config;
  std::string synth_out = "synth_out";
  std::string transition_text;
  synth_cmd->add_option("--out", synth_out, "output directory");
  synth_cmd->add_option("--seed", config.seed, "generator seed");
  synth_cmd->add_option("--customers", config.n_customers, "number of customers");
  synth_cmd->add_option("--performances", config.n_performances, "number of performances");
  synth_cmd->add_option("--latent-dim", config.latent_dim, "planted latent dimension");
  synth_cmd->add_option("--student-fraction", config.student_fraction, "student share");
  synth_cmd->add_option("--student-scale", config.student_magnitude_scale,
                        "student purchase-propensity scale");
  synth_cmd->add_option("--single-purchase-target", config.single_purchase_target,
                        "share of one-time customers");
  synth_cmd->add_option("--readability-vertex", config.readability_vertex,
                        "planted optimum of the sales-vs-readability curve");
  synth_cmd->add_option("--year-begin", config.year_begin, "first season year");
  synth_cmd->add_option("--year-end", config.year_end, "last season year");
  synth_cmd->add_option("--subscription-fraction", config.subscription_fraction,
                        "share of customers holding subscriptions");
  synth_cmd->add_option("--transition", transition_text,
                        "transition matrix, rows ; separated, entries , separated");

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "parse and validate the input tables");
  CommonArgs ingest_args;
  ingest_cmd->add_option("--transactions", ingest_args.transactions, "transactions CSV")->required();
  ingest_cmd->add_option("--catalog", ingest_args.catalog, "catalog CSV")->required();
  ingest_cmd->add_option("--out", ingest_args.out_dir, "output directory (default: stdout)");
  ingest_cmd->add_flag("--strict", ingest_args.strict, "abort on the first diagnostic");

  // report
  auto* report_cmd = app.add_subcommand("report", "descriptive statistics tables");
  CommonArgs report_args;
  std::optional<int> report_year;
  report_cmd->add_option("--transactions", report_args.transactions)->required();
  report_cmd->add_option("--catalog", report_args.catalog)->required();
  report_cmd->add_option("--out", report_args.out_dir)->required();
  report_cmd->add_option("--format", report_args.format)->check(CLI::IsMember({"csv", "json"}));
  report_cmd->add_option("--year", report_year, "heatmap year (default: every year present)");
  report_cmd->add_flag("--strict", report_args.strict);

  // style
  auto* style_cmd = app.add_subcommand("style", "description stylometrics and sales fits");
  CommonArgs style_args;
  std::string descriptions_dir;
  style_cmd->add_option("--transactions", style_args.transactions)->required();
  style_cmd->add_option("--catalog", style_args.catalog)->required();
  style_cmd->add_option("--descriptions", descriptions_dir, "description text directory")->required();
  style_cmd->add_option("--out", style_args.out_dir)->required();
  style_cmd->add_option("--format", style_args.format)->check(CLI::IsMember({"csv", "json"}));
  style_cmd->add_flag("--strict", style_args.strict);

  // train
  auto* train_cmd = app.add_subcommand("train", "fit the purchase-matrix factor model");
  CommonArgs train_args;
  encore::factorization::AlsOptions als;
  bool exclude_subscriptions = false;
  train_cmd->add_option("--transactions", train_args.transactions)->required();
  train_cmd->add_option("--catalog", train_args.catalog)->required();
  train_cmd->add_option("--out", train_args.out_dir)->required();
  train_cmd->add_option("--k", als.k, "latent dimension");
  train_cmd->add_option("--lambda", als.lambda, "regularization weight");
  train_cmd->add_option("--seed", als.seed, "initialization seed");
  train_cmd->add_option("--max-iters", als.max_iters, "iteration cap");
  train_cmd->add_option("--tol", als.tol, "relative objective tolerance");
  train_cmd->add_flag("--exclude-subscriptions", exclude_subscriptions,
                      "drop subscription purchases from the matrix");
  train_cmd->add_flag("--strict", train_args.strict);

  // recommend
  auto* rec_cmd = app.add_subcommand("recommend", "top-n unbought performances for a customer");
  std::string rec_model, rec_customer, rec_out;
  int rec_n = 5;
  rec_cmd->add_option("--model", rec_model, "model.json path")->required();
  rec_cmd->add_option("--customer", rec_customer)->required();
  rec_cmd->add_option("--n", rec_n, "list length");
  rec_cmd->add_option("--out", rec_out, "output directory (default: stdout)");

  // similar
  auto* sim_cmd = app.add_subcommand("similar", "cosine similarity of two performances");
  std::string sim_model, sim_a, sim_b, sim_out;
  sim_cmd->add_option("--model", sim_model)->required();
  sim_cmd->add_option("--a", sim_a)->required();
  sim_cmd->add_option("--b", sim_b)->required();
  sim_cmd->add_option("--out", sim_out, "output directory (default: stdout)");

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "latent-space coordinates for plotting");
  CommonArgs embed_args;
  std::string embed_model;
  int embed_dims = 3;
  embed_cmd->add_option("--model", embed_model)->required();
  embed_cmd->add_option("--out", embed_args.out_dir)->required();
  embed_cmd->add_option("--dims", embed_dims, "projection dimensions");
  embed_cmd->add_option("--transactions", embed_args.transactions,
                        "used to mark student customers");
  embed_cmd->add_option("--catalog", embed_args.catalog, "used to group performances by series");
  embed_cmd->add_option("--format", embed_args.format)->check(CLI::IsMember({"csv", "json"}));

  // lifecycle
  auto* life_cmd = app.add_subcommand("lifecycle", "annual state model and churn summary");
  CommonArgs life_args;
  std::optional<int> life_begin, life_end;
  int season_start_month = 1;
  life_cmd->add_option("--transactions", life_args.transactions)->required();
  life_cmd->add_option("--out", life_args.out_dir)->required();
  life_cmd->add_option("--year-begin", life_begin);
  life_cmd->add_option("--year-end", life_end);
  life_cmd->add_option("--season-start-month", season_start_month,
                       "fiscal year start month (1 = calendar years)");
  life_cmd->add_option("--format", life_args.format)->check(CLI::IsMember({"csv", "json"}));
  life_cmd->add_flag("--strict", life_args.strict);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth_cmd->parsed()) {
      if (!transition_text.empty())
        config.true_transition_matrix = parse_transition_matrix(transition_text);
      return run_synth(config, synth_out);
    }
    if (ingest_cmd->parsed()) return run_ingest(ingest_args);
    if (report_cmd->parsed()) return run_report(report_args, report_year);
    if (style_cmd->parsed()) return run_style(style_args, descriptions_dir);
    if (train_cmd->parsed()) return run_train(train_args, als, exclude_subscriptions);
    if (rec_cmd->parsed()) return run_recommend(rec_model, rec_customer, rec_n, rec_out);
    if (sim_cmd->parsed()) return run_similar(sim_model, sim_a, sim_b, sim_out);
    if (embed_cmd->parsed()) return run_embed(embed_model, embed_args, embed_dims);
    if (life_cmd->parsed()) return run_lifecycle(life_args, life_begin, life_end, season_start_month);
  } catch (const encore::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
