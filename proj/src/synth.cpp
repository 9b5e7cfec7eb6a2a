#include "encore/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "encore/csv.hpp"
#include "encore/errors.hpp"
#include "encore/rng.hpp"
#include "encore/stylometrics.hpp"

namespace encore::synth {

namespace {

using ingest::CustomerType;
using ingest::Genre;
using ingest::Performance;
using ingest::PriceGroup;
using ingest::Transaction;

constexpr int kClusters = 4;

struct VenueSpec {
  const char* name;
  int capacity;
};
constexpr VenueSpec kVenues[] = {{"Grand Auditorium", 3200},
                                 {"Concert Hall", 1200},
                                 {"Recital Hall", 700},
                                 {"Studio Theater", 300}};

constexpr Genre kGenres[] = {Genre::orchestra, Genre::chamber, Genre::jazz, Genre::theater,
                             Genre::dance,     Genre::choral,  Genre::other};
constexpr double kGenreWeights[] = {0.22, 0.14, 0.12, 0.16, 0.09, 0.12, 0.15};

constexpr int kSeasonMonths[] = {1, 2, 3, 4, 9, 10, 11, 12};

// Word banks for synthetic descriptions, split into short and long words so
// the syllable-per-word rate is steerable.
const std::vector<std::string>& bank(stylometrics::PosClass c, bool long_form) {
  using stylometrics::PosClass;
  static const std::vector<std::string> noun_s = {"show", "night", "song", "stage", "sound",
                                                  "crowd", "hall", "light", "tune", "voice"};
  static const std::vector<std::string> noun_l = {"celebration", "orchestra", "performance",
                                                  "tradition",  "ensemble",  "repertoire",
                                                  "festival",   "audience",  "symphony",
                                                  "harmony"};
  static const std::vector<std::string> adj_s = {"bold", "bright", "grand", "rare",
                                                 "fine", "warm",   "sweet", "dark"};
  static const std::vector<std::string> adj_l = {"magnificent", "memorable",     "luminous",
                                                 "passionate",  "extraordinary", "remarkable",
                                                 "elegant",     "radiant"};
  static const std::vector<std::string> verb_s = {"sings", "glows", "soars", "moves",
                                                  "shines", "fills", "swells", "stirs"};
  static const std::vector<std::string> verb_l = {"celebrates", "illuminates", "captivates",
                                                  "resonates",  "electrifies", "mesmerizes"};
  static const std::vector<std::string> pron = {"you", "we", "it", "they"};
  static const std::vector<std::string> adv_s = {"now", "here", "soon", "then"};
  static const std::vector<std::string> adv_l = {"really", "truly", "joyfully", "proudly"};
  static const std::vector<std::string> prep = {"of", "in", "with", "for", "on", "through",
                                                "beneath", "among"};
  static const std::vector<std::string> art = {"the", "a"};

  switch (c) {
    case PosClass::noun: return long_form ? noun_l : noun_s;
    case PosClass::adjective: return long_form ? adj_l : adj_s;
    case PosClass::verb: return long_form ? verb_l : verb_s;
    case PosClass::pronoun: return pron;
    case PosClass::adverb: return long_form ? adv_l : adv_s;
    case PosClass::preposition: return prep;
    default: return art;
  }
}

const std::vector<stylometrics::PosClass>& slot_cycle(bool formal) {
  using stylometrics::PosClass;
  static const std::vector<PosClass> formal_cycle = {
      PosClass::article, PosClass::adjective, PosClass::noun,    PosClass::preposition,
      PosClass::article, PosClass::noun,      PosClass::verb,    PosClass::adjective,
      PosClass::noun,    PosClass::preposition, PosClass::article, PosClass::noun};
  static const std::vector<PosClass> informal_cycle = {
      PosClass::pronoun, PosClass::verb,   PosClass::adverb, PosClass::pronoun,
      PosClass::verb,    PosClass::pronoun, PosClass::adverb, PosClass::verb};
  return formal ? formal_cycle : informal_cycle;
}

std::string pad_number(int value, int width) {
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width)
    digits.insert(0, static_cast<size_t>(width) - digits.size(), '0');
  return digits;
}

void validate(const GeneratorConfig& c) {
  if (c.n_customers < 1) throw ContractError("generator: n_customers must be >= 1");
  if (c.n_performances < 1) throw ContractError("generator: n_performances must be >= 1");
  if (c.latent_dim < 1) throw ContractError("generator: latent_dim must be >= 1");
  if (c.year_begin > c.year_end) throw ContractError("generator: empty year range");
  int n_years = c.year_end - c.year_begin + 1;
  if (c.n_performances < n_years)
    throw ContractError("generator: need at least one performance per year");
  auto check_fraction = [](double v, const char* name) {
    if (v < 0.0 || v > 1.0) throw ContractError(std::string("generator: ") + name + " must be in [0, 1]");
  };
  check_fraction(c.student_fraction, "student_fraction");
  check_fraction(c.single_purchase_target, "single_purchase_target");
  check_fraction(c.subscription_fraction, "subscription_fraction");
  if (c.student_magnitude_scale <= 0.0)
    throw ContractError("generator: student_magnitude_scale must be > 0");
  for (int s = 0; s < 3; ++s) {
    double row = 0.0;
    for (int t = 0; t < 3; ++t) {
      double p = c.true_transition_matrix[s][t];
      if (p < 0.0 || p > 1.0) throw ContractError("generator: transition probabilities must be in [0, 1]");
      row += p;
    }
    if (std::abs(row - 1.0) > 1e-9)
      throw ContractError("generator: transition matrix rows must sum to 1");
  }
  if (c.true_transition_matrix[2][2] != 1.0)
    throw ContractError("generator: dead row must be absorbing");
}

int pick_weighted(SplitMix64& rng, const double* weights, int n) {
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += weights[i];
  double u = rng.uniform() * total;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return n - 1;
}

int sample_transition(SplitMix64& rng, const std::array<double, 3>& row) {
  double u = rng.uniform();
  double acc = 0.0;
  for (int t = 0; t < 3; ++t) {
    acc += row[t];
    if (u < acc) return t;
  }
  return 2;
}

struct Line {
  int customer = 0;
  int performance = 0;
  Date order_date;
  int seats = 1;
  double unit_price = 0.0;
  PriceGroup group = PriceGroup::regular;
  std::string promotion;
};

}  // namespace

Dataset generate(const GeneratorConfig& config) {
  validate(config);
  SplitMix64 rng(config.seed);

  const int n_years = config.year_end - config.year_begin + 1;
  const int k = config.latent_dim;

  // 1. Catalog skeleton.
  Dataset out;
  std::vector<int> perf_year(static_cast<size_t>(config.n_performances));
  for (int j = 0; j < config.n_performances; ++j) {
    Performance p;
    p.performance_id = "P" + pad_number(j + 1, 4);
    int year = config.year_begin + j % n_years;
    perf_year[static_cast<size_t>(j)] = year;
    int month = kSeasonMonths[rng.below(8)];
    int day = 1 + rng.below(28);
    p.date = Date{year, month, day};
    int genre_idx = pick_weighted(rng, kGenreWeights, 7);
    p.genre = kGenres[genre_idx];
    const VenueSpec& venue = kVenues[rng.below(4)];
    p.venue = venue.name;
    p.capacity = venue.capacity;
    p.name = std::string(ingest::to_string(p.genre)) + " Program " + std::to_string(j + 1);
    if (month >= 9 && rng.bernoulli(0.6))
      p.subscription_series = std::string(ingest::to_string(p.genre)) + " Series " + std::to_string(year);
    p.description_path = "descriptions/" + p.performance_id + ".txt";
    out.catalog.push_back(std::move(p));
  }

  // 2. Descriptions, measured readability, planted sold-fraction targets.
  std::vector<double> pct_target(static_cast<size_t>(config.n_performances));
  for (int j = 0; j < config.n_performances; ++j) {
    double grade = config.readability_vertex + rng.uniform(-7.0, 7.0);
    // Split the grade target between vocabulary weight and sentence length.
    // The 1.4 slope is the realized syllables-per-word response of the word
    // banks to long_fraction.
    double long_fraction = 0.1 + 0.8 * (grade - (config.readability_vertex - 7.0)) / 14.0;
    long_fraction = std::clamp(long_fraction, 0.05, 0.95);
    double est_rate = 1.0 + 1.4 * long_fraction;
    double words_per_sentence = std::clamp((grade + 15.59 - 11.8 * est_rate) / 0.39, 4.0, 40.0);

    int n_sentences = 4 + rng.below(7);
    double formal_ratio = rng.uniform(0.3, 0.9);
    std::string text;
    for (int s = 0; s < n_sentences; ++s) {
      bool formal = rng.bernoulli(formal_ratio);
      const auto& cycle = slot_cycle(formal);
      int w_target = std::max(3, static_cast<int>(words_per_sentence) - 2 + rng.below(5));
      for (int w = 0; w < w_target; ++w) {
        bool long_form = rng.bernoulli(long_fraction);
        const auto& words = bank(cycle[static_cast<size_t>(w) % cycle.size()], long_form);
        std::string word = words[static_cast<size_t>(rng.below(static_cast<int>(words.size())))];
        if (w == 0) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
        if (w) text += ' ';
        text += word;
      }
      text += ". ";
    }
    if (!text.empty() && text.back() == ' ') text.pop_back();

    auto doc = stylometrics::tokenize(text);
    double measured = stylometrics::fk_grade(doc);
    double noise = rng.uniform(-0.03, 0.03);
    double delta = measured - config.readability_vertex;
    pct_target[static_cast<size_t>(j)] =
        std::clamp(0.80 - 0.0025 * delta * delta + noise, 0.02, 0.98);

    const std::string& rel = *out.catalog[static_cast<size_t>(j)].description_path;
    out.descriptions[rel] = text;
    out.catalog[static_cast<size_t>(j)].description = text;
  }

  // 3. Cluster directions: coordinate axes first, then the diagonal, so
  // taste groups stay well separated regardless of latent_dim.
  std::vector<Eigen::VectorXd> cluster_dir;
  for (int c = 0; c < kClusters; ++c) {
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(k);
    if (c < k) {
      dir(c) = 1.0;
    } else {
      dir.setOnes();
      dir /= dir.norm();
    }
    cluster_dir.push_back(std::move(dir));
  }

  // Customer roster and planted customer factors.
  PlantedTruth& truth = out.truth;
  truth.L.setZero(config.n_customers, k);
  truth.bL.setZero(config.n_customers);
  truth.transition_matrix = config.true_transition_matrix;
  truth.readability_vertex = config.readability_vertex;
  truth.single_purchase_target = config.single_purchase_target;
  truth.student_fraction = config.student_fraction;
  truth.subscription_fraction = config.subscription_fraction;

  std::vector<CustomerType> cust_type(static_cast<size_t>(config.n_customers));
  std::vector<int> first_year(static_cast<size_t>(config.n_customers));
  std::vector<int> cust_cluster(static_cast<size_t>(config.n_customers));
  truth.student.assign(static_cast<size_t>(config.n_customers), 0);
  truth.single_shot.assign(static_cast<size_t>(config.n_customers), 0);
  std::vector<uint8_t> subscriber(static_cast<size_t>(config.n_customers), 0);

  double p_subscriber_given_multi =
      config.single_purchase_target >= 1.0
          ? 0.0
          : std::min(1.0, config.subscription_fraction / (1.0 - config.single_purchase_target));

  for (int i = 0; i < config.n_customers; ++i) {
    truth.customers.push_back("C" + pad_number(i + 1, 6));
    double u_type = rng.uniform();
    cust_type[static_cast<size_t>(i)] = u_type < 0.40 ? CustomerType::household
                                        : u_type < 0.95 ? CustomerType::individual
                                                        : CustomerType::organization;
    truth.student[static_cast<size_t>(i)] = rng.bernoulli(config.student_fraction) ? 1 : 0;
    truth.single_shot[static_cast<size_t>(i)] = rng.bernoulli(config.single_purchase_target) ? 1 : 0;
    subscriber[static_cast<size_t>(i)] =
        (!truth.single_shot[static_cast<size_t>(i)] && rng.bernoulli(p_subscriber_given_multi)) ? 1 : 0;
    first_year[static_cast<size_t>(i)] = config.year_begin + rng.below(n_years);
    cust_cluster[static_cast<size_t>(i)] = rng.below(kClusters);

    Eigen::VectorXd noise(k);
    for (int d = 0; d < k; ++d) noise(d) = rng.gaussian();
    Eigen::VectorXd dir = cluster_dir[static_cast<size_t>(cust_cluster[static_cast<size_t>(i)])] + 0.15 * noise;
    double magnitude = 0.9 * std::exp(0.25 * rng.gaussian());
    if (truth.student[static_cast<size_t>(i)]) magnitude *= config.student_magnitude_scale;
    truth.L.row(i) = (magnitude / dir.norm()) * dir.transpose();
    truth.bL(i) = 0.1 * rng.gaussian();
  }

  // Planted performance factors; style clusters rotate round-robin so
  // every taste group has material in every year.
  truth.R.setZero(config.n_performances, k);
  truth.bR.setZero(config.n_performances);
  for (int j = 0; j < config.n_performances; ++j) {
    truth.performances.push_back(out.catalog[static_cast<size_t>(j)].performance_id);
    int cluster = j % kClusters;
    Eigen::VectorXd noise(k);
    for (int d = 0; d < k; ++d) noise(d) = rng.gaussian();
    Eigen::VectorXd dir = cluster_dir[static_cast<size_t>(cluster)] + 0.15 * noise;
    double scale = 0.95 + 0.1 * rng.uniform();
    truth.R.row(j) = (scale / dir.norm()) * dir.transpose();
    truth.bR(j) = 0.02 * rng.gaussian();
  }

  // Lifecycle simulation. Sequences start active in the first year;
  // single-shot customers are active in that year only.
  std::vector<std::vector<uint8_t>> active(static_cast<size_t>(config.n_customers));
  for (int i = 0; i < config.n_customers; ++i) {
    auto& years = active[static_cast<size_t>(i)];
    years.assign(static_cast<size_t>(n_years), 0);
    int fy = first_year[static_cast<size_t>(i)] - config.year_begin;
    years[static_cast<size_t>(fy)] = 1;
    if (truth.single_shot[static_cast<size_t>(i)]) continue;
    int state = 0;  // active
    for (int y = fy + 1; y < n_years; ++y) {
      if (state == 2) break;
      state = sample_transition(rng, config.true_transition_matrix[static_cast<size_t>(state)]);
      if (state == 0) years[static_cast<size_t>(y)] = 1;
    }
  }

  // Purchases.
  std::vector<std::vector<int>> shows_in_year(static_cast<size_t>(n_years));
  for (int j = 0; j < config.n_performances; ++j)
    shows_in_year[static_cast<size_t>(perf_year[static_cast<size_t>(j)] - config.year_begin)].push_back(j);

  std::map<std::string, std::vector<int>> series_shows;  // label -> performance indices
  for (int j = 0; j < config.n_performances; ++j) {
    const auto& series = out.catalog[static_cast<size_t>(j)].subscription_series;
    if (series) series_shows[*series].push_back(j);
  }

  std::vector<Line> lines;
  auto draw_order_date = [&](int j, int year) {
    Date show = out.catalog[static_cast<size_t>(j)].date;
    Date candidate = show.plus_days(-(1 + rng.below(90)));
    Date floor{year, 1, 1};
    return candidate < floor ? floor : candidate;
  };
  auto unit_price = [&](PriceGroup g) {
    switch (g) {
      case PriceGroup::student: return 12.0 + rng.below(8);
      case PriceGroup::subscription: return 30.0 + rng.below(10);
      default: return 42.0 + rng.below(18);
    }
  };

  for (int i = 0; i < config.n_customers; ++i) {
    bool student = truth.student[static_cast<size_t>(i)];
    bool first_line = true;
    double p_extra = (student ? config.student_magnitude_scale : 1.0) * 0.9;

    for (int y = 0; y < n_years; ++y) {
      if (!active[static_cast<size_t>(i)][static_cast<size_t>(y)]) continue;
      int year = config.year_begin + y;
      const auto& candidates = shows_in_year[static_cast<size_t>(y)];

      int n_buys = 1;
      if (!truth.single_shot[static_cast<size_t>(i)]) {
        if (rng.bernoulli(p_extra)) ++n_buys;
        if (rng.bernoulli(0.7 * p_extra)) ++n_buys;
        if (rng.bernoulli(0.4 * p_extra)) ++n_buys;
      }
      n_buys = std::min<int>(n_buys, static_cast<int>(candidates.size()));

      // Weighted picks without replacement, sharpened by the planted scores.
      std::vector<int> pool = candidates;
      std::vector<double> weight(pool.size());
      for (size_t t = 0; t < pool.size(); ++t) {
        double s = truth.L.row(i).dot(truth.R.row(pool[t])) + truth.bL(i) + truth.bR(pool[t]);
        weight[t] = std::exp(3.5 * s);
      }
      for (int b = 0; b < n_buys; ++b) {
        double total = std::accumulate(weight.begin(), weight.end(), 0.0);
        double u = rng.uniform() * total;
        size_t pick = 0;
        double acc = 0.0;
        for (size_t t = 0; t < pool.size(); ++t) {
          acc += weight[t];
          if (u < acc) { pick = t; break; }
          pick = t;
        }
        int j = pool[pick];
        pool.erase(pool.begin() + static_cast<long>(pick));
        weight.erase(weight.begin() + static_cast<long>(pick));

        Line line;
        line.customer = i;
        line.performance = j;
        line.order_date = draw_order_date(j, year);
        line.seats = 1 + rng.below(cust_type[static_cast<size_t>(i)] == CustomerType::household ? 4 : 2);
        bool student_price = student && (first_line || rng.bernoulli(0.7));
        line.group = student_price ? PriceGroup::student : PriceGroup::regular;
        line.unit_price = unit_price(line.group);
        if (student_price && rng.bernoulli(0.3)) line.promotion = "STUDENT-RUSH";
        lines.push_back(std::move(line));
        first_line = false;
      }

      // Subscribers pick up one series at the season opening of their
      // first year, when that year offers one.
      if (subscriber[static_cast<size_t>(i)] && year == first_year[static_cast<size_t>(i)]) {
        std::vector<std::string> labels;
        for (const auto& [label, shows] : series_shows)
          if (perf_year[static_cast<size_t>(shows.front())] == year) labels.push_back(label);
        if (!labels.empty()) {
          const std::string& label = labels[static_cast<size_t>(rng.below(static_cast<int>(labels.size())))];
          Date order{year, 5, 15};
          for (int j : series_shows[label]) {
            Line line;
            line.customer = i;
            line.performance = j;
            line.order_date = order;
            line.seats = 1 + rng.below(2);
            line.group = PriceGroup::subscription;
            line.unit_price = unit_price(line.group);
            lines.push_back(std::move(line));
          }
        }
      }
    }
  }

  // Multi-buyers must show at least two distinct order dates.
  {
    std::vector<std::set<long>> dates(static_cast<size_t>(config.n_customers));
    std::vector<int> first_line_of(static_cast<size_t>(config.n_customers), -1);
    for (size_t t = 0; t < lines.size(); ++t) {
      dates[static_cast<size_t>(lines[t].customer)].insert(lines[t].order_date.to_days());
      if (first_line_of[static_cast<size_t>(lines[t].customer)] < 0)
        first_line_of[static_cast<size_t>(lines[t].customer)] = static_cast<int>(t);
    }
    for (int i = 0; i < config.n_customers; ++i) {
      if (truth.single_shot[static_cast<size_t>(i)]) continue;
      if (dates[static_cast<size_t>(i)].size() >= 2) continue;
      const Line& base = lines[static_cast<size_t>(first_line_of[static_cast<size_t>(i)])];
      int y = first_year[static_cast<size_t>(i)] - config.year_begin;
      const auto& candidates = shows_in_year[static_cast<size_t>(y)];
      int j = candidates[static_cast<size_t>(rng.below(static_cast<int>(candidates.size())))];
      Date show = out.catalog[static_cast<size_t>(j)].date;
      // Second date distinct from the first, kept inside the same year.
      Date order = show;
      if (order == base.order_date)
        order = (show.month == 12 && show.day == 31) ? show.plus_days(-1) : show.plus_days(1);
      Line line;
      line.customer = i;
      line.performance = j;
      line.order_date = order;
      line.seats = 1;
      line.group = PriceGroup::regular;
      line.unit_price = unit_price(line.group);
      lines.push_back(std::move(line));
    }
  }

  // Seat top-up so each show's non-subscription sales land on the
  // planted sold-fraction target. Falls back to a filler line (reusing one
  // of the chosen customer's existing order dates) for unsold shows.
  {
    std::vector<std::vector<size_t>> lines_of_show(static_cast<size_t>(config.n_performances));
    for (size_t t = 0; t < lines.size(); ++t)
      if (lines[t].group != PriceGroup::subscription)
        lines_of_show[static_cast<size_t>(lines[t].performance)].push_back(t);

    std::vector<Date> any_date(static_cast<size_t>(config.n_customers));
    std::vector<uint8_t> has_date(static_cast<size_t>(config.n_customers), 0);
    for (const auto& line : lines) {
      if (!has_date[static_cast<size_t>(line.customer)]) {
        any_date[static_cast<size_t>(line.customer)] = line.order_date;
        has_date[static_cast<size_t>(line.customer)] = 1;
      }
    }

    for (int j = 0; j < config.n_performances; ++j) {
      auto& owners = lines_of_show[static_cast<size_t>(j)];
      if (owners.empty()) {
        int who = j % config.n_customers;
        Line line;
        line.customer = who;
        line.performance = j;
        line.order_date = any_date[static_cast<size_t>(who)];
        line.seats = 1;
        line.group = PriceGroup::regular;
        line.unit_price = 42.0;
        lines.push_back(line);
        owners.push_back(lines.size() - 1);
      }
      long target = std::max<long>(1, std::lround(pct_target[static_cast<size_t>(j)] *
                                                  out.catalog[static_cast<size_t>(j)].capacity));
      long current = 0;
      for (size_t t : owners) current += lines[t].seats;
      long delta = target - current;
      size_t idx = 0;
      while (delta > 0) {
        ++lines[owners[idx % owners.size()]].seats;
        ++idx;
        --delta;
      }
      if (delta < 0) {
        // Cannot shrink below one seat per line; any remainder stays.
        long reduce = std::min(-delta, current - static_cast<long>(owners.size()));
        while (reduce > 0) {
          Line& line = lines[owners[idx % owners.size()]];
          if (line.seats > 1) { --line.seats; --reduce; }
          ++idx;
        }
      }
    }
  }

  // Account creation dates, then final assembly.
  std::vector<Date> min_order(static_cast<size_t>(config.n_customers), Date{9999, 12, 31});
  for (const auto& line : lines) {
    auto& cur = min_order[static_cast<size_t>(line.customer)];
    if (line.order_date < cur) cur = line.order_date;
  }
  std::vector<Date> created(static_cast<size_t>(config.n_customers));
  for (int i = 0; i < config.n_customers; ++i)
    created[static_cast<size_t>(i)] = min_order[static_cast<size_t>(i)].plus_days(-rng.below(181));

  out.transactions.reserve(lines.size());
  for (const auto& line : lines) {
    Transaction tx;
    tx.account_id = truth.customers[static_cast<size_t>(line.customer)];
    tx.account_created = created[static_cast<size_t>(line.customer)];
    tx.customer_type = cust_type[static_cast<size_t>(line.customer)];
    tx.performance_id = truth.performances[static_cast<size_t>(line.performance)];
    tx.order_date = line.order_date;
    tx.seats = line.seats;
    tx.price_paid = line.unit_price * line.seats;
    tx.price_group = line.group;
    if (!line.promotion.empty()) tx.promotion_code = line.promotion;
    tx.mode_of_sale = rng.bernoulli(0.7) ? "web" : (rng.bernoulli(0.67) ? "phone" : "box office");
    tx.postal_code = "481" + pad_number(rng.below(100), 2);
    out.transactions.push_back(std::move(tx));
  }
  std::stable_sort(out.transactions.begin(), out.transactions.end(),
                   [](const Transaction& a, const Transaction& b) {
                     if (a.account_id != b.account_id) return a.account_id < b.account_id;
                     if (a.order_date != b.order_date) return a.order_date < b.order_date;
                     return a.performance_id < b.performance_id;
                   });
  return out;
}

PlantedTruth planted_truth(const GeneratorConfig& config) { return generate(config).truth; }

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << content;
}

}  // namespace

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  fs::create_directories(dir / "descriptions");

  {
    std::ofstream out(dir / "transactions.csv", std::ios::binary);
    if (!out) throw DataError("cannot write transactions.csv");
    write_csv_record(out, {"account_id", "account_created", "customer_type", "performance_id",
                           "order_date", "seats", "price_paid", "price_group", "promotion_code",
                           "mode_of_sale", "postal_code"});
    for (const auto& tx : dataset.transactions) {
      write_csv_record(out, {tx.account_id, tx.account_created.to_string(),
                             ingest::to_string(tx.customer_type), tx.performance_id,
                             tx.order_date.to_string(), std::to_string(tx.seats),
                             format_double(tx.price_paid), ingest::to_string(tx.price_group),
                             tx.promotion_code.value_or(""), tx.mode_of_sale,
                             tx.postal_code.value_or("")});
    }
  }
  {
    std::ofstream out(dir / "catalog.csv", std::ios::binary);
    if (!out) throw DataError("cannot write catalog.csv");
    write_csv_record(out, {"performance_id", "name", "date", "venue", "capacity", "genre",
                           "subscription_series", "description_path"});
    for (const auto& p : dataset.catalog) {
      write_csv_record(out, {p.performance_id, p.name, p.date.to_string(), p.venue,
                             std::to_string(p.capacity), ingest::to_string(p.genre),
                             p.subscription_series.value_or(""), p.description_path.value_or("")});
    }
  }
  for (const auto& [rel, text] : dataset.descriptions) write_file(dir / rel, text);
  write_file(dir / "truth.json", truth_to_json(dataset.truth).dump(2) + "\n");
}

nlohmann::json truth_to_json(const PlantedTruth& truth) {
  nlohmann::json doc;
  doc["format"] = "planted-truth-v1";
  doc["readability_vertex"] = truth.readability_vertex;
  doc["single_purchase_target"] = truth.single_purchase_target;
  doc["student_fraction"] = truth.student_fraction;
  doc["subscription_fraction"] = truth.subscription_fraction;
  doc["transition_matrix"] = truth.transition_matrix;
  doc["customers"] = truth.customers;
  doc["performances"] = truth.performances;
  doc["student"] = truth.student;
  doc["single_shot"] = truth.single_shot;

  auto dump_matrix = [](const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      std::vector<double> row;
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  doc["L"] = dump_matrix(truth.L);
  doc["R"] = dump_matrix(truth.R);
  doc["bL"] = std::vector<double>(truth.bL.data(), truth.bL.data() + truth.bL.size());
  doc["bR"] = std::vector<double>(truth.bR.data(), truth.bR.data() + truth.bR.size());
  return doc;
}

PlantedFactorMatrix planted_factor_matrix(uint64_t seed, int n_rows, int n_cols, int k,
                                          double missing_fraction) {
  if (n_rows < 1 || n_cols < 1 || k < 1) throw ContractError("planted_factor_matrix: bad dimensions");
  if (missing_fraction < 0.0 || missing_fraction >= 1.0)
    throw ContractError("planted_factor_matrix: missing_fraction must be in [0, 1)");

  SplitMix64 rng(seed);
  PlantedFactorMatrix out;
  out.L.setZero(n_rows, k);
  out.R.setZero(n_cols, k);
  for (Eigen::Index i = 0; i < n_rows; ++i)
    for (int d = 0; d < k; ++d) out.L(i, d) = rng.uniform(-1.0, 1.0);
  for (Eigen::Index j = 0; j < n_cols; ++j)
    for (int d = 0; d < k; ++d) out.R(j, d) = rng.uniform(-1.0, 1.0);
  out.bL.setZero(n_rows);
  out.bR.setZero(n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i) out.bL(i) = rng.uniform(-0.5, 0.5);
  for (Eigen::Index j = 0; j < n_cols; ++j) out.bR(j) = rng.uniform(-0.5, 0.5);

  out.matrix.values = out.L * out.R.transpose();
  out.matrix.values.colwise() += out.bL;
  out.matrix.values.rowwise() += out.bR.transpose();
  out.matrix.observed.setConstant(n_rows, n_cols, 1);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    out.matrix.row_ids.push_back("r" + std::to_string(i));
    for (Eigen::Index j = 0; j < n_cols; ++j)
      if (missing_fraction > 0.0 && rng.bernoulli(missing_fraction)) out.matrix.observed(i, j) = 0;
  }
  for (Eigen::Index j = 0; j < n_cols; ++j) out.matrix.col_ids.push_back("c" + std::to_string(j));
  return out;
}

}  // namespace encore::synth
