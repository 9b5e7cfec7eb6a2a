#include "encore/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "encore/csv.hpp"
#include "encore/errors.hpp"

namespace encore::ingest {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<int> parse_int(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_decimal(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<CustomerType> parse_customer_type(const std::string& s) {
  std::string t = lower(s);
  if (t == "household") return CustomerType::household;
  if (t == "individual") return CustomerType::individual;
  if (t == "organization") return CustomerType::organization;
  return std::nullopt;
}

PriceGroup parse_price_group(const std::string& s) {
  std::string t = lower(s);
  if (t == "regular") return PriceGroup::regular;
  if (t == "subscription") return PriceGroup::subscription;
  if (t == "student") return PriceGroup::student;
  return PriceGroup::other;  // pass-through bucket
}

Genre parse_genre(const std::string& s) {
  std::string t = lower(s);
  if (t == "orchestra") return Genre::orchestra;
  if (t == "chamber") return Genre::chamber;
  if (t == "jazz") return Genre::jazz;
  if (t == "theater") return Genre::theater;
  if (t == "dance") return Genre::dance;
  if (t == "choral") return Genre::choral;
  return Genre::other;
}

// Maps header names to column indices; throws SchemaError on a missing column.
class HeaderIndex {
 public:
  HeaderIndex(const std::vector<std::string>& header, const std::vector<std::string>& required,
              const char* table_name) {
    for (size_t i = 0; i < header.size(); ++i) index_[header[i]] = i;
    for (const auto& name : required) {
      if (!index_.count(name))
        throw SchemaError(std::string(table_name) + ": missing required column '" + name + "'");
    }
  }

  const std::string& field(const std::vector<std::string>& record, const std::string& name) const {
    static const std::string empty;
    size_t idx = index_.at(name);
    return idx < record.size() ? record[idx] : empty;
  }

 private:
  std::unordered_map<std::string, size_t> index_;
};

std::optional<std::string> optional_field(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

const char* to_string(CustomerType t) {
  switch (t) {
    case CustomerType::household: return "household";
    case CustomerType::individual: return "individual";
    case CustomerType::organization: return "organization";
  }
  return "?";
}

const char* to_string(PriceGroup g) {
  switch (g) {
    case PriceGroup::regular: return "regular";
    case PriceGroup::subscription: return "subscription";
    case PriceGroup::student: return "student";
    case PriceGroup::other: return "other";
  }
  return "?";
}

const char* to_string(Genre g) {
  switch (g) {
    case Genre::orchestra: return "Orchestra";
    case Genre::chamber: return "Chamber";
    case Genre::jazz: return "Jazz";
    case Genre::theater: return "Theater";
    case Genre::dance: return "Dance";
    case Genre::choral: return "Choral";
    case Genre::other: return "Other";
  }
  return "?";
}

TransactionParse parse_transactions(std::istream& in, bool strict) {
  static const std::vector<std::string> kColumns = {
      "account_id", "account_created", "customer_type", "performance_id",
      "order_date",  "seats",           "price_paid",    "price_group",
      "promotion_code", "mode_of_sale", "postal_code"};

  CsvReader reader(in);
  auto header = reader.next_record();
  if (!header) throw SchemaError("transactions: empty input, no header record");
  HeaderIndex cols(*header, kColumns, "transactions");

  TransactionParse out;
  auto diagnose = [&](size_t record, const std::string& msg) {
    if (strict) throw DataError("transactions row " + std::to_string(record) + ": " + msg);
    out.diagnostics.push_back({record, msg});
  };

  while (auto rec = reader.next_record()) {
    size_t row = reader.record_number();
    const auto& r = *rec;

    Transaction tx;
    tx.account_id = cols.field(r, "account_id");
    if (tx.account_id.empty()) { diagnose(row, "empty account_id"); continue; }

    auto created = Date::parse(cols.field(r, "account_created"));
    if (!created) { diagnose(row, "unparseable account_created date"); continue; }
    tx.account_created = *created;

    auto ctype = parse_customer_type(cols.field(r, "customer_type"));
    if (!ctype) { diagnose(row, "unknown customer_type '" + cols.field(r, "customer_type") + "'"); continue; }
    tx.customer_type = *ctype;

    tx.performance_id = cols.field(r, "performance_id");
    if (tx.performance_id.empty()) { diagnose(row, "empty performance_id"); continue; }

    auto ordered = Date::parse(cols.field(r, "order_date"));
    if (!ordered) { diagnose(row, "unparseable order_date"); continue; }
    tx.order_date = *ordered;

    auto seats = parse_int(cols.field(r, "seats"));
    if (!seats) { diagnose(row, "unparseable seats"); continue; }
    if (*seats < 1) { diagnose(row, "seats must be >= 1"); continue; }
    tx.seats = *seats;

    auto price = parse_decimal(cols.field(r, "price_paid"));
    if (!price) { diagnose(row, "unparseable price_paid"); continue; }
    if (*price < 0) { diagnose(row, "price_paid must be >= 0"); continue; }
    tx.price_paid = *price;

    tx.price_group = parse_price_group(cols.field(r, "price_group"));
    tx.promotion_code = optional_field(cols.field(r, "promotion_code"));
    tx.mode_of_sale = cols.field(r, "mode_of_sale");
    tx.postal_code = optional_field(cols.field(r, "postal_code"));

    if (tx.order_date < tx.account_created) {
      diagnose(row, "order precedes account creation");
      continue;
    }

    out.transactions.push_back(std::move(tx));
  }
  return out;
}

CatalogParse parse_catalog(std::istream& in, bool strict) {
  static const std::vector<std::string> kColumns = {
      "performance_id", "name", "date", "venue", "capacity", "genre",
      "subscription_series", "description_path"};

  CsvReader reader(in);
  auto header = reader.next_record();
  if (!header) throw SchemaError("catalog: empty input, no header record");
  HeaderIndex cols(*header, kColumns, "catalog");

  CatalogParse out;
  std::set<std::string> seen;
  auto diagnose = [&](size_t record, const std::string& msg) {
    if (strict) throw DataError("catalog row " + std::to_string(record) + ": " + msg);
    out.diagnostics.push_back({record, msg});
  };

  while (auto rec = reader.next_record()) {
    size_t row = reader.record_number();
    const auto& r = *rec;

    Performance p;
    p.performance_id = cols.field(r, "performance_id");
    if (p.performance_id.empty()) { diagnose(row, "empty performance_id"); continue; }
    if (!seen.insert(p.performance_id).second) {
      diagnose(row, "duplicate performance_id '" + p.performance_id + "'");
      continue;
    }

    p.name = cols.field(r, "name");

    auto date = Date::parse(cols.field(r, "date"));
    if (!date) { diagnose(row, "unparseable date"); continue; }
    p.date = *date;

    p.venue = cols.field(r, "venue");

    auto cap = parse_int(cols.field(r, "capacity"));
    if (!cap) { diagnose(row, "unparseable capacity"); continue; }
    if (*cap < 1) { diagnose(row, "capacity must be >= 1"); continue; }
    p.capacity = *cap;

    p.genre = parse_genre(cols.field(r, "genre"));
    p.subscription_series = optional_field(cols.field(r, "subscription_series"));
    p.description_path = optional_field(cols.field(r, "description_path"));

    out.performances.push_back(std::move(p));
  }
  return out;
}

void load_descriptions(std::vector<Performance>& catalog,
                       const std::filesystem::path& base_dir,
                       std::vector<Diagnostic>& diagnostics) {
  for (auto& p : catalog) {
    if (!p.description_path) continue;
    std::filesystem::path path = base_dir / *p.description_path;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      diagnostics.push_back({0, "description file not found: " + path.string()});
      continue;
    }
    std::ostringstream text;
    text << in.rdbuf();
    p.description = text.str();
  }
}

std::map<std::string, CustomerInfo> customer_table(const std::vector<Transaction>& txs) {
  std::map<std::string, CustomerInfo> table;
  for (const auto& tx : txs) {
    auto it = table.find(tx.account_id);
    if (it == table.end()) {
      table.emplace(tx.account_id, CustomerInfo{tx.account_created, tx.customer_type});
    } else if (tx.account_created < it->second.account_created) {
      it->second.account_created = tx.account_created;
    }
  }
  return table;
}

PurchaseMatrix build_matrix(const std::vector<Transaction>& txs,
                            const std::vector<Performance>& catalog,
                            bool exclude_subscriptions) {
  PurchaseMatrix m;

  std::unordered_map<std::string, size_t> perf_index;
  m.performances.reserve(catalog.size());
  for (const auto& p : catalog) {
    if (!perf_index.emplace(p.performance_id, m.performances.size()).second)
      throw DataError("catalog has duplicate performance_id '" + p.performance_id + "'");
    m.performances.push_back(p.performance_id);
  }

  auto customers = customer_table(txs);
  m.customers.reserve(customers.size());
  for (const auto& [id, info] : customers) m.customers.push_back(id);

  std::unordered_map<std::string, size_t> cust_index;
  for (size_t i = 0; i < m.customers.size(); ++i) cust_index[m.customers[i]] = i;

  m.cells.assign(m.customers.size() * m.performances.size(), Cell::not_bought);

  // Missing mask first: strictly earlier performances are unobservable.
  for (size_t i = 0; i < m.customers.size(); ++i) {
    const Date created = customers.at(m.customers[i]).account_created;
    for (size_t j = 0; j < catalog.size(); ++j) {
      if (catalog[j].date < created) m.cell(i, j) = Cell::missing;
    }
  }

  for (const auto& tx : txs) {
    auto pit = perf_index.find(tx.performance_id);
    if (pit == perf_index.end())
      throw DataError("transaction references unknown performance_id '" + tx.performance_id + "'");
    if (exclude_subscriptions && tx.price_group == PriceGroup::subscription) continue;
    size_t i = cust_index.at(tx.account_id);
    size_t j = pit->second;
    if (m.cell(i, j) != Cell::missing) m.cell(i, j) = Cell::bought;
  }
  return m;
}

std::map<std::string, bool> student_flags(const std::vector<Transaction>& txs,
                                          const std::set<std::string>& student_promo_codes) {
  std::map<std::string, bool> flags;
  for (const auto& tx : txs) {
    bool student = tx.price_group == PriceGroup::student ||
                   (tx.promotion_code && student_promo_codes.count(*tx.promotion_code));
    auto [it, inserted] = flags.emplace(tx.account_id, student);
    if (!inserted) it->second = it->second || student;
  }
  return flags;
}

}  // namespace encore::ingest
