#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "encore/date.hpp"

namespace encore::ingest {

enum class CustomerType { household, individual, organization };
enum class PriceGroup { regular, subscription, student, other };
enum class Genre { orchestra, chamber, jazz, theater, dance, choral, other };

const char* to_string(CustomerType t);
const char* to_string(PriceGroup g);
const char* to_string(Genre g);

// One ticket-order line.
struct Transaction {
  std::string account_id;
  Date account_created;
  CustomerType customer_type = CustomerType::individual;
  std::string performance_id;
  Date order_date;
  int seats = 1;
  double price_paid = 0.0;
  PriceGroup price_group = PriceGroup::regular;
  std::optional<std::string> promotion_code;
  std::string mode_of_sale;
  std::optional<std::string> postal_code;
};

struct Performance {
  std::string performance_id;
  std::string name;
  Date date;
  std::string venue;
  int capacity = 1;
  Genre genre = Genre::other;
  std::optional<std::string> subscription_series;
  std::optional<std::string> description_path;
  std::optional<std::string> description;  // loaded text, when available
};

struct Diagnostic {
  size_t record = 0;  // 1-based CSV record, header = 1; 0 = not row-specific
  std::string message;
};

struct TransactionParse {
  std::vector<Transaction> transactions;
  std::vector<Diagnostic> diagnostics;
};

struct CatalogParse {
  std::vector<Performance> performances;
  std::vector<Diagnostic> diagnostics;
};

// Parses the transactions table. Well-formed rows become Transactions;
// malformed rows are dropped with a diagnostic. In strict mode the first
// diagnostic aborts with a DataError. A missing required column is always
// a SchemaError.
TransactionParse parse_transactions(std::istream& in, bool strict);

CatalogParse parse_catalog(std::istream& in, bool strict);

// Fills Performance::description from description_path, resolved against
// base_dir. Missing files produce diagnostics, not errors.
void load_descriptions(std::vector<Performance>& catalog,
                       const std::filesystem::path& base_dir,
                       std::vector<Diagnostic>& diagnostics);

struct CustomerInfo {
  Date account_created;  // earliest seen across the account's rows
  CustomerType type = CustomerType::individual;
};

std::map<std::string, CustomerInfo> customer_table(const std::vector<Transaction>& txs);

enum class Cell : uint8_t { not_bought = 0, bought = 1, missing = 2 };

// Customers x performances purchase matrix. Customers are sorted by
// account id; performances keep catalog order. A cell is missing exactly
// when the performance predates the customer's account creation.
struct PurchaseMatrix {
  std::vector<std::string> customers;
  std::vector<std::string> performances;
  std::vector<Cell> cells;  // row-major

  size_t n_customers() const { return customers.size(); }
  size_t n_performances() const { return performances.size(); }
  Cell cell(size_t i, size_t j) const { return cells[i * performances.size() + j]; }
  Cell& cell(size_t i, size_t j) { return cells[i * performances.size() + j]; }
};

PurchaseMatrix build_matrix(const std::vector<Transaction>& txs,
                            const std::vector<Performance>& catalog,
                            bool exclude_subscriptions);

// True for accounts with at least one student-priced purchase or a
// promotion code from the configured student-code set.
std::map<std::string, bool> student_flags(const std::vector<Transaction>& txs,
                                          const std::set<std::string>& student_promo_codes = {});

}  // namespace encore::ingest
