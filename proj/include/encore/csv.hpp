#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace encore {

// RFC-4180 style reader: comma separator, double-quote quoting with "" escapes,
// LF or CRLF record ends, quoted fields may span lines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input. Blank records are skipped.
  std::optional<std::vector<std::string>> next_record();

  // 1-based index of the most recently returned record (header = 1).
  size_t record_number() const { return record_number_; }

 private:
  std::istream& in_;
  size_t record_number_ = 0;
};

// Quotes a field only when it needs quoting.
std::string csv_escape(const std::string& field);

void write_csv_record(std::ostream& out, const std::vector<std::string>& fields);

// Shortest round-trip decimal form of a double (via std::to_chars).
std::string format_double(double v);

}  // namespace encore
