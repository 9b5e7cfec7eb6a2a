#include "encore/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace encore {

std::optional<std::vector<std::string>> CsvReader::next_record() {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool saw_any = false;

  int ci;
  while ((ci = in_.get()) != std::istream::traits_type::eof()) {
    char c = static_cast<char>(ci);
    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        saw_any = true;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        saw_any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (!saw_any && field.empty() && fields.empty()) continue;  // skip blank line
        fields.push_back(std::move(field));
        ++record_number_;
        return fields;
      default:
        field.push_back(c);
        saw_any = true;
        break;
    }
  }
  if (!saw_any && fields.empty()) return std::nullopt;
  fields.push_back(std::move(field));
  ++record_number_;
  return fields;
}

std::string csv_escape(const std::string& field) {
  bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_record(std::ostream& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << csv_escape(fields[i]);
  }
  out.put('\n');
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace encore
