#pragma once

// Line-oriented key/value files with one trailing table section, shared by
// the scenario and deployment formats.

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rbc {

/// Shortest round-trip decimal, padded to at least six fractional digits.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

double parse_double(std::string_view text, const std::string& source, std::size_t line);
std::uint64_t parse_u64(std::string_view text, const std::string& source, std::size_t line);

class TextDocument {
 public:
  struct Row {
    std::vector<std::string> cells;
    std::size_t line;
  };

  static TextDocument parse(std::istream& in, const std::string& source);

  bool has(const std::string& key) const { return fields_.count(key) != 0; }
  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  std::uint64_t integer(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;

  const std::string& table_name() const { return table_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::string& source() const { return source_; }
  std::size_t line_of(const std::string& key) const;
  std::size_t last_line() const { return last_line_; }

 private:
  struct Field {
    std::string value;
    std::size_t line;
  };
  const Field& field(const std::string& key) const;

  std::string source_;
  std::map<std::string, Field> fields_;
  std::string table_;
  std::vector<Row> rows_;
  std::size_t last_line_{0};
};

}  // namespace rbc
