#include "rbc/textio.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "rbc/error.hpp"

namespace rbc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
  if (ec != std::errc{}) {
    // very large magnitudes: fall back to scientific, still exact
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
  }
  std::string s(buf.data(), end);
  if (s.find_first_of("infa") != std::string::npos) return s;
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    s += '.';
    dot = s.size() - 1;
  }
  const std::size_t decimals = s.size() - dot - 1;
  if (decimals < 6) s.append(6 - decimals, '0');
  return s;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  std::ostringstream os;
  os << "0x" << std::hex;
  os.width(16);
  os.fill('0');
  os << value;
  return os.str();
}

double parse_double(std::string_view text, const std::string& source, std::size_t line) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(source, line, "expected a number, got '" + std::string(text) + "'");
  return v;
}

std::uint64_t parse_u64(std::string_view text, const std::string& source, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError(source, line, "expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

TextDocument TextDocument::parse(std::istream& in, const std::string& source) {
  TextDocument doc;
  doc.source_ = source;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    doc.last_line_ = line_no;
    if (line.front() == '[') {
      if (line.back() != ']' || !doc.table_.empty())
        throw ParseError(source, line_no, "malformed or repeated table header '" + std::string(line) + "'");
      doc.table_ = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    if (!doc.table_.empty()) {
      doc.rows_.push_back(Row{split_ws(line), line_no});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(source, line_no, "expected 'key = value', got '" + std::string(line) + "'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(source, line_no, "empty key");
    if (doc.fields_.count(key)) throw ParseError(source, line_no, "duplicate field '" + key + "'");
    doc.fields_.emplace(std::move(key), Field{std::move(value), line_no});
  }
  return doc;
}

const TextDocument::Field& TextDocument::field(const std::string& key) const {
  auto it = fields_.find(key);
  if (it == fields_.end()) throw ParseError(source_, last_line_, "missing field '" + key + "'");
  return it->second;
}

const std::string& TextDocument::text(const std::string& key) const { return field(key).value; }

std::size_t TextDocument::line_of(const std::string& key) const { return field(key).line; }

double TextDocument::number(const std::string& key) const {
  const auto& f = field(key);
  try {
    return parse_double(f.value, source_, f.line);
  } catch (const ParseError&) {
    throw ParseError(source_, f.line, "field '" + key + "': expected a number, got '" + f.value + "'");
  }
}

std::uint64_t TextDocument::integer(const std::string& key) const {
  const auto& f = field(key);
  try {
    return parse_u64(f.value, source_, f.line);
  } catch (const ParseError&) {
    throw ParseError(source_, f.line, "field '" + key + "': expected an integer, got '" + f.value + "'");
  }
}

std::vector<double> TextDocument::numbers(const std::string& key) const {
  const auto& f = field(key);
  std::vector<double> out;
  for (const auto& tok : split_ws(f.value)) out.push_back(parse_double(tok, source_, f.line));
  return out;
}

}  // namespace rbc
