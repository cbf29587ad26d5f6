#include "inflnet/data/calendar.hpp"

#include <charconv>
#include <cstdio>
#include <vector>

#include "inflnet/common.hpp"

namespace inflnet::data {

namespace {

std::vector<int> split_numbers(std::string_view text, char sep) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view piece = text.substr(pos, next - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw ParseError("bad date '" + std::string(text) + "'");
    }
    out.push_back(value);
    pos = next + 1;
  }
  return out;
}

}  // namespace

YearMonth YearMonth::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '"')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '"' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  int year = 0;
  int month = 0;
  if (auto m = text.find('M'); m != std::string_view::npos) {
    auto parts = split_numbers(text.substr(0, m), '-');
    auto rest = split_numbers(text.substr(m + 1), '-');
    if (parts.size() != 1 || rest.size() != 1) throw ParseError("bad date '" + std::string(text) + "'");
    year = parts[0];
    month = rest[0];
  } else if (text.find('/') != std::string_view::npos) {
    auto parts = split_numbers(text, '/');  // m/d/yyyy
    if (parts.size() != 3) throw ParseError("bad date '" + std::string(text) + "'");
    month = parts[0];
    year = parts[2];
  } else {
    auto parts = split_numbers(text, '-');  // yyyy-mm[-dd]
    if (parts.size() < 2 || parts.size() > 3) throw ParseError("bad date '" + std::string(text) + "'");
    year = parts[0];
    month = parts[1];
  }
  if (month < 1 || month > 12) throw ParseError("bad month in date '" + std::string(text) + "'");
  return YearMonth(year, month);
}

std::string YearMonth::to_string() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year(), month());
  return buf;
}

}  // namespace inflnet::data
