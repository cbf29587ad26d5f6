#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace inflnet::data {

// A calendar month. Stored as a month count so differences are month gaps.
class YearMonth {
 public:
  constexpr YearMonth() = default;
  constexpr YearMonth(int year, int month) : serial_(year * 12 + (month - 1)) {}

  static constexpr YearMonth from_serial(int serial) {
    YearMonth ym;
    ym.serial_ = serial;
    return ym;
  }

  // Accepts "1959-01", "1959-01-01", "1959M01" and the FRED-MD "1/1/1959".
  static YearMonth parse(std::string_view text);

  constexpr int year() const { return serial_ >= 0 ? serial_ / 12 : (serial_ - 11) / 12; }
  constexpr int month() const { return serial_ - year() * 12 + 1; }
  constexpr int serial() const { return serial_; }

  constexpr YearMonth operator+(int months) const { return from_serial(serial_ + months); }
  constexpr YearMonth operator-(int months) const { return from_serial(serial_ - months); }
  constexpr int operator-(YearMonth other) const { return serial_ - other.serial_; }

  constexpr auto operator<=>(const YearMonth&) const = default;

  // "YYYY-MM"
  std::string to_string() const;

 private:
  int serial_ = 0;
};

}  // namespace inflnet::data
