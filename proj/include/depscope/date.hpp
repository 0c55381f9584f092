#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace depscope {

// Calendar date with day precision. All durations in the toolkit are whole
// days.
class Date {
 public:
  Date() = default;
  explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  // Strict YYYY-MM-DD; returns nullopt on any deviation or impossible date.
  static std::optional<Date> parse(std::string_view text);
  static Date today();

  std::string to_string() const;
  std::chrono::sys_days as_sys_days() const { return days_; }

  Date plus_days(std::int64_t n) const;
  // Signed number of days from `earlier` to *this.
  std::int64_t days_since(const Date& earlier) const;

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

}  // namespace depscope
