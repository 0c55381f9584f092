#include "depscope/date.hpp"

#include <cstdio>

namespace depscope {

using namespace std::chrono;

Date::Date(int y, unsigned m, unsigned d)
    : days_(year_month_day{year{y}, month{m}, day{d}}) {}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  auto y = digits(0, 4);
  auto m = digits(5, 2);
  auto d = digits(8, 2);
  if (!y || !m || !d) return std::nullopt;
  year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)},
                     day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{sys_days{ymd}};
}

Date Date::today() { return Date{floor<days>(system_clock::now())}; }

std::string Date::to_string() const {
  year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

Date Date::plus_days(std::int64_t n) const { return Date{days_ + days{n}}; }

std::int64_t Date::days_since(const Date& earlier) const {
  return (days_ - earlier.days_).count();
}

}  // namespace depscope
