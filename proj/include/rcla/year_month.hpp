#ifndef RCLA_YEAR_MONTH_HPP
#define RCLA_YEAR_MONTH_HPP

#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace rcla {

/// Calendar year-month with no day component. Stored as a month count so
/// that arithmetic and ordering are trivial.
class YearMonth {
public:
    constexpr YearMonth() = default;
    constexpr YearMonth(int year, int month) : index_(year * 12 + (month - 1)) {}

    static constexpr YearMonth from_index(int index) {
        YearMonth ym;
        ym.index_ = index;
        return ym;
    }

    /// Parses `YYYY-MM`. Returns nullopt on anything else.
    static std::optional<YearMonth> parse(std::string_view text) {
        if (text.size() != 7 || text[4] != '-') {
            return std::nullopt;
        }
        int year = 0;
        for (int i = 0; i < 4; ++i) {
            if (text[i] < '0' || text[i] > '9') {
                return std::nullopt;
            }
            year = year * 10 + (text[i] - '0');
        }
        if (text[5] < '0' || text[5] > '9' || text[6] < '0' || text[6] > '9') {
            return std::nullopt;
        }
        const int month = (text[5] - '0') * 10 + (text[6] - '0');
        if (month < 1 || month > 12) {
            return std::nullopt;
        }
        return YearMonth(year, month);
    }

    constexpr int year() const { return floor_div(index_, 12); }
    constexpr int month() const { return index_ - 12 * year() + 1; }
    constexpr int index() const { return index_; }

    std::string to_string() const {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04d-%02d", year(), month());
        return buf;
    }

    constexpr YearMonth operator+(int months) const { return from_index(index_ + months); }
    constexpr YearMonth operator-(int months) const { return from_index(index_ - months); }
    constexpr int operator-(YearMonth other) const { return index_ - other.index_; }
    constexpr YearMonth& operator+=(int months) {
        index_ += months;
        return *this;
    }

    constexpr auto operator<=>(const YearMonth&) const = default;

private:
    static constexpr int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

    int index_ = 0;
};

/// Inclusive range of months. When used as a growth window, month k of the
/// window is the month whose growth factor is the k-th entry.
struct MonthWindow {
    YearMonth first;
    YearMonth last;

    constexpr int size() const { return last - first + 1; }
    constexpr bool contains(YearMonth ym) const { return first <= ym && ym <= last; }
};

} // namespace rcla

#endif // RCLA_YEAR_MONTH_HPP
