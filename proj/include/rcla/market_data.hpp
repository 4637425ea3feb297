#ifndef RCLA_MARKET_DATA_HPP
#define RCLA_MARKET_DATA_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rcla/error.hpp"
#include "rcla/market_params.hpp"
#include "rcla/rng.hpp"
#include "rcla/year_month.hpp"

namespace rcla {

enum class SeriesKind { total_return_index, cpi_index };

inline std::string_view to_string(SeriesKind kind) {
    return kind == SeriesKind::total_return_index ? "total_return_index" : "cpi_index";
}

/// Monthly index levels. values[k] is the level at the start of month
/// start + k (equivalently, the close of the previous month).
struct MonthlySeries {
    YearMonth start;
    std::vector<double> values;
    SeriesKind kind = SeriesKind::total_return_index;

    std::size_t size() const { return values.size(); }
    YearMonth last() const { return start + static_cast<int>(values.size()) - 1; }
    double at(YearMonth ym) const { return values.at(static_cast<std::size_t>(ym - start)); }

    bool operator==(const MonthlySeries&) const = default;
};

/// Month-by-month growth factors. Entry k describes growth during month
/// start + k: gross_returns[k] = 1 + R, inflation_factors[k] = 1 + pi.
struct AlignedMarket {
    YearMonth start;
    std::vector<double> gross_returns;
    std::vector<double> inflation_factors;

    std::size_t size() const { return gross_returns.size(); }
    YearMonth last() const { return start + static_cast<int>(gross_returns.size()) - 1; }
    MonthWindow window() const { return {start, last()}; }

    /// Sub-market covering months [first, last].
    AlignedMarket slice(YearMonth first, YearMonth last_month) const {
        if (first < start || last_month > last() || last_month < first) {
            throw CoverageError("market covers " + start.to_string() + ".." + last().to_string() +
                                ", requested " + first.to_string() + ".." +
                                last_month.to_string());
        }
        const auto b = static_cast<std::size_t>(first - start);
        const auto e = static_cast<std::size_t>(last_month - start) + 1;
        return {first,
                {gross_returns.begin() + b, gross_returns.begin() + e},
                {inflation_factors.begin() + b, inflation_factors.begin() + e}};
    }

    AlignedMarket slice_from(YearMonth first) const { return slice(first, last()); }
};

namespace detail {

inline std::string row_label(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line);
}

inline std::string format_level(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

} // namespace detail

/// Parses the `month,level` CSV format. `source` is only used in messages.
inline MonthlySeries parse_series(std::istream& in, SeriesKind kind,
                                  std::string_view source = "<stream>") {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) {
        throw ParseError(detail::row_label(source, line_no) + ": missing header `month,level`");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "month,level") {
        throw ParseError(detail::row_label(source, line_no) + ": expected header `month,level`, got `" +
                         line + "`");
    }

    MonthlySeries series;
    series.kind = kind;
    std::optional<YearMonth> previous;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto where = detail::row_label(source, line_no);
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError(where + ": expected 2 fields in `" + line + "`");
        }
        const std::string_view month_text(line.data(), comma);
        const std::string_view level_text(line.data() + comma + 1, line.size() - comma - 1);

        const auto month = YearMonth::parse(month_text);
        if (!month) {
            throw ParseError(where + ": bad month `" + std::string(month_text) + "`");
        }
        double level = 0.0;
        const auto [ptr, ec] =
            std::from_chars(level_text.data(), level_text.data() + level_text.size(), level);
        if (ec != std::errc{} || ptr != level_text.data() + level_text.size() || level_text.empty()) {
            throw ParseError(where + " (" + month->to_string() + "): bad level `" +
                             std::string(level_text) + "`");
        }

        if (previous) {
            if (*month <= *previous) {
                throw ValidationError(where + " (" + month->to_string() + "): month not after " +
                                      previous->to_string());
            }
            if (*month - *previous != 1) {
                throw ValidationError(where + " (" + month->to_string() + "): gap after " +
                                      previous->to_string());
            }
        } else {
            series.start = *month;
        }
        if (!(level > 0.0) || !std::isfinite(level)) {
            throw ValidationError(where + " (" + month->to_string() + "): level must be > 0, got " +
                                  std::string(level_text));
        }
        series.values.push_back(level);
        previous = month;
    }
    if (series.values.empty()) {
        throw ValidationError(std::string(source) + ": no data rows");
    }
    return series;
}

inline MonthlySeries load_series(const std::string& path, SeriesKind kind) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open");
    }
    return parse_series(in, kind, path);
}

/// Writes the CSV format with shortest round-trip level formatting.
inline void write_series(std::ostream& out, const MonthlySeries& series) {
    out << "month,level\n";
    for (std::size_t k = 0; k < series.values.size(); ++k) {
        out << (series.start + static_cast<int>(k)).to_string() << ','
            << detail::format_level(series.values[k]) << '\n';
    }
}

inline std::string series_to_csv(const MonthlySeries& series) {
    std::ostringstream out;
    write_series(out, series);
    return out.str();
}

/// Largest growth window both series support: growth during month M needs
/// the levels keyed M and M + 1.
inline MonthWindow common_window(const MonthlySeries& returns, const MonthlySeries& cpi) {
    const YearMonth first = std::max(returns.start, cpi.start);
    const YearMonth last = std::min(returns.last(), cpi.last()) - 1;
    if (last < first) {
        throw CoverageError("series do not overlap by at least two months");
    }
    return {first, last};
}

/// Growth factors for every month of `window`.
inline AlignedMarket align(const MonthlySeries& returns, const MonthlySeries& cpi, MonthWindow window) {
    if (window.last < window.first) {
        throw CoverageError("empty window " + window.first.to_string() + ".." + window.last.to_string());
    }
    for (const MonthlySeries* s : {&returns, &cpi}) {
        if (window.first < s->start || window.last + 1 > s->last()) {
            throw CoverageError(std::string(to_string(s->kind)) + " series covers " +
                                s->start.to_string() + ".." + s->last().to_string() +
                                "; growth window " + window.first.to_string() + ".." +
                                window.last.to_string() + " needs levels through " +
                                (window.last + 1).to_string());
        }
    }
    AlignedMarket market;
    market.start = window.first;
    const auto n = static_cast<std::size_t>(window.size());
    market.gross_returns.reserve(n);
    market.inflation_factors.reserve(n);
    for (YearMonth ym = window.first; ym <= window.last; ym += 1) {
        market.gross_returns.push_back(returns.at(ym + 1) / returns.at(ym));
        market.inflation_factors.push_back(cpi.at(ym + 1) / cpi.at(ym));
    }
    return market;
}

inline AlignedMarket align(const MonthlySeries& returns, const MonthlySeries& cpi) {
    return align(returns, cpi, common_window(returns, cpi));
}

/// Synthetic real-terms market: lognormal monthly factors with the drift
/// selected by params.drift_mode, inflation factors exactly 1.
inline AlignedMarket synth_gbm(const MarketParams& params, std::size_t n_months, std::uint64_t seed,
                               YearMonth start = YearMonth(2000, 1)) {
    detail::require(n_months >= 1, "n_months must be >= 1");
    params.validate();
    const double nu = params.drift();
    const double mean = (nu - 0.5 * params.sigma * params.sigma) / 12.0;
    const double scale = params.sigma / std::sqrt(12.0);

    AlignedMarket market;
    market.start = start;
    market.gross_returns.reserve(n_months);
    market.inflation_factors.assign(n_months, 1.0);
    SequentialNormals normals(seed, 0);
    for (std::size_t k = 0; k < n_months; ++k) {
        market.gross_returns.push_back(std::exp(mean + scale * normals.next()));
    }
    return market;
}

} // namespace rcla

#endif // RCLA_MARKET_DATA_HPP
