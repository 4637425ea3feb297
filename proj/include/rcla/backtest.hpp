#ifndef RCLA_BACKTEST_HPP
#define RCLA_BACKTEST_HPP

#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rcla/market_data.hpp"
#include "rcla/swp_index.hpp"
#include "rcla/year_month.hpp"

namespace rcla {

/// Ruin month per (rate, vintage); empty means no ruin through the horizon.
struct RuinTable {
    std::vector<double> rates;
    std::vector<YearMonth> vintages;
    std::vector<std::vector<std::optional<YearMonth>>> cells; // [rate][vintage]

    const std::optional<YearMonth>& cell(std::size_t rate_index, std::size_t vintage_index) const {
        return cells.at(rate_index).at(vintage_index);
    }
};

/// Historical ruin table. Each vintage runs from its launch month through
/// `horizon_end` (the last month whose growth is applied).
inline RuinTable table1(const AlignedMarket& market, std::span<const YearMonth> vintages,
                        std::span<const double> rates, YearMonth horizon_end) {
    RuinTable table{{rates.begin(), rates.end()}, {vintages.begin(), vintages.end()}, {}};
    table.cells.assign(rates.size(), std::vector<std::optional<YearMonth>>(vintages.size()));
    for (std::size_t v = 0; v < vintages.size(); ++v) {
        const AlignedMarket window = market.slice(vintages[v], horizon_end);
        for (std::size_t r = 0; r < rates.size(); ++r) {
            table.cells[r][v] = build_path(SwpConfig{vintages[v], rates[r]}, window).ruin_month;
        }
    }
    return table;
}

inline RuinTable table1(const AlignedMarket& market, std::span<const YearMonth> vintages,
                        std::span<const double> rates) {
    return table1(market, vintages, rates, market.last());
}

/// One trajectory per vintage at a single rate, each run to the end of `market`.
inline std::vector<SwpIndexPath> figure1_data(const AlignedMarket& market,
                                              std::span<const YearMonth> vintages, double rate) {
    std::vector<SwpIndexPath> paths;
    paths.reserve(vintages.size());
    for (const YearMonth vintage : vintages) {
        paths.push_back(build_path(SwpConfig{vintage, rate}, market.slice_from(vintage)));
    }
    return paths;
}

inline std::string format_rate(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", rate);
    return buf;
}

/// `rate,<vintage>,...` with `YYYY-MM` or empty cells.
inline void write_table_csv(std::ostream& out, const RuinTable& table) {
    out << "rate";
    for (const YearMonth v : table.vintages) {
        out << ',' << v.to_string();
    }
    out << '\n';
    for (std::size_t r = 0; r < table.rates.size(); ++r) {
        out << format_rate(table.rates[r]);
        for (std::size_t v = 0; v < table.vintages.size(); ++v) {
            out << ',';
            if (const auto& ruin = table.cells[r][v]) {
                out << ruin->to_string();
            }
        }
        out << '\n';
    }
}

/// Long format for plotting: `vintage,month,level`, starting with the
/// launch month at the initial level.
inline void write_figure_csv(std::ostream& out, std::span<const SwpIndexPath> paths) {
    out << "vintage,month,level\n";
    char buf[64];
    for (const auto& path : paths) {
        const std::string vintage = path.config.vintage.to_string();
        std::snprintf(buf, sizeof buf, "%.4f", path.config.initial_level);
        out << vintage << ',' << vintage << ',' << buf << '\n';
        for (std::size_t k = 0; k < path.levels.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.4f", path.levels[k]);
            out << vintage << ',' << path.month_at(k).to_string() << ',' << buf << '\n';
        }
    }
}

} // namespace rcla

#endif // RCLA_BACKTEST_HPP
