#ifndef RCLA_SWP_INDEX_HPP
#define RCLA_SWP_INDEX_HPP

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rcla/error.hpp"
#include "rcla/market_data.hpp"
#include "rcla/year_month.hpp"

namespace rcla {

/// Launch parameters of one systematic-withdrawal pseudo-index.
struct SwpConfig {
    YearMonth vintage;
    double rate = 0.07;          ///< annual withdrawal as a fraction of initial_level
    double initial_level = 100.0;

    double monthly_withdrawal_base() const { return initial_level * rate / 12.0; }

    void validate() const {
        detail::require(rate > 0.0 && rate < 1.0, "withdrawal rate must be in (0, 1)");
        detail::require(initial_level > 0.0, "initial level must be positive");
    }
};

/// One vintage's trajectory. levels[k] is the level after k + 1 monthly
/// updates, published at the start of month vintage + k + 1. Once ruined
/// the level stays exactly 0.
struct SwpIndexPath {
    SwpConfig config;
    std::vector<double> levels;
    std::optional<YearMonth> ruin_month;

    YearMonth month_at(std::size_t k) const { return config.vintage + static_cast<int>(k) + 1; }
    YearMonth last_month() const { return month_at(levels.size() - 1); }
    double final_level() const { return levels.empty() ? config.initial_level : levels.back(); }
};

/// One monthly update: grow by the total return, then withdraw the
/// inflation-adjusted amount. Not floored; a result <= 0 means ruin.
inline double step(double level, double gross_return, double monthly_withdrawal_base,
                   double cumulative_inflation) {
    detail::require(level > 0.0, "level must be positive");
    detail::require(gross_return > 0.0, "gross return must be positive");
    detail::require(cumulative_inflation > 0.0, "cumulative inflation must be positive");
    return level * gross_return - monthly_withdrawal_base * cumulative_inflation;
}

/// Runs the index over every month of `market`, which must start at the vintage.
inline SwpIndexPath build_path(const SwpConfig& config, const AlignedMarket& market) {
    config.validate();
    if (market.start != config.vintage) {
        throw CoverageError("market starts " + market.start.to_string() + ", vintage is " +
                            config.vintage.to_string());
    }
    SwpIndexPath path{config, {}, std::nullopt};
    path.levels.reserve(market.size());
    const double base = config.monthly_withdrawal_base();
    double level = config.initial_level;
    double cumulative_inflation = 1.0;
    for (std::size_t k = 0; k < market.size(); ++k) {
        if (path.ruin_month) {
            path.levels.push_back(0.0);
            continue;
        }
        cumulative_inflation *= market.inflation_factors[k];
        level = step(level, market.gross_returns[k], base, cumulative_inflation);
        if (level <= 0.0) {
            path.ruin_month = path.month_at(k);
            level = 0.0;
        }
        path.levels.push_back(level);
    }
    return path;
}

/// Vintage-major matrix: result[v][r] is vintage v at rate r, each run from
/// its vintage to the end of `market`.
inline std::vector<std::vector<SwpIndexPath>> build_family(std::span<const YearMonth> vintages,
                                                           std::span<const double> rates,
                                                           const AlignedMarket& market) {
    std::vector<std::vector<SwpIndexPath>> family;
    family.reserve(vintages.size());
    for (const YearMonth vintage : vintages) {
        const AlignedMarket from_vintage = market.slice_from(vintage);
        std::vector<SwpIndexPath> row;
        row.reserve(rates.size());
        for (const double rate : rates) {
            row.push_back(build_path(SwpConfig{vintage, rate}, from_vintage));
        }
        family.push_back(std::move(row));
    }
    return family;
}

inline void write_path_csv(std::ostream& out, const SwpIndexPath& path) {
    out << "month,level\n";
    char buf[64];
    for (std::size_t k = 0; k < path.levels.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.4f", path.levels[k]);
        out << path.month_at(k).to_string() << ',' << buf << '\n';
    }
}

inline std::string path_to_csv(const SwpIndexPath& path) {
    std::ostringstream out;
    write_path_csv(out, path);
    return out.str();
}

/// `swp_<vintage>_<rate in basis points>.csv`, e.g. swp_1970-01_700.csv.
inline std::string family_file_name(const SwpConfig& config) {
    return "swp_" + config.vintage.to_string() + "_" +
           std::to_string(std::lround(config.rate * 10000.0)) + ".csv";
}

} // namespace rcla

#endif // RCLA_SWP_INDEX_HPP
