#ifndef RCLA_PRICING_TYPES_HPP
#define RCLA_PRICING_TYPES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rcla/error.hpp"
#include "rcla/market_params.hpp"
#include "rcla/mortality.hpp"

namespace rcla {

/// Pays rate * notional per year (real) for life, starting when the
/// withdrawal-adjusted wealth diffusion started at `notional` first hits 0.
struct RclaContract {
    double purchase_age = 65.0;
    double rate = 0.05;
    double notional = 100000.0;

    double annual_income() const { return rate * notional; }

    /// Notional measured in years of income; infinite when there is no income.
    double normalized_wealth() const { return notional / annual_income(); }

    void validate() const {
        // rate == 0 is accepted: no withdrawals, no ruin, zero value.
        detail::require(rate >= 0.0 && rate < 1.0, "rate must be in [0, 1)");
        detail::require(notional > 0.0, "notional must be positive");
        detail::require(purchase_age >= 0.0, "purchase age must be >= 0");
    }
};

enum class Engine { mc, pde, closed_form };

inline std::string_view to_string(Engine engine) {
    switch (engine) {
    case Engine::mc:
        return "mc";
    case Engine::pde:
        return "pde";
    case Engine::closed_form:
        return "closed_form";
    }
    return "?";
}

inline std::optional<Engine> parse_engine(std::string_view text) {
    if (text == "mc") {
        return Engine::mc;
    }
    if (text == "pde") {
        return Engine::pde;
    }
    if (text == "closed_form") {
        return Engine::closed_form;
    }
    return std::nullopt;
}

struct McSettings {
    std::size_t n_paths = 100000;
    double dt = 1.0 / 240.0;
    std::uint64_t seed = 1;
    bool simulate_deaths = false; ///< draw Gompertz death times instead of weighting by survival
    unsigned threads = 0;         ///< 0: hardware concurrency; never changes the estimate

    void validate() const {
        detail::require(n_paths >= 1, "n_paths must be >= 1");
        detail::require(dt > 0.0 && dt <= 1.0 / 12.0, "dt must be in (0, 1/12]");
    }
};

struct GridSpec {
    std::size_t nodes = 2000;     ///< spatial intervals on [0, u_max]
    double age_step = 1.0 / 240.0;
    // 4/drift truncates wealthy starts: 50/4% loses ~1.2% to the a = 0 wall.
    double extent_multiple = 8.0; ///< u_max >= extent_multiple / drift
    bool richardson = true;       ///< also solve on the half-resolution grid
};

using Diagnostics = std::vector<std::pair<std::string, double>>;

struct PricingResult {
    Engine engine = Engine::closed_form;
    double value = 0.0;
    std::optional<double> std_error;
    Diagnostics diagnostics;

    RclaContract contract;
    MarketParams market;
    GompertzParams mortality;
    std::optional<McSettings> mc;
    std::optional<GridSpec> grid;

    std::optional<double> diagnostic(std::string_view name) const {
        for (const auto& [key, v] : diagnostics) {
            if (key == name) {
                return v;
            }
        }
        return std::nullopt;
    }
};

} // namespace rcla

#endif // RCLA_PRICING_TYPES_HPP
