#ifndef RCLA_TABLE2_HPP
#define RCLA_TABLE2_HPP

#include <cstdio>
#include <ostream>
#include <span>
#include <vector>

#include "rcla/deterministic.hpp"
#include "rcla/monte_carlo.hpp"
#include "rcla/mortality.hpp"
#include "rcla/pde.hpp"
#include "rcla/pricing_types.hpp"

namespace rcla {

inline constexpr double kTableNotional = 100000.0;

struct EngineSettings {
    Engine engine = Engine::pde;
    McSettings mc;
    GridSpec grid;
};

/// RCLA values by (rate, age) for a $100,000 notional plus the price of
/// $1,000/yr of immediate lifetime income at each age.
struct ValuationTable {
    std::vector<double> ages;
    std::vector<double> rates;
    std::vector<std::vector<PricingResult>> cells; // [rate][age]
    std::vector<double> annuity_per_1000;          // [age]

    const PricingResult& cell(std::size_t rate_index, std::size_t age_index) const {
        return cells.at(rate_index).at(age_index);
    }
};

/// Single-contract dispatch on the engine.
inline PricingResult price(const RclaContract& contract, const MarketParams& mkt,
                           const GompertzParams& g, const EngineSettings& settings) {
    switch (settings.engine) {
    case Engine::mc:
        return price_mc(contract, mkt, g, settings.mc);
    case Engine::pde:
        return price_pde(contract, mkt, g, settings.grid);
    case Engine::closed_form:
        return price_deterministic(contract, mkt, g);
    }
    throw std::invalid_argument("unknown engine");
}

/// The Monte Carlo table shares one set of paths across every cell; each
/// cell is bit-identical to price_mc on the same contract and seed.
inline ValuationTable table2(const MarketParams& mkt, const GompertzParams& g,
                             std::span<const double> ages, std::span<const double> rates,
                             const EngineSettings& settings) {
    ValuationTable table{{ages.begin(), ages.end()}, {rates.begin(), rates.end()}, {}, {}};
    for (const double age : ages) {
        table.annuity_per_1000.push_back(1000.0 * annuity_factor(age, mkt.r_real, g));
    }
    table.cells.assign(rates.size(), std::vector<PricingResult>(ages.size()));

    if (settings.engine == Engine::mc) {
        std::vector<double> wealth;
        std::vector<std::size_t> priced;
        for (std::size_t j = 0; j < rates.size(); ++j) {
            const RclaContract probe{ages.empty() ? 0.0 : ages[0], rates[j], kTableNotional};
            probe.validate();
            if (probe.annual_income() > 0.0) {
                wealth.push_back(probe.normalized_wealth());
                priced.push_back(j);
            }
        }
        const auto grid = mc_first_passage_grid(ages, wealth, mkt, g, settings.mc);
        for (std::size_t j = 0; j < rates.size(); ++j) {
            for (std::size_t i = 0; i < ages.size(); ++i) {
                const RclaContract contract{ages[i], rates[j], kTableNotional};
                McCellEstimate estimate;
                for (std::size_t k = 0; k < priced.size(); ++k) {
                    if (priced[k] == j) {
                        estimate = grid[i][k];
                    }
                }
                table.cells[j][i] = detail::mc_result(contract, mkt, g, settings.mc, estimate);
            }
        }
        return table;
    }

    for (std::size_t j = 0; j < rates.size(); ++j) {
        for (std::size_t i = 0; i < ages.size(); ++i) {
            table.cells[j][i] = price(RclaContract{ages[i], rates[j], kTableNotional}, mkt, g, settings);
        }
    }
    return table;
}

/// Value of the guarantee embedded in a lifetime withdrawal benefit: the
/// benefit is a systematic withdrawal plan plus an RCLA on the same
/// premium, so this is exactly the RCLA value.
inline double gmwb_embedded_value(double age, double rate, double premium, const MarketParams& mkt,
                                  const GompertzParams& g, const EngineSettings& settings) {
    return price(RclaContract{age, rate, premium}, mkt, g, settings).value;
}

/// Layout: `rate,<age>,...`, one row per rate, then `annuity_1000`.
inline void write_table2_csv(std::ostream& out, const ValuationTable& table) {
    char buf[64];
    out << "rate";
    for (const double age : table.ages) {
        std::snprintf(buf, sizeof buf, "%g", age);
        out << ',' << buf;
    }
    out << '\n';
    for (std::size_t j = 0; j < table.rates.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%g", table.rates[j]);
        out << buf;
        for (std::size_t i = 0; i < table.ages.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.2f", table.cells[j][i].value);
            out << ',' << buf;
        }
        out << '\n';
    }
    out << "annuity_1000";
    for (const double a : table.annuity_per_1000) {
        std::snprintf(buf, sizeof buf, "%.2f", a);
        out << ',' << buf;
    }
    out << '\n';
}

} // namespace rcla

#endif // RCLA_TABLE2_HPP
