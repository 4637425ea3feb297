#ifndef RCLA_MONTE_CARLO_HPP
#define RCLA_MONTE_CARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "rcla/error.hpp"
#include "rcla/mortality.hpp"
#include "rcla/pricing_types.hpp"
#include "rcla/rng.hpp"

namespace rcla {

// Monte Carlo over normalized wealth u = W / income, which follows
//   du = (nu u - 1) dt + sigma u dB,   ruin when u reaches 0.
// Each step applies the exact flow of the drift-and-withdrawal ODE over dt
// (checking for a zero crossing inside the step), then the exact lognormal
// shock. With sigma = 0 this reproduces the deterministic ruin time exactly.
//
// Path p draws its shocks from normal stream p of the seed, so a path's
// ruin time depends only on (seed, p, u0, nu, sigma, dt). One path therefore
// serves every starting wealth and every purchase age at once: age enters
// only through the payoff and the horizon.

struct McCellEstimate {
    double mean = 0.0;     ///< per $1/yr of income
    double std_error = 0.0;
    double ruin_fraction = 0.0;
};

namespace detail {

inline constexpr std::size_t kMcBlock = 1024;
inline constexpr std::uint64_t kDeathStreamTag = std::uint64_t{1} << 63;

// Welford within a block, Chan's merge across blocks (in block order). The
// naive sum-of-squares form cancels badly when every path pays the same.
struct McAccumulator {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t ruined = 0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const McAccumulator& other) {
        if (other.count == 0) {
            return;
        }
        const double n_a = static_cast<double>(count);
        const double n_b = static_cast<double>(other.count);
        const double n = n_a + n_b;
        const double delta = other.mean - mean;
        mean += delta * n_b / n;
        m2 += other.m2 + delta * delta * n_a * n_b / n;
        count += other.count;
        ruined += other.ruined;
    }
};

} // namespace detail

/// Estimates for every (age, starting wealth) pair from one set of paths.
/// Result is indexed [age][wealth].
inline std::vector<std::vector<McCellEstimate>> mc_first_passage_grid(
    std::span<const double> ages, std::span<const double> start_wealth, const MarketParams& mkt,
    const GompertzParams& g, const McSettings& settings) {
    settings.validate();
    mkt.validate();
    g.validate();
    for (const double age : ages) {
        detail::require(age >= 0.0, "purchase age must be >= 0");
    }
    for (const double u0 : start_wealth) {
        detail::require(u0 > 0.0, "starting wealth must be positive");
    }

    const std::size_t n_ages = ages.size();
    const std::size_t n_wealth = start_wealth.size();
    const std::size_t n_cells = n_ages * n_wealth;

    const double nu = mkt.drift();
    const double r = mkt.r_real;
    const double dt = settings.dt;
    const double growth = std::exp(nu * dt);
    const double drain = nu != 0.0 ? std::expm1(nu * dt) / nu : dt;
    const double shock_scale = mkt.sigma * std::sqrt(dt);
    const double shock_shift = -0.5 * mkt.sigma * mkt.sigma * dt;
    const bool diffusive = mkt.sigma > 0.0;

    std::vector<double> horizons(n_ages);
    std::vector<AnnuityTail> tails;
    tails.reserve(n_ages);
    double sim_horizon = 0.0;
    for (std::size_t i = 0; i < n_ages; ++i) {
        horizons[i] = std::max(0.0, kTerminalAge - ages[i]);
        sim_horizon = std::max(sim_horizon, horizons[i]);
        const auto panels = static_cast<std::size_t>(std::ceil(horizons[i] * 240.0));
        tails.emplace_back(ages[i], r, g, std::max<std::size_t>(panels, 1));
    }
    const auto n_steps = static_cast<std::size_t>(std::ceil(sim_horizon / dt));

    const std::size_t n_blocks = (settings.n_paths + detail::kMcBlock - 1) / detail::kMcBlock;
    std::vector<detail::McAccumulator> blocks(n_blocks * n_cells);

    const auto run_block = [&](std::size_t block) {
        std::vector<double> u(n_wealth);
        std::vector<double> tau(n_wealth);
        std::vector<std::size_t> alive(n_wealth);
        auto* acc = blocks.data() + block * n_cells;
        const std::size_t first = block * detail::kMcBlock;
        const std::size_t last = std::min(settings.n_paths, first + detail::kMcBlock);
        for (std::size_t p = first; p < last; ++p) {
            std::copy(start_wealth.begin(), start_wealth.end(), u.begin());
            std::fill(tau.begin(), tau.end(), std::numeric_limits<double>::infinity());
            std::size_t n_alive = n_wealth;
            for (std::size_t j = 0; j < n_wealth; ++j) {
                alive[j] = j;
            }
            SequentialNormals normals(settings.seed, p);
            for (std::size_t n = 0; n < n_steps && n_alive > 0; ++n) {
                const double t = static_cast<double>(n) * dt;
                for (std::size_t a = 0; a < n_alive;) {
                    const std::size_t j = alive[a];
                    const double next = u[j] * growth - drain;
                    if (next <= 0.0) {
                        const double s = nu != 0.0 ? -std::log1p(-nu * u[j]) / nu : u[j];
                        tau[j] = t + std::min(s, dt);
                        alive[a] = alive[--n_alive];
                    } else {
                        u[j] = next;
                        ++a;
                    }
                }
                if (!diffusive) {
                    continue; // the shock is exactly 1; skipping the draw changes nothing
                }
                const double shock = std::exp(shock_shift + shock_scale * normals.next());
                for (std::size_t a = 0; a < n_alive; ++a) {
                    u[alive[a]] *= shock;
                }
            }

            double death_uniform = 0.0;
            if (settings.simulate_deaths) {
                death_uniform = NormalStream(settings.seed, detail::kDeathStreamTag | p).uniform_pair(0).first;
            }
            for (std::size_t i = 0; i < n_ages; ++i) {
                double life_end = horizons[i];
                if (settings.simulate_deaths) {
                    const double remaining =
                        g.b * std::log1p(-std::log(death_uniform) * std::exp((g.m - ages[i]) / g.b));
                    life_end = std::min(life_end, remaining);
                }
                for (std::size_t j = 0; j < n_wealth; ++j) {
                    auto& cell = acc[i * n_wealth + j];
                    double payoff = 0.0;
                    if (tau[j] < horizons[i]) {
                        ++cell.ruined;
                        if (!settings.simulate_deaths) {
                            payoff = tails[i](tau[j]);
                        } else if (tau[j] < life_end) {
                            payoff = r != 0.0 ? (std::exp(-r * tau[j]) - std::exp(-r * life_end)) / r
                                              : life_end - tau[j];
                        }
                    }
                    cell.add(payoff);
                }
            }
        }
    };

    unsigned threads = settings.threads != 0 ? settings.threads : std::thread::hardware_concurrency();
    threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, n_blocks));
    if (threads == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            run_block(b);
        }
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t b = w; b < n_blocks; b += threads) {
                    run_block(b);
                }
            });
        }
    }

    // Blocks are combined in index order so the estimate does not depend on threading.
    const auto n = static_cast<double>(settings.n_paths);
    std::vector<std::vector<McCellEstimate>> out(n_ages, std::vector<McCellEstimate>(n_wealth));
    for (std::size_t c = 0; c < n_cells; ++c) {
        detail::McAccumulator total;
        for (std::size_t b = 0; b < n_blocks; ++b) {
            total.merge(blocks[b * n_cells + c]);
        }
        const double var = settings.n_paths > 1 ? total.m2 / (n - 1.0) : 0.0;
        out[c / n_wealth][c % n_wealth] = {total.mean, std::sqrt(var / n),
                                           static_cast<double>(total.ruined) / n};
    }
    return out;
}

namespace detail {

inline PricingResult mc_result(const RclaContract& contract, const MarketParams& mkt,
                               const GompertzParams& g, const McSettings& settings,
                               const McCellEstimate& cell) {
    PricingResult result;
    result.engine = Engine::mc;
    result.contract = contract;
    result.market = mkt;
    result.mortality = g;
    result.mc = settings;
    const double income = contract.annual_income();
    result.value = income * cell.mean;
    result.std_error = income * cell.std_error;
    result.diagnostics = {{"dt", settings.dt},
                          {"ruin_fraction", cell.ruin_fraction},
                          {"simulate_deaths", settings.simulate_deaths ? 1.0 : 0.0}};
    return result;
}

} // namespace detail

/// Monte Carlo value of one contract.
inline PricingResult price_mc(const RclaContract& contract, const MarketParams& mkt,
                              const GompertzParams& g, const McSettings& settings) {
    contract.validate();
    settings.validate();
    if (contract.annual_income() == 0.0) {
        return detail::mc_result(contract, mkt, g, settings, {});
    }
    const double age = contract.purchase_age;
    const double u0 = contract.normalized_wealth();
    const auto grid = mc_first_passage_grid({&age, 1}, {&u0, 1}, mkt, g, settings);
    return detail::mc_result(contract, mkt, g, settings, grid[0][0]);
}

/// Value at dt = 1/12 minus value at settings.dt on the same paths: how much
/// the monthly-discrete idealization moves the continuous-withdrawal price.
inline double mc_discretization_gap(const RclaContract& contract, const MarketParams& mkt,
                                    const GompertzParams& g, McSettings settings) {
    const double fine = price_mc(contract, mkt, g, settings).value;
    settings.dt = 1.0 / 12.0;
    return price_mc(contract, mkt, g, settings).value - fine;
}

} // namespace rcla

#endif // RCLA_MONTE_CARLO_HPP
