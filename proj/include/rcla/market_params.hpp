#ifndef RCLA_MARKET_PARAMS_HPP
#define RCLA_MARKET_PARAMS_HPP

#include <optional>
#include <string>
#include <string_view>

#include "rcla/error.hpp"

namespace rcla {

/// Which expected return drives the wealth diffusion.
enum class DriftMode {
    risk_neutral, ///< drift = riskless real rate
    real_world,   ///< drift = expected real return
};

inline std::string_view to_string(DriftMode mode) {
    return mode == DriftMode::risk_neutral ? "risk_neutral" : "real_world";
}

inline std::optional<DriftMode> parse_drift_mode(std::string_view text) {
    if (text == "risk_neutral") {
        return DriftMode::risk_neutral;
    }
    if (text == "real_world") {
        return DriftMode::real_world;
    }
    return std::nullopt;
}

/// Real (after-inflation) market parameters. Defaults are the published
/// calibration: r = 2.5%, mu = 7%, sigma = 20%. Discounting always uses
/// r_real; the drift mode only picks the wealth drift.
struct MarketParams {
    double r_real = 0.025;
    double mu_real = 0.07;
    double sigma = 0.20;
    DriftMode drift_mode = DriftMode::real_world;

    double drift() const { return drift_mode == DriftMode::risk_neutral ? r_real : mu_real; }

    void validate() const { detail::require(sigma >= 0.0, "sigma must be non-negative"); }
};

} // namespace rcla

#endif // RCLA_MARKET_PARAMS_HPP
