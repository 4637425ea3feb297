#ifndef RCLA_DETERMINISTIC_HPP
#define RCLA_DETERMINISTIC_HPP

#include <cmath>
#include <optional>

#include "rcla/error.hpp"
#include "rcla/mortality.hpp"
#include "rcla/pricing_types.hpp"

namespace rcla {

/// Ruin time of du = (nu u - 1) dt from u0 > 0 (u in years of income), or
/// nullopt when u0 is at or above the no-ruin level 1/nu.
inline std::optional<double> deterministic_ruin_time(double u0, double nu) {
    if (nu * u0 >= 1.0) {
        return std::nullopt;
    }
    if (nu == 0.0) {
        return u0;
    }
    return -std::log1p(-nu * u0) / nu;
}

/// Closed form for sigma = 0: wealth follows dW = (nu W - w) dt and the
/// annuity starts at the deterministic ruin time if the annuitant is alive.
inline PricingResult price_deterministic(const RclaContract& contract, const MarketParams& mkt,
                                         const GompertzParams& g) {
    contract.validate();
    g.validate();
    detail::require(mkt.sigma == 0.0, "price_deterministic requires sigma = 0");

    PricingResult result;
    result.engine = Engine::closed_form;
    result.contract = contract;
    result.market = mkt;
    result.mortality = g;

    const double income = contract.annual_income();
    const double nu = mkt.drift();
    if (income == 0.0) {
        return result;
    }
    const auto tau = deterministic_ruin_time(contract.normalized_wealth(), nu);
    if (!tau) {
        result.diagnostics.emplace_back("no_ruin_level", income / nu);
        return result;
    }
    result.diagnostics.emplace_back("ruin_time", *tau);
    if (contract.purchase_age + *tau >= kTerminalAge) {
        return result;
    }
    result.value = std::exp(-mkt.r_real * *tau) * survival(contract.purchase_age, *tau, g) * income *
                   annuity_factor(contract.purchase_age + *tau, mkt.r_real, g);
    return result;
}

} // namespace rcla

#endif // RCLA_DETERMINISTIC_HPP
