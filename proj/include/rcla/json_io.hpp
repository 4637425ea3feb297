#ifndef RCLA_JSON_IO_HPP
#define RCLA_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "rcla/pricing_types.hpp"

namespace rcla {

/// Stable pricing-result record. MC-only fields are null for other engines.
inline nlohmann::ordered_json to_json(const PricingResult& result) {
    nlohmann::ordered_json j;
    j["engine"] = std::string(to_string(result.engine));
    j["value"] = result.value;
    j["std_error"] = result.std_error ? nlohmann::ordered_json(*result.std_error) : nullptr;
    j["n_paths"] = result.mc ? nlohmann::ordered_json(result.mc->n_paths) : nullptr;
    j["seed"] = result.mc ? nlohmann::ordered_json(result.mc->seed) : nullptr;
    j["drift_mode"] = std::string(to_string(result.market.drift_mode));
    j["params"] = {
        {"r", result.market.r_real},
        {"mu", result.market.mu_real},
        {"sigma", result.market.sigma},
        {"gompertz_m", result.mortality.m},
        {"gompertz_b", result.mortality.b},
        {"age", result.contract.purchase_age},
        {"rate", result.contract.rate},
        {"notional", result.contract.notional},
    };
    nlohmann::ordered_json diag = nlohmann::ordered_json::object();
    for (const auto& [key, value] : result.diagnostics) {
        diag[key] = value;
    }
    if (result.grid) {
        diag["grid_nodes_requested"] = result.grid->nodes;
        diag["grid_age_step_requested"] = result.grid->age_step;
        diag["grid_extent_multiple"] = result.grid->extent_multiple;
    }
    j["diagnostics"] = std::move(diag);
    return j;
}

} // namespace rcla

#endif // RCLA_JSON_IO_HPP
