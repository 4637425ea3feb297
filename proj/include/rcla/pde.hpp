#ifndef RCLA_PDE_HPP
#define RCLA_PDE_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rcla/error.hpp"
#include "rcla/mortality.hpp"
#include "rcla/pricing_types.hpp"

namespace rcla {

namespace detail {

/// Thomas algorithm; `lower[0]` and `upper[n-1]` are ignored. Overwrites rhs.
inline void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                              const std::vector<double>& upper, std::vector<double>& rhs,
                              std::vector<double>& scratch) {
    const std::size_t n = diag.size();
    scratch.resize(n);
    double pivot = diag[0];
    if (!(std::abs(pivot) > 1e-300)) {
        throw ConvergenceError("zero pivot in tridiagonal solve at row 0");
    }
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        scratch[i] = upper[i - 1] / pivot;
        pivot = diag[i] - lower[i] * scratch[i];
        if (!(std::abs(pivot) > 1e-300)) {
            throw ConvergenceError("zero pivot in tridiagonal solve at row " + std::to_string(i));
        }
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] -= scratch[i + 1] * rhs[i + 1];
    }
    for (const double v : rhs) {
        if (!std::isfinite(v)) {
            throw ConvergenceError("non-finite value in tridiagonal solve");
        }
    }
}

struct PdeSolve {
    double value_per_income = 0.0; ///< a(u0, purchase age)
    double boundary_annuity = 0.0; ///< a(0, purchase age)
};

// Backward age-march of
//   0.5 sigma^2 u^2 a_uu + (nu u - 1) a_u - (r + hazard(x)) a + a_x = 0
// on u = i h, i = 0..nodes, with u0 = start_node * h, from a(., terminal) = 0,
// a(0, x) = annuity_factor(x), a(u_max, x) = 0.
// Crank-Nicolson in age after a few fully implicit start-up steps; central
// differences in u. Upwinding here turns the sigma = 0 limit into a smeared
// first-order scheme that misses the ruin time badly, so it is not used.
inline constexpr std::size_t kImplicitStartSteps = 4;

inline PdeSolve solve_rcla_pde(double purchase_age, double nu, double sigma, double r,
                               const GompertzParams& g, double h, std::size_t nodes,
                               std::size_t start_node, std::size_t age_steps) {
    const double horizon = kTerminalAge - purchase_age;
    const double dx = horizon / static_cast<double>(age_steps);
    const AnnuityTail boundary(purchase_age, r, g, age_steps);

    std::vector<double> lower_c(nodes + 1, 0.0), upper_c(nodes + 1, 0.0);
    for (std::size_t i = 1; i < nodes; ++i) {
        const double u = static_cast<double>(i) * h;
        const double diffusion = 0.5 * sigma * sigma * u * u / (h * h);
        const double drift = nu * u - 1.0;
        lower_c[i] = diffusion - drift / (2.0 * h);
        upper_c[i] = diffusion + drift / (2.0 * h);
    }

    const std::size_t interior = nodes - 1;
    std::vector<double> a(nodes + 1, 0.0);
    std::vector<double> lower(interior), diag(interior), upper(interior), rhs(interior), scratch;
    double kill_prev = r + hazard(kTerminalAge, g);
    for (std::size_t step = age_steps, done = 0; step-- > 0; ++done) {
        const double age = purchase_age + static_cast<double>(step) * dx;
        const double kill = r + hazard(age, g);
        const double edge = boundary.annuity_at_node(step);
        const double theta = done < kImplicitStartSteps ? 1.0 : 0.5;
        const double implicit = theta * dx;
        const double explicit_part = (1.0 - theta) * dx;
        for (std::size_t k = 0; k < interior; ++k) {
            const std::size_t i = k + 1;
            lower[k] = -implicit * lower_c[i];
            upper[k] = -implicit * upper_c[i];
            diag[k] = 1.0 + implicit * (lower_c[i] + upper_c[i] + kill);
            const double old_op = lower_c[i] * a[i - 1] + upper_c[i] * a[i + 1] -
                                  (lower_c[i] + upper_c[i] + kill_prev) * a[i];
            rhs[k] = a[i] + explicit_part * old_op;
        }
        // a[0] still holds the previous boundary value, used in old_op above
        rhs[0] += implicit * lower_c[1] * edge;
        solve_tridiagonal(lower, diag, upper, rhs, scratch);
        a[0] = edge;
        std::copy(rhs.begin(), rhs.end(), a.begin() + 1);
        a[nodes] = 0.0;
        kill_prev = kill;
    }
    return {a[start_node], a[0]};
}

} // namespace detail

/// Finite-difference value of one contract. With spec.richardson the grid
/// is also solved at half resolution; the scheme is second order in both
/// directions, so |fine - coarse| / 3 is the error estimate.
inline PricingResult price_pde(const RclaContract& contract, const MarketParams& mkt,
                               const GompertzParams& g, const GridSpec& spec = {}) {
    contract.validate();
    mkt.validate();
    g.validate();
    if (spec.nodes < 200) {
        throw GridError("grid needs at least 200 spatial intervals, got " + std::to_string(spec.nodes));
    }
    if (!(spec.extent_multiple >= 4.0)) {
        throw GridError("grid extent must reach at least 4x the no-ruin wealth");
    }
    if (!(spec.age_step > 0.0)) {
        throw GridError("age step must be positive");
    }
    const double nu = mkt.drift();
    if (!(nu > 0.0)) {
        throw GridError("finite-difference grid needs a positive drift (no finite no-ruin wealth)");
    }

    PricingResult result;
    result.engine = Engine::pde;
    result.contract = contract;
    result.market = mkt;
    result.mortality = g;
    result.grid = spec;

    const double horizon = kTerminalAge - contract.purchase_age;
    if (contract.annual_income() == 0.0 || horizon <= 0.0) {
        return result;
    }

    const double u0 = contract.normalized_wealth();
    const double target_max = std::max(spec.extent_multiple / nu, 2.0 * u0);
    // Even node counts put u0 on both the fine and the half-resolution grid.
    const double h_target = target_max / static_cast<double>(spec.nodes);
    const std::size_t start_node = 2 * static_cast<std::size_t>(std::ceil(u0 / (2.0 * h_target)));
    const double h = u0 / static_cast<double>(start_node);
    const std::size_t nodes = 2 * static_cast<std::size_t>(std::ceil(target_max / (2.0 * h)));
    const std::size_t age_steps = 2 * static_cast<std::size_t>(std::ceil(horizon / (2.0 * spec.age_step)));

    const auto fine = detail::solve_rcla_pde(contract.purchase_age, nu, mkt.sigma, mkt.r_real, g, h,
                                             nodes, start_node, age_steps);
    const double income = contract.annual_income();
    result.value = income * fine.value_per_income;
    result.diagnostics = {{"nodes", static_cast<double>(nodes)},
                          {"u_max", h * static_cast<double>(nodes)},
                          {"u0", u0},
                          {"age_steps", static_cast<double>(age_steps)},
                          {"age_step", horizon / static_cast<double>(age_steps)},
                          {"boundary_annuity_factor", fine.boundary_annuity}};
    if (spec.richardson) {
        const auto coarse = detail::solve_rcla_pde(contract.purchase_age, nu, mkt.sigma, mkt.r_real, g,
                                                   2.0 * h, nodes / 2, start_node / 2, age_steps / 2);
        const double coarse_value = income * coarse.value_per_income;
        result.diagnostics.emplace_back("coarse_value", coarse_value);
        result.diagnostics.emplace_back("richardson_error", std::abs(result.value - coarse_value) / 3.0);
    }
    return result;
}

} // namespace rcla

#endif // RCLA_PDE_HPP
