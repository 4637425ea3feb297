#ifndef RCLA_MORTALITY_HPP
#define RCLA_MORTALITY_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "rcla/error.hpp"

namespace rcla {

/// Nobody survives past this age; all life-contingent integrals stop here.
inline constexpr double kTerminalAge = 120.0;

/// Gompertz law with modal age m and dispersion b (both in years).
struct GompertzParams {
    double m = 87.8;
    double b = 9.5;

    void validate() const {
        detail::require(m > 0.0, "Gompertz modal age must be positive");
        detail::require(b > 0.0, "Gompertz dispersion must be positive");
    }
};

/// Probability that a life aged x survives t more years.
inline double survival(double x, double t, const GompertzParams& g) {
    detail::require(x >= 0.0 && t >= 0.0, "survival needs x >= 0 and t >= 0");
    return std::exp(-std::exp((x - g.m) / g.b) * std::expm1(t / g.b));
}

/// Force of mortality at age x, per year.
inline double hazard(double x, const GompertzParams& g) {
    detail::require(x >= 0.0, "hazard needs x >= 0");
    return std::exp((x - g.m) / g.b) / g.b;
}

namespace detail {

template <class F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson on one panel.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-13) {
    if (b <= a) {
        return 0.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Panels no wider than this (years) for every life-contingent integral.
inline constexpr double kMaxPanel = 1.0 / 120.0;

} // namespace detail

/// Price of $1/yr of continuously paid real lifetime income at age x,
/// discounted at the real rate r. Zero at or beyond the terminal age.
inline double annuity_factor(double x, double r, const GompertzParams& g,
                             double terminal_age = kTerminalAge) {
    detail::require(x >= 0.0, "annuity_factor needs x >= 0");
    g.validate();
    if (x >= terminal_age) {
        return 0.0;
    }
    const double horizon = terminal_age - x;
    const auto panels = static_cast<std::size_t>(std::ceil(horizon / detail::kMaxPanel));
    const double width = horizon / static_cast<double>(panels);
    const auto integrand = [&](double t) { return std::exp(-r * t) * survival(x, t, g); };
    double total = 0.0;
    // Summed from the tail so the small late panels are not swamped.
    for (std::size_t k = panels; k-- > 0;) {
        const double a = width * static_cast<double>(k);
        const double b = k + 1 == panels ? horizon : a + width;
        total += detail::adaptive_simpson(integrand, a, b);
    }
    return total;
}

/// Discounted survival-weighted income remaining after t years for a life
/// purchased at age x0:
///   tail(t) = integral_t^{T - x0} exp(-r s) * sp_x0 ds
///           = exp(-r t) * tp_x0 * annuity_factor(x0 + t).
/// Tabulated on `panels` equal panels and refined on demand between nodes.
class AnnuityTail {
public:
    AnnuityTail(double purchase_age, double r, const GompertzParams& g, std::size_t panels,
                double terminal_age = kTerminalAge)
        : x0_(purchase_age), r_(r), g_(g),
          horizon_(terminal_age > purchase_age ? terminal_age - purchase_age : 0.0),
          panels_(panels > 0 ? panels : 1), width_(horizon_ / static_cast<double>(panels_)),
          tail_(panels_ + 1, 0.0) {
        g.validate();
        detail::require(purchase_age >= 0.0, "purchase age must be >= 0");
        for (std::size_t k = panels_; k-- > 0;) {
            tail_[k] = tail_[k + 1] + detail::adaptive_simpson(integrand(), node(k), node(k + 1));
        }
    }

    double horizon() const { return horizon_; }
    std::size_t panels() const { return panels_; }
    double node(std::size_t k) const { return k >= panels_ ? horizon_ : width_ * static_cast<double>(k); }
    double at_node(std::size_t k) const { return tail_.at(k); }

    double operator()(double t) const {
        if (t <= 0.0) {
            return tail_.front();
        }
        if (t >= horizon_) {
            return 0.0;
        }
        auto k = static_cast<std::size_t>(t / width_);
        if (k >= panels_) {
            k = panels_ - 1;
        }
        return tail_[k + 1] + detail::adaptive_simpson(integrand(), t, node(k + 1));
    }

    /// annuity_factor(x0 + node(k)) recovered from the tabulated tail.
    double annuity_at_node(std::size_t k) const {
        const double t = node(k);
        const double weight = std::exp(-r_ * t) * survival(x0_, t, g_);
        return weight > 1e-300 ? tail_.at(k) / weight : 0.0;
    }

private:
    struct Integrand {
        const AnnuityTail* self;
        double operator()(double s) const {
            return std::exp(-self->r_ * s) * survival(self->x0_, s, self->g_);
        }
    };
    Integrand integrand() const { return Integrand{this}; }

    double x0_;
    double r_;
    GompertzParams g_;
    double horizon_;
    std::size_t panels_;
    double width_;
    std::vector<double> tail_;
};

} // namespace rcla

#endif // RCLA_MORTALITY_HPP
