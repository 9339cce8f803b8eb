#pragma once

// Half-line integration for integrands that decay like exp(-decay_rate r)
// times a power of r, using Boost's exp-sinh double-exponential rule. The
// double-exponential map also absorbs the r^a behaviour at the origin, which
// a polynomial rule would only resolve algebraically.

#include <cmath>
#include <cstddef>
#include <exception>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "error.hpp"

namespace dirac_coulomb::quad {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;   // claimed by the rule, not a guarantee
    std::size_t evaluations = 0;
};

inline constexpr std::size_t default_budget = 1'000'000;

namespace detail {

// exp(-t) underflows past this, so a non-finite sample there is 0 * inf
// from the polynomial factor rather than a broken integrand
inline constexpr double underflow_rate = 745.0;

// abscissae are filled in lazily by integrate(), so one rule per thread
inline boost::math::quadrature::exp_sinh<double>& exp_sinh_rule()
{
    thread_local boost::math::quadrature::exp_sinh<double> rule;
    return rule;
}

} // namespace detail

/// Integral of integrand over (0, inf). decay_rate sets the length scale;
/// estimated error <= rel_tol times the integral of |integrand| on success.
template <class F>
QuadratureResult integrate_halfline(F&& integrand, double decay_rate, double rel_tol)
{
    if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
        throw Error(ErrorCode::invalid_argument, "decay rate must be positive");
    }
    if (!(rel_tol >= 1e-14 && rel_tol <= 1e-4)) {
        throw Error(ErrorCode::invalid_argument, "rel_tol must lie in [1e-14, 1e-4]");
    }
    std::size_t evaluations = 0;
    auto scaled = [&](double t) {
        if (++evaluations > default_budget) {
            throw Error(ErrorCode::no_convergence, "evaluation budget exhausted");
        }
        const double y = integrand(t / decay_rate);
        if (!std::isfinite(y)) {
            if (t > detail::underflow_rate) {
                return 0.0;
            }
            throw Error(ErrorCode::non_finite_integrand,
                        "integrand is not finite at r = " + std::to_string(t / decay_rate));
        }
        return y / decay_rate;
    };
    double error = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
        value = detail::exp_sinh_rule().integrate(scaled, rel_tol, &error, &l1);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::no_convergence, e.what());
    }
    if (!std::isfinite(value) || error > rel_tol * l1) {
        throw Error(ErrorCode::no_convergence, "estimated error " + std::to_string(error) + " above tolerance");
    }
    return {value, error, evaluations};
}

} // namespace dirac_coulomb::quad
