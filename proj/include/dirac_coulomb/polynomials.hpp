#pragma once

// Generalized Laguerre polynomials, terminating Kummer series, and zero
// counting of the two-term combinations A L_n^a + B L_{n-1}^a that appear in
// the radial Dirac-Coulomb solutions.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace dirac_coulomb::poly {

/// L_degree^order(x) by the three-term recurrence in the degree.
template <class Real>
Real laguerre(int degree, Real order, Real x)
{
    if (degree < 0) {
        throw Error(ErrorCode::invalid_degree, "degree " + std::to_string(degree));
    }
    if (!(order > Real(-1))) {
        throw Error(ErrorCode::invalid_order, "order must exceed -1");
    }
    if (degree == 0) {
        return Real(1);
    }
    Real prev = Real(1);
    Real cur = Real(1) + order - x;
    for (int k = 1; k < degree; ++k) {
        Real next = ((Real(2 * k + 1) + order - x) * cur - (Real(k) + order) * prev) / Real(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// m-th derivative in x: d^m/dx^m L_n^a = (-1)^m L_{n-m}^{a+m}.
template <class Real>
Real laguerre_derivative(int degree, Real order, Real x, int m)
{
    if (m < 0) {
        throw Error(ErrorCode::invalid_argument, "negative derivative order");
    }
    if (m > degree) {
        return Real(0);
    }
    Real value = laguerre(degree - m, order + Real(m), x);
    return (m % 2 == 0) ? value : -value;
}

/// 1F1(-neg_degree; b; x) as its finite sum.
template <class Real>
Real kummer_polynomial(int neg_degree, Real b, Real x)
{
    if (neg_degree < 0) {
        throw Error(ErrorCode::invalid_degree, "degree " + std::to_string(neg_degree));
    }
    if (!(b > Real(0))) {
        throw Error(ErrorCode::invalid_b, "b must be positive");
    }
    Real term = Real(1);
    Real sum = Real(1);
    for (int k = 0; k < neg_degree; ++k) {
        term *= Real(k - neg_degree) / (b + Real(k)) * x / Real(k + 1);
        sum += term;
    }
    return sum;
}

/// Ratio L_n^a(0) / L_{n-1}^a(0) = (n + a) / n.
inline double origin_ratio(int degree, double order)
{
    return (degree + order) / degree;
}

namespace detail {

inline int sign_of(double v)
{
    return (v > 0.0) - (v < 0.0);
}

template <class F>
double bisect(F&& fn, double lo, double hi, int sign_lo, double abs_tol)
{
    while (hi - lo > abs_tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        int s = sign_of(fn(mid));
        if (s == 0) {
            return mid;
        }
        if (s == sign_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct SignScan {
    std::vector<double> roots;
    int last_sign = 0;   // sign at the last seed (0 if every sample vanished)
};

// Locates sign changes of fn on (0, seeds.back()]. The bracket [0, seeds[0]]
// is included when origin_sign != 0, so zeros below the first seed are found.
template <class F>
SignScan scan_sign_changes(F&& fn, std::span<const double> seeds, int origin_sign, double abs_tol)
{
    SignScan out;
    int prev_sign = origin_sign;
    double prev_x = 0.0;
    bool pending_zero = false;
    for (double x : seeds) {
        int s = sign_of(fn(x));
        if (s == 0) {
            out.roots.push_back(x);
            pending_zero = true;
            continue;
        }
        if (prev_sign != 0 && !pending_zero && s != prev_sign) {
            out.roots.push_back(bisect(fn, prev_x, x, prev_sign, abs_tol));
        }
        pending_zero = false;
        prev_sign = s;
        prev_x = x;
    }
    out.last_sign = prev_sign;
    return out;
}

} // namespace detail

/// Positive zeros of A L_n^a + B L_{n-1}^a and whether the origin is a zero.
struct ComboZeros {
    std::vector<double> positive_zeros;
    bool origin_zero = false;

    /// Zero count with the origin counted once when it is a zero.
    int count() const { return static_cast<int>(positive_zeros.size()) + (origin_zero ? 1 : 0); }
};

namespace detail {

inline void check_combo_args(double coeff_a, double coeff_b, int degree, double order)
{
    if (degree < 1) {
        throw Error(ErrorCode::invalid_degree, "combination needs degree >= 1");
    }
    if (!(order > -1.0)) {
        throw Error(ErrorCode::invalid_order, "order must exceed -1");
    }
    if (coeff_a == 0.0 || coeff_b == 0.0 || !std::isfinite(coeff_a) || !std::isfinite(coeff_b)) {
        throw Error(ErrorCode::invalid_argument, "combination coefficients must be finite and nonzero");
    }
}

constexpr double origin_equality_tol = 1e-12;

} // namespace detail

/// Closed-form zero count: n-1 below the threshold -(n+a)/n, n at or above it
/// (at equality one of the n zeros sits at the origin).
inline int combo_zero_count_rule(double coeff_a, double coeff_b, int degree, double order)
{
    detail::check_combo_args(coeff_a, coeff_b, degree, order);
    const double threshold = -origin_ratio(degree, order);
    const double ratio = coeff_b / coeff_a;
    if (std::abs(ratio - threshold) <= detail::origin_equality_tol * std::abs(threshold)) {
        return degree;
    }
    return ratio < threshold ? degree - 1 : degree;
}

/// Zeros of A L_n^a + B L_{n-1}^a located by sign scanning on a geometric
/// grid over (0, 2(2n + a + 2)] with bisection refinement; a zero beyond the
/// grid (large positive B/A) is chased using the known sign at infinity.
inline ComboZeros combo_zeros(double coeff_a, double coeff_b, int degree, double order)
{
    detail::check_combo_args(coeff_a, coeff_b, degree, order);
    auto combo = [&](double x) {
        return coeff_a * laguerre(degree, order, x) + coeff_b * laguerre(degree - 1, order, x);
    };

    ComboZeros out;
    const double at_a = coeff_a * laguerre(degree, order, 0.0);
    const double at_b = coeff_b * laguerre(degree - 1, order, 0.0);
    const double at_origin = at_a + at_b;
    out.origin_zero = std::abs(at_origin) <= detail::origin_equality_tol * (std::abs(at_a) + std::abs(at_b));

    const double rho_max = 2.0 * (2.0 * degree + order + 2.0);
    const double rho_min = 1e-10 * rho_max;
    const auto points = static_cast<std::size_t>(std::max(64.0, std::ceil(64.0 * rho_max)));
    std::vector<double> seeds(points);
    const double log_span = std::log(rho_max / rho_min);
    for (std::size_t i = 0; i < points; ++i) {
        seeds[i] = rho_min * std::exp(log_span * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    seeds.back() = rho_max;

    constexpr double abs_tol = 1e-12;
    const int origin_sign = out.origin_zero ? 0 : detail::sign_of(at_origin);
    auto scan = detail::scan_sign_changes(combo, seeds, origin_sign, abs_tol);
    if (scan.last_sign == 0) {
        throw Error(ErrorCode::degenerate_combination, "combination vanishes on the whole scan grid");
    }
    // Discard spurious hits in (0, rho_min] produced by an origin zero.
    for (double r : scan.roots) {
        if (!(out.origin_zero && r <= rho_min)) {
            out.positive_zeros.push_back(r);
        }
    }

    // Leading coefficient of the combination is A (-1)^n / n!.
    const int sign_at_infinity = detail::sign_of(coeff_a) * ((degree % 2 == 0) ? 1 : -1);
    if (scan.last_sign != sign_at_infinity) {
        double lo = rho_max;
        double hi = 2.0 * rho_max;
        int guard = 0;
        while (detail::sign_of(combo(hi)) != sign_at_infinity) {
            lo = hi;
            hi *= 2.0;
            if (++guard > 200) {
                throw Error(ErrorCode::degenerate_combination, "tail zero not bracketed");
            }
        }
        out.positive_zeros.push_back(detail::bisect(combo, lo, hi, scan.last_sign, abs_tol));
    }
    return out;
}

/// Number of zeros of A L_n^a + B L_{n-1}^a on [0, inf) by scanning, checked
/// against the closed-form rule.
inline int combo_zero_count(double coeff_a, double coeff_b, int degree, double order)
{
    const int scanned = combo_zeros(coeff_a, coeff_b, degree, order).count();
    const int rule = combo_zero_count_rule(coeff_a, coeff_b, degree, order);
    if (scanned != rule) {
        throw Error(ErrorCode::zero_count_mismatch,
                    "scan found " + std::to_string(scanned) + " zeros, rule gives " + std::to_string(rule));
    }
    return scanned;
}

} // namespace dirac_coulomb::poly
