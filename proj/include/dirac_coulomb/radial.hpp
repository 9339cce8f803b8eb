#pragma once

// Radial functions g_kappa(r), f_kappa(r) of the upper and lower Dirac
// components in Laguerre form,
//   g = -A sqrt(1+E) [(kappa+eta2) L_{n_r}^{2g}(rho) + (2g+n_r) L_{n_r-1}^{2g}(rho)] rho^g e^{-rho/2}
//   f =  A sqrt(1-E) [(kappa+eta2) L_{n_r}^{2g}(rho) - (2g+n_r) L_{n_r-1}^{2g}(rho)] rho^g e^{-rho/2}
// with rho = 2 lambda r (g = gamma), plus node counting, residuals of the
// second-order radial equations and spin-orbit / pseudospin-orbit profiles.
//
// Nodes follow the convention that r = 0 counts as one node; much of the
// literature counts interior nodes only.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "model.hpp"
#include "polynomials.hpp"
#include "quadrature.hpp"
#include "spectrum.hpp"

namespace dirac_coulomb {

enum class GridScheme { uniform, geometric };

constexpr std::string_view to_string(GridScheme scheme) noexcept
{
    return scheme == GridScheme::uniform ? "uniform" : "geometric";
}

/// Radial sample points in units of the Compton length.
struct RadialGrid {
    std::vector<double> points;
    GridScheme scheme = GridScheme::geometric;
    double r_max = 0.0;

    static constexpr std::size_t min_points = 64;

    static RadialGrid uniform(double r_min, double r_max, std::size_t count)
    {
        check_bounds(r_min, r_max, count);
        RadialGrid grid;
        grid.scheme = GridScheme::uniform;
        grid.r_max = r_max;
        grid.points.resize(count);
        const double h = (r_max - r_min) / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) {
            grid.points[i] = r_min + h * static_cast<double>(i);
        }
        grid.points.back() = r_max;
        return grid;
    }

    static RadialGrid geometric(double r_min, double r_max, std::size_t count)
    {
        check_bounds(r_min, r_max, count);
        RadialGrid grid;
        grid.scheme = GridScheme::geometric;
        grid.r_max = r_max;
        grid.points.resize(count);
        const double log_ratio = std::log(r_max / r_min);
        for (std::size_t i = 0; i < count; ++i) {
            grid.points[i] = r_min * std::exp(log_ratio * static_cast<double>(i) / static_cast<double>(count - 1));
        }
        grid.points.front() = r_min;
        grid.points.back() = r_max;
        return grid;
    }

    /// 2048 geometric points on [1e-4, 40/lambda].
    static RadialGrid default_for(const BoundLevel& level)
    {
        return geometric(1e-4, 40.0 / level.lambda, 2048);
    }

    void validate() const
    {
        if (points.size() < min_points) {
            throw Error(ErrorCode::invalid_grid, "grid needs at least 64 points");
        }
        if (!(points.front() > 0.0)) {
            throw Error(ErrorCode::invalid_grid, "grid points must be positive");
        }
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (!(points[i] > points[i - 1])) {
                throw Error(ErrorCode::invalid_grid, "grid points must be strictly increasing");
            }
        }
        if (!(points.back() <= r_max)) {
            throw Error(ErrorCode::invalid_grid, "grid points exceed r_max");
        }
    }

private:
    static void check_bounds(double r_min, double r_max, std::size_t count)
    {
        if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
            throw Error(ErrorCode::invalid_grid, "need 0 < r_min < r_max");
        }
        if (count < min_points) {
            throw Error(ErrorCode::invalid_grid, "grid needs at least 64 points");
        }
    }
};

/// Function value with first and second derivatives in r.
struct RadialValue {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Closed-form g and f for one level, evaluable anywhere on r > 0.
class RadialForm {
public:
    enum class Component { upper, lower };

    RadialForm(const CoulombCouplings& couplings, const BoundLevel& level, double amplitude = 1.0)
        : couplings_(couplings), level_(level), amplitude_(amplitude)
    {
        const auto& qn = level.quantum_numbers;
        leading_ = qn.kappa.value() + level.eta2;
        trailing_ = 2.0 * level.gamma + qn.n_r;
        order_ = 2.0 * level.gamma;
    }

    const BoundLevel& level() const { return level_; }
    const CoulombCouplings& couplings() const { return couplings_; }
    double amplitude() const { return amplitude_; }
    void set_amplitude(double amplitude) { amplitude_ = amplitude; }

    /// kappa + eta2, the coefficient of L_{n_r}.
    double leading_coefficient() const { return leading_; }
    /// +-(2 gamma + n_r), the coefficient of L_{n_r - 1} in g (+) or f (-).
    double trailing_coefficient(Component c) const { return c == Component::upper ? trailing_ : -trailing_; }
    double laguerre_order() const { return order_; }

    /// m-th rho-derivative of the polynomial factor.
    double polynomial(Component c, double rho, int m = 0) const
    {
        const int n_r = level_.quantum_numbers.n_r;
        double value = leading_ * poly::laguerre_derivative(n_r, order_, rho, m);
        if (n_r >= 1) {
            value += trailing_coefficient(c) * poly::laguerre_derivative(n_r - 1, order_, rho, m);
        }
        return value;
    }

    /// Signed constant in front of the polynomial: -A sqrt(1+E) or A sqrt(1-E).
    double prefactor(Component c) const
    {
        return c == Component::upper ? -amplitude_ * std::sqrt(1.0 + level_.energy)
                                     : amplitude_ * std::sqrt(1.0 - level_.energy);
    }

    RadialValue evaluate(Component c, double r) const
    {
        const double lam2 = 2.0 * level_.lambda;
        const double rho = lam2 * r;
        const double gamma = level_.gamma;
        const double weight = std::exp(gamma * std::log(rho) - 0.5 * rho);
        const double p0 = polynomial(c, rho, 0);
        const double p1 = polynomial(c, rho, 1);
        const double p2 = polynomial(c, rho, 2);
        const double h = gamma / rho - 0.5;
        const double dh = -gamma / (rho * rho);
        const double pre = prefactor(c) * weight;
        RadialValue out;
        out.value = pre * p0;
        out.d1 = pre * (p1 + p0 * h) * lam2;
        out.d2 = pre * (p2 + 2.0 * p1 * h + p0 * (h * h + dh)) * lam2 * lam2;
        return out;
    }

    double g(double r) const { return evaluate(Component::upper, r).value; }
    double f(double r) const { return evaluate(Component::lower, r).value; }

private:
    CoulombCouplings couplings_;
    BoundLevel level_;
    double amplitude_;
    double leading_ = 0.0;
    double trailing_ = 0.0;
    double order_ = 0.0;
};

struct RadialSolution {
    BoundLevel level;
    CoulombCouplings couplings;
    RadialForm form;
    RadialGrid grid;
    double normalization_constant = 0.0;   // A (B when n_r = 0), positive
    std::vector<double> g_samples;
    std::vector<double> f_samples;
    int node_count_g = 0;
    int node_count_f = 0;
};

struct NodeCount {
    int n_g = 0;
    int n_f = 0;
    std::vector<double> g_zeros;   // interior zeros, r in Compton lengths
    std::vector<double> f_zeros;
};

namespace detail {

inline constexpr double normalization_tol = 1e-12;

inline NodeCount count_nodes_on(const RadialForm& form, const RadialGrid& grid)
{
    using Component = RadialForm::Component;
    const auto& level = form.level();
    const int n_r = level.quantum_numbers.n_r;
    NodeCount out;
    if (n_r == 0) {
        out.n_g = 1;
        out.n_f = 1;
        return out;
    }
    const double lam2 = 2.0 * level.lambda;
    std::vector<double> seeds(grid.points.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        seeds[i] = lam2 * grid.points[i];
    }

    auto interior_zeros = [&](Component c) {
        auto p = [&](double rho) { return form.polynomial(c, rho); };
        const double a = form.leading_coefficient();
        const double b = form.trailing_coefficient(c);
        const double at_a = a * poly::laguerre(n_r, form.laguerre_order(), 0.0);
        const double at_b = b * poly::laguerre(n_r - 1, form.laguerre_order(), 0.0);
        const bool origin_zero = std::abs(at_a + at_b) <= 1e-12 * (std::abs(at_a) + std::abs(at_b));
        const int origin_sign = origin_zero ? 0 : poly::detail::sign_of(at_a + at_b);
        auto scan = poly::detail::scan_sign_changes(p, seeds, origin_sign, 1e-12);
        const std::string name = c == Component::upper ? "g" : "f";

        const int sign_at_infinity = poly::detail::sign_of(a) * ((n_r % 2 == 0) ? 1 : -1);
        if (scan.last_sign != sign_at_infinity) {
            throw Error(ErrorCode::grid_too_coarse, "a node of " + name + " lies beyond r_max = " +
                                                        std::to_string(grid.r_max));
        }
        std::vector<double> radii;
        for (double rho : scan.roots) {
            if (!(origin_zero && rho <= seeds.front())) {
                radii.push_back(rho / lam2);
            }
        }
        const int expected = poly::combo_zero_count_rule(a, b, n_r, form.laguerre_order()) - (origin_zero ? 1 : 0);
        if (static_cast<int>(radii.size()) != expected) {
            throw Error(ErrorCode::grid_too_coarse, "found " + std::to_string(radii.size()) + " interior nodes of " +
                                                        name + ", expected " + std::to_string(expected) +
                                                        "; nodes are closer than the grid spacing");
        }
        return radii;
    };

    out.g_zeros = interior_zeros(Component::upper);
    out.f_zeros = interior_zeros(Component::lower);
    out.n_g = static_cast<int>(out.g_zeros.size()) + 1;
    out.n_f = static_cast<int>(out.f_zeros.size()) + 1;

    const auto& c = form.couplings();
    if (c.alpha_sigma * c.alpha_delta < 0.0 && (out.n_g != n_r + 1 || out.n_f != n_r + 1)) {
        throw Error(ErrorCode::node_theorem_violation,
                    "n_g = " + std::to_string(out.n_g) + ", n_f = " + std::to_string(out.n_f) +
                        " for opposite-sign couplings, expected " + std::to_string(n_r + 1));
    }
    return out;
}

template <class F>
double integrate_profile(F&& integrand, double lambda)
{
    return quad::integrate_halfline(std::forward<F>(integrand), 2.0 * lambda, normalization_tol).value;
}

} // namespace detail

/// Node counts (origin included) of g and f, located on the analytic form
/// with the solution's grid seeding the brackets.
inline NodeCount count_nodes(const RadialSolution& solution)
{
    return detail::count_nodes_on(solution.form, solution.grid);
}

/// Normalized radial functions of a validated level sampled on `grid`
/// (default: RadialGrid::default_for(level)).
inline RadialSolution wavefunctions(const CoulombCouplings& couplings, const QuantumNumbers& qn, Branch branch,
                                    const std::optional<RadialGrid>& grid = std::nullopt)
{
    const Verdict verdict = validate_bound_state(couplings, qn, branch);
    if (!verdict) {
        throw Error(ErrorCode::invalid_level, spectroscopic_label(qn) + " (" + std::string(to_string(branch)) +
                                                  ") rejected: " + std::string(to_string(verdict.reason)) +
                                                  (verdict.detail.empty() ? "" : " (" + verdict.detail + ")"));
    }
    const BoundLevel level = energy(couplings, qn, branch);
    RadialForm form(couplings, level, 1.0);

    double norm = 0.0;
    try {
        norm = detail::integrate_profile(
            [&](double r) {
                const double g = form.g(r);
                const double f = form.f(r);
                return g * g + f * f;
            },
            level.lambda);
    } catch (const Error& e) {
        throw Error(ErrorCode::normalization_failure, e.what());
    }
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error(ErrorCode::normalization_failure, "non-positive norm integral");
    }
    form.set_amplitude(1.0 / std::sqrt(norm));

    RadialSolution solution{level, couplings, form, grid ? *grid : RadialGrid::default_for(level),
                            form.amplitude(), {}, {}, 0, 0};
    solution.grid.validate();
    solution.g_samples.reserve(solution.grid.points.size());
    solution.f_samples.reserve(solution.grid.points.size());
    for (double r : solution.grid.points) {
        const double g = form.g(r);
        const double f = form.f(r);
        if (!std::isfinite(g) || !std::isfinite(f)) {
            throw Error(ErrorCode::normalization_failure, "non-finite sample at r = " + std::to_string(r));
        }
        solution.g_samples.push_back(g);
        solution.f_samples.push_back(f);
    }
    const NodeCount nodes = count_nodes(solution);
    solution.node_count_g = nodes.n_g;
    solution.node_count_f = nodes.n_f;
    return solution;
}

/// Quadrature of g^2 + f^2 over (0, inf) for a returned solution.
inline double norm_integral(const RadialSolution& solution)
{
    return detail::integrate_profile(
        [&](double r) {
            const double g = solution.form.g(r);
            const double f = solution.form.f(r);
            return g * g + f * f;
        },
        solution.level.lambda);
}

/// Radii r > 0 where E + 1 - Delta(r) or E - 1 - Sigma(r) vanish.
struct DenominatorZeros {
    std::optional<double> upper;   // E + 1 - alpha_delta / r = 0
    std::optional<double> lower;   // E - 1 - alpha_sigma / r = 0
};

inline DenominatorZeros denominator_zeros(const CoulombCouplings& c, double energy)
{
    DenominatorZeros out;
    const double ru = c.alpha_delta / (energy + 1.0);
    const double rl = c.alpha_sigma / (energy - 1.0);
    if (c.alpha_delta != 0.0 && ru > 0.0) {
        out.upper = ru;
    }
    if (c.alpha_sigma != 0.0 && rl > 0.0) {
        out.lower = rl;
    }
    return out;
}

/// The four terms of a second-order radial equation at one radius, written as
///   u'' - k(k+-1) u/r^2 + [potential derivative term] + (E-1-Sigma)(E+1-Delta) u = 0.
struct OdeTerms {
    double second_derivative = 0.0;
    double centrifugal = 0.0;
    double coupling = 0.0;   // Delta'-term for g, Sigma'-term for f
    double binding = 0.0;

    double sum() const { return second_derivative + centrifugal + coupling + binding; }
    double magnitude() const
    {
        return std::abs(second_derivative) + std::abs(centrifugal) + std::abs(coupling) + std::abs(binding);
    }
};

/// Terms of the g equation (Delta' coupling) or f equation (Sigma' coupling).
inline OdeTerms ode_terms(const RadialForm& form, RadialForm::Component component, double r)
{
    const auto& c = form.couplings();
    const double e = form.level().energy;
    const int kappa = form.level().quantum_numbers.kappa.value();
    const RadialValue u = form.evaluate(component, r);
    const double sigma = c.alpha_sigma / r;
    const double delta = c.alpha_delta / r;
    OdeTerms t;
    t.second_derivative = u.d2;
    t.binding = (e - 1.0 - sigma) * (e + 1.0 - delta) * u.value;
    if (component == RadialForm::Component::upper) {
        const double delta_prime = -c.alpha_delta / (r * r);
        t.centrifugal = -static_cast<double>(kappa) * (kappa + 1) * u.value / (r * r);
        t.coupling = delta_prime == 0.0 ? 0.0 : delta_prime / (e + 1.0 - delta) * (u.d1 + kappa * u.value / r);
    } else {
        const double sigma_prime = -c.alpha_sigma / (r * r);
        t.centrifugal = -static_cast<double>(kappa) * (kappa - 1) * u.value / (r * r);
        t.coupling = sigma_prime == 0.0 ? 0.0 : sigma_prime / (e - 1.0 - sigma) * (u.d1 - kappa * u.value / r);
    }
    return t;
}

struct OdeResidual {
    double residual_g = 0.0;   // max over points of |sum| / sum|term|
    double residual_f = 0.0;
    std::size_t points_used = 0;
};

/// Relative residual max-norm of the second-order radial equations over the
/// grid, skipping points within 5 grid indices of a denominator zero.
inline OdeResidual ode_residual(const RadialSolution& solution, const CoulombCouplings& couplings)
{
    const auto& points = solution.grid.points;
    const DenominatorZeros zeros = denominator_zeros(couplings, solution.level.energy);
    RadialForm form(couplings, solution.level, solution.normalization_constant);

    std::vector<bool> excluded(points.size(), false);
    for (const auto& pole : {zeros.upper, zeros.lower}) {
        if (!pole) {
            continue;
        }
        const auto it = std::lower_bound(points.begin(), points.end(), *pole);
        const auto nearest = static_cast<std::ptrdiff_t>(it - points.begin());
        for (std::ptrdiff_t k = nearest - 1; k <= nearest; ++k) {
            if (k >= 0 && k < static_cast<std::ptrdiff_t>(points.size()) &&
                std::abs(points[static_cast<std::size_t>(k)] - *pole) <= 1e-12 * *pole) {
                throw Error(ErrorCode::singularity_on_grid,
                            "grid point coincides with denominator zero r = " + std::to_string(*pole));
            }
        }
        for (std::ptrdiff_t k = nearest - 6; k <= nearest + 5; ++k) {
            if (k >= 0 && k < static_cast<std::ptrdiff_t>(points.size())) {
                excluded[static_cast<std::size_t>(k)] = true;
            }
        }
    }

    OdeResidual out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (excluded[i]) {
            continue;
        }
        const OdeTerms tg = ode_terms(form, RadialForm::Component::upper, points[i]);
        const OdeTerms tf = ode_terms(form, RadialForm::Component::lower, points[i]);
        if (tg.magnitude() > 0.0) {
            out.residual_g = std::max(out.residual_g, std::abs(tg.sum()) / tg.magnitude());
        }
        if (tf.magnitude() > 0.0) {
            out.residual_f = std::max(out.residual_f, std::abs(tf.sum()) / tf.magnitude());
        }
        ++out.points_used;
    }
    return out;
}

enum class OrbitKind { spin_orbit, pseudospin_orbit };

struct SOProfile {
    OrbitKind kind = OrbitKind::spin_orbit;
    std::vector<double> integrand_samples;   // per grid point, already divided by the component norm
    std::vector<double> pole_radii;          // from the Coulomb forms, ascending
    std::optional<double> value;             // integral, only when no pole lies on (0, inf)
};

/// Integrand of the spin-orbit (upper component, factor 1+kappa) or
/// pseudospin-orbit (lower component, factor 1-kappa) energy term.
inline SOProfile so_pso_profile(const RadialSolution& solution, const CoulombCouplings& couplings, OrbitKind kind)
{
    const double e = solution.level.energy;
    const int kappa = solution.level.quantum_numbers.kappa.value();
    const double as = couplings.alpha_sigma;
    const double ad = couplings.alpha_delta;
    RadialForm form(couplings, solution.level, solution.normalization_constant);
    const bool spin = kind == OrbitKind::spin_orbit;

    SOProfile out;
    out.kind = kind;
    const DenominatorZeros zeros = denominator_zeros(couplings, e);
    if (zeros.upper) {
        out.pole_radii.push_back(*zeros.upper);
    }
    if (!spin && zeros.lower) {
        out.pole_radii.push_back(*zeros.lower);
    }
    std::sort(out.pole_radii.begin(), out.pole_radii.end());

    const double factor = spin ? 1.0 + kappa : 1.0 - kappa;
    // -Delta'/(E+1-Delta)^2 = ad / ((E+1) r - ad)^2 and
    // -Sigma'/((E-1-Sigma)(E+1-Delta)) = as / (((E-1) r - as)((E+1) r - ad)).
    auto raw = [&](double r) {
        if (factor == 0.0) {
            return 0.0;
        }
        if (spin) {
            if (ad == 0.0) {
                return 0.0;
            }
            const double g = form.g(r);
            const double d = (e + 1.0) * r - ad;
            return ad / (d * d) * factor / r * g * g;
        }
        if (as == 0.0) {
            return 0.0;
        }
        const double f = form.f(r);
        return as / (((e - 1.0) * r - as) * ((e + 1.0) * r - ad)) * factor / r * f * f;
    };

    const double component_norm = detail::integrate_profile(
        [&](double r) {
            const double u = spin ? form.g(r) : form.f(r);
            return u * u;
        },
        solution.level.lambda);

    out.integrand_samples.reserve(solution.grid.points.size());
    for (double r : solution.grid.points) {
        out.integrand_samples.push_back(raw(r) / component_norm);
    }
    if (out.pole_radii.empty()) {
        out.value = detail::integrate_profile(raw, solution.level.lambda) / component_norm;
    }
    return out;
}

} // namespace dirac_coulomb
