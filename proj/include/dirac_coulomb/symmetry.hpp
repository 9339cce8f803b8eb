#pragma once

// Spin (alpha_delta -> 0) and pseudospin (alpha_sigma -> 0) limits: power
// series of E^+- around each limit, exact-symmetry energies, the hydrogenic
// reduction used as an independent oracle, doublet splittings and
// finite-difference perturbativity probes.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "model.hpp"
#include "spectrum.hpp"

namespace dirac_coulomb {

enum class SymmetryKind { spin, pseudospin };

constexpr std::string_view to_string(SymmetryKind kind) noexcept
{
    return kind == SymmetryKind::spin ? "spin" : "pseudospin";
}

inline std::optional<SymmetryKind> parse_symmetry_kind(std::string_view text)
{
    if (text == "spin") {
        return SymmetryKind::spin;
    }
    if (text == "pseudospin") {
        return SymmetryKind::pseudospin;
    }
    return std::nullopt;
}

enum class ExpansionParameter { alpha_delta, alpha_sigma };

constexpr std::string_view to_string(ExpansionParameter p) noexcept
{
    return p == ExpansionParameter::alpha_delta ? "alpha_delta" : "alpha_sigma";
}

namespace detail {

// Second-order coefficient shared (up to sign) by the E^+ spin series and the
// E^- pseudospin series; `a` is the non-expanded coupling.
template <class Real>
Real second_order_coefficient(Real a, int n, int kappa)
{
    const Real nn = Real(n);
    const Real k2 = Real(kappa) * Real(kappa);
    const Real kabs = Real(std::abs(kappa));
    const Real a2 = a * a;
    const Real d = a2 + Real(4) * nn * nn;
    const Real brace = Real(4) * nn * nn * nn * kabs * (a2 + Real(4) * (nn * nn - Real(4) * k2)) +
                       k2 * (a2 * (k2 - Real(4) * nn * nn) + Real(20) * k2 * nn * nn + Real(48) * nn * nn * nn * nn);
    return a2 * a2 * brace / (Real(2) * k2 * k2 * nn * nn * d * d * d);
}

template <class Real>
Real angular_factor(int n, int kappa)
{
    return Real(kappa) * Real(kappa) - Real(2 * n) * Real(std::abs(kappa));
}

} // namespace detail

/// Coefficients c_0..c_k of E^+- / mc^2 as a power series in alpha_delta at
/// fixed alpha_sigma. E^+ carries orders 0, 1, 2; E^- carries orders 0, 2, 3
/// (its linear coefficient is identically zero and is kept as 0).
template <class Real>
std::vector<Real> spin_series_coefficients(Real alpha_sigma, int n, int kappa, Branch branch)
{
    const Real nn = Real(n);
    const Real k2 = Real(kappa) * Real(kappa);
    const Real s = alpha_sigma;
    if (branch == Branch::plus) {
        const Real d = s * s + Real(4) * nn * nn;
        return {Real(1) - Real(2) * s * s / d,
                Real(4) * s * s * s * detail::angular_factor<Real>(n, kappa) / (k2 * d * d),
                -detail::second_order_coefficient(s, n, kappa)};
    }
    return {Real(-1), Real(0), Real(1) / (Real(2) * nn * nn),
            -s * detail::angular_factor<Real>(n, kappa) / (Real(4) * k2 * nn * nn * nn * nn)};
}

/// Coefficients of E^+- / mc^2 as a power series in alpha_sigma at fixed
/// alpha_delta; the charge-conjugate mirror of spin_series_coefficients.
template <class Real>
std::vector<Real> pspin_series_coefficients(Real alpha_delta, int n, int kappa, Branch branch)
{
    const Real nn = Real(n);
    const Real k2 = Real(kappa) * Real(kappa);
    const Real d = alpha_delta;
    if (branch == Branch::plus) {
        return {Real(1), Real(0), Real(-1) / (Real(2) * nn * nn),
                d * detail::angular_factor<Real>(n, kappa) / (Real(4) * k2 * nn * nn * nn * nn)};
    }
    const Real den = d * d + Real(4) * nn * nn;
    return {Real(-1) + Real(2) * d * d / den,
            Real(-4) * d * d * d * detail::angular_factor<Real>(n, kappa) / (k2 * den * den),
            detail::second_order_coefficient(d, n, kappa)};
}

/// Horner evaluation of sum_{p <= top} c_p x^p.
template <class Real>
Real evaluate_series(const std::vector<Real>& coefficients, Real x, int top)
{
    Real value = Real(0);
    for (int p = std::min<int>(top, static_cast<int>(coefficients.size()) - 1); p >= 0; --p) {
        value = value * x + coefficients[static_cast<std::size_t>(p)];
    }
    return value;
}

struct ExpansionResult {
    std::vector<std::pair<int, double>> order_terms;   // (power, coefficient), powers 0..k
    double truncated_value = 0.0;                      // E / mc^2 of the truncated series
    ExpansionParameter expansion_parameter = ExpansionParameter::alpha_delta;
    double parameter_value = 0.0;
    /// False when the zeroth order is +-mc^2: no bound state at the symmetry point.
    bool realizable = true;

    int top_power() const { return order_terms.empty() ? -1 : order_terms.back().first; }
};

namespace detail {

inline ExpansionResult make_expansion(const std::vector<double>& coefficients, int max_order, ExpansionParameter p,
                                      double x)
{
    if (max_order < 0) {
        throw Error(ErrorCode::invalid_argument, "expansion order must be non-negative");
    }
    ExpansionResult out;
    out.expansion_parameter = p;
    out.parameter_value = x;
    const int top = std::min<int>(max_order, static_cast<int>(coefficients.size()) - 1);
    for (int power = 0; power <= top; ++power) {
        out.order_terms.emplace_back(power, coefficients[static_cast<std::size_t>(power)]);
    }
    out.truncated_value = evaluate_series(coefficients, x, top);
    out.realizable = std::abs(coefficients.front()) < 1.0;
    return out;
}

} // namespace detail

/// Series of E^+- in alpha_delta around exact spin symmetry, evaluated at
/// c.alpha_delta. max_order < 0 keeps every available order.
inline ExpansionResult spin_expansion(const CoulombCouplings& c, const QuantumNumbers& qn, Branch branch,
                                      int max_order = -1)
{
    auto coefficients = spin_series_coefficients(c.alpha_sigma, qn.n(), qn.kappa.value(), branch);
    const int order = max_order < 0 ? static_cast<int>(coefficients.size()) - 1 : max_order;
    return detail::make_expansion(coefficients, order, ExpansionParameter::alpha_delta, c.alpha_delta);
}

/// Series of E^+- in alpha_sigma around exact pseudospin symmetry, evaluated
/// at c.alpha_sigma.
inline ExpansionResult pspin_expansion(const CoulombCouplings& c, const QuantumNumbers& qn, Branch branch,
                                       int max_order = -1)
{
    auto coefficients = pspin_series_coefficients(c.alpha_delta, qn.n(), qn.kappa.value(), branch);
    const int order = max_order < 0 ? static_cast<int>(coefficients.size()) - 1 : max_order;
    return detail::make_expansion(coefficients, order, ExpansionParameter::alpha_sigma, c.alpha_sigma);
}

/// Energy / mc^2 with exact spin (alpha_delta = 0, E^+) or pseudospin
/// (alpha_sigma = 0, E^-) symmetry; depends on n only.
template <class Real>
Real exact_symmetry_energy(SymmetryKind kind, Real coupling, int n)
{
    if (n < 1) {
        throw Error(ErrorCode::invalid_n, "n must be at least 1");
    }
    const Real c2 = coupling * coupling;
    const Real shift = Real(2) * c2 / (c2 + Real(4) * Real(n) * Real(n));
    if (kind == SymmetryKind::spin) {
        if (!(coupling < Real(0))) {
            throw Error(ErrorCode::wrong_sign_coupling, "spin symmetry binds only for alpha_sigma < 0");
        }
        return Real(1) - shift;
    }
    if (!(coupling > Real(0))) {
        throw Error(ErrorCode::wrong_sign_coupling, "pseudospin symmetry binds only for alpha_delta > 0");
    }
    return Real(-1) + shift;
}

inline constexpr double fine_structure_constant = 7.2973525693e-3;

struct SymmetryReduction {
    double effective_energy = 0.0;          // E - mc^2 (spin) or -E - mc^2 (pseudospin)
    double primed_energy = 0.0;             // (eff/2 + 1) eff
    double primed_coupling = 0.0;           // strength of Sigma' (spin) or Delta' (pseudospin)
    double effective_atomic_number = 0.0;   // Z'
    double fine_structure_constant = dirac_coulomb::fine_structure_constant;
    double energy = 0.0;                    // recovered E / mc^2
    int iterations = 0;
};

/// Solves the Schroedinger-like hydrogenic problem obeyed by the upper
/// (spin) or lower (pseudospin) component,
///   eff' = (eff/2 + 1) eff = -(eff/2 + 1)^2 coupling^2 / (2 n^2),
/// by damped fixed-point iteration.
inline SymmetryReduction hydrogenic_reduction_oracle(SymmetryKind kind, double coupling, int n)
{
    if (n < 1) {
        throw Error(ErrorCode::invalid_n, "n must be at least 1");
    }
    if (kind == SymmetryKind::spin ? !(coupling < 0.0) : !(coupling > 0.0)) {
        throw Error(ErrorCode::wrong_sign_coupling, std::string(to_string(kind)) + " coupling has the wrong sign");
    }
    constexpr double damping = 0.5;
    constexpr double tolerance = 1e-13;
    constexpr int max_steps = 10'000;

    const double strength = coupling * coupling / (2.0 * n * n);
    double eff = 0.0;
    int step = 0;
    for (; step < max_steps; ++step) {
        const double scale = 0.5 * eff + 1.0;
        const double next = (1.0 - damping) * eff + damping * (-scale * strength);
        const double change = std::abs(next - eff);
        eff = next;
        if (!std::isfinite(eff)) {
            break;
        }
        if (change < tolerance) {
            break;
        }
    }
    if (step == max_steps || !std::isfinite(eff)) {
        throw Error(ErrorCode::no_convergence, "hydrogenic fixed point did not converge");
    }

    SymmetryReduction out;
    const double scale = 0.5 * eff + 1.0;
    out.effective_energy = eff;
    out.primed_energy = scale * eff;
    out.iterations = step + 1;
    if (kind == SymmetryKind::spin) {
        out.primed_coupling = scale * coupling;
        out.effective_atomic_number = -scale * coupling / fine_structure_constant;
        out.energy = eff + 1.0;
    } else {
        out.primed_coupling = -scale * coupling;
        out.effective_atomic_number = scale * coupling / fine_structure_constant;
        out.energy = -eff - 1.0;
    }
    return out;
}

/// A (pseudo)spin doublet. Spin partners share l and n: (n_r, kappa = l) and
/// (n_r - 1, kappa = -l - 1). Pseudospin partners share l~ and n:
/// (n_r, kappa < 0) and (n_r - 1, -kappa + 1).
struct DoubletSpec {
    SymmetryKind kind;
    QuantumNumbers first;
    QuantumNumbers second;

    static DoubletSpec spin(int n_r, int ell)
    {
        if (n_r < 1 || ell < 1) {
            throw Error(ErrorCode::invalid_doublet, "spin doublet needs n_r >= 1 and l >= 1");
        }
        return from_pair(SymmetryKind::spin, QuantumNumbers(n_r, ell), QuantumNumbers(n_r - 1, -ell - 1));
    }

    static DoubletSpec pseudospin(int n_r, int kappa)
    {
        if (n_r < 1 || kappa >= 0) {
            throw Error(ErrorCode::invalid_doublet, "pseudospin doublet needs n_r >= 1 and kappa < 0");
        }
        return from_pair(SymmetryKind::pseudospin, QuantumNumbers(n_r, kappa), QuantumNumbers(n_r - 1, -kappa + 1));
    }

    /// Checks the sharing invariants of an arbitrary pair.
    static DoubletSpec from_pair(SymmetryKind kind, const QuantumNumbers& a, const QuantumNumbers& b)
    {
        const bool shares_l = kind == SymmetryKind::spin ? a.ell() == b.ell() : a.ell_tilde() == b.ell_tilde();
        if (!shares_l || a.n() != b.n() || a.kappa == b.kappa) {
            throw Error(ErrorCode::invalid_doublet, spectroscopic_label(a) + " and " + spectroscopic_label(b) +
                                                        " are not " + std::string(to_string(kind)) + " partners");
        }
        return DoubletSpec{kind, a, b};
    }
};

/// E(second) - E(first) in units of mc^2.
inline double doublet_splitting(const CoulombCouplings& c, const DoubletSpec& doublet, Branch branch)
{
    for (const auto* member : {&doublet.first, &doublet.second}) {
        const Verdict verdict = validate_bound_state(c, *member, branch);
        if (!verdict) {
            throw Error(ErrorCode::partner_invalid, spectroscopic_label(*member) + " rejected (" +
                                                        std::string(to_string(verdict.reason)) + ")");
        }
    }
    return energy(c, doublet.second, branch).energy - energy(c, doublet.first, branch).energy;
}

struct ProbeReport {
    bool realizable = true;
    double numeric_slope = std::numeric_limits<double>::quiet_NaN();
    double analytic_slope = std::numeric_limits<double>::quiet_NaN();
    double mismatch = std::numeric_limits<double>::quiet_NaN();   // relative
    std::string note;
};

/// Compares the central-difference slope of E in the symmetry-breaking
/// coupling with the first-order series coefficient at the symmetry point.
inline ProbeReport perturbativity_probe(const CoulombCouplings& base, const QuantumNumbers& qn, Branch branch,
                                        SymmetryKind kind, double step = 1e-4)
{
    const bool spin = kind == SymmetryKind::spin;
    if ((spin ? base.alpha_delta : base.alpha_sigma) != 0.0) {
        throw Error(ErrorCode::invalid_argument, "probe must start at the symmetry point");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorCode::invalid_argument, "probe step must be positive");
    }

    const ExpansionResult series = spin ? spin_expansion(base, qn, branch, 1) : pspin_expansion(base, qn, branch, 1);
    ProbeReport report;
    if (!series.realizable) {
        report.realizable = false;
        report.note = std::string("zeroth order is ") + (series.order_terms.front().second > 0 ? "+" : "-") +
                      "mc^2: no bound state at the " + std::string(to_string(kind)) + " symmetry point";
        return report;
    }
    report.analytic_slope = series.order_terms.at(1).second;

    auto at = [&](double x) {
        CoulombCouplings c = base;
        (spin ? c.alpha_delta : c.alpha_sigma) = x;
        const Verdict verdict = validate_bound_state(c, qn, branch);
        if (!verdict) {
            throw Error(ErrorCode::step_too_large, "probe point " + std::to_string(x) + " rejected (" +
                                                       std::string(to_string(verdict.reason)) + ")");
        }
        return energy(c, qn, branch).energy;
    };
    auto slope = [&](double h) { return (at(h) - at(-h)) / (2.0 * h); };

    const double d1 = slope(step);
    const double d2 = slope(0.5 * step);
    const double d4 = slope(0.25 * step);
    // Central differences converge as h^2, so successive differences shrink
    // by ~4 unless both are already at the rounding floor.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() / (0.25 * step);
    const double diff_a = d1 - d2;
    const double diff_b = d2 - d4;
    if (std::abs(diff_a) > noise) {
        const double ratio = diff_a / diff_b;
        if (!(ratio > 2.5 && ratio < 6.5)) {
            throw Error(ErrorCode::step_too_large,
                        "central differences do not converge as step^2 (ratio " + std::to_string(ratio) + ")");
        }
    }
    report.numeric_slope = d1;
    report.mismatch = std::abs(d1 - report.analytic_slope) / std::max(std::abs(report.analytic_slope), 1e-300);
    report.note = "perturbative";
    return report;
}

/// A sweep of the symmetry-breaking coupling (alpha_delta for spin,
/// alpha_sigma for pseudospin) with the other coupling held fixed.
struct SymmetryScanConfig {
    SymmetryKind kind = SymmetryKind::spin;
    Branch branch = Branch::plus;
    double fixed_coupling = 0.0;
    double from = 0.0;
    double to = 0.0;
    int steps = 11;   // sweep points, endpoints included
    std::vector<QuantumNumbers> states;
    std::vector<DoubletSpec> doublets;
    bool probe = false;
    double probe_step = 1e-4;

    CoulombCouplings couplings_at(double x) const
    {
        return kind == SymmetryKind::spin ? CoulombCouplings{fixed_coupling, x} : CoulombCouplings{x, fixed_coupling};
    }

    void validate() const
    {
        if (steps < 1 || !std::isfinite(from) || !std::isfinite(to) || !std::isfinite(fixed_coupling)) {
            throw Error(ErrorCode::invalid_argument, "sweep needs finite bounds and at least one point");
        }
        if (steps == 1 && from != to) {
            throw Error(ErrorCode::invalid_argument, "a single-point sweep needs from == to");
        }
        if (states.empty() && doublets.empty()) {
            throw Error(ErrorCode::invalid_argument, "sweep needs at least one state or doublet");
        }
        for (const auto& d : doublets) {
            if (d.kind != kind) {
                throw Error(ErrorCode::invalid_doublet, "doublet kind differs from the sweep kind");
            }
        }
    }
};

struct ScanState {
    QuantumNumbers quantum_numbers{0, -1};
    std::optional<double> exact;   // empty when the level is rejected here
    std::string rejection;         // error code name when rejected
    double truncated = 0.0;
    bool realizable = true;
};

struct ScanDoublet {
    std::optional<double> splitting;
    std::string rejection;
};

struct ScanPoint {
    double parameter = 0.0;
    CoulombCouplings couplings;
    std::vector<ScanState> states;
    std::vector<ScanDoublet> doublets;
};

struct ScanProbe {
    QuantumNumbers quantum_numbers{0, -1};
    std::optional<ProbeReport> report;
    std::string error;   // set when the probe itself failed
};

struct SymmetryScan {
    SymmetryScanConfig config;
    std::vector<ScanPoint> points;
    std::vector<ScanProbe> probes;   // at the symmetry point, one per state
};

inline SymmetryScan symmetry_scan(const SymmetryScanConfig& config)
{
    config.validate();
    SymmetryScan scan;
    scan.config = config;
    const bool spin = config.kind == SymmetryKind::spin;
    for (int i = 0; i < config.steps; ++i) {
        const double x = config.steps == 1
                             ? config.from
                             : (i + 1 == config.steps ? config.to
                                                      : config.from + (config.to - config.from) * i / (config.steps - 1));
        ScanPoint point;
        point.parameter = x;
        point.couplings = config.couplings_at(x);
        for (const auto& qn : config.states) {
            ScanState st;
            st.quantum_numbers = qn;
            const Verdict verdict = validate_bound_state(point.couplings, qn, config.branch);
            if (verdict) {
                st.exact = energy(point.couplings, qn, config.branch).energy;
            } else {
                st.rejection = std::string(to_string(verdict.reason));
            }
            const ExpansionResult series = spin ? spin_expansion(point.couplings, qn, config.branch)
                                                : pspin_expansion(point.couplings, qn, config.branch);
            st.truncated = series.truncated_value;
            st.realizable = series.realizable;
            point.states.push_back(std::move(st));
        }
        for (const auto& d : config.doublets) {
            ScanDoublet sd;
            try {
                sd.splitting = doublet_splitting(point.couplings, d, config.branch);
            } catch (const Error& e) {
                sd.rejection = std::string(to_string(e.code()));
            }
            point.doublets.push_back(std::move(sd));
        }
        scan.points.push_back(std::move(point));
    }
    if (config.probe) {
        const CoulombCouplings base = config.couplings_at(0.0);
        for (const auto& qn : config.states) {
            ScanProbe probe;
            probe.quantum_numbers = qn;
            try {
                probe.report = perturbativity_probe(base, qn, config.branch, config.kind, config.probe_step);
            } catch (const Error& e) {
                probe.error = e.what();
            }
            scan.probes.push_back(std::move(probe));
        }
    }
    return scan;
}

} // namespace dirac_coulomb
