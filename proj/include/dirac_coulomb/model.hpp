#pragma once

// Core value types for the Dirac equation with scalar and vector Coulomb
// potentials: couplings, quantum numbers, bound levels and their validation.
//
// Everything is in natural units (mc^2 = 1, hbar c = 1, lengths in the
// Compton length hbar/(mc)); UnitSystem only rescales at the I/O boundary.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"

namespace dirac_coulomb {

struct UnitSystem {
    double mass_energy = 1.0;      // mc^2 in the caller's energy unit
    double compton_length = 1.0;   // hbar/(mc) in the caller's length unit

    void validate() const
    {
        if (!(mass_energy > 0.0) || !(compton_length > 0.0) || !std::isfinite(mass_energy) ||
            !std::isfinite(compton_length)) {
            throw Error(ErrorCode::invalid_argument, "unit scales must be finite and positive");
        }
    }
};

/// Coulomb strengths of the sum Sigma = V + S and difference Delta = V - S
/// potentials, Sigma(r) = alpha_sigma hbar c / r.
struct CoulombCouplings {
    double alpha_sigma = 0.0;
    double alpha_delta = 0.0;

    static CoulombCouplings from_vector_scalar(double alpha_v, double alpha_s)
    {
        return {alpha_v + alpha_s, alpha_v - alpha_s};
    }

    double alpha_v() const { return 0.5 * (alpha_sigma + alpha_delta); }
    double alpha_s() const { return 0.5 * (alpha_sigma - alpha_delta); }

    bool operator==(const CoulombCouplings&) const = default;
};

/// Nonzero Dirac quantum number kappa.
class Kappa {
public:
    explicit Kappa(int value) : value_(value)
    {
        if (value == 0) {
            throw Error(ErrorCode::zero_kappa, "kappa must be nonzero");
        }
    }

    int value() const { return value_; }
    int magnitude() const { return std::abs(value_); }
    int sign() const { return value_ > 0 ? 1 : -1; }

    bool operator==(const Kappa&) const = default;

private:
    int value_;
};

struct QuantumNumbers {
    int n_r;
    Kappa kappa;

    QuantumNumbers(int radial, int kappa_value) : n_r(radial), kappa(kappa_value)
    {
        if (radial < 0) {
            throw Error(ErrorCode::invalid_argument, "n_r must be non-negative");
        }
    }

    /// Principal quantum number n = n_r + |kappa|.
    int n() const { return n_r + kappa.magnitude(); }
    /// Orbital angular momentum of the upper component.
    int ell() const { return kappa.value() > 0 ? kappa.value() : -kappa.value() - 1; }
    /// Orbital angular momentum of the lower component (kappa -> -kappa).
    int ell_tilde() const { return kappa.value() > 0 ? kappa.value() - 1 : -kappa.value(); }
    int two_j() const { return 2 * kappa.magnitude() - 1; }
    double j() const { return kappa.magnitude() - 0.5; }

    bool operator==(const QuantumNumbers&) const = default;
};

enum class Branch { plus, minus };

constexpr std::string_view to_string(Branch branch) noexcept
{
    return branch == Branch::plus ? "plus" : "minus";
}

constexpr Branch opposite(Branch branch) noexcept
{
    return branch == Branch::plus ? Branch::minus : Branch::plus;
}

inline std::optional<Branch> parse_branch(std::string_view text)
{
    if (text == "plus" || text == "+") {
        return Branch::plus;
    }
    if (text == "minus" || text == "-") {
        return Branch::minus;
    }
    return std::nullopt;
}

namespace detail {
inline constexpr std::string_view orbital_letters = "spdfghiklmnoqrtuv";
}

/// Spectroscopic label n l_j of the upper component, e.g. "2p1/2".
inline std::string spectroscopic_label(const QuantumNumbers& qn)
{
    const auto ell = static_cast<std::size_t>(qn.ell());
    std::string label = std::to_string(qn.n());
    label += ell < detail::orbital_letters.size() ? std::string(1, detail::orbital_letters[ell])
                                                   : "[l=" + std::to_string(ell) + "]";
    label += std::to_string(qn.two_j()) + "/2";
    return label;
}

/// Parses "2p3/2" (optionally "2p_3/2") or a raw pair "n_r,kappa" / "(n_r,kappa)".
inline QuantumNumbers parse_state(std::string_view text)
{
    auto fail = [&](const std::string& why) -> Error {
        return Error(ErrorCode::invalid_label, "'" + std::string(text) + "': " + why);
    };
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') {
            s += c;
        }
    }
    if (s.empty()) {
        throw fail("empty label");
    }

    auto parse_int = [&](std::string_view part) {
        if (part.empty()) {
            throw fail("missing integer");
        }
        std::size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(std::string(part), &pos);
        } catch (const std::exception&) {
            throw fail("bad integer");
        }
        if (pos != part.size()) {
            throw fail("bad integer");
        }
        return value;
    };

    if (const auto comma = s.find(','); comma != std::string::npos) {
        const int n_r = parse_int(std::string_view(s).substr(0, comma));
        const int kappa = parse_int(std::string_view(s).substr(comma + 1));
        if (n_r < 0 || kappa == 0) {
            throw fail("need n_r >= 0 and kappa != 0");
        }
        return QuantumNumbers(n_r, kappa);
    }

    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
    }
    if (i == 0 || i == s.size()) {
        throw fail("expected <n><letter><2j>/2");
    }
    const int n = parse_int(std::string_view(s).substr(0, i));
    const char letter = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
    const auto ell_pos = detail::orbital_letters.find(letter);
    if (ell_pos == std::string_view::npos) {
        throw fail("unknown orbital letter");
    }
    const int ell = static_cast<int>(ell_pos);
    std::string_view rest = std::string_view(s).substr(i + 1);
    if (!rest.empty() && rest.front() == '_') {
        rest.remove_prefix(1);
    }
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos || rest.substr(slash + 1) != "2") {
        throw fail("j must be written as <2j>/2");
    }
    const int two_j = parse_int(rest.substr(0, slash));
    int kappa = 0;
    if (two_j == 2 * ell + 1) {
        kappa = -(ell + 1);
    } else if (two_j == 2 * ell - 1 && ell > 0) {
        kappa = ell;
    } else {
        throw fail("j must be l +- 1/2");
    }
    const int n_r = n - std::abs(kappa);
    if (n_r < 0) {
        throw fail("n must be at least |kappa|");
    }
    return QuantumNumbers(n_r, kappa);
}

/// One bound level with the parameters of its closed-form radial solution.
struct BoundLevel {
    double energy = 0.0;   // E / mc^2
    double lambda = 0.0;   // sqrt(1 - E^2), inverse decay length
    double gamma = 0.0;    // sqrt(kappa^2 - alpha_delta alpha_sigma)
    double xi = 0.0;       // n_r + gamma
    double eta1 = 0.0;
    double eta2 = 0.0;
    QuantumNumbers quantum_numbers{0, -1};
    Branch branch = Branch::plus;
    double quantization_residual = 0.0;   // eta1 + xi; zero for a genuine root

    std::string label() const { return spectroscopic_label(quantum_numbers); }

    bool operator==(const BoundLevel&) const = default;
};

/// Invariants of a level at relative tolerance tol: |E| < 1, eta1 = -xi,
/// eta2^2 - eta1^2 = alpha_delta alpha_sigma, lambda = sqrt(1 - E^2).
inline bool level_invariants_hold(const BoundLevel& level, const CoulombCouplings& c, double tol = 1e-10)
{
    const double scale_eta = std::max(1.0, std::abs(level.xi));
    const double product = c.alpha_delta * c.alpha_sigma;
    const double eta_identity = level.eta2 * level.eta2 - level.eta1 * level.eta1 - product;
    return std::abs(level.energy) < 1.0 && level.gamma > 0.0 && level.lambda > 0.0 &&
           std::abs(level.eta1 + level.xi) <= tol * scale_eta &&
           std::abs(eta_identity) <= tol * std::max({1.0, level.eta2 * level.eta2, std::abs(product)}) &&
           std::abs(level.lambda - std::sqrt(1.0 - level.energy * level.energy)) <= tol;
}

/// gamma = sqrt(kappa^2 - alpha_delta alpha_sigma); NaN when imaginary.
template <class Real>
Real gamma_parameter(Real alpha_sigma, Real alpha_delta, int kappa)
{
    using std::sqrt;
    const Real radicand = Real(kappa) * Real(kappa) - alpha_delta * alpha_sigma;
    if (!(radicand > Real(0))) {
        return Real(std::numeric_limits<double>::quiet_NaN());
    }
    return sqrt(radicand);
}

/// Both roots of the closed-form eigenvalue condition, E^+ or E^-, in units
/// of mc^2. No validity filtering: spurious roots and |E| >= 1 are returned
/// as computed.
template <class Real>
Real closed_form_energy(Real alpha_sigma, Real alpha_delta, int n_r, int kappa, Branch branch)
{
    using std::sqrt;
    const Real xi = Real(n_r) + gamma_parameter(alpha_sigma, alpha_delta, kappa);
    const Real root = Real(4) * xi * sqrt(xi * xi + alpha_delta * alpha_sigma);
    const Real numerator = alpha_delta * alpha_delta - alpha_sigma * alpha_sigma + (branch == Branch::plus ? root : -root);
    const Real sum = alpha_delta + alpha_sigma;
    return numerator / (sum * sum + Real(4) * xi * xi);
}

/// 1 + E and 1 - E of a closed-form root, each free of the cancellation that
/// E + 1 suffers when E sits next to -1 (and 1 - E next to +1).
struct GapDistances {
    double below = 0.0;   // 1 + E
    double above = 0.0;   // 1 - E
};

inline GapDistances closed_form_gaps(double alpha_sigma, double alpha_delta, int n_r, int kappa, Branch branch)
{
    const double product = alpha_delta * alpha_sigma;
    const double xi = n_r + gamma_parameter(alpha_sigma, alpha_delta, kappa);
    const double t = xi + std::sqrt(xi * xi + product);
    const double sum = alpha_delta + alpha_sigma;
    const double denom = sum * sum + 4.0 * xi * xi;
    GapDistances d;
    if (branch == Branch::plus) {
        // 4 xi (xi - s) = -4 xi ad as / t folds the near-cancelling terms together
        d.above = 2.0 * alpha_sigma * alpha_sigma * (1.0 + alpha_delta * alpha_delta / (t * t)) / denom;
        d.below = alpha_delta * sum >= 0.0 ? (2.0 * alpha_delta * sum + 4.0 * xi * t) / denom : 2.0 - d.above;
    } else {
        d.below = 2.0 * alpha_delta * alpha_delta * (1.0 + alpha_sigma * alpha_sigma / (t * t)) / denom;
        d.above = alpha_sigma * sum >= 0.0 ? (2.0 * alpha_sigma * sum + 4.0 * xi * t) / denom : 2.0 - d.below;
    }
    return d;
}

/// Derived spectral parameters of a candidate energy, given 1 + E and 1 - E.
inline BoundLevel derive_params(const CoulombCouplings& c, const QuantumNumbers& qn, double energy, Branch branch,
                                GapDistances gaps)
{
    if (!(std::abs(energy) < 1.0) || !(gaps.below > 0.0) || !(gaps.above > 0.0)) {
        throw Error(ErrorCode::energy_out_of_gap, "|E| = " + std::to_string(std::abs(energy)) + " mc^2");
    }
    const int kappa = qn.kappa.value();
    if (!(c.alpha_sigma * c.alpha_delta < static_cast<double>(kappa) * kappa)) {
        throw Error(ErrorCode::gamma_imaginary, "alpha_sigma alpha_delta >= kappa^2");
    }
    BoundLevel level;
    level.energy = energy;
    level.quantum_numbers = qn;
    level.branch = branch;
    level.lambda = std::sqrt(gaps.above * gaps.below);
    level.gamma = gamma_parameter(c.alpha_sigma, c.alpha_delta, kappa);
    level.xi = qn.n_r + level.gamma;
    const double upper = c.alpha_sigma * gaps.below;
    const double lower = -c.alpha_delta * gaps.above;
    level.eta1 = (upper + lower) / (2.0 * level.lambda);
    level.eta2 = (upper - lower) / (2.0 * level.lambda);
    level.quantization_residual = level.eta1 + level.xi;
    return level;
}

/// Derived spectral parameters of a candidate energy.
inline BoundLevel derive_params(const CoulombCouplings& c, const QuantumNumbers& qn, double energy, Branch branch)
{
    return derive_params(c, qn, energy, branch, {1.0 + energy, 1.0 - energy});
}

/// Derived parameters of the closed-form root itself.
inline BoundLevel closed_form_level(const CoulombCouplings& c, const QuantumNumbers& qn, Branch branch)
{
    const int kappa = qn.kappa.value();
    const double e = closed_form_energy(c.alpha_sigma, c.alpha_delta, qn.n_r, kappa, branch);
    if (!(std::abs(e) < 1.0)) {
        return derive_params(c, qn, e, branch);   // throws energy_out_of_gap
    }
    return derive_params(c, qn, e, branch, closed_form_gaps(c.alpha_sigma, c.alpha_delta, qn.n_r, kappa, branch));
}

/// Outcome of validate_bound_state; `reason` is meaningful only when rejected.
struct Verdict {
    bool accepted = false;
    ErrorCode reason = ErrorCode::invalid_argument;
    std::string detail;

    explicit operator bool() const { return accepted; }

    static Verdict accept() { return {true, ErrorCode::invalid_argument, {}}; }
    static Verdict reject(ErrorCode why, std::string detail) { return {false, why, std::move(detail)}; }
};

/// Checks whether (couplings, qn, branch) describes a normalizable bound state.
inline Verdict validate_bound_state(const CoulombCouplings& c, const QuantumNumbers& qn, Branch branch)
{
    const double as = c.alpha_sigma;
    const double ad = c.alpha_delta;
    const int kappa = qn.kappa.value();
    if (!std::isfinite(as) || !std::isfinite(ad)) {
        return Verdict::reject(ErrorCode::invalid_argument, "couplings must be finite");
    }
    if (as == 0.0 && ad == 0.0) {
        return Verdict::reject(ErrorCode::no_bound_state, "no potential");
    }
    if (as > 0.0 && ad < 0.0) {
        return Verdict::reject(ErrorCode::no_bound_state, "alpha_sigma > 0 with alpha_delta < 0");
    }
    if (!(as * ad < static_cast<double>(kappa) * kappa)) {
        return Verdict::reject(ErrorCode::gamma_imaginary, "alpha_sigma alpha_delta >= kappa^2");
    }
    if (qn.n_r == 0 && ((branch == Branch::plus && kappa > 0) || (branch == Branch::minus && kappa < 0))) {
        return Verdict::reject(ErrorCode::n_r0_sign_rule,
                               branch == Branch::plus ? "E+ with n_r = 0 needs kappa < 0"
                                                      : "E- with n_r = 0 needs kappa > 0");
    }
    const double energy = closed_form_energy(as, ad, qn.n_r, kappa, branch);
    if (!(std::abs(energy) < 1.0)) {
        return Verdict::reject(ErrorCode::energy_out_of_gap, "E = " + std::to_string(energy) + " mc^2");
    }
    if (!(as * (energy + 1.0) + ad * (energy - 1.0) < 0.0)) {
        return Verdict::reject(ErrorCode::spurious_root, "root violates alpha_sigma(E+1) + alpha_delta(E-1) < 0");
    }
    const BoundLevel level = closed_form_level(c, qn, branch);
    if (qn.n_r == 0 && std::abs(kappa + level.eta2) <= 1e-8 * std::abs(kappa)) {
        return Verdict::reject(ErrorCode::n_r0_sign_rule, "kappa + eta2 vanishes");
    }
    if (!level_invariants_hold(level, c)) {
        return Verdict::reject(ErrorCode::spurious_root, "quantization condition eta1 = -xi not satisfied");
    }
    return Verdict::accept();
}

} // namespace dirac_coulomb
