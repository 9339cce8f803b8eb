#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dirac_coulomb {

/// Failure and rejection reasons shared by every module.
enum class ErrorCode {
    invalid_argument,
    // polynomials
    invalid_degree,
    invalid_order,
    invalid_b,
    degenerate_combination,
    zero_count_mismatch,
    // model / spectrum
    zero_kappa,
    energy_out_of_gap,
    gamma_imaginary,
    no_bound_state,
    n_r0_sign_rule,
    spurious_root,
    empty_spectrum,
    invalid_n,
    invalid_label,
    // symmetry
    wrong_sign_coupling,
    no_convergence,
    partner_invalid,
    invalid_doublet,
    step_too_large,
    // radial / quadrature
    invalid_grid,
    invalid_level,
    normalization_failure,
    grid_too_coarse,
    singularity_on_grid,
    node_theorem_violation,
    non_finite_integrand,
};

/// Stable kebab-case name, used in CLI diagnostics and serialized reports.
constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::invalid_degree: return "invalid-degree";
        case ErrorCode::invalid_order: return "invalid-order";
        case ErrorCode::invalid_b: return "invalid-b";
        case ErrorCode::degenerate_combination: return "degenerate-combination";
        case ErrorCode::zero_count_mismatch: return "zero-count-mismatch";
        case ErrorCode::zero_kappa: return "zero-kappa";
        case ErrorCode::energy_out_of_gap: return "energy-out-of-gap";
        case ErrorCode::gamma_imaginary: return "gamma-imaginary";
        case ErrorCode::no_bound_state: return "no-bound-state";
        case ErrorCode::n_r0_sign_rule: return "n_r0-sign-rule";
        case ErrorCode::spurious_root: return "spurious-root";
        case ErrorCode::empty_spectrum: return "empty-spectrum";
        case ErrorCode::invalid_n: return "invalid-n";
        case ErrorCode::invalid_label: return "invalid-label";
        case ErrorCode::wrong_sign_coupling: return "wrong-sign-coupling";
        case ErrorCode::no_convergence: return "no-convergence";
        case ErrorCode::partner_invalid: return "partner-invalid";
        case ErrorCode::invalid_doublet: return "invalid-doublet";
        case ErrorCode::step_too_large: return "step-too-large";
        case ErrorCode::invalid_grid: return "invalid-grid";
        case ErrorCode::invalid_level: return "invalid-level";
        case ErrorCode::normalization_failure: return "normalization-failure";
        case ErrorCode::grid_too_coarse: return "grid-too-coarse";
        case ErrorCode::singularity_on_grid: return "singularity-on-grid";
        case ErrorCode::node_theorem_violation: return "node-theorem-violation";
        case ErrorCode::non_finite_integrand: return "non-finite-integrand";
    }
    return "unknown";
}

/// Exception carrying a machine-readable reason. what() is "<code>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code)
    {
    }

    explicit Error(ErrorCode code) : Error(code, std::string{}) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace dirac_coulomb
