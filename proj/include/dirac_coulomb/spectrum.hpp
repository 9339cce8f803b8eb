#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "error.hpp"
#include "model.hpp"

namespace dirac_coulomb {

/// Validated eigenvalue E^+ or E^- with its derived parameters.
inline BoundLevel energy(const CoulombCouplings& c, const QuantumNumbers& qn, Branch branch)
{
    const Verdict verdict = validate_bound_state(c, qn, branch);
    if (!verdict) {
        throw Error(verdict.reason, spectroscopic_label(qn) + " (" + std::string(to_string(branch)) + "): " +
                                        verdict.detail);
    }
    return closed_form_level(c, qn, branch);
}

struct ConjugateCouplings {
    CoulombCouplings couplings;
    Branch branch;
};

/// Charge conjugation: alpha_delta -> -alpha_sigma, alpha_sigma -> -alpha_delta,
/// E^+- -> E^-+. Involutive.
inline ConjugateCouplings charge_conjugate(const CoulombCouplings& c, Branch branch)
{
    return {CoulombCouplings{-c.alpha_delta, -c.alpha_sigma}, opposite(branch)};
}

/// Quantum numbers of the charge-conjugate state, which carries -kappa.
/// The energy depends on |kappa| only, so this matters solely for n_r = 0,
/// where the sign of kappa decides whether the state exists.
inline QuantumNumbers conjugate_quantum_numbers(const QuantumNumbers& qn)
{
    return QuantumNumbers(qn.n_r, -qn.kappa.value());
}

struct DegeneracyGroup {
    int id = 0;
    double energy = 0.0;                 // energy of the lowest member
    std::vector<std::size_t> members;    // indices into SpectrumTable::levels
    std::string label;                   // member labels joined by '+'

    bool operator==(const DegeneracyGroup&) const = default;
};

struct SpectrumTable {
    CoulombCouplings couplings;
    Branch branch = Branch::plus;
    int n_max = 0;
    std::vector<BoundLevel> levels;      // ascending energy, then kappa
    std::vector<int> group_of;           // group id per level
    std::vector<DegeneracyGroup> groups;

    bool operator==(const SpectrumTable&) const = default;
};

inline constexpr double degeneracy_tolerance = 1e-10;

/// Every accepted (n_r, kappa) with n = n_r + |kappa| <= n_max on one branch,
/// sorted and partitioned into degeneracy groups.
inline SpectrumTable spectrum_table(const CoulombCouplings& c, int n_max, Branch branch)
{
    if (n_max < 1) {
        throw Error(ErrorCode::invalid_n, "n_max must be at least 1");
    }
    SpectrumTable table;
    table.couplings = c;
    table.branch = branch;
    table.n_max = n_max;

    std::string first_rejection;
    for (int n = 1; n <= n_max; ++n) {
        for (int kappa = -n; kappa <= n; ++kappa) {
            if (kappa == 0) {
                continue;
            }
            const QuantumNumbers qn(n - std::abs(kappa), kappa);
            const Verdict verdict = validate_bound_state(c, qn, branch);
            if (!verdict) {
                if (first_rejection.empty() && verdict.reason != ErrorCode::n_r0_sign_rule) {
                    first_rejection = std::string(to_string(verdict.reason)) + ": " + verdict.detail;
                }
                continue;
            }
            table.levels.push_back(energy(c, qn, branch));
        }
    }
    if (table.levels.empty()) {
        throw Error(ErrorCode::empty_spectrum, first_rejection.empty() ? "no accepted level" : first_rejection);
    }

    std::sort(table.levels.begin(), table.levels.end(), [](const BoundLevel& a, const BoundLevel& b) {
        if (a.energy != b.energy) {
            return a.energy < b.energy;
        }
        return a.quantum_numbers.kappa.value() < b.quantum_numbers.kappa.value();
    });

    table.group_of.assign(table.levels.size(), -1);
    for (std::size_t i = 0; i < table.levels.size(); ++i) {
        const double e = table.levels[i].energy;
        if (table.groups.empty() || e - table.groups.back().energy >= degeneracy_tolerance) {
            DegeneracyGroup group;
            group.id = static_cast<int>(table.groups.size());
            group.energy = e;
            table.groups.push_back(group);
        }
        auto& group = table.groups.back();
        group.members.push_back(i);
        group.label += (group.label.empty() ? "" : "+") + table.levels[i].label();
        table.group_of[i] = group.id;
    }
    return table;
}

/// Non-relativistic binding energy E - mc^2 = -mc^2 alpha_v^2 / (2 n^2),
/// returned in units.mass_energy.
inline double nonrel_limit_energy(double alpha_v, int n, const UnitSystem& units = {})
{
    if (n < 1) {
        throw Error(ErrorCode::invalid_n, "n must be at least 1");
    }
    units.validate();
    return -units.mass_energy * alpha_v * alpha_v / (2.0 * n * n);
}

} // namespace dirac_coulomb
