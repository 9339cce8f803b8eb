// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// all pass. Usage: acceptance <path-to-cli>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dirac_coulomb.hpp"

using namespace dirac_coulomb;
using mp = boost::multiprecision::cpp_bin_float_50;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::vector<std::pair<QuantumNumbers, Branch>> valid_levels(const CoulombCouplings& c, int max_nr, int max_kappa)
{
    std::vector<std::pair<QuantumNumbers, Branch>> out;
    for (int n_r = 0; n_r <= max_nr; ++n_r) {
        for (int kappa = -max_kappa; kappa <= max_kappa; ++kappa) {
            if (kappa == 0) {
                continue;
            }
            for (auto b : {Branch::plus, Branch::minus}) {
                if (validate_bound_state(c, QuantumNumbers(n_r, kappa), b)) {
                    out.emplace_back(QuantumNumbers(n_r, kappa), b);
                }
            }
        }
    }
    return out;
}

// Normalization results of every solution built by the suite, for criterion 10.
double worst_norm_error = 0.0;
int solutions_built = 0;

RadialSolution build(const CoulombCouplings& c, const QuantumNumbers& qn, Branch b)
{
    RadialSolution s = wavefunctions(c, qn, b);
    worst_norm_error = std::max(worst_norm_error, std::abs(norm_integral(s) - 1.0));
    ++solutions_built;
    return s;
}

Outcome mixed_coupling_nodes()
{
    const CoulombCouplings c{-0.8, 0.5};
    std::string detail;
    bool ok = true;
    auto check = [&](const QuantumNumbers& qn, Branch b, int expected) {
        const auto s = build(c, qn, b);
        ok = ok && s.node_count_g == expected && s.node_count_f == expected;
        detail += s.level.label() + " " + std::to_string(s.node_count_g) + "/" + std::to_string(s.node_count_f) + " ";
    };
    check(QuantumNumbers(1, -1), Branch::plus, 2);
    check(QuantumNumbers(1, 1), Branch::plus, 2);
    check(QuantumNumbers(2, -2), Branch::minus, 3);
    check(QuantumNumbers(2, 2), Branch::minus, 3);
    return {ok, detail + "(n_g/n_f)"};
}

Outcome node_theorem()
{
    std::mt19937_64 g(20250101);
    std::uniform_real_distribution<double> sigma(-1.5, -0.1);
    std::uniform_real_distribution<double> delta(0.05, 1.0);
    int sets = 0;
    int levels = 0;
    int failures = 0;
    while (sets < 100) {
        const CoulombCouplings c{sigma(g), delta(g)};
        const auto list = valid_levels(c, 3, 3);
        if (list.empty()) {
            continue;
        }
        ++sets;
        for (const auto& [qn, b] : list) {
            ++levels;
            try {
                const auto s = build(c, qn, b);
                failures += (s.node_count_g != qn.n_r + 1 || s.node_count_f != qn.n_r + 1) ? 1 : 0;
            } catch (const Error&) {
                ++failures;
            }
        }
    }
    return {failures == 0, std::to_string(sets) + " coupling sets, " + std::to_string(levels) + " levels, " +
                               std::to_string(failures) + " failures"};
}

Outcome sommerfeld()
{
    double worst = 0.0;
    int checked = 0;
    for (int i = 0; i <= 17; ++i) {
        const double av = -0.9 + 0.05 * i;
        for (const auto& [qn, b] : valid_levels({av, av}, 3, 3)) {
            const double e = energy({av, av}, qn, b).energy;
            const mp xi = qn.n_r + sqrt(mp(qn.kappa.value()) * qn.kappa.value() - mp(av) * mp(av));
            const double ref = static_cast<double>(xi / sqrt(xi * xi + mp(av) * mp(av)));
            worst = std::max(worst, std::abs(e - ref) / std::abs(ref));
            ++checked;
        }
    }
    return {checked > 0 && worst <= 1e-12, std::to_string(checked) + " levels, max rel dev " + fmt(worst)};
}

Outcome charge_conjugation()
{
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> coupling(-1.5, 1.5);
    std::uniform_int_distribution<int> nr(0, 3);
    std::uniform_int_distribution<int> kap(1, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    int checked = 0;
    double worst = 0.0;
    bool ok = true;
    while (checked < 500) {
        const CoulombCouplings c{coupling(g), coupling(g)};
        const QuantumNumbers qn(nr(g), coin(g) ? kap(g) : -kap(g));
        const Branch b = coin(g) ? Branch::plus : Branch::minus;
        if (!validate_bound_state(c, qn, b)) {
            continue;
        }
        const auto cc = charge_conjugate(c, b);
        const QuantumNumbers conj = conjugate_quantum_numbers(qn);
        if (!validate_bound_state(cc.couplings, conj, cc.branch)) {
            ok = false;
        } else {
            worst = std::max(worst,
                             std::abs(energy(c, qn, b).energy + energy(cc.couplings, conj, cc.branch).energy));
        }
        ++checked;
    }
    return {ok && worst <= 1e-12, std::to_string(checked) + " tuples, max |E + E_conj| " + fmt(worst)};
}

Outcome exact_degeneracy()
{
    double worst = 0.0;
    int checked = 0;
    for (int n = 1; n <= 5; ++n) {
        const double spin_e = exact_symmetry_energy(SymmetryKind::spin, -0.8, n);
        const double pspin_e = exact_symmetry_energy(SymmetryKind::pseudospin, 0.5, n);
        for (int kappa = -n; kappa <= n; ++kappa) {
            if (kappa == 0) {
                continue;
            }
            const QuantumNumbers qn(n - std::abs(kappa), kappa);
            if (validate_bound_state({-0.8, 0.0}, qn, Branch::plus)) {
                worst = std::max(worst, std::abs(energy({-0.8, 0.0}, qn, Branch::plus).energy - spin_e));
                ++checked;
            }
            if (validate_bound_state({0.0, 0.5}, qn, Branch::minus)) {
                worst = std::max(worst, std::abs(energy({0.0, 0.5}, qn, Branch::minus).energy - pspin_e));
                ++checked;
            }
        }
    }
    return {checked >= 40 && worst <= 1e-12, std::to_string(checked) + " states, max dev " + fmt(worst)};
}

Outcome hydrogenic()
{
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
        for (int i = 1; i <= 9; ++i) {
            const double c = -0.1 * i;
            worst = std::max(worst, std::abs(hydrogenic_reduction_oracle(SymmetryKind::spin, c, n).energy -
                                             exact_symmetry_energy(SymmetryKind::spin, c, n)));
            worst = std::max(worst, std::abs(hydrogenic_reduction_oracle(SymmetryKind::pseudospin, -c, n).energy -
                                             exact_symmetry_energy(SymmetryKind::pseudospin, -c, n)));
        }
    }
    return {worst <= 1e-10, "72 grid points, max dev " + fmt(worst)};
}

Outcome expansions()
{
    struct Case {
        SymmetryKind kind;
        Branch branch;
        double fixed;
        double sign;
        QuantumNumbers qn;
    };
    const std::vector<Case> cases = {
        {SymmetryKind::spin, Branch::plus, -0.8, 1.0, QuantumNumbers(1, -1)},
        {SymmetryKind::spin, Branch::plus, -0.8, 1.0, QuantumNumbers(0, -2)},
        {SymmetryKind::spin, Branch::minus, -0.8, 1.0, QuantumNumbers(1, 1)},
        {SymmetryKind::spin, Branch::minus, -0.5, 1.0, QuantumNumbers(2, -3)},
        {SymmetryKind::pseudospin, Branch::plus, 0.5, -1.0, QuantumNumbers(1, -1)},
        {SymmetryKind::pseudospin, Branch::plus, 0.5, -1.0, QuantumNumbers(2, 3)},
        {SymmetryKind::pseudospin, Branch::minus, 0.5, -1.0, QuantumNumbers(1, 1)},
        {SymmetryKind::pseudospin, Branch::minus, 0.5, -1.0, QuantumNumbers(0, 2)},
    };
    double worst_spread = 0.0;
    double worst_slope = 0.0;
    for (const auto& c : cases) {
        const bool spin = c.kind == SymmetryKind::spin;
        const int kappa = c.qn.kappa.value();
        auto exact = [&](const mp& p) {
            return spin ? closed_form_energy<mp>(mp(c.fixed), p, c.qn.n_r, kappa, c.branch)
                        : closed_form_energy<mp>(p, mp(c.fixed), c.qn.n_r, kappa, c.branch);
        };
        const auto coeffs = spin ? spin_series_coefficients<mp>(mp(c.fixed), c.qn.n(), kappa, c.branch)
                                 : pspin_series_coefficients<mp>(mp(c.fixed), c.qn.n(), kappa, c.branch);
        const int top = static_cast<int>(coeffs.size()) - 1;
        std::vector<double> ratios;
        for (const char* mag : {"1e-2", "1e-3", "1e-4", "1e-5"}) {
            const mp p = mp(mag) * c.sign;
            ratios.push_back(static_cast<double>(abs(exact(p) - evaluate_series<mp>(coeffs, p, top)) /
                                                 pow(abs(p), top + 1)));
        }
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        worst_spread = std::max(worst_spread, *lo > 0.0 ? *hi / *lo : INFINITY);

        // linear coefficient against a central difference of the double-precision energy
        const double h = 1e-5;
        auto e_at = [&](double p) {
            return spin ? closed_form_energy(c.fixed, p, c.qn.n_r, kappa, c.branch)
                        : closed_form_energy(p, c.fixed, c.qn.n_r, kappa, c.branch);
        };
        const double fd = (e_at(h) - e_at(-h)) / (2.0 * h);
        const double c1 = static_cast<double>(coeffs.at(1));
        worst_slope = std::max(worst_slope, std::abs(fd - c1) / std::max(std::abs(c1), 1.0));
    }
    return {worst_spread <= 4.0 && worst_slope <= 1e-6,
            "max ratio spread " + fmt(worst_spread) + ", max slope mismatch " + fmt(worst_slope)};
}

Outcome probes()
{
    const auto plus_spin = perturbativity_probe({-0.8, 0.0}, QuantumNumbers(1, -1), Branch::plus, SymmetryKind::spin);
    const auto minus_pspin =
        perturbativity_probe({0.0, 0.5}, QuantumNumbers(1, 1), Branch::minus, SymmetryKind::pseudospin);
    const auto plus_pspin =
        perturbativity_probe({0.0, 0.5}, QuantumNumbers(0, -1), Branch::plus, SymmetryKind::pseudospin);
    const auto minus_spin = perturbativity_probe({-0.8, 0.0}, QuantumNumbers(1, 1), Branch::minus, SymmetryKind::spin);
    const bool ok = plus_spin.realizable && plus_spin.mismatch < 1e-6 && minus_pspin.realizable &&
                    minus_pspin.mismatch < 1e-6 && !plus_pspin.realizable && !minus_spin.realizable;
    return {ok, "plus/spin mismatch " + fmt(plus_spin.mismatch) + ", minus/pseudospin mismatch " +
                    fmt(minus_pspin.mismatch) + ", plus/pseudospin " +
                    (plus_pspin.realizable ? "realizable" : "flagged") + ", minus/spin " +
                    (minus_spin.realizable ? "realizable" : "flagged")};
}

Outcome ode_residuals()
{
    std::vector<CoulombCouplings> sets = {{-0.8, 0.5}, {-0.8, 0.0}, {0.0, 0.5}, {-0.5, -0.5}, {-1.2, 0.3}};
    std::mt19937_64 g(99);
    std::uniform_real_distribution<double> sigma(-1.5, -0.1);
    std::uniform_real_distribution<double> delta(0.05, 1.0);
    for (int i = 0; i < 10; ++i) {
        sets.push_back({sigma(g), delta(g)});
    }
    double worst = 0.0;
    int levels = 0;
    for (const auto& c : sets) {
        for (const auto& [qn, b] : valid_levels(c, 3, 3)) {
            const auto s = build(c, qn, b);
            const auto r = ode_residual(s, c);
            worst = std::max({worst, r.residual_g, r.residual_f});
            ++levels;
        }
    }
    return {levels > 0 && worst < 1e-8, std::to_string(levels) + " levels, max residual " + fmt(worst)};
}

Outcome normalization()
{
    double worst_gamma = 0.0;
    for (double a = 0.5; a <= 10.0 + 1e-9; a += 0.25) {
        const auto r = quad::integrate_halfline([&](double x) { return std::pow(x, a) * std::exp(-x); }, 1.0, 1e-12);
        const double ref = std::tgamma(a + 1.0);
        worst_gamma = std::max(worst_gamma, std::abs(r.value - ref) / ref);
    }
    return {solutions_built > 0 && worst_norm_error <= 1e-8 && worst_gamma <= 1e-12,
            std::to_string(solutions_built) + " solutions, max |norm-1| " + fmt(worst_norm_error) +
                "; gamma family max rel err " + fmt(worst_gamma)};
}

Outcome nonrelativistic()
{
    // E - mc^2 = -a^2/(2n^2) - a^4/(2n^4) (n/|kappa| - 3/4) + O(a^6)
    const double av = -0.01;
    bool ok = true;
    double worst = 0.0;
    int checked = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int kappa = -n; kappa <= n; ++kappa) {
            if (kappa == 0) {
                continue;
            }
            const QuantumNumbers qn(n - std::abs(kappa), kappa);
            if (!validate_bound_state({av, av}, qn, Branch::plus)) {
                continue;
            }
            const double e = energy({av, av}, qn, Branch::plus).energy;
            const double scaled = std::abs(e - 1.0 - nonrel_limit_energy(av, n)) / std::pow(av, 4);
            const double bound = (static_cast<double>(n) / std::abs(kappa) - 0.75) / (2.0 * std::pow(n, 4));
            ok = ok && scaled <= 1.01 * bound;
            worst = std::max(worst, scaled / bound);
            ++checked;
        }
    }
    return {ok && checked == 9, std::to_string(checked) + " levels, max (scaled residual / a^4 coefficient) " +
                                    fmt(worst)};
}

// CLI ------------------------------------------------------------------------

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

CliRun run_cli(const std::string& cli, const std::string& args, const fs::path& dir)
{
    const fs::path out = dir / "out.txt";
    const fs::path err = dir / "err.txt";
    const std::string cmd = "'" + cli + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

Outcome cli_contract(const std::string& cli)
{
    if (cli.empty() || !fs::exists(cli)) {
        return {false, "CLI binary not found"};
    }
    const fs::path dir = fs::temp_directory_path() / ("dc_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    bool identical = true;
    for (const char* args :
         {"spectrum --alpha-sigma -0.8 --alpha-delta 0.5 --n-max 4 --branch plus --format csv",
          "spectrum --alpha-sigma -0.8 --alpha-delta 0.5 --n-max 4 --branch minus --format json",
          "wavefunction --alpha-sigma -0.8 --alpha-delta 0.5 --branch plus --state 2s1/2",
          "symmetry --kind pseudospin --alpha-delta 0.5 --branch minus --from -0.5 --to 0 --steps 6 "
          "--state 2s1/2 --doublet 2s1/2:2d3/2 --probe"}) {
        const auto a = run_cli(cli, args, dir);
        const auto b = run_cli(cli, args, dir);
        identical = identical && a.code == 0 && !a.out.empty() && a.out == b.out;
    }
    const auto empty = run_cli(cli, "spectrum --alpha-sigma 0.3 --alpha-delta -0.1 --n-max 3", dir);
    const auto sign = run_cli(cli, "wavefunction --alpha-sigma -0.8 --alpha-delta 0.5 --branch plus --state 0,1", dir);
    fs::remove_all(dir);
    const bool empty_ok = empty.code == 2 && empty.err.find("no-bound-state") != std::string::npos;
    const bool sign_ok = sign.code == 1 && sign.err.find("n_r0-sign-rule") != std::string::npos;
    return {identical && empty_ok && sign_ok, std::string("byte-identical ") + (identical ? "yes" : "no") +
                                                  ", no-bound-state exit " + std::to_string(empty.code) +
                                                  ", sign-rule exit " + std::to_string(sign.code)};
}

} // namespace

int main(int argc, char** argv)
{
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"node counts at mixed couplings", mixed_coupling_nodes},
        {"node theorem, 100 random opposite-sign sets", node_theorem},
        {"Sommerfeld reduction for equal couplings", sommerfeld},
        {"charge conjugation, 500 random tuples", charge_conjugation},
        {"exact spin/pseudospin degeneracy", exact_degeneracy},
        {"hydrogenic fixed-point oracle", hydrogenic},
        {"expansion consistency and linear coefficients", expansions},
        {"perturbativity flags", probes},
        {"second-order radial equation residuals", ode_residuals},
        {"normalization and quadrature family", normalization},
        {"non-relativistic limit", nonrelativistic},
        {"CLI determinism and exit codes", [&] { return cli_contract(cli); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1 < 10 ? " " : "") << i + 1 << "] "
                  << criteria[i].first << ": " << o.detail << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
