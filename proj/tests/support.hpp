#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's own formulas; high precision comes from boost::multiprecision.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

/// binomial(n + a, n) by the product (a+1)(a+2)...(a+n)/n!.
inline mp laguerre_at_origin(int n, mp a)
{
    mp v = 1;
    for (int k = 1; k <= n; ++k) {
        v *= (a + k) / k;
    }
    return v;
}

/// Explicit sum L_n^a(x) = sum_k (-1)^k binom(n+a, n-k) x^k / k!.
inline mp laguerre_sum(int n, mp a, mp x)
{
    mp total = 0;
    for (int k = 0; k <= n; ++k) {
        // binom(n+a, n-k) = prod_{j=1}^{n-k} (a + k + j) / j
        mp binom = 1;
        for (int j = 1; j <= n - k; ++j) {
            binom *= (a + k + j) / j;
        }
        mp term = binom;
        for (int j = 1; j <= k; ++j) {
            term *= x / j;
        }
        total += (k % 2 == 0) ? term : mp(-term);
    }
    return total;
}

/// Sum of |terms| of the explicit sum, the natural error scale.
inline mp laguerre_sum_scale(int n, mp a, mp x)
{
    mp total = 0;
    for (int k = 0; k <= n; ++k) {
        mp binom = 1;
        for (int j = 1; j <= n - k; ++j) {
            binom *= (a + k + j) / j;
        }
        mp term = abs(binom);
        for (int j = 1; j <= k; ++j) {
            term *= abs(x) / j;
        }
        total += term;
    }
    return total;
}

/// eta1(E) + xi, the unsquared quantization condition.
inline mp quantization(mp alpha_sigma, mp alpha_delta, int n_r, int kappa, mp e)
{
    const mp gamma = sqrt(mp(kappa) * kappa - alpha_delta * alpha_sigma);
    const mp lambda = sqrt((1 - e) * (1 + e));
    return (alpha_sigma * (e + 1) + alpha_delta * (e - 1)) / (2 * lambda) + n_r + gamma;
}

/// All roots of the quantization condition in (-1, 1), found by sign scanning
/// on E = tanh(t) and bisection to ~1e-40.
inline std::vector<mp> quantization_roots(double alpha_sigma, double alpha_delta, int n_r, int kappa)
{
    const mp as = alpha_sigma;
    const mp ad = alpha_delta;
    auto h = [&](const mp& e) { return quantization(as, ad, n_r, kappa, e); };
    std::vector<mp> roots;
    constexpr int points = 4000;
    constexpr double t_max = 12.0;
    mp prev_e = tanh(mp(-t_max));
    mp prev_h = h(prev_e);
    for (int i = 1; i <= points; ++i) {
        const mp e = tanh(mp(-t_max + 2 * t_max * i / points));
        const mp hv = h(e);
        if ((prev_h < 0) != (hv < 0)) {
            mp lo = prev_e;
            mp hi = e;
            mp h_lo = prev_h;
            for (int it = 0; it < 160; ++it) {
                const mp mid = (lo + hi) / 2;
                const mp hm = h(mid);
                if ((hm < 0) == (h_lo < 0)) {
                    lo = mid;
                    h_lo = hm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back((lo + hi) / 2);
        }
        prev_e = e;
        prev_h = hv;
    }
    return roots;
}

/// Sommerfeld fine-structure energy for equal couplings alpha_v.
inline mp sommerfeld(double alpha_v, int n_r, int kappa)
{
    const mp av = alpha_v;
    const mp xi = n_r + sqrt(mp(kappa) * kappa - av * av);
    return xi / sqrt(xi * xi + av * av);
}

/// Deterministic generator; every test seeds its own stream.
inline std::mt19937_64 rng(std::uint64_t seed)
{
    return std::mt19937_64(seed);
}

inline double uniform(std::mt19937_64& g, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(std::mt19937_64& g, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline int random_kappa(std::mt19937_64& g, int max_abs)
{
    const int m = uniform_int(g, 1, max_abs);
    return uniform_int(g, 0, 1) == 0 ? -m : m;
}

} // namespace oracle
