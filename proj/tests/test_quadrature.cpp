#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dirac_coulomb/quadrature.hpp"

namespace quad = dirac_coulomb::quad;
using dirac_coulomb::Error;
using dirac_coulomb::ErrorCode;

TEST(Halfline, Exponential)
{
    const auto r = quad::integrate_halfline([](double x) { return std::exp(-x); }, 1.0, 1e-12);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_GT(r.evaluations, 0u);
    EXPECT_GE(r.error_estimate, 0.0);
}

TEST(Halfline, SecondMoment)
{
    const auto r = quad::integrate_halfline([](double x) { return x * x * std::exp(-x); }, 1.0, 1e-12);
    EXPECT_NEAR(r.value, 2.0, 2e-12);
}

TEST(Halfline, NonIntegerPowerAgainstGamma)
{
    const double p = 2.3664;
    const auto r = quad::integrate_halfline([&](double x) { return std::pow(x, p) * std::exp(-x); }, 1.0, 1e-12);
    const double ref = std::tgamma(p + 1.0);
    EXPECT_LE(std::abs(r.value - ref), 1e-12 * ref);
}

TEST(Halfline, GammaFamily)
{
    for (double rel_tol : {1e-6, 1e-9, 1e-12}) {
        for (double a = 0.5; a <= 10.0 + 1e-9; a += 0.25) {
            const auto r = quad::integrate_halfline([&](double x) { return std::pow(x, a) * std::exp(-x); }, 1.0,
                                                    rel_tol);
            const double ref = std::tgamma(a + 1.0);
            EXPECT_LE(std::abs(r.value - ref), rel_tol * ref) << "a=" << a << " tol=" << rel_tol;
        }
    }
}

TEST(Halfline, DecayRateRescales)
{
    // int x^a e^{-c x} dx = Gamma(a+1) / c^(a+1)
    for (double c : {0.05, 0.7, 3.0, 40.0}) {
        const double a = 3.5;
        const auto r = quad::integrate_halfline([&](double x) { return std::pow(x, a) * std::exp(-c * x); }, c, 1e-12);
        const double ref = std::tgamma(a + 1.0) / std::pow(c, a + 1.0);
        EXPECT_LE(std::abs(r.value - ref), 1e-12 * ref) << "c=" << c;
    }
}

TEST(Halfline, TighterToleranceNeverWorse)
{
    // Achieved errors may sit at the rounding floor for both tolerances, so
    // allow a few ulps of the reference.
    for (double a = 0.5; a <= 10.0 + 1e-9; a += 0.5) {
        const double ref = std::tgamma(a + 1.0);
        auto f = [&](double x) { return std::pow(x, a) * std::exp(-x); };
        double previous = std::numeric_limits<double>::infinity();
        for (double rel_tol : {1e-4, 5e-5, 1e-6, 5e-7, 1e-8, 5e-9, 1e-10, 5e-11, 1e-12}) {
            const double err = std::abs(quad::integrate_halfline(f, 1.0, rel_tol).value - ref);
            EXPECT_LE(err, previous + 4.0 * std::numeric_limits<double>::epsilon() * ref)
                << "a=" << a << " tol=" << rel_tol;
            previous = err;
        }
    }
}

TEST(Halfline, RejectsToleranceOutsideRange)
{
    auto f = [](double x) { return std::exp(-x); };
    EXPECT_THROW(quad::integrate_halfline(f, 1.0, 1e-16), Error);
    EXPECT_THROW(quad::integrate_halfline(f, 1.0, 1e-2), Error);
    EXPECT_THROW(quad::integrate_halfline(f, 0.0, 1e-8), Error);
}

TEST(Halfline, NonFiniteIntegrand)
{
    try {
        quad::integrate_halfline([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 1.0, 1e-8);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::non_finite_integrand);
    }
}

TEST(Halfline, NoConvergence)
{
    // oscillates too fast for the refinement levels to settle
    try {
        quad::integrate_halfline([](double x) { return std::sin(1e6 * x) * std::exp(-x); }, 1.0, 1e-14);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::no_convergence);
    }
}

TEST(Halfline, OverflowBeyondUnderflowIsZero)
{
    // x^3 overflows to inf at the far abscissae where exp(-x) is already 0
    const auto r = quad::integrate_halfline([](double x) { return x * x * x * std::exp(-x); }, 1.0, 1e-12);
    EXPECT_NEAR(r.value, 6.0, 6e-12);
    EXPECT_GT(r.evaluations, 0u);
}

TEST(Halfline, SignedIntegrand)
{
    // int (1 - x) e^{-x} dx = 0, int x^2 cos(x) e^{-x} dx = -1/2
    const auto r = quad::integrate_halfline([](double x) { return x * x * std::cos(x) * std::exp(-x); }, 1.0, 1e-12);
    EXPECT_NEAR(r.value, -0.5, 1e-12);
}
