#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "support.hpp"
#include "tdiff/params.hpp"
#include "tdiff/quad.hpp"

using namespace tdiff;
using tdiff::testing::Gen;

TEST(MakeParams, AcceptsValidTuples) {
    const auto bm = make_params(0, 0, 1, 1, 0);
    EXPECT_EQ(bm.sigma1, 1.0);
    const auto two = make_params(1, -1, 1, 2, 0);
    EXPECT_EQ(two.mu2, -1.0);
    EXPECT_EQ(two.sigma2, 2.0);
}

TEST(MakeParams, NamesOffendingField) {
    try {
        make_params(0, 0, 0, 1, 0);
        FAIL() << "expected InvalidParameter";
    } catch (const InvalidParameter& e) {
        EXPECT_STREQ(e.what(), "sigma1 must be positive");
    }
    EXPECT_THROW(make_params(0, 0, 1, -2, 0), InvalidParameter);
    EXPECT_THROW(make_params(std::nan(""), 0, 1, 1, 0), InvalidParameter);
    EXPECT_THROW(make_params(0, 0, 1, 1, std::numeric_limits<double>::infinity()),
                 InvalidParameter);
}

TEST(MakeParams, ThresholdBelongsToLowerRegime) {
    const auto p = make_params(1, -1, 1, 2, 0.5);
    EXPECT_TRUE(p.in_lower_regime(0.5));
    EXPECT_EQ(p.drift(0.5), 1.0);
    EXPECT_EQ(p.volatility(0.5 + 1e-12), 2.0);
}

TEST(Deltas, ZeroDriftRatesCoincide) {
    const auto d = deltas(make_params(0, 0, 1, 1, 0), 0.5);
    EXPECT_DOUBLE_EQ(d.d1_plus, 1.0);
    EXPECT_DOUBLE_EQ(d.d1_minus, 1.0);
}

TEST(Deltas, DriftedRegime) {
    const auto d = deltas(make_params(1, 0, 2, 1, 0), 1.0);
    EXPECT_NEAR(d.d1_plus, 1.0, 1e-15);
    EXPECT_NEAR(d.d1_minus, 0.5, 1e-15);
}

TEST(Deltas, ZeroRateLimit) {
    const auto d = deltas(make_params(0, 1, 1, 1, 0), 0.0);
    EXPECT_DOUBLE_EQ(d.d2_plus, 2.0);
    EXPECT_EQ(d.d2_minus, 0.0);
}

TEST(Deltas, RejectsNegativeRate) {
    EXPECT_THROW(deltas(make_params(0, 0, 1, 1, 0), -1e-3), DomainError);
}

TEST(Deltas, ProductAndSumIdentities) {
    Gen gen(11);
    for (int i = 0; i < 500; ++i) {
        const auto p = gen.params(5.0, 0.1, 5.0);
        const double q = std::exp(gen.uniform(std::log(1e-6), std::log(1e3)));
        const auto d = deltas(p, q);
        const double s1 = p.sigma1 * p.sigma1;
        const double s2 = p.sigma2 * p.sigma2;
        EXPECT_NEAR(d.d1_plus * d.d1_minus / (2.0 * q / s1), 1.0, 1e-12);
        EXPECT_NEAR(d.d2_plus * d.d2_minus / (2.0 * q / s2), 1.0, 1e-12);
        EXPECT_NEAR((d.d1_plus + d.d1_minus) / (2.0 * std::sqrt(2.0 * q * s1 + p.mu1 * p.mu1) / s1),
                    1.0, 1e-12);
        EXPECT_GT(d.one_minus_c_minus, 0.0);
        EXPECT_GT(d.one_minus_c_plus, 0.0);
        EXPECT_NEAR(d.one_minus_c_minus, 1.0 - d.c_minus, 1e-12 * (1.0 + std::abs(d.c_minus)));
        EXPECT_NEAR(d.one_minus_c_plus, 1.0 - d.c_plus, 1e-12 * (1.0 + std::abs(d.c_plus)));
    }
}

TEST(HKernel, Values) {
    EXPECT_EQ(h_kernel({1.0, 0.0, 5.0}), 0.0);
    EXPECT_NEAR(h_kernel({1.0, 1.0, 0.0}), std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi),
                1e-15);
    EXPECT_NEAR(h_kernel({1.0, 1.0, 0.0}), 0.241971, 1e-6);
    EXPECT_NEAR(h_kernel({1.0, -1.0, 1.0}), h_kernel({1.0, 1.0, 1.0}) * std::exp(2.0), 1e-15);
    EXPECT_NEAR(h_kernel({1.0, -1.0, 1.0}), 0.398942, 1e-6);
}

TEST(HKernel, RejectsNonpositiveTime) {
    EXPECT_THROW(h_kernel({0.0, 1.0, 0.0}), DomainError);
    EXPECT_THROW(h_kernel({-1.0, 1.0, 0.0}), DomainError);
}

TEST(HKernel, UnderflowIsExactZero) {
    EXPECT_EQ(h_kernel({1e-4, 1.0, 0.0}), 0.0);
    EXPECT_TRUE(std::isinf(log_h_kernel(1.0, 0.0, 0.0)));
    EXPECT_TRUE(std::isfinite(log_h_kernel(1e-4, 1.0, 0.0)));
}

TEST(HKernel, ReflectionIdentities) {
    Gen gen(12);
    for (int i = 0; i < 1000; ++i) {
        const double t = gen.uniform(0.05, 5.0);
        const double x = gen.uniform(-3.0, 3.0);
        const double mu = gen.uniform(-2.0, 2.0);
        const double h = h_kernel({t, x, mu});
        EXPECT_NEAR(h, h_kernel({t, -x, -mu}), 1e-14 * (1.0 + h));
        const double lhs = h_kernel({t, -x, mu});
        EXPECT_NEAR(lhs, h * std::exp(2.0 * mu * x), 1e-13 * (1.0 + lhs));
    }
}

TEST(HKernel, ConvolutionSemigroup) {
    Gen gen(13);
    QuadSettings s;
    s.abs_tol = 1e-12;
    s.rel_tol = 1e-11;
    for (int i = 0; i < 200; ++i) {
        const double t = gen.uniform(0.1, 5.0);
        const double sign = gen.integer(0, 1) ? 1.0 : -1.0;
        const double x1 = sign * gen.uniform(0.05, 1.5);
        const double x2 = sign * gen.uniform(0.05, 1.5);
        const double mu = gen.uniform(-2.0, 2.0);
        const double conv = convolve_h_pair(t, x1, mu, x2, mu, s).value;
        EXPECT_NEAR(conv, h_kernel({t, x1 + x2, mu}), 1e-8)
            << "t=" << t << " x1=" << x1 << " x2=" << x2 << " mu=" << mu;
    }
}

TEST(HLaplace, Values) {
    EXPECT_EQ(h_laplace(0.5, 0.0, 3.0), 0.0);
    EXPECT_NEAR(h_laplace(0.5, 1.0, 0.0), std::exp(-1.0), 1e-15);
    EXPECT_THROW(h_laplace(-0.5, 1.0, 0.0), DomainError);
}

TEST(HLaplace, MatchesNumericalTransform) {
    QuadSettings s;
    s.abs_tol = 1e-12;
    s.rel_tol = 1e-10;
    const auto numeric = [&](double q, double x, double mu) {
        return integrate_semi_infinite(
                   [&](double t) { return std::exp(-q * t) * h_kernel({t, x, mu}); }, 0.0,
                   q + 0.5 * mu * mu, s)
            .value;
    };
    EXPECT_NEAR(numeric(0.5, 1.0, 0.0), 0.367879, 1e-6);
    Gen gen(14);
    for (int i = 0; i < 60; ++i) {
        const double q = std::exp(gen.uniform(std::log(0.1), std::log(10.0)));
        const double x = gen.uniform(-3.0, 3.0);
        const double mu = gen.uniform(-2.0, 2.0);
        EXPECT_NEAR(numeric(q, x, mu), h_laplace(q, x, mu), 1e-6)
            << "q=" << q << " x=" << x << " mu=" << mu;
    }
}

TEST(HLaplace, TotalMassIsPassageProbability) {
    for (double x : {-2.0, -0.5, 0.5, 2.0}) {
        for (double mu : {-1.0, 0.0, 1.0}) {
            const double mass = h_laplace(0.0, x, mu);
            EXPECT_NEAR(mass, std::exp(-(mu + (x > 0 ? 1.0 : -1.0) * std::abs(mu)) * x), 1e-15);
            EXPECT_LE(mass, 1.0);
        }
    }
}
