#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "support.hpp"
#include "tdiff/density.hpp"
#include "tdiff/laplace_invert.hpp"
#include "tdiff/potential.hpp"

using namespace tdiff;
using cplx = std::complex<double>;
using tdiff::testing::Gen;
using tdiff::testing::normal_pdf;

namespace {

const auto kTalbot = InversionSettings::talbot();

// Transform of the N(x + mu t, sigma^2 t) density at z, as a function of t.
template <class Q>
Q gaussian_transform(Q q, double mu, double sigma, double x, double z) {
    using std::exp;
    using std::sqrt;
    const double s2 = sigma * sigma;
    const Q root = sqrt(Q(mu * mu) + Q(2.0) * q * s2);
    return exp((mu * (z - x) - root * std::abs(z - x)) / s2) / root;
}

}  // namespace

TEST(Invert, KnownPairsTalbot) {
    const ComplexTransform exp_pair = [](cplx q) { return 1.0 / (q + 1.0); };
    const ComplexTransform ramp = [](cplx q) { return 1.0 / (q * q); };
    EXPECT_NEAR(invert(exp_pair, 1.0, kTalbot), std::exp(-1.0), 1e-7);
    EXPECT_NEAR(invert(ramp, 2.0, kTalbot), 2.0, 1e-7);
}

TEST(Invert, KnownPairsStehfest) {
    const RealTransform exp_pair = [](double q) { return 1.0 / (q + 1.0); };
    const RealTransform ramp = [](double q) { return 1.0 / (q * q); };
    EXPECT_NEAR(invert(exp_pair, 1.0, InversionSettings::gaver_stehfest(16)), std::exp(-1.0), 1e-7);
    EXPECT_NEAR(invert(ramp, 2.0, InversionSettings::gaver_stehfest(16)), 2.0, 1e-7);
    EXPECT_NEAR(invert(exp_pair, 1.0), std::exp(-1.0), 1e-5);
    EXPECT_NEAR(invert(ramp, 2.0), 2.0, 1e-5);
}

TEST(Invert, RecoversOscillatingDensity) {
    const auto p = make_params(0, 0, 1, 2, 0);
    const double exact = oscillating_bm_density(1, 2, 0, 1.0, 0.0, 0.5);
    const RealTransform real = [&](double q) { return potential_density({p, q, 0.0, 0.5}) / q; };
    EXPECT_NEAR(invert(real, 1.0), exact, 1e-4);
    const ComplexTransform complex = [&](cplx q) { return potential_density_at(p, q, 0.0, 0.5) / q; };
    EXPECT_NEAR(invert(complex, 1.0, kTalbot), exact, 1e-8);
}

TEST(Invert, Errors) {
    const RealTransform f = [](double q) { return 1.0 / q; };
    EXPECT_THROW(invert(f, 0.0), DomainError);
    EXPECT_THROW(invert(f, 1.0, InversionSettings::gaver_stehfest(13)), SettingsError);
    EXPECT_THROW(invert(f, 1.0, InversionSettings::gaver_stehfest(4)), SettingsError);
    EXPECT_THROW(invert(f, 1.0, InversionSettings::gaver_stehfest(20)), SettingsError);
    EXPECT_THROW(invert(f, 1.0, kTalbot), SettingsError);
    EXPECT_EQ(parse_inversion_method("talbot"), InversionMethod::talbot);
    EXPECT_EQ(parse_inversion_method("gaver-stehfest"), InversionMethod::gaver_stehfest);
    EXPECT_THROW(parse_inversion_method("euler"), SettingsError);
}

TEST(Invert, StehfestWeightsSumToZero) {
    for (int n = 6; n <= 18; n += 2) {
        const auto v = stehfest_weights(n);
        double sum = 0.0;
        double scale = 0.0;
        for (double w : v) {
            sum += w;
            scale = std::max(scale, std::abs(w));
        }
        EXPECT_NEAR(sum / scale, 0.0, 1e-14) << n;
    }
}

// Decaying exponential, polynomial and Gaussian-kernel pairs over t in [0.1, 10].
TEST(Invert, KnownPairSuite) {
    Gen gen(61);
    for (int i = 0; i < 120; ++i) {
        const double t = std::exp(gen.uniform(std::log(0.1), std::log(10.0)));
        double exact = 0.0;
        RealTransform real;
        ComplexTransform complex;
        switch (i % 3) {
            case 0: {
                const double c = gen.uniform(0.0, 2.0);
                exact = std::exp(-c * t);
                real = [c](double q) { return 1.0 / (q + c); };
                complex = [c](cplx q) { return 1.0 / (q + c); };
                break;
            }
            case 1: {
                const int n = gen.integer(0, 3);
                exact = std::pow(t, n) / std::tgamma(n + 1.0);
                real = [n](double q) { return std::pow(q, -n - 1); };
                complex = [n](cplx q) { return std::pow(q, -n - 1); };
                break;
            }
            default: {
                const double mu = gen.uniform(-1.0, 1.0);
                const double sigma = gen.uniform(0.5, 2.0);
                const double d = gen.uniform(-1.0, 1.0);
                exact = normal_pdf(d, mu * t, sigma * sigma * t);
                real = [=](double q) { return gaussian_transform(q, mu, sigma, 0.0, d); };
                complex = [=](cplx q) { return gaussian_transform(q, mu, sigma, 0.0, d); };
                break;
            }
        }
        const double scale = std::max(std::abs(exact), 1e-3);
        EXPECT_NEAR(invert(complex, t, kTalbot), exact, 1e-5 * scale) << "case " << i << " t=" << t;
        // Stehfest error is absolute, of order 1e-5 of the transform scale.
        EXPECT_NEAR(invert(real, t), exact, 1e-4 * std::max(1.0, std::abs(exact))) << "case " << i << " t=" << t;
    }
}

TEST(Invert, StehfestTermStability) {
    const auto p = make_params(1, -1, 1, 2, 0);
    for (double z : {-0.5, 0.5, 1.0}) {
        const RealTransform f = [&](double q) { return potential_density({p, q, 0.5, z}) / q; };
        for (double t : {0.5, 1.0, 2.0}) {
            EXPECT_NEAR(invert(f, t, InversionSettings::gaver_stehfest(12)),
                        invert(f, t, InversionSettings::gaver_stehfest(14)), 1e-4);
        }
    }
}
