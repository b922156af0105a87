#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tdiff/control.hpp"
#include "tdiff/density.hpp"

using namespace tdiff;
using tdiff::testing::Gen;

namespace {

ControlProblem random_problem(Gen& gen) {
    ControlProblem c;
    c.mu_bar = gen.uniform(-1.5, 1.5);
    c.mu_low = gen.uniform(-1.5, 1.5);
    c.sigma_low = gen.uniform(0.4, 1.5);
    c.sigma_bar = c.sigma_low + gen.uniform(0.2, 1.5);
    c.a = gen.uniform(-1.0, 1.0);
    c.T = gen.uniform(0.3, 2.0);
    return c;
}

const ControlProblem kZeroDrift{0, 2, 0, 1, 0, 1};
const ControlProblem kSloped{1, 2, -1, 1, 0, 1};

}  // namespace

TEST(Alpha, Values) {
    EXPECT_EQ(alpha(kSloped), 3.0);
    EXPECT_EQ(alpha(ControlProblem{2, 2, 1, 1, 0, 1}), 0.0);
    EXPECT_EQ(alpha(kZeroDrift), 0.0);
}

TEST(Alpha, SlopeIdentity) {
    const double s = alpha(kSloped);
    EXPECT_EQ((kSloped.mu_low + s) / kSloped.sigma_low, 2.0);
    EXPECT_EQ((kSloped.mu_bar + s) / kSloped.sigma_bar, 2.0);
    Gen gen(71);
    for (int i = 0; i < 1000; ++i) {
        const auto c = random_problem(gen);
        const double a = alpha(c);
        const double lhs = (c.mu_low + a) / c.sigma_low;
        EXPECT_NEAR(lhs, (c.mu_bar + a) / c.sigma_bar, 1e-12 * (1.0 + std::abs(lhs)));
        EXPECT_NEAR(lhs, (c.mu_bar - c.mu_low) / (c.sigma_bar - c.sigma_low),
                    1e-12 * (1.0 + std::abs(lhs)));
        const auto policy = optimal_policy(c);
        EXPECT_EQ(policy.alpha, a);
    }
}

TEST(ControlProblem, Validation) {
    EXPECT_THROW(alpha(ControlProblem{0, 1, 0, 1, 0, 1}), InvalidParameter);
    EXPECT_THROW(alpha(ControlProblem{0, 1, 0, 2, 0, 1}), InvalidParameter);
    EXPECT_THROW(alpha(ControlProblem{0, 2, 0, 0, 0, 1}), InvalidParameter);
    EXPECT_THROW(alpha(ControlProblem{0, 2, 0, 1, 0, 0}), InvalidParameter);
    EXPECT_THROW(alpha(ControlProblem{0, 2, std::nan(""), 1, 0, 1}), InvalidParameter);
}

TEST(OptimalThreshold, Values) {
    EXPECT_EQ(optimal_threshold(kSloped, 1.0), 0.0);
    EXPECT_EQ(optimal_threshold(kSloped, 0.0), 3.0);
    for (double t : {0.0, 0.3, 1.0}) EXPECT_EQ(optimal_threshold(ControlProblem{2, 2, 1, 1, 0.4, 1}, t), 0.4);
    EXPECT_THROW(optimal_threshold(kSloped, -0.1), DomainError);
    EXPECT_THROW(optimal_threshold(kSloped, 1.1), DomainError);
}

TEST(OptimalVolatility, Choices) {
    EXPECT_EQ(optimal_volatility(kSloped, -10.0, 0.5), 2.0);
    EXPECT_EQ(optimal_volatility(kSloped, 10.0, 0.5), 1.0);
    EXPECT_EQ(optimal_volatility(kSloped, 1.5, 0.5), 2.0);
    const auto policy = optimal_policy(kSloped);
    EXPECT_EQ(policy.drift(-10.0, 0.5), 1.0);
    EXPECT_EQ(policy.drift(10.0, 0.5), -1.0);
    EXPECT_THROW(optimal_volatility(kSloped, 0.0, 2.0), DomainError);
}

TEST(OptimalStateParams, ShiftedDrifts) {
    const auto p = optimal_state_params(kSloped);
    EXPECT_EQ(p, make_params(4, 2, 2, 1, 0));
}

TEST(ValueFunction, ZeroDriftProblem) {
    EXPECT_NEAR(value_function(kZeroDrift, 0.0), 2.0 / 3.0, 1e-6);
}

TEST(ValueFunction, MonotoneInStart) {
    double prev = -1.0;
    for (int k = 0; k < 9; ++k) {
        const double v = value_function(kSloped, -4.0 + k);
        EXPECT_GE(v, prev - 1e-4) << "x=" << -4.0 + k;
        prev = v;
    }
}

TEST(ValueFunction, Bounds) {
    Gen gen(72);
    for (int i = 0; i < 8; ++i) {
        const auto c = random_problem(gen);
        for (double x : {-5.0, 0.0, 5.0}) {
            const double v = value_function(c, x);
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(ValueFunction, TranslationCovariance) {
    Gen gen(73);
    for (int i = 0; i < 4; ++i) {
        const auto c = random_problem(gen);
        const double shift = gen.uniform(-3.0, 3.0);
        auto moved = c;
        moved.a += shift;
        const double x = c.a + gen.uniform(-1.0, 1.0);
        EXPECT_NEAR(value_function(moved, x + shift), value_function(c, x), 1e-8);
    }
}

TEST(ValueFunction, ConstantRegimeLimit) {
    // Eight or ten standard deviations from the threshold.
    const ControlProblem c{0, 2, 0, 1, 0, 1};
    EXPECT_NEAR(value_function(c, 8.0), 1.0, 1e-9);
    EXPECT_NEAR(value_function(c, -20.0), 0.0, 1e-9);
}
