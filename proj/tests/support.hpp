#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "tdiff/params.hpp"

namespace tdiff::testing {

// Seeded draws for property tests. Every property runs a fixed number of
// cases from a fixed seed so failures reproduce exactly.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    DiffusionParams params(double max_drift = 2.0, double min_sigma = 0.5,
                           double max_sigma = 2.5, double max_threshold = 1.0) {
        return make_params(uniform(-max_drift, max_drift), uniform(-max_drift, max_drift),
                           uniform(min_sigma, max_sigma), uniform(min_sigma, max_sigma),
                           uniform(-max_threshold, max_threshold));
    }

private:
    std::mt19937_64 rng_;
};

inline double normal_pdf(double x, double mean, double var) {
    const double d = x - mean;
    return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Resolvent density of mu t + sigma B_t sampled at an exponential(q) time.
inline double single_regime_potential(double mu, double sigma, double q, double x, double z) {
    const double s2 = sigma * sigma;
    const double root = std::sqrt(mu * mu + 2.0 * q * s2);
    return q / root * std::exp((mu * (z - x) - root * std::abs(z - x)) / s2);
}

// Laplace transform of the first passage from x to level for mu t + sigma B_t.
inline double single_regime_passage(double mu, double sigma, double q, double x, double level) {
    const double s2 = sigma * sigma;
    const double root = std::sqrt(mu * mu + 2.0 * q * s2);
    const double d = level - x;
    return std::exp((mu * d - root * std::abs(d)) / s2);
}

}  // namespace tdiff::testing
