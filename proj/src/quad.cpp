#include "tdiff/quad.hpp"

#include "tdiff/params.hpp"

namespace tdiff {

void QuadSettings::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(truncation_epsilon > 0.0)) {
        throw SettingsError("quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw SettingsError("max_subdivisions must be >= 1");
    }
}

namespace {

// Mode in s of h(s; x, mu): root of mu^2 s^2 + 3 s - x^2 = 0.
double h_mode(double x, double mu) {
    const double m2 = mu * mu;
    if (m2 * x * x < 1e-8) {
        return x * x / 3.0;
    }
    return (-3.0 + std::sqrt(9.0 + 4.0 * m2 * x * x)) / (2.0 * m2);
}

}  // namespace

namespace detail {

QuadResult scaled_h_convolution(double t, double x1, double mu1, double x2, double mu2,
                                double log_prefactor, const QuadSettings& settings) {
    if (!(t > 0.0)) {
        throw DomainError("convolve_h_pair: t must be positive");
    }
    if (x1 == 0.0 || x2 == 0.0) {
        return {};
    }
    auto integrand = [=](double tau) {
        const double e = log_prefactor + log_h_kernel(t - tau, x1, mu1) + log_h_kernel(tau, x2, mu2);
        return e < -745.0 ? 0.0 : std::exp(e);
    };
    const std::array<double, 2> peaks{h_mode(x2, mu2), t - h_mode(x1, mu1)};
    return integrate_finite(integrand, 0.0, t, peaks, settings);
}

}  // namespace detail

QuadResult convolve_h_pair(double t, double x1, double mu1, double x2, double mu2,
                           const QuadSettings& settings) {
    return detail::scaled_h_convolution(t, x1, mu1, x2, mu2, 0.0, settings);
}

}  // namespace tdiff
