#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

#include "tdiff/errors.hpp"

namespace tdiff {

/// Coefficients of the threshold diffusion
///
///   dX = mu(X) dt + sigma(X) dB,
///
/// with (mu1, sigma1) on X <= a and (mu2, sigma2) on X > a. A state exactly
/// at the threshold belongs to the lower regime everywhere in the library.
struct DiffusionParams {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double a = 0.0;

    bool in_lower_regime(double x) const noexcept { return x <= a; }
    double drift(double x) const noexcept { return in_lower_regime(x) ? mu1 : mu2; }
    double volatility(double x) const noexcept { return in_lower_regime(x) ? sigma1 : sigma2; }

    friend bool operator==(const DiffusionParams&, const DiffusionParams&) = default;
};

/// Validating constructor. Throws InvalidParameter naming the offending field.
DiffusionParams make_params(double mu1, double mu2, double sigma1, double sigma2, double a);

/// Throws InvalidParameter if p violates the DiffusionParams invariants.
void validate(const DiffusionParams& p);

/// Parameters of -X: (-mu2, -mu1, sigma2, sigma1, -a).
DiffusionParams mirrored(const DiffusionParams& p) noexcept;

/// Rates of the piecewise exponentials solving 1/2 sigma^2 g'' + mu g' = q g.
///
/// Scalar is double for ordinary use, std::complex<double> when a transform
/// is evaluated on a complex contour.
template <typename Scalar>
struct DeltaSet {
    Scalar q{};
    Scalar root1{};  ///< sqrt(2 q sigma1^2 + mu1^2)
    Scalar root2{};  ///< sqrt(2 q sigma2^2 + mu2^2)
    Scalar d1_plus{};
    Scalar d1_minus{};
    Scalar d2_plus{};
    Scalar d2_minus{};
    Scalar c_minus{};
    Scalar c_plus{};
    Scalar one_minus_c_minus{};  ///< (d1- + d2+) / (d1- + d1+)
    Scalar one_minus_c_plus{};   ///< (d2+ + d1-) / (d2- + d2+)
};

namespace detail {

/// (delta+, delta-) for a single regime, arranged so neither rate is formed
/// by cancellation: the small one is recovered from delta+ delta- = 2q/sigma^2.
template <typename Scalar>
void regime_rates(double mu, double sigma, const Scalar& q, Scalar& root, Scalar& plus,
                  Scalar& minus) {
    using std::sqrt;
    const double s2 = sigma * sigma;
    root = sqrt(Scalar(2.0) * q * s2 + Scalar(mu * mu));
    if (mu > 0.0) {
        plus = (root + mu) / s2;
        minus = Scalar(2.0) * q / (root + mu);
    } else if (mu < 0.0) {
        minus = (root - mu) / s2;
        plus = Scalar(2.0) * q / (root - mu);
    } else {
        plus = root / s2;
        minus = plus;
    }
}

}  // namespace detail

/// Computes the four rates and both pasting constants at rate q.
///
/// q = 0 is accepted and yields the limiting rates (e.g. delta+ = 2 mu / sigma^2
/// for mu > 0). The pasting constants are NaN when a regime has zero drift at
/// q = 0, since both of its rates vanish.
template <typename Scalar = double>
DeltaSet<Scalar> deltas(const DiffusionParams& p, Scalar q) {
    if constexpr (std::is_floating_point_v<Scalar>) {
        if (!(q >= 0.0) || !std::isfinite(q)) {
            throw DomainError("deltas: q must be finite and >= 0");
        }
    }
    DeltaSet<Scalar> d;
    d.q = q;
    detail::regime_rates(p.mu1, p.sigma1, q, d.root1, d.d1_plus, d.d1_minus);
    detail::regime_rates(p.mu2, p.sigma2, q, d.root2, d.d2_plus, d.d2_minus);
    const Scalar s1 = d.d1_minus + d.d1_plus;
    const Scalar s2 = d.d2_minus + d.d2_plus;
    d.c_minus = (d.d1_plus - d.d2_plus) / s1;
    d.c_plus = (d.d2_minus - d.d1_minus) / s2;
    d.one_minus_c_minus = (d.d1_minus + d.d2_plus) / s1;
    d.one_minus_c_plus = (d.d2_plus + d.d1_minus) / s2;
    return d;
}

/// Arguments of the first-passage kernel h(t; x, mu).
struct HArgs {
    double t;
    double x;
    double mu;
};

/// h(t; x, mu) = |x| / sqrt(2 pi t^3) exp(-(x + mu t)^2 / (2t)), the density of
/// the first time x + mu s + B_s reaches 0. Exact zero at x = 0 and once the
/// exponent passes the double underflow threshold.
double h_kernel(const HArgs& args);

/// log h(t; x, mu); -inf at x = 0. Never underflows.
double log_h_kernel(double t, double x, double mu) noexcept;

/// Laplace transform of h in t:
/// exp(-(mu + sgn(x) sqrt(mu^2 + 2q)) x), and exactly 0 at x = 0.
double h_laplace(double q, double x, double mu);

}  // namespace tdiff
