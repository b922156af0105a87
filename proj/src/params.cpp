#include "tdiff/params.hpp"

#include <numbers>
#include <string>

namespace tdiff {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidParameter(std::string(name) + " must be finite");
    }
}

void require_positive(double v, const char* name) {
    require_finite(v, name);
    if (!(v > 0.0)) {
        throw InvalidParameter(std::string(name) + " must be positive");
    }
}

// exp(-745) is the smallest positive subnormal double.
constexpr double kUnderflowExponent = 745.0;

}  // namespace

void validate(const DiffusionParams& p) {
    require_finite(p.mu1, "mu1");
    require_finite(p.mu2, "mu2");
    require_positive(p.sigma1, "sigma1");
    require_positive(p.sigma2, "sigma2");
    require_finite(p.a, "a");
}

DiffusionParams make_params(double mu1, double mu2, double sigma1, double sigma2, double a) {
    DiffusionParams p{mu1, mu2, sigma1, sigma2, a};
    validate(p);
    return p;
}

DiffusionParams mirrored(const DiffusionParams& p) noexcept {
    return DiffusionParams{-p.mu2, -p.mu1, p.sigma2, p.sigma1, -p.a};
}

double log_h_kernel(double t, double x, double mu) noexcept {
    if (x == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    const double m = x + mu * t;
    return std::log(std::abs(x)) - 0.5 * std::log(2.0 * std::numbers::pi * t * t * t) -
           m * m / (2.0 * t);
}

double h_kernel(const HArgs& args) {
    if (!(args.t > 0.0)) {
        throw DomainError("h_kernel: t must be positive");
    }
    if (args.x == 0.0) {
        return 0.0;
    }
    const double m = args.x + args.mu * args.t;
    const double exponent = m * m / (2.0 * args.t);
    if (exponent > kUnderflowExponent) {
        return 0.0;
    }
    return std::abs(args.x) / std::sqrt(2.0 * std::numbers::pi * args.t * args.t * args.t) *
           std::exp(-exponent);
}

double h_laplace(double q, double x, double mu) {
    if (!(q >= 0.0) || !std::isfinite(q)) {
        throw DomainError("h_laplace: q must be finite and >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    const double sgn = x > 0.0 ? 1.0 : -1.0;
    return std::exp(-(mu + sgn * std::sqrt(mu * mu + 2.0 * q)) * x);
}

}  // namespace tdiff
