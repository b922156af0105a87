#include "tdiff/laplace_invert.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tdiff/errors.hpp"

namespace tdiff {

void InversionSettings::validate() const {
    if (method == InversionMethod::gaver_stehfest) {
        if (terms % 2 != 0 || terms < 6 || terms > 18) {
            throw SettingsError("gaver-stehfest terms must be even and in [6, 18]");
        }
    } else if (terms < 2) {
        throw SettingsError("talbot needs at least 2 nodes");
    }
}

InversionMethod parse_inversion_method(std::string_view name) {
    if (name == "gaver-stehfest") return InversionMethod::gaver_stehfest;
    if (name == "talbot") return InversionMethod::talbot;
    throw SettingsError("unknown inversion method '" + std::string(name) + "'");
}

std::vector<double> stehfest_weights(int terms) {
    const int half = terms / 2;
    auto fact = [](int n) {
        long double r = 1.0L;
        for (int i = 2; i <= n; ++i) r *= i;
        return r;
    };
    std::vector<double> v(terms + 1, 0.0);
    for (int k = 1; k <= terms; ++k) {
        long double sum = 0.0L;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            sum += std::pow(static_cast<long double>(j), half) * fact(2 * j) /
                   (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        }
        const int sign = (k + half) % 2 == 0 ? 1 : -1;
        v[k] = static_cast<double>(sign * sum);
    }
    return v;
}

namespace {

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("invert: t must be finite and > 0");
    }
}

template <class Eval>
double gaver_stehfest(Eval&& eval, double t, int terms) {
    const auto v = stehfest_weights(terms);
    const double ln2_t = std::numbers::ln2 / t;
    double sum = 0.0;
    for (int k = 1; k <= terms; ++k) {
        sum += v[k] * eval(k * ln2_t);
    }
    return ln2_t * sum;
}

// Fixed Talbot contour (Abate-Valko).
double fixed_talbot(const ComplexTransform& transform, double t, int nodes) {
    const double r = 2.0 * nodes / (5.0 * t);
    double sum = 0.5 * std::exp(r * t) * transform({r, 0.0}).real();
    for (int k = 1; k < nodes; ++k) {
        const double theta = k * std::numbers::pi / nodes;
        const double cot = std::cos(theta) / std::sin(theta);
        const std::complex<double> s{r * theta * cot, r * theta};
        const double sigma = theta + (theta * cot - 1.0) * cot;
        sum += (std::exp(t * s) * transform(s) * std::complex<double>{1.0, sigma}).real();
    }
    return r / nodes * sum;
}

}  // namespace

double invert(const RealTransform& transform, double t, const InversionSettings& settings) {
    settings.validate();
    require_time(t);
    if (settings.method != InversionMethod::gaver_stehfest) {
        throw SettingsError("talbot inversion needs a complex-valued transform");
    }
    return gaver_stehfest(transform, t, settings.terms);
}

double invert(const ComplexTransform& transform, double t, const InversionSettings& settings) {
    settings.validate();
    require_time(t);
    if (settings.method == InversionMethod::talbot) {
        return fixed_talbot(transform, t, settings.terms);
    }
    return gaver_stehfest([&](double q) { return transform({q, 0.0}).real(); }, t,
                          settings.terms);
}

}  // namespace tdiff
