#include "tdiff/density.hpp"

#include <numbers>

#include "tdiff/potential.hpp"

namespace tdiff {

namespace {

void require_positive_time(double t, const char* who) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError(std::string(who) + ": t must be finite and > 0");
    }
}

// Nested tau-integrals get tighter tolerances than the b-integral around them.
QuadSettings inner_settings(const QuadSettings& outer) {
    QuadSettings s = outer;
    s.abs_tol = outer.abs_tol * 1e-2;
    s.rel_tol = outer.rel_tol * 1e-1;
    return s;
}

double b_decay_hint(const DiffusionParams& p, double t) {
    const auto d = deltas(p, 1.0 / t);
    return d.d2_plus + d.d1_minus;
}

// Integral over b in (lo, inf) of
//   exp(log_pref) * conv(t; (b + shift1)/sigma1, -mu1/sigma1; (b + shift2)/sigma2, mu2/sigma2).
QuadResult b_integral(const DiffusionParams& p, double t, double lo, double shift1, double shift2,
                      double log_pref, const QuadSettings& settings) {
    const QuadSettings inner = inner_settings(settings);
    const double m1 = -p.mu1 / p.sigma1;
    const double m2 = p.mu2 / p.sigma2;
    auto integrand = [&](double b) {
        return detail::scaled_h_convolution(t, (b + shift1) / p.sigma1, m1, (b + shift2) / p.sigma2,
                                            m2, log_pref, inner)
            .value;
    };
    return integrate_semi_infinite(integrand, lo, b_decay_hint(p, t), settings);
}

// Density of the upper regime started at x >= a, killed on reaching a.
double killed_upper_gaussian(const DiffusionParams& p, double t, double x, double z) {
    const double s2 = p.sigma2 * p.sigma2;
    const double var = s2 * t;
    const double direct = z - x - p.mu2 * t;
    const double image = z + x - 2.0 * p.a - p.mu2 * t;
    const double e1 = -direct * direct / (2.0 * var);
    const double e2 = -image * image / (2.0 * var) - 2.0 * p.mu2 * (x - p.a) / s2;
    const double v = (std::exp(e1) - std::exp(e2)) / std::sqrt(2.0 * std::numbers::pi * var);
    return v > 0.0 ? v : 0.0;
}

// x >= a.
QuadResult density_from_upper(const DiffusionParams& p, double t, double x, double z,
                              const QuadSettings& settings) {
    const double dx = x - p.a;
    const double dz = z - p.a;
    if (dz >= 0.0) {
        const double s2 = p.sigma2 * p.sigma2;
        QuadResult r = b_integral(p, t, 0.0, 0.0, dz + dx, 2.0 * p.mu2 * dz / s2, settings);
        r.value = r.value * 2.0 / s2 + killed_upper_gaussian(p, t, x, z);
        r.error *= 2.0 / s2;
        return r;
    }
    const double s1 = p.sigma1 * p.sigma1;
    QuadResult r = b_integral(p, t, 0.0, -dz, dx, 2.0 * p.mu1 * dz / s1, settings);
    r.value *= 2.0 / s1;
    r.error *= 2.0 / s1;
    return r;
}

}  // namespace

QuadResult transition_density_with_error(const DensityQuery& query) {
    validate(query.params);
    require_positive_time(query.t, "transition_density");
    if (!std::isfinite(query.x) || !std::isfinite(query.z)) {
        throw DomainError("transition_density: x and z must be finite");
    }
    query.settings.validate();
    QuadResult r;
    if (query.x >= query.params.a) {
        r = density_from_upper(query.params, query.t, query.x, query.z, query.settings);
    } else {
        r = density_from_upper(mirrored(query.params), query.t, -query.x, -query.z,
                               query.settings);
    }
    if (r.value < 0.0) {
        r.value = 0.0;
    }
    return r;
}

double transition_density(const DensityQuery& query) {
    return transition_density_with_error(query).value;
}

double density_jump_at_threshold(const DiffusionParams& p, double t, double x,
                                 const QuadSettings& settings) {
    validate(p);
    require_positive_time(t, "density_jump_at_threshold");
    if (!std::isfinite(x)) {
        throw DomainError("density_jump_at_threshold: x must be finite");
    }
    settings.validate();
    if (p.sigma1 == p.sigma2) {
        return 0.0;
    }
    const double factor = 2.0 * (1.0 / (p.sigma2 * p.sigma2) - 1.0 / (p.sigma1 * p.sigma1));
    const double lo = std::max(p.a - x, 0.0);
    return factor * b_integral(p, t, lo, 0.0, x - p.a, 0.0, settings).value;
}

double stationary_density(const DiffusionParams& p, double z) {
    validate(p);
    return potential_q_to_zero_limit(p, z);
}

double oscillating_bm_density(double sigma1, double sigma2, double a, double t, double x,
                              double z) {
    validate(DiffusionParams{0.0, 0.0, sigma1, sigma2, a});
    require_positive_time(t, "oscillating_bm_density");
    if (x < a) {
        return oscillating_bm_density(sigma2, sigma1, -a, t, -x, -z);
    }
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * t);
    if (z >= a) {
        const double s2t = sigma2 * sigma2 * t;
        const double image = x + z - 2.0 * a;
        return norm / sigma2 *
               ((sigma1 - sigma2) / (sigma1 + sigma2) * std::exp(-image * image / (2.0 * s2t)) +
                std::exp(-(z - x) * (z - x) / (2.0 * s2t)));
    }
    const double w = (z - a) / sigma1 - (x - a) / sigma2;
    return norm * 2.0 * sigma2 / ((sigma1 + sigma2) * sigma1) * std::exp(-w * w / (2.0 * t));
}

double equal_sigma_density(double mu1, double mu2, double sigma, double a, double t, double x,
                           double z, const QuadSettings& settings) {
    return transition_density(DensityQuery{make_params(mu1, mu2, sigma, sigma, a), t, x, z, settings});
}

bool is_time_reversible(const DiffusionParams& p) noexcept {
    return p.mu1 == p.mu2 && p.sigma1 == p.sigma2;
}

}  // namespace tdiff
