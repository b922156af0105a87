#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tdiff/errors.hpp"

namespace tdiff {

struct QuadSettings {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    int max_subdivisions = 2000;
    /// Tail mass allowed beyond the truncation point of a semi-infinite range.
    double truncation_epsilon = 1e-12;

    /// Throws SettingsError on nonpositive tolerances or budget.
    void validate() const;

    /// Copy with both tolerances scaled, for integrals nested inside others.
    QuadSettings tightened(double factor) const {
        QuadSettings s = *this;
        s.abs_tol *= factor;
        s.rel_tol *= factor;
        s.truncation_epsilon *= factor;
        return s;
    }
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
};

namespace detail {

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

/// One 21-point Gauss-Kronrod panel with the QUADPACK error heuristic.
/// Nodes are strictly interior, so f is never evaluated at lo or hi.
template <class F>
Panel gk21_panel(F& f, double lo, double hi) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& xk = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G::weights();

    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::array<double, 21> fv{};
    fv[0] = f(center);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        fv[2 * i - 1] = f(center - half * xk[i]);
        fv[2 * i] = f(center + half * xk[i]);
    }
    for (double v : fv) {
        if (!std::isfinite(v)) {
            throw IntegrandError("integrand returned a non-finite value");
        }
    }
    double kronrod = fv[0] * wk[0];
    double gauss = 0.0;
    double abs_sum = std::abs(fv[0]) * wk[0];
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double pair = fv[2 * i - 1] + fv[2 * i];
        kronrod += pair * wk[i];
        abs_sum += (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i])) * wk[i];
        // Odd abscissae are the embedded 10-point Gauss nodes.
        if (i % 2 == 1) {
            gauss += pair * wg[i / 2];
        }
    }
    const double mean = 0.5 * kronrod;
    double asc = std::abs(fv[0] - mean) * wk[0];
    for (std::size_t i = 1; i < xk.size(); ++i) {
        asc += (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean)) * wk[i];
    }

    const double result = kronrod * half;
    const double resabs = abs_sum * std::abs(half);
    const double resasc = asc * std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    return Panel{lo, hi, result, err};
}

/// Global adaptive bisection over the panels delimited by `breaks`
/// (sorted, at least two entries). Each initial panel counts against the
/// subdivision budget.
template <class F>
QuadResult adaptive(F& f, std::span<const double> breaks, const QuadSettings& s) {
    std::priority_queue<Panel> heap;
    QuadResult out;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] <= breaks[i]) {
            continue;
        }
        Panel p = gk21_panel(f, breaks[i], breaks[i + 1]);
        out.evaluations += 21;
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    int subdivisions = static_cast<int>(heap.size());
    auto tolerance = [&] { return std::max(s.abs_tol, s.rel_tol * std::abs(total)); };
    while (!heap.empty() && total_err > tolerance()) {
        if (subdivisions >= s.max_subdivisions) {
            throw AccuracyError("quadrature: subdivision budget exhausted", total, total_err);
        }
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw AccuracyError("quadrature: panel width reached machine resolution", total,
                                total_err);
        }
        heap.pop();
        Panel left = gk21_panel(f, worst.lo, mid);
        Panel right = gk21_panel(f, mid, worst.hi);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }
    // Re-sum to shed the drift accumulated by the running updates.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error = total_err;
    return out;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [lo, hi].
///
/// Returns once the summed error estimate is below max(abs_tol, rel_tol |I|).
/// Throws AccuracyError (carrying the best estimate) when the subdivision
/// budget runs out, IntegrandError on a non-finite integrand value.
template <class F>
QuadResult integrate_finite(F&& f, double lo, double hi, const QuadSettings& settings) {
    settings.validate();
    if (!(lo <= hi)) {
        throw DomainError("integrate_finite: requires lo <= hi");
    }
    if (lo == hi) {
        return {};
    }
    const std::array<double, 2> breaks{lo, hi};
    return detail::adaptive(f, breaks, settings);
}

/// Same, with interior breakpoints where the integrand is known to change
/// character (kinks, jumps, peaks). Points outside (lo, hi) are ignored.
template <class F>
QuadResult integrate_finite(F&& f, double lo, double hi, std::span<const double> interior,
                            const QuadSettings& settings) {
    settings.validate();
    if (!(lo <= hi)) {
        throw DomainError("integrate_finite: requires lo <= hi");
    }
    if (lo == hi) {
        return {};
    }
    std::vector<double> breaks{lo, hi};
    for (double b : interior) {
        if (b > lo && b < hi) {
            breaks.push_back(b);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    return detail::adaptive(f, breaks, settings);
}

/// Integral of f over [lo, inf) for f eventually dominated by C exp(-r u),
/// r = decay_rate_hint.
///
/// The range is cut at the first u* (starting from lo + ln(1/(r eps))/r and
/// stepping outward) where |f(u*)|/r, the hinted tail mass, is below
/// truncation_epsilon. The tail bound is added to the reported error.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double lo, double decay_rate_hint,
                                   const QuadSettings& settings) {
    settings.validate();
    if (!(decay_rate_hint > 0.0) || !std::isfinite(decay_rate_hint)) {
        throw DomainError("integrate_semi_infinite: decay_rate_hint must be positive");
    }
    if (!std::isfinite(lo)) {
        throw DomainError("integrate_semi_infinite: lo must be finite");
    }
    const double r = decay_rate_hint;
    const double eps = settings.truncation_epsilon;
    const double scale = 1.0 / r;
    double cut = lo + std::max(1.0, std::log(1.0 / (r * eps))) * scale;
    double tail = std::abs(f(cut)) * scale;
    long extra_evals = 1;
    for (int iter = 0; tail > eps; ++iter) {
        if (iter >= 200) {
            throw AccuracyError("integrate_semi_infinite: integrand does not decay", 0.0,
                                std::numeric_limits<double>::infinity());
        }
        cut += scale * std::max(1.0, std::log(tail / eps));
        tail = std::abs(f(cut)) * scale;
        ++extra_evals;
    }
    // Seed with panels of roughly one decay length so narrow features
    // anywhere in the range are sampled before adaptivity takes over.
    const int panels = static_cast<int>(
        std::clamp(std::ceil((cut - lo) / scale), 1.0,
                   std::max(1.0, std::min(64.0, settings.max_subdivisions / 4.0))));
    std::vector<double> breaks(panels + 1);
    for (int i = 0; i <= panels; ++i) {
        breaks[i] = lo + (cut - lo) * static_cast<double>(i) / panels;
    }
    breaks.back() = cut;
    QuadResult r_out = detail::adaptive(f, breaks, settings);
    r_out.error += std::max(tail, 0.0);
    r_out.evaluations += extra_evals;
    return r_out;
}

/// Convolution of two first-passage kernels,
/// integral over (0, t) of h(t - tau; x1, mu1) h(tau; x2, mu2) d tau.
QuadResult convolve_h_pair(double t, double x1, double mu1, double x2, double mu2,
                           const QuadSettings& settings);

namespace detail {

/// exp(log_prefactor) times the convolution above, evaluated in log space so
/// that a large prefactor and a tiny kernel product do not over/underflow.
QuadResult scaled_h_convolution(double t, double x1, double mu1, double x2, double mu2,
                                double log_prefactor, const QuadSettings& settings);

}  // namespace detail

}  // namespace tdiff
