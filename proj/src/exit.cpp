#include "tdiff/exit.hpp"

#include <cmath>

namespace tdiff {

namespace {

void require_positive_rate(double q, const char* who) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw DomainError(std::string(who) + ": q must be finite and > 0");
    }
}

double log_g_minus_impl(const DiffusionParams& p, const DeltaSet<double>& d, double x) {
    const double u = x - p.a;
    if (u > 0.0) {
        return -d.d2_plus * u;
    }
    // c- e^{d1- u} + (1 - c-) e^{-d1+ u} = e^{-d1+ u} (1 + c- expm1((d1- + d1+) u))
    const double s = d.d1_minus + d.d1_plus;
    return -d.d1_plus * u + std::log1p(d.c_minus * std::expm1(s * u));
}

double log_g_plus_impl(const DiffusionParams& p, const DeltaSet<double>& d, double x) {
    const double u = x - p.a;
    if (u <= 0.0) {
        return d.d1_minus * u;
    }
    const double s = d.d2_minus + d.d2_plus;
    return d.d2_minus * u + std::log1p(d.c_plus * std::expm1(-s * u));
}

}  // namespace

double log_g_minus(const DiffusionParams& p, double q, double x) {
    require_positive_rate(q, "g_minus");
    return log_g_minus_impl(p, deltas(p, q), x);
}

double log_g_plus(const DiffusionParams& p, double q, double x) {
    require_positive_rate(q, "g_plus");
    return log_g_plus_impl(p, deltas(p, q), x);
}

double g_minus(const DiffusionParams& p, double q, double x) {
    return std::exp(log_g_minus(p, q, x));
}

double g_plus(const DiffusionParams& p, double q, double x) {
    return std::exp(log_g_plus(p, q, x));
}

GPair g_pair(const DiffusionParams& p, double q, double x) {
    require_positive_rate(q, "g_pair");
    const auto d = deltas(p, q);
    return {std::exp(log_g_minus_impl(p, d, x)), std::exp(log_g_plus_impl(p, d, x))};
}

TwoSidedExit two_sided_exit(const ExitQuery& query) {
    const auto& p = query.params;
    require_positive_rate(query.q, "two_sided_exit");
    if (!std::isfinite(query.x) || !std::isfinite(query.y) || !std::isfinite(query.z)) {
        throw DomainError("two_sided_exit: levels must be finite");
    }
    if (query.y == query.z) {
        throw DegenerateInterval("two_sided_exit: y == z");
    }
    if (!(query.y <= query.x && query.x <= query.z)) {
        throw DomainError("two_sided_exit: requires y <= x <= z");
    }
    const auto d = deltas(p, query.q);
    const double lmx = log_g_minus_impl(p, d, query.x);
    const double lmy = log_g_minus_impl(p, d, query.y);
    const double lmz = log_g_minus_impl(p, d, query.z);
    const double lpx = log_g_plus_impl(p, d, query.x);
    const double lpy = log_g_plus_impl(p, d, query.y);
    const double lpz = log_g_plus_impl(p, d, query.z);

    // Determinant form with the dominant products factored out.
    const double denom = -std::expm1(lmz + lpy - lmy - lpz);
    if (!(std::abs(denom) > 1e-300)) {
        throw DegenerateInterval("two_sided_exit: vanishing determinant");
    }
    const double down_num = -std::expm1(lmz + lpx - lpz - lmx);
    const double up_num = -std::expm1(lpy + lmx - lmy - lpx);
    TwoSidedExit r;
    r.down_lt = std::exp(lmx - lmy) * down_num / denom;
    r.up_lt = std::exp(lpx - lpz) * up_num / denom;
    return r;
}

double one_sided_down(const DiffusionParams& p, double q, double x, double y) {
    require_positive_rate(q, "one_sided_down");
    if (!(y <= x)) {
        throw DomainError("one_sided_down: requires y <= x");
    }
    const auto d = deltas(p, q);
    return std::exp(log_g_minus_impl(p, d, x) - log_g_minus_impl(p, d, y));
}

double one_sided_up(const DiffusionParams& p, double q, double x, double z) {
    require_positive_rate(q, "one_sided_up");
    if (!(x <= z)) {
        throw DomainError("one_sided_up: requires x <= z");
    }
    const auto d = deltas(p, q);
    return std::exp(log_g_plus_impl(p, d, x) - log_g_plus_impl(p, d, z));
}

}  // namespace tdiff
