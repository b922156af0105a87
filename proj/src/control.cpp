#include "tdiff/control.hpp"

#include <array>
#include <algorithm>
#include <cmath>

#include "tdiff/density.hpp"
#include "tdiff/errors.hpp"

namespace tdiff {

void validate(const ControlProblem& problem) {
    const auto& c = problem;
    for (double v : {c.mu_bar, c.sigma_bar, c.mu_low, c.sigma_low, c.a, c.T}) {
        if (!std::isfinite(v)) throw InvalidParameter("control problem fields must be finite");
    }
    if (!(c.sigma_low > 0.0)) throw InvalidParameter("sigma_low must be positive");
    if (!(c.sigma_low < c.sigma_bar)) throw InvalidParameter("sigma_low must be below sigma_bar");
    if (!(c.T > 0.0)) throw InvalidParameter("T must be positive");
}

double alpha(const ControlProblem& problem) {
    validate(problem);
    const auto& c = problem;
    return (c.mu_bar * c.sigma_low - c.mu_low * c.sigma_bar) / (c.sigma_bar - c.sigma_low);
}

double optimal_threshold(const ControlProblem& problem, double t) {
    const double slope = alpha(problem);
    if (!(t >= 0.0 && t <= problem.T)) throw DomainError("optimal_threshold: t outside [0, T]");
    return problem.a + slope * (problem.T - t);
}

double optimal_volatility(const ControlProblem& problem, double state, double t) {
    return state <= optimal_threshold(problem, t) ? problem.sigma_bar : problem.sigma_low;
}

OptimalPolicy optimal_policy(const ControlProblem& problem) {
    return OptimalPolicy{problem, alpha(problem)};
}

DiffusionParams optimal_state_params(const ControlProblem& problem) {
    const double s = alpha(problem);
    return make_params(problem.mu_bar + s, problem.mu_low + s, problem.sigma_bar, problem.sigma_low,
                       problem.a);
}

double value_function(const ControlProblem& problem, double x, const QuadSettings& settings) {
    if (!std::isfinite(x)) throw DomainError("value_function: x must be finite");
    const double s = alpha(problem);
    const DiffusionParams p = optimal_state_params(problem);
    const double start = x - s * problem.T;
    const double reach = 12.0 * problem.sigma_bar * std::sqrt(problem.T) +
                         (std::abs(problem.mu_bar) + std::abs(problem.mu_low) + std::abs(s)) * problem.T;
    const double upper = std::max(problem.a, start) + reach;
    auto mass = [&](double z) { return transition_density(DensityQuery{p, problem.T, start, z, settings}); };
    const std::array<double, 1> kink{start};
    QuadResult r = integrate_finite(mass, problem.a, upper, kink, settings);
    // Gaussian tail beyond 12 standard deviations.
    r.error += 0.5 * std::erfc(12.0 / std::sqrt(2.0));
    if (r.value < -1e-4 || r.value > 1.0 + 1e-4) {
        throw AccuracyError("value_function: result outside [0, 1]", r.value, r.error);
    }
    return std::clamp(r.value, 0.0, 1.0);
}

}  // namespace tdiff
