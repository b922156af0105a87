#pragma once

#include "tdiff/control_problem.hpp"
#include "tdiff/params.hpp"
#include "tdiff/quad.hpp"

namespace tdiff {

/// Slope of the moving switching level,
/// (mu_bar sigma_low - mu_low sigma_bar) / (sigma_bar - sigma_low).
double alpha(const ControlProblem& problem);

/// Level a + alpha (T - t) below which the high-volatility option is optimal.
double optimal_threshold(const ControlProblem& problem, double t);

/// sigma_bar at or below the moving threshold, sigma_low above it.
double optimal_volatility(const ControlProblem& problem, double state, double t);

struct OptimalPolicy {
    ControlProblem problem;
    double alpha;

    double threshold(double t) const { return optimal_threshold(problem, t); }
    double volatility(double state, double t) const { return optimal_volatility(problem, state, t); }
    double drift(double state, double t) const { return problem.drift_for(volatility(state, t)); }
};

OptimalPolicy optimal_policy(const ControlProblem& problem);

/// Threshold diffusion followed by X_t - alpha (T - t) under the optimal policy:
/// (mu_bar + alpha, mu_low + alpha, sigma_bar, sigma_low, a).
DiffusionParams optimal_state_params(const ControlProblem& problem);

/// Maximal survival probability P(X_T >= a) from x, computed as the mass of
/// p(T; x - alpha T, .) above a. Throws AccuracyError if quadrature leaves the
/// result outside [0, 1] by more than 1e-4.
double value_function(const ControlProblem& problem, double x, const QuadSettings& settings = {});

}  // namespace tdiff
