#pragma once

namespace tdiff {

/// Two admissible (drift, volatility) options, a survival level a and a
/// horizon T. The objective is P(X_T >= a).
struct ControlProblem {
    double mu_bar = 0.0;
    double sigma_bar = 2.0;
    double mu_low = 0.0;
    double sigma_low = 1.0;
    double a = 0.0;
    double T = 1.0;

    /// Drift paired with an admissible volatility.
    double drift_for(double sigma) const noexcept { return sigma == sigma_bar ? mu_bar : mu_low; }
};

/// Throws InvalidParameter unless 0 < sigma_low < sigma_bar, T > 0, all finite.
void validate(const ControlProblem& problem);

}  // namespace tdiff
