#pragma once

#include "tdiff/params.hpp"
#include "tdiff/quad.hpp"

namespace tdiff {

struct DensityQuery {
    DiffusionParams params;
    double t;
    double x;
    double z;
    QuadSettings settings{};
};

/// Transition density p(t; x, z) of the threshold diffusion.
///
/// For a start above the threshold the density is a convolution integral
/// over the excursion variable b in (0, inf) and the crossing time tau in
/// (0, t), plus (when z is also above) the closed-form density of the upper
/// regime killed at a. Starts below the threshold go through the mirror
/// image X -> -X. At z == a the upper formula is used for x >= a and the
/// lower one for x < a; use density_jump_at_threshold for the one-sided gap.
///
/// Throws DomainError for t <= 0 and propagates AccuracyError from the
/// quadrature.
double transition_density(const DensityQuery& query);

/// Same as transition_density, also returning the quadrature error bound.
QuadResult transition_density_with_error(const DensityQuery& query);

/// p(t; x, a+) - p(t; x, a-). Exactly zero when sigma1 == sigma2.
double density_jump_at_threshold(const DiffusionParams& p, double t, double x,
                                 const QuadSettings& settings = {});

/// Long-time limit law, two-sided exponential around a. Requires mu1 > 0 > mu2.
double stationary_density(const DiffusionParams& p, double z);

/// Closed-form density of the zero-drift threshold diffusion
/// (oscillating Brownian motion).
double oscillating_bm_density(double sigma1, double sigma2, double a, double t, double x,
                              double z);

/// Transition density with a common volatility and two drifts.
double equal_sigma_density(double mu1, double mu2, double sigma, double a, double t, double x,
                           double z, const QuadSettings& settings = {});

/// Whether the process run backwards in time (drifts negated) has the same
/// transition density with start and end swapped. True iff both coefficient
/// pairs coincide.
bool is_time_reversible(const DiffusionParams& p) noexcept;

}  // namespace tdiff
