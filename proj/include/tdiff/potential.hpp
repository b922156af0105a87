#pragma once

#include <cmath>
#include <complex>

#include "tdiff/params.hpp"

namespace tdiff {

/// Request for the density of X at an independent exponential time of rate q.
struct PotentialQuery {
    DiffusionParams params;
    double q;
    double x;
    double z;
};

/// Density in z of X_{e_q} started from x, i.e. the q-weighted Laplace
/// transform in time of the transition density. Nonnegative; jumps at z = a
/// by the factor sigma1^2 / sigma2^2.
///
/// Branch ownership at the threshold: for x >= a the point z = a belongs to
/// the upper formulas, for x < a to the lower ones.
double potential_density(const PotentialQuery& query);

/// The x-independent limit of the potential density as q -> 0, which exists
/// only for mu1 > 0 > mu2. Throws NoStationaryLaw otherwise.
double potential_q_to_zero_limit(const DiffusionParams& p, double z);

/// Unchecked evaluation of the potential density for a real or complex rate.
/// The complex form is the analytic continuation used by contour inversion.
template <typename Scalar>
Scalar potential_density_at(const DiffusionParams& p, const Scalar& q, double x, double z) {
    using std::exp;
    const auto d = deltas<Scalar>(p, q);
    const double dx = x - p.a;
    const double dz = z - p.a;
    if (x >= p.a) {
        if (dz < 0.0) {
            // Enters the lower regime only after hitting a.
            return q / d.root1 * (d.d1_plus + d.d1_minus) / (d.d2_plus + d.d1_minus) *
                   exp(-d.d2_plus * dx + d.d1_plus * dz);
        }
        const Scalar k = (d.d2_minus - d.d1_minus) / (d.d2_plus + d.d1_minus);
        const Scalar direct = dz >= dx ? exp(-d.d2_minus * (dz - dx)) : exp(-d.d2_plus * (dx - dz));
        return q / d.root2 * (direct + k * exp(-d.d2_plus * dx - d.d2_minus * dz));
    }
    if (dz > 0.0) {
        return q / d.root2 * (d.d2_minus + d.d2_plus) / (d.d1_minus + d.d2_plus) *
               exp(d.d1_minus * dx - d.d2_minus * dz);
    }
    const Scalar k = (d.d1_plus - d.d2_plus) / (d.d1_minus + d.d2_plus);
    const Scalar direct = dz <= dx ? exp(-d.d1_plus * (dx - dz)) : exp(-d.d1_minus * (dz - dx));
    return q / d.root1 * (direct + k * exp(d.d1_minus * dx + d.d1_plus * dz));
}

}  // namespace tdiff
