#include "tdiff/potential.hpp"

namespace tdiff {

double potential_density(const PotentialQuery& query) {
    if (!(query.q > 0.0) || !std::isfinite(query.q)) {
        throw DomainError("potential_density: q must be finite and > 0");
    }
    if (!std::isfinite(query.x) || !std::isfinite(query.z)) {
        throw DomainError("potential_density: x and z must be finite");
    }
    const double v = potential_density_at(query.params, query.q, query.x, query.z);
    // Cancellation in the correction term can leave a tiny negative residue.
    return v > 0.0 ? v : 0.0;
}

double potential_q_to_zero_limit(const DiffusionParams& p, double z) {
    if (!(p.mu1 > 0.0 && p.mu2 < 0.0)) {
        throw NoStationaryLaw("stationary law requires mu1 > 0 and mu2 < 0");
    }
    const double weight = -p.mu1 * p.mu2 / (p.mu1 - p.mu2);
    const double dz = z - p.a;
    if (dz >= 0.0) {
        const double s2 = p.sigma2 * p.sigma2;
        return weight * 2.0 / s2 * std::exp(2.0 * p.mu2 * dz / s2);
    }
    const double s1 = p.sigma1 * p.sigma1;
    return weight * 2.0 / s1 * std::exp(2.0 * p.mu1 * dz / s1);
}

}  // namespace tdiff
