#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "tdiff/control_problem.hpp"
#include "tdiff/params.hpp"

namespace tdiff {

struct SimConfig {
    DiffusionParams params;
    double x0 = 0.0;
    double horizon = 1.0;
    double dt = 1e-3;
    long n_paths = 100000;
    std::uint64_t seed = 0;
};

/// Throws ConfigError when dt <= 0, dt > horizon or n_paths < 1.
void validate(const SimConfig& config);

struct Estimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Terminal states of a Monte Carlo run.
struct PathEnsemble {
    std::vector<double> terminal_values;
    double dt = 0.0;
    std::uint64_t seed = 0;

    long n_paths() const noexcept { return static_cast<long>(terminal_values.size()); }
    Estimate mean() const;
    /// Fraction of paths with terminal value >= level.
    Estimate survival(double level) const;
    /// Fraction of all paths landing in each of `bins` equal bins on [lo, hi).
    std::vector<Estimate> histogram(double lo, double hi, int bins) const;
};

/// Counter-based normal stream for one path: SplitMix64 applied to
/// key + n * golden-gamma, normals by the Marsaglia polar method. The key is
/// derived from (seed, path_index), so paths are independent of scheduling.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path_index) noexcept;
    double uniform() noexcept;  ///< in (0, 1)
    double normal() noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Euler-Maruyama paths of the threshold diffusion. The regime of each step
/// is taken at its left endpoint. Bit-identical for a given config whatever
/// the thread count (threads = 0 picks the hardware concurrency).
PathEnsemble simulate_paths(const SimConfig& config, int threads = 1);

/// Volatility chosen at (state, time); must return sigma_bar or sigma_low.
using VolatilityPolicy = std::function<double(double state, double t)>;

/// Controlled Euler-Maruyama paths; drift follows the chosen volatility.
/// Throws PolicyError the first time the policy returns anything else.
PathEnsemble simulate_policy(const ControlProblem& problem, const VolatilityPolicy& policy,
                             double x0, double dt, long n_paths, std::uint64_t seed,
                             int threads = 1);

/// Monte Carlo estimate of E[exp(-q T_level)], T_level the first grid time at
/// which the path reaches or crosses level. Paths that have not crossed by
/// the horizon contribute 0.
Estimate empirical_hitting_transform(const SimConfig& config, double level, double q,
                                     int threads = 1);

/// CSV with header `path_index,terminal_value`.
void write_ensemble_csv(std::ostream& out, const PathEnsemble& ensemble);

}  // namespace tdiff
