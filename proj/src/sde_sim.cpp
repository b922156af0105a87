#include "tdiff/sde_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "tdiff/errors.hpp"
#include "tdiff/format.hpp"

namespace tdiff {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, n) over contiguous blocks. The first exception
// thrown by any worker is rethrown on the calling thread.
template <class Body>
void for_each_path(long n, int threads, Body&& body) {
    const int workers = static_cast<int>(std::min<long>(resolve_threads(threads), n));
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<bool> stop{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const long begin = n * w / workers;
        const long end = n * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (long i = begin; i < end && !stop.load(std::memory_order_relaxed); ++i) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                stop = true;
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

// Step count and final (possibly short) step covering [0, horizon].
struct TimeGrid {
    long steps;
    double dt;
    double last_dt;
};

TimeGrid make_grid(double horizon, double dt) {
    const long steps = std::max(1L, static_cast<long>(std::ceil(horizon / dt - 1e-9)));
    return {steps, dt, horizon - static_cast<double>(steps - 1) * dt};
}

Estimate bernoulli_estimate(long hits, long n) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    if (n < 2) return {p, 0.0};
    const double var = p * (1.0 - p) * static_cast<double>(n) / static_cast<double>(n - 1);
    return {p, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

void validate(const SimConfig& config) {
    validate(config.params);
    if (!std::isfinite(config.x0)) throw ConfigError("x0 must be finite");
    if (!(config.horizon > 0.0) || !std::isfinite(config.horizon)) {
        throw ConfigError("horizon must be finite and > 0");
    }
    if (!(config.dt > 0.0)) throw ConfigError("dt must be > 0");
    if (config.dt > config.horizon) throw ConfigError("dt must not exceed the horizon");
    if (config.n_paths < 1) throw ConfigError("n_paths must be >= 1");
}

PathRng::PathRng(std::uint64_t seed, std::uint64_t path_index) noexcept
    : key_(mix64(seed ^ mix64(path_index + kGoldenGamma))) {}

double PathRng::uniform() noexcept {
    const std::uint64_t bits = mix64(key_ + (++counter_) * kGoldenGamma);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double PathRng::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

Estimate PathEnsemble::mean() const {
    const long n = n_paths();
    if (n == 0) return {};
    double sum = 0.0;
    for (double v : terminal_values) sum += v;
    const double m = sum / static_cast<double>(n);
    if (n < 2) return {m, 0.0};
    double ss = 0.0;
    for (double v : terminal_values) ss += (v - m) * (v - m);
    return {m, std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n))};
}

Estimate PathEnsemble::survival(double level) const {
    const long n = n_paths();
    if (n == 0) return {};
    const long hits = std::count_if(terminal_values.begin(), terminal_values.end(),
                                    [level](double v) { return v >= level; });
    return bernoulli_estimate(hits, n);
}

std::vector<Estimate> PathEnsemble::histogram(double lo, double hi, int bins) const {
    if (!(hi > lo) || bins < 1) throw ConfigError("histogram: need lo < hi and bins >= 1");
    std::vector<long> counts(bins, 0);
    const double width = (hi - lo) / bins;
    for (double v : terminal_values) {
        if (v < lo || v >= hi) continue;
        const int k = std::min(bins - 1, static_cast<int>((v - lo) / width));
        ++counts[k];
    }
    std::vector<Estimate> out(bins);
    for (int k = 0; k < bins; ++k) out[k] = bernoulli_estimate(counts[k], n_paths());
    return out;
}

PathEnsemble simulate_paths(const SimConfig& config, int threads) {
    validate(config);
    const auto grid = make_grid(config.horizon, config.dt);
    const auto& p = config.params;
    PathEnsemble ens;
    ens.dt = config.dt;
    ens.seed = config.seed;
    ens.terminal_values.resize(config.n_paths);
    const double sq_dt = std::sqrt(grid.dt);
    const double sq_last = std::sqrt(grid.last_dt);
    for_each_path(config.n_paths, threads, [&](long i) {
        PathRng rng(config.seed, static_cast<std::uint64_t>(i));
        double x = config.x0;
        for (long k = 0; k + 1 < grid.steps; ++k) {
            const bool lower = x <= p.a;
            x += (lower ? p.mu1 : p.mu2) * grid.dt + (lower ? p.sigma1 : p.sigma2) * sq_dt * rng.normal();
        }
        const bool lower = x <= p.a;
        x += (lower ? p.mu1 : p.mu2) * grid.last_dt +
             (lower ? p.sigma1 : p.sigma2) * sq_last * rng.normal();
        ens.terminal_values[i] = x;
    });
    return ens;
}

PathEnsemble simulate_policy(const ControlProblem& problem, const VolatilityPolicy& policy,
                             double x0, double dt, long n_paths, std::uint64_t seed, int threads) {
    validate(problem);
    if (!std::isfinite(x0)) throw ConfigError("x0 must be finite");
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    if (dt > problem.T) throw ConfigError("dt must not exceed the horizon");
    if (n_paths < 1) throw ConfigError("n_paths must be >= 1");
    const auto grid = make_grid(problem.T, dt);
    PathEnsemble ens;
    ens.dt = dt;
    ens.seed = seed;
    ens.terminal_values.resize(n_paths);
    for_each_path(n_paths, threads, [&](long i) {
        PathRng rng(seed, static_cast<std::uint64_t>(i));
        double x = x0;
        for (long k = 0; k < grid.steps; ++k) {
            const double t = static_cast<double>(k) * grid.dt;
            const double h = k + 1 < grid.steps ? grid.dt : grid.last_dt;
            const double sigma = policy(x, t);
            if (sigma != problem.sigma_bar && sigma != problem.sigma_low) {
                throw PolicyError("policy returned a volatility outside {sigma_low, sigma_bar}");
            }
            x += problem.drift_for(sigma) * h + sigma * std::sqrt(h) * rng.normal();
        }
        ens.terminal_values[i] = x;
    });
    return ens;
}

Estimate empirical_hitting_transform(const SimConfig& config, double level, double q,
                                     int threads) {
    validate(config);
    if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("hitting transform: q must be > 0");
    if (!std::isfinite(level)) throw DomainError("hitting transform: level must be finite");
    const long n = config.n_paths;
    if (config.x0 == level) return {1.0, 0.0};
    const auto grid = make_grid(config.horizon, config.dt);
    const auto& p = config.params;
    const double side = config.x0 > level ? 1.0 : -1.0;
    std::vector<double> samples(n, 0.0);
    for_each_path(n, threads, [&](long i) {
        PathRng rng(config.seed, static_cast<std::uint64_t>(i));
        double x = config.x0;
        double t = 0.0;
        for (long k = 0; k < grid.steps; ++k) {
            const double h = k + 1 < grid.steps ? grid.dt : grid.last_dt;
            const bool lower = x <= p.a;
            x += (lower ? p.mu1 : p.mu2) * h + (lower ? p.sigma1 : p.sigma2) * std::sqrt(h) * rng.normal();
            t += h;
            if ((x - level) * side <= 0.0) {
                samples[i] = std::exp(-q * t);
                return;
            }
        }
    });
    PathEnsemble tmp;
    tmp.terminal_values = std::move(samples);
    return tmp.mean();
}

void write_ensemble_csv(std::ostream& out, const PathEnsemble& ensemble) {
    out << "path_index,terminal_value\n";
    for (long i = 0; i < ensemble.n_paths(); ++i) {
        out << std::to_string(i) << ',' << format_number(ensemble.terminal_values[i]) << '\n';
    }
}

}  // namespace tdiff
