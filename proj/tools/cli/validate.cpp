#include "validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "tdiff/control.hpp"
#include "tdiff/density.hpp"
#include "tdiff/exit.hpp"
#include "tdiff/laplace_invert.hpp"
#include "tdiff/potential.hpp"
#include "tdiff/quad.hpp"
#include "tdiff/sde_sim.hpp"

namespace tdiff::cli {

bool CriterionReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

const DiffusionParams kTwoRegime = make_params(1, -1, 1, 2, 0);
const DiffusionParams kOscillating = make_params(0, 0, 1, 2, 0);

double gaussian(double x, double mean, double var) {
    const double d = x - mean;
    return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double p_t(const DiffusionParams& p, double t, double x, double z) {
    return transition_density({p, t, x, z});
}

// Integral over all z of f, split at the threshold and the start, with
// exponential tails at the given decay rates.
double line_integral(const std::function<double(double)>& f, double lo, double hi,
                     double rate_below, double rate_above, const QuadSettings& s) {
    const double middle = integrate_finite(f, lo, hi, s).value;
    const double upper = integrate_semi_infinite(f, hi, rate_above, s).value;
    const double lower =
        integrate_semi_infinite([&](double v) { return f(-v); }, -lo, rate_below, s).value;
    return lower + middle + upper;
}

double density_mass(const DiffusionParams& p, double t, double x) {
    const double smax = std::max(p.sigma1, p.sigma2);
    const double mmax = std::max(std::abs(p.mu1), std::abs(p.mu2));
    const double half = 12.0 * smax * std::sqrt(t) + mmax * t;
    const std::array<double, 2> breaks{p.a, x};
    return integrate_finite([&](double z) { return p_t(p, t, x, z); }, x - half, x + half, breaks,
                            QuadSettings{})
        .value;
}

double potential_mass(const DiffusionParams& p, double q, double x) {
    QuadSettings s;
    s.abs_tol = 1e-12;
    s.rel_tol = 1e-12;
    const auto d = deltas(p, q);
    return line_integral([&](double z) { return potential_density({p, q, x, z}); },
                         std::min(p.a, x), std::max(p.a, x), d.d1_plus, d.d2_minus, s);
}

// Second-order one-sided derivative; a negative h looks to the left.
template <class G>
double one_sided_slope(G g, double x0, double h) {
    return (-3.0 * g(x0) + 4.0 * g(x0 + h) - g(x0 + 2.0 * h)) / (2.0 * h);
}

class Builder {
public:
    explicit Builder(std::optional<double> tol) : tol_(tol) {}

    CriterionReport& start(int n, std::string title) {
        reports_.push_back({n, std::move(title), {}});
        return reports_.back();
    }
    void at_most(std::string name, double value, double bound) {
        const double b = tol_ ? *tol_ : bound;
        reports_.back().checks.push_back({std::move(name), value, b, true, value <= b});
    }
    void above(std::string name, double value, double bound) {
        reports_.back().checks.push_back({std::move(name), value, bound, false, value > bound});
    }
    std::vector<CriterionReport> take() { return std::move(reports_); }

private:
    std::optional<double> tol_;
    std::vector<CriterionReport> reports_;
};

double max_histogram_z(const PathEnsemble& e, const std::function<double(double, double)>& mass,
                       double lo, double hi, int bins) {
    const auto h = e.histogram(lo, hi, bins);
    const double width = (hi - lo) / bins;
    double worst = 0.0;
    for (int k = 0; k < bins; ++k) {
        const double dev = std::abs(h[k].value - mass(lo + k * width, lo + (k + 1) * width));
        const double se = std::max(h[k].standard_error, 1.0 / e.n_paths());
        worst = std::max(worst, dev / se);
    }
    return worst;
}

std::string simulate_csv(int threads) {
    const std::string t = std::to_string(threads);
    const std::array<const char*, 22> argv{
        "threshold-diffusion", "simulate", "--mu1", "1", "--mu2", "-1", "--sigma1", "1",
        "--sigma2", "2", "--x0", "0.3", "--horizon", "1", "--dt", "0.01", "--paths", "2000",
        "--seed", "42", "--threads", t.c_str()};
    std::ostringstream out;
    std::ostringstream err;
    if (run_cli(static_cast<int>(argv.size()), argv.data(), out, err) != 0) return {};
    return out.str();
}

}  // namespace

std::vector<CriterionReport> run_validation(std::optional<double> tolerance, int threads) {
    Builder b(tolerance);

    b.start(1, "oscillating Brownian motion closed form");
    {
        double worst = 0.0;
        for (double t : {0.25, 1.0, 4.0}) {
            for (double x : {0.0, 0.5, 2.0}) {
                for (int k = 0; k < 9; ++k) {
                    const double off = 0.05 + (4.0 - 0.05) * k / 8.0;
                    for (double z : {-off, off}) {
                        worst = std::max(worst, std::abs(p_t(kOscillating, t, x, z) -
                                                         oscillating_bm_density(1, 2, 0, t, x, z)));
                    }
                }
            }
        }
        b.at_most("max |p - closed form|", worst, 1e-5);
    }

    b.start(2, "one-sided limits at the threshold");
    {
        const double upper = p_t(kOscillating, 1, 0, 0);
        const double lower = p_t(kOscillating, 1, 0, std::nextafter(0.0, -1.0));
        b.at_most("|p(1;0,0+) - 0.132981|", std::abs(upper - 0.132981), 1e-5);
        b.at_most("|p(1;0,0-) - 0.531923|", std::abs(lower - 0.531923), 1e-5);
        b.at_most("|jump + 0.398942|",
                  std::abs(density_jump_at_threshold(kOscillating, 1, 0) + 0.398942), 1e-5);
        b.at_most("|jump| for equal volatilities",
                  std::abs(density_jump_at_threshold(make_params(1, -1, 1.5, 1.5, 0), 1, 0.2)),
                  0.0);
    }

    b.start(3, "single-regime reduction");
    {
        const auto p = make_params(0.5, 0.5, 1.3, 1.3, 0.2);
        double dens = 0.0;
        double pot = 0.0;
        for (double x : {-1.0, 0.2, 1.5}) {
            for (double z : {-2.0, 0.2, 1.0}) {
                dens = std::max(dens, std::abs(p_t(p, 1.0, x, z) - gaussian(z, x + 0.5, 1.69)));
                const double root = std::sqrt(0.25 + 2.0 * 1.69);
                const double exact =
                    1.0 / root * std::exp((0.5 * (z - x) - root * std::abs(z - x)) / 1.69);
                pot = std::max(pot, std::abs(potential_density({p, 1.0, x, z}) - exact));
            }
        }
        b.at_most("max |p - gaussian|", dens, 1e-6);
        b.at_most("max |u - closed form|", pot, 1e-10);
    }

    b.start(4, "Laplace consistency");
    {
        const double x = 0.5;
        const double z = 1.0;
        const double q = 1.0;
        QuadSettings s;
        s.abs_tol = 1e-8;
        const double transform =
            integrate_semi_infinite(
                [&](double t) { return t > 0.0 ? q * std::exp(-q * t) * p_t(kTwoRegime, t, x, z) : 0.0; },
                0.0, q, s)
                .value;
        b.at_most("|time transform - u|",
                  std::abs(transform - potential_density({kTwoRegime, q, x, z})), 1e-4);
        const double inverted = invert(
            [&](double r) { return potential_density({kTwoRegime, r, x, z}) / r; }, 1.0);
        b.at_most("|Gaver-Stehfest - p|", std::abs(inverted - p_t(kTwoRegime, 1, x, z)), 1e-4);
    }

    b.start(5, "normalization");
    {
        double dens = 0.0;
        double pot = 0.0;
        for (const auto& p : {kTwoRegime, make_params(-0.5, 2, 1, 1, 0)}) {
            dens = std::max(dens, std::abs(density_mass(p, 1.0, 0.3) - 1.0));
            pot = std::max(pot, std::abs(potential_mass(p, 1.0, 0.3) - 1.0));
        }
        b.at_most("max |mass of p - 1|", dens, 1e-4);
        b.at_most("max |mass of u - 1|", pot, 1e-6);
    }

    b.start(6, "Chapman-Kolmogorov");
    {
        const double x = 0.5;
        const double z = -0.5;
        QuadSettings s;
        s.abs_tol = 1e-7;
        const double composed =
            line_integral([&](double y) { return p_t(kTwoRegime, 0.5, x, y) * p_t(kTwoRegime, 0.5, y, z); },
                          0.0, 0.5, 1.0, 1.0, s);
        b.at_most("|composed - p(1)|", std::abs(composed - p_t(kTwoRegime, 1, x, z)), 1e-3);
    }

    b.start(7, "stationary law");
    {
        const auto p = make_params(1, -1, 1, 1, 0);
        double exact = 0.0;
        double late = 0.0;
        for (double z : {-1.0, 0.0, 1.0}) {
            exact = std::max(exact, std::abs(stationary_density(p, z) - std::exp(-2.0 * std::abs(z))));
            late = std::max(late, std::abs(p_t(p, 30.0, 0.0, z) - stationary_density(p, z)));
        }
        b.at_most("max |pi - exp(-2|z|)|", exact, 1e-12);
        b.at_most("max |p(30) - pi|", late, 1e-2);
        const auto e = simulate_paths({p, 0.0, 10.0, 1e-3, 20000, 101}, threads);
        const auto mass = [](double lo, double hi) {
            const auto cdf = [](double z) {
                return z < 0.0 ? 0.5 * std::exp(2.0 * z) : 1.0 - 0.5 * std::exp(-2.0 * z);
            };
            return cdf(hi) - cdf(lo);
        };
        b.at_most("worst histogram bin (standard errors)", max_histogram_z(e, mass, -3, 3, 20), 3.0);
    }

    b.start(8, "exit transforms");
    {
        const double q = 1.0;
        const double h = 1e-5;
        const auto gm = [&](double x) { return g_minus(kTwoRegime, q, x); };
        const auto gp = [&](double x) { return g_plus(kTwoRegime, q, x); };
        const double pasting =
            std::max(std::abs(one_sided_slope(gm, 0.0, h) - one_sided_slope(gm, 0.0, -h)),
                     std::abs(one_sided_slope(gp, 0.0, h) - one_sided_slope(gp, 0.0, -h)));
        b.at_most("derivative gap of g at a", pasting, 1e-6);
        const auto flat = make_params(0.4, 0.4, 1.2, 1.2, 0);
        const double root = std::sqrt(0.16 + 2.0 * 0.7 * 1.44);
        const double exact = std::exp((0.4 * (-1.0) - root) / 1.44);
        b.at_most("|single-regime passage - closed form|",
                  std::abs(one_sided_down(flat, 0.7, 0.5, -0.5) - exact), 1e-12);
        const double dt = 1e-3;
        const auto hit = empirical_hitting_transform({kTwoRegime, 0.5, 10.0, dt, 5000, 103}, 0.0,
                                                     0.7, threads);
        b.at_most("|Monte Carlo passage - transform| beyond 3 SE + sqrt(dt)",
                  std::abs(hit.value - one_sided_down(kTwoRegime, 0.7, 0.5, 0.0)) -
                      3.0 * hit.standard_error - std::sqrt(dt),
                  0.0);
    }

    b.start(9, "control problem");
    {
        const ControlProblem sloped{1, 2, -1, 1, 0, 1};
        const ControlProblem flat{0, 2, 0, 1, 0, 1};
        b.at_most("|alpha - 3|", std::abs(alpha(sloped) - 3.0), 0.0);
        const double s = alpha(sloped);
        b.at_most("slope identity", std::abs((sloped.mu_low + s) / sloped.sigma_low -
                                             (sloped.mu_bar + s) / sloped.sigma_bar),
                  1e-12);
        const double v = value_function(flat, 0.0);
        b.at_most("|V(0) - 2/3|", std::abs(v - 2.0 / 3.0), 1e-3);
        const auto optimal = [&](double x, double t) { return optimal_volatility(flat, x, t); };
        const auto mc = simulate_policy(flat, optimal, 0.0, 1e-4, 5000, 107, threads).survival(0.0);
        b.at_most("|Monte Carlo - V| (standard errors)",
                  std::abs(mc.value - v) / mc.standard_error, 3.0);
        const auto best = simulate_policy(flat, optimal, 0.0, 1e-3, 10000, 109, threads).survival(0.0);
        double worst = -1e300;
        const std::array<VolatilityPolicy, 3> others{
            [](double, double) { return 2.0; }, [](double, double) { return 1.0; },
            [&](double x, double t) { return optimal_volatility(flat, x, t) == 2.0 ? 1.0 : 2.0; }};
        for (const auto& policy : others) {
            const auto o = simulate_policy(flat, policy, 0.0, 1e-3, 10000, 113, threads).survival(0.0);
            worst = std::max(worst, (o.value - best.value) /
                                        std::hypot(o.standard_error, best.standard_error));
        }
        b.at_most("largest advantage of an alternative (pooled SE)", worst, 3.0);
    }

    b.start(10, "time reversal");
    {
        const std::array<DiffusionParams, 6> sets{
            make_params(0.3, 0.3, 1, 1, 0),  make_params(-1, -1, 2, 2, 1),
            make_params(1, -1, 1, 1, 0),     make_params(0, 0, 1, 2, 0),
            make_params(1, -1, 1, 2, 0),     make_params(0.5, 0.5, 1, 1.5, 0)};
        int wrong = 0;
        for (const auto& p : sets) {
            const bool expected = p.mu1 == p.mu2 && p.sigma1 == p.sigma2;
            wrong += is_time_reversible(p) != expected;
        }
        b.at_most("misclassified parameter sets", wrong, 0.0);
        const auto reversed = make_params(-1, 1, 1, 2, 0);
        b.above("witness |p_X(1;0.5,-0.5) - p_Z(1;-0.5,0.5)|",
                std::abs(p_t(kTwoRegime, 1, 0.5, -0.5) - p_t(reversed, 1, -0.5, 0.5)), 1e-3);
    }

    b.start(11, "simulation determinism");
    {
        const std::string first = simulate_csv(1);
        const bool same = !first.empty() && first == simulate_csv(1) && first == simulate_csv(4);
        b.at_most("differing outputs", same ? 0.0 : 1.0, 0.0);
    }

    return b.take();
}

}  // namespace tdiff::cli
