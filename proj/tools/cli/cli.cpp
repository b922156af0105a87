#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "output.hpp"
#include "parallel.hpp"
#include "tdiff/control.hpp"
#include "tdiff/density.hpp"
#include "tdiff/errors.hpp"
#include "tdiff/exit.hpp"
#include "tdiff/potential.hpp"
#include "tdiff/sde_sim.hpp"
#include "validate.hpp"

namespace tdiff::cli {

namespace {

struct DiffusionFlags {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double a = 0.0;

    DiffusionParams params() const { return make_params(mu1, mu2, sigma1, sigma2, a); }
};

struct OutputFlags {
    std::string path;
    std::string format = "csv";
};

struct Axis {
    std::vector<double> values;
    std::string grid;

    std::vector<double> points(const char* name) const { return points_from(values, grid, name); }
};

void add_diffusion(CLI::App* cmd, DiffusionFlags& f) {
    cmd->add_option("--mu1", f.mu1, "drift below the threshold")->capture_default_str();
    cmd->add_option("--mu2", f.mu2, "drift above the threshold")->capture_default_str();
    cmd->add_option("--sigma1", f.sigma1, "volatility below the threshold")->capture_default_str();
    cmd->add_option("--sigma2", f.sigma2, "volatility above the threshold")->capture_default_str();
    cmd->add_option("--a", f.a, "threshold")->capture_default_str();
}

void add_quadrature(CLI::App* cmd, QuadSettings& s) {
    cmd->add_option("--abs-tol", s.abs_tol, "quadrature absolute tolerance")->capture_default_str();
    cmd->add_option("--rel-tol", s.rel_tol, "quadrature relative tolerance")->capture_default_str();
    cmd->add_option("--max-subdivisions", s.max_subdivisions, "quadrature panel budget")
        ->capture_default_str();
}

void add_output(CLI::App* cmd, OutputFlags& f) {
    cmd->add_option("-o,--output", f.path, "data file (default: standard output)");
    cmd->add_option("--format", f.format, "csv or json")->capture_default_str();
}

void add_axis(CLI::App* cmd, Axis& axis, const std::string& name, const std::string& what) {
    cmd->add_option("--" + name, axis.values, what);
    cmd->add_option("--" + name + "-grid", axis.grid, what + " as lo:hi:n");
}

std::vector<std::vector<double>> pair_rows(const std::vector<double>& xs,
                                           const std::vector<double>& ys) {
    std::vector<std::vector<double>> rows;
    rows.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back({xs[i], ys[i]});
    return rows;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    int threads;
};

int cmd_density(const Context& ctx, const DiffusionFlags& df, const QuadSettings& quad,
                const OutputFlags& of, const Axis& ts, const Axis& xs, const Axis& zs) {
    const auto p = df.params();
    const auto t_points = ts.points("t");
    const auto x_points = xs.points("x");
    const auto z_points = zs.points("z");
    quad.validate();
    const Format format = parse_format(of.format);
    for (double t : t_points) {
        if (!(t > 0.0)) throw std::invalid_argument("--t values must be positive");
    }
    Sink sink(of.path, ctx.out);
    TableWriter writer(sink.stream(), format, {"z", "p"},
                       t_points.size() * x_points.size() > 1);
    for (double t : t_points) {
        for (double x : x_points) {
            const auto values = parallel_map(z_points, ctx.threads, [&](double z) {
                return transition_density({p, t, x, z, quad});
            });
            writer.block({{"t", t}, {"x", x}}, pair_rows(z_points, values));
        }
    }
    writer.finish();
    sink.commit();
    return kOk;
}

int cmd_potential(const Context& ctx, const DiffusionFlags& df, const OutputFlags& of,
                  const Axis& qs, const Axis& xs, const Axis& zs) {
    const auto p = df.params();
    const auto q_points = qs.points("q");
    const auto x_points = xs.points("x");
    const auto z_points = zs.points("z");
    const Format format = parse_format(of.format);
    Sink sink(of.path, ctx.out);
    TableWriter writer(sink.stream(), format, {"z", "u"},
                       q_points.size() * x_points.size() > 1);
    for (double q : q_points) {
        for (double x : x_points) {
            const auto values = parallel_map(
                z_points, ctx.threads, [&](double z) { return potential_density({p, q, x, z}); });
            writer.block({{"q", q}, {"x", x}}, pair_rows(z_points, values));
        }
    }
    writer.finish();
    sink.commit();
    return kOk;
}

int cmd_stationary(const Context& ctx, const DiffusionFlags& df, const OutputFlags& of,
                   const Axis& zs) {
    const auto p = df.params();
    const auto z_points = zs.points("z");
    const Format format = parse_format(of.format);
    std::vector<double> values;
    for (double z : z_points) values.push_back(stationary_density(p, z));
    Sink sink(of.path, ctx.out);
    TableWriter writer(sink.stream(), format, {"z", "pi"}, false);
    writer.block({}, pair_rows(z_points, values));
    writer.finish();
    sink.commit();
    return kOk;
}

int cmd_value(const Context& ctx, const ControlProblem& problem, const QuadSettings& quad,
              const OutputFlags& of, const Axis& xs) {
    validate(problem);
    const auto x_points = xs.points("x");
    quad.validate();
    const Format format = parse_format(of.format);
    Sink sink(of.path, ctx.out);
    const auto values = parallel_map(x_points, ctx.threads,
                                     [&](double x) { return value_function(problem, x, quad); });
    TableWriter writer(sink.stream(), format, {"x", "V"}, false);
    writer.block({}, pair_rows(x_points, values));
    writer.finish();
    sink.commit();
    return kOk;
}

int cmd_exit_lt(const Context& ctx, const DiffusionFlags& df, const OutputFlags& of,
                const Axis& qs, double x, double y, double z) {
    const auto p = df.params();
    const auto q_points = qs.points("q");
    const Format format = parse_format(of.format);
    std::vector<std::vector<double>> rows;
    for (double q : q_points) {
        const auto r = two_sided_exit({p, q, x, y, z});
        rows.push_back({q, r.down_lt, r.up_lt});
    }
    Sink sink(of.path, ctx.out);
    TableWriter writer(sink.stream(), format, {"q", "down", "up"}, false);
    writer.block({}, rows);
    writer.finish();
    sink.commit();
    return kOk;
}

struct SimulateFlags {
    double x0 = 0.0;
    double horizon = 1.0;
    double dt = 1e-3;
    long paths = 100000;
    std::uint64_t seed = 0;
    std::optional<double> level;
    std::string summary;
};

int cmd_simulate(const Context& ctx, const DiffusionFlags& df, const OutputFlags& of,
                 const SimulateFlags& sf) {
    const SimConfig config{df.params(), sf.x0, sf.horizon, sf.dt, sf.paths, sf.seed};
    validate(config);
    const Format format = parse_format(of.format);
    Sink sink(of.path, ctx.out);
    std::optional<Sink> summary_sink;
    if (!sf.summary.empty()) summary_sink.emplace(sf.summary, ctx.err);

    const auto ensemble = simulate_paths(config, ctx.threads);
    if (format == Format::csv) {
        write_ensemble_csv(sink.stream(), ensemble);
    } else {
        std::vector<std::vector<double>> rows;
        rows.reserve(ensemble.terminal_values.size());
        for (std::size_t i = 0; i < ensemble.terminal_values.size(); ++i) {
            rows.push_back({static_cast<double>(i), ensemble.terminal_values[i]});
        }
        TableWriter writer(sink.stream(), format, {"path_index", "terminal_value"}, false);
        writer.block({}, rows);
        writer.finish();
    }
    const auto s = ensemble.survival(sf.level.value_or(config.params.a));
    const nlohmann::json summary{{"survival", s.value},
                                 {"se", s.standard_error},
                                 {"n", ensemble.n_paths()},
                                 {"dt", config.dt},
                                 {"seed", config.seed}};
    std::ostream& sum_out = summary_sink ? summary_sink->stream() : ctx.err;
    sum_out << summary.dump() << '\n';
    sink.commit();
    if (summary_sink) summary_sink->commit();
    return kOk;
}

int cmd_validate(const Context& ctx, const OutputFlags& of, std::optional<double> tol) {
    if (tol && !(*tol >= 0.0)) throw std::invalid_argument("--tol must be nonnegative");
    Sink sink(of.path, ctx.out);
    const auto reports = run_validation(tol, ctx.threads);
    nlohmann::json criteria = nlohmann::json::array();
    bool all = true;
    for (const auto& r : reports) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : r.checks) {
            checks.push_back({{"name", c.name},
                              {"value", c.value},
                              {c.upper ? "at_most" : "above", c.bound},
                              {"passed", c.passed}});
        }
        criteria.push_back({{"criterion", r.criterion},
                            {"title", r.title},
                            {"passed", r.passed()},
                            {"checks", checks}});
        all = all && r.passed();
    }
    const nlohmann::json report{{"passed", all}, {"criteria", criteria}};
    sink.stream() << report.dump(2) << '\n';
    sink.commit();
    return all ? kOk : kValidationFailed;
}

std::optional<int> parse_thread_count(std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0) return std::nullopt;
    return value;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const AccuracyError& e) {
        err << "error: " << e.what() << " (best estimate " << e.best_estimate() << ", error "
            << e.error_estimate() << ")\n";
        return kAccuracyFailure;
    } catch (const IntegrandError& e) {
        err << "error: " << e.what() << '\n';
        return kAccuracyFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerics for a diffusion whose drift and volatility switch at a threshold",
                 "threshold-diffusion"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML file with one [command] section of flag values");
    app.allow_config_extras(CLI::config_extras_mode::error);
    int threads = 0;
    auto* threads_opt =
        app.add_option("--threads", threads,
                       "worker threads, 0 for all cores (fallback: THRESHOLD_DIFFUSION_THREADS)")
            ->check(CLI::NonNegativeNumber);

    std::vector<std::pair<CLI::App*, std::function<int(const Context&)>>> commands;

    DiffusionFlags density_params;
    QuadSettings density_quad;
    OutputFlags density_out;
    Axis density_t, density_x, density_z;
    auto* density = app.add_subcommand("density", "transition density p(t; x, z)");
    add_diffusion(density, density_params);
    add_quadrature(density, density_quad);
    add_output(density, density_out);
    add_axis(density, density_t, "t", "times");
    add_axis(density, density_x, "x", "starting points");
    add_axis(density, density_z, "z", "end points");
    commands.emplace_back(density, [&](const Context& c) {
        return cmd_density(c, density_params, density_quad, density_out, density_t, density_x,
                           density_z);
    });

    DiffusionFlags potential_params;
    OutputFlags potential_out;
    Axis potential_q, potential_x, potential_z;
    auto* potential = app.add_subcommand("potential", "density of X at an exponential time");
    add_diffusion(potential, potential_params);
    add_output(potential, potential_out);
    add_axis(potential, potential_q, "q", "rates");
    add_axis(potential, potential_x, "x", "starting points");
    add_axis(potential, potential_z, "z", "end points");
    commands.emplace_back(potential, [&](const Context& c) {
        return cmd_potential(c, potential_params, potential_out, potential_q, potential_x,
                             potential_z);
    });

    DiffusionFlags stationary_params;
    OutputFlags stationary_out;
    Axis stationary_z;
    auto* stationary = app.add_subcommand("stationary", "long-time limit density");
    add_diffusion(stationary, stationary_params);
    add_output(stationary, stationary_out);
    add_axis(stationary, stationary_z, "z", "points");
    commands.emplace_back(stationary, [&](const Context& c) {
        return cmd_stationary(c, stationary_params, stationary_out, stationary_z);
    });

    ControlProblem problem;
    QuadSettings value_quad;
    OutputFlags value_out;
    Axis value_x;
    auto* value = app.add_subcommand("value", "value function of the volatility control problem");
    value->add_option("--mu-bar", problem.mu_bar, "drift paired with the high volatility")
        ->capture_default_str();
    value->add_option("--sigma-bar", problem.sigma_bar, "high volatility")->capture_default_str();
    value->add_option("--mu-low", problem.mu_low, "drift paired with the low volatility")
        ->capture_default_str();
    value->add_option("--sigma-low", problem.sigma_low, "low volatility")->capture_default_str();
    value->add_option("--a", problem.a, "target level")->capture_default_str();
    value->add_option("--T", problem.T, "horizon")->capture_default_str();
    add_quadrature(value, value_quad);
    add_output(value, value_out);
    add_axis(value, value_x, "x", "starting points");
    commands.emplace_back(value, [&](const Context& c) {
        return cmd_value(c, problem, value_quad, value_out, value_x);
    });

    DiffusionFlags exit_params;
    OutputFlags exit_out;
    Axis exit_q;
    double exit_x = 0.0;
    double exit_y = 0.0;
    double exit_z = 0.0;
    auto* exit_lt = app.add_subcommand("exit_lt", "two-sided exit Laplace transforms");
    exit_lt->alias("exit-lt");
    add_diffusion(exit_lt, exit_params);
    add_output(exit_lt, exit_out);
    add_axis(exit_lt, exit_q, "q", "rates");
    exit_lt->add_option("--x", exit_x, "start")->required();
    exit_lt->add_option("--y", exit_y, "lower level")->required();
    exit_lt->add_option("--z", exit_z, "upper level")->required();
    commands.emplace_back(exit_lt, [&](const Context& c) {
        return cmd_exit_lt(c, exit_params, exit_out, exit_q, exit_x, exit_y, exit_z);
    });

    DiffusionFlags sim_params;
    OutputFlags sim_out;
    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Euler-Maruyama terminal values");
    add_diffusion(simulate, sim_params);
    add_output(simulate, sim_out);
    simulate->add_option("--x0", sim.x0, "start")->capture_default_str();
    simulate->add_option("--horizon", sim.horizon, "final time")->capture_default_str();
    simulate->add_option("--dt", sim.dt, "time step")->capture_default_str();
    simulate->add_option("--paths", sim.paths, "number of paths")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "random seed")->capture_default_str();
    simulate->add_option("--level", sim.level, "survival level (default: the threshold)");
    simulate->add_option("--summary", sim.summary,
                         "file for the JSON summary (default: standard error)");
    commands.emplace_back(simulate,
                          [&](const Context& c) { return cmd_simulate(c, sim_params, sim_out, sim); });

    OutputFlags validate_out;
    std::optional<double> tol;
    auto* validate_cmd = app.add_subcommand("validate", "built-in cross-oracle battery");
    validate_cmd->add_option("-o,--output", validate_out.path, "report file");
    validate_cmd->add_option("--tol", tol, "replace every tolerance with this value");
    commands.emplace_back(validate_cmd,
                          [&](const Context& c) { return cmd_validate(c, validate_out, tol); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::FileError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }

    if (threads_opt->count() == 0) {
        if (const char* env = std::getenv("THRESHOLD_DIFFUSION_THREADS"); env && *env) {
            const auto parsed = parse_thread_count(env);
            if (!parsed) {
                err << "error: THRESHOLD_DIFFUSION_THREADS must be a nonnegative integer\n";
                return kBadArguments;
            }
            threads = *parsed;
        }
    }

    const Context ctx{out, err, threads};
    for (const auto& [cmd, run] : commands) {
        if (cmd->parsed()) return guarded(err, [&] { return run(ctx); });
    }
    return kBadArguments;
}

}  // namespace tdiff::cli
