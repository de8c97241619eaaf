// Copyright 2026 The qeuler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <ostream>

#include "qeuler/config.h"
#include "qeuler/euler_driver.h"
#include "qeuler/io.h"
#include "qeuler/nonlin_step.h"
#include "qeuler/observables.h"
#include "qeuler/systems.h"

namespace qeuler {

using nlohmann::json;

namespace {

struct ResolvedSystem {
    std::optional<PolynomialMap> map;
    std::optional<OdeSystem> ode;
    std::optional<NlsSystem> nls;
    CVector z0;
};

std::size_t size_param(const json &params, const char *key, std::size_t fallback) {
    if (!params.contains(key)) {
        return fallback;
    }
    if (!is_non_negative_integer(params.at(key))) {
        throw ConfigError(std::string("system.") + key + ": expected a non-negative integer");
    }
    return params.at(key).get<std::size_t>();
}

double double_param(const json &params, const char *key, double fallback) {
    if (!params.contains(key)) {
        return fallback;
    }
    if (!params.at(key).is_number()) {
        throw ConfigError(std::string("system.") + key + ": expected a number");
    }
    return params.at(key).get<double>();
}

GraphSpec graph_from_params(const json &params) {
    const std::size_t vertices = size_param(params, "vertices", 0);
    const std::string shape = params.value("graph", std::string(params.contains("edges") ? "custom" : "path"));
    GraphSpec g;
    if (shape == "path") {
        g = GraphSpec::path(vertices);
    } else if (shape == "cycle") {
        g = GraphSpec::cycle(vertices);
    } else if (shape == "custom") {
        g.vertex_count = vertices;
        try {
            g.edges = params.at("edges").get<std::vector<std::pair<std::size_t, std::size_t>>>();
        } catch (const json::exception &) {
            throw ConfigError("system.edges: expected a list of [a, b] pairs");
        }
    } else {
        throw ConfigError("system.graph: expected path, cycle or custom");
    }
    g.max_degree = size_param(params, "max_degree", g.max_degree);
    return g;
}

CVector initial_vector(const ExperimentConfig &config, std::size_t n, bool real) {
    if (config.initial.random) {
        Rng rng = Rng::stream(config.run.seed, 1);
        return rng.unit_vector(n, real);
    }
    if (config.initial.re.size() != n) {
        throw ConfigError(
            "initial.re: expected " + std::to_string(n) + " components, got " +
            std::to_string(config.initial.re.size()));
    }
    CVector z(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        z[static_cast<Eigen::Index>(i)] = Complex(config.initial.re[i], config.initial.im[i]);
    }
    return z;
}

ResolvedSystem resolve_system(const ExperimentConfig &config) {
    const auto &name = config.system.name;
    const json &params = config.system.params;
    ResolvedSystem r;
    if (name == "orszag_mclaughlin") {
        r.ode = orszag_mclaughlin(size_param(params, "n", 5));
    } else if (name == "lorenz") {
        LorenzParameters lp;
        lp.sigma = double_param(params, "sigma", lp.sigma);
        lp.rho = double_param(params, "rho", lp.rho);
        lp.beta = double_param(params, "beta", lp.beta);
        r.ode = lorenz(lp);
    } else if (name == "discrete_nls") {
        const GraphSpec graph = graph_from_params(params);
        const std::size_t k = size_param(params, "k", 2);
        graph.check();
        const CVector z = initial_vector(config, graph.vertex_count, false);
        double scale = 0.0;
        if (!params.contains("scale") || params.at("scale") == "auto") {
            scale = nls_unit_scale(z);
        } else {
            scale = double_param(params, "scale", 1.0);
        }
        r.nls = discrete_nls(graph, k, scale);
        r.ode = r.nls->system;
        r.z0 = r.nls->to_state(z);
        return r;
    } else if (name == "identity") {
        r.map = identity_map(size_param(params, "n", 2));
    } else if (name == "power") {
        r.map = power_map(size_param(params, "degree", 2));
    } else if (name == "permutation") {
        std::vector<std::size_t> perm;
        try {
            perm = params.at("perm").get<std::vector<std::size_t>>();
        } catch (const json::exception &) {
            throw ConfigError("system.perm: expected a list of 1-based targets");
        }
        r.map = permutation_map(perm);
    } else if (name == "map") {
        r.map = map_from_json(params);
    } else if (name == "ode") {
        r.ode = ode_from_json(params);
    } else {
        throw ConfigError("system.name: unknown builtin '" + name + "'");
    }
    const std::size_t n = r.map ? r.map->n() : r.ode->n();
    const bool real = r.map ? r.map->real_variables() : r.ode->real_variables();
    r.z0 = initial_vector(config, n, real);
    return r;
}

// Step size used when a map-level command runs on an ODE system.
double euler_step(const RunConfig &run) {
    if (run.h) {
        return *run.h;
    }
    if (run.t && run.m) {
        return *run.t / static_cast<double>(*run.m);
    }
    throw ConfigError("run.h: required (or run.t and run.m) to build the Euler map of an ODE system");
}

PolynomialMap map_for(const ResolvedSystem &sys, const RunConfig &run) {
    if (sys.map) {
        return *sys.map;
    }
    return euler_map(*sys.ode, euler_step(run));
}

std::size_t require_m(const RunConfig &run) {
    if (!run.m) {
        throw ConfigError("run.m: required for this subcommand");
    }
    return *run.m;
}

bool wants(const OutputConfig &out, const char *format) {
    return std::find(out.formats.begin(), out.formats.end(), format) != out.formats.end();
}

void write_json(const std::filesystem::path &path, const json &doc) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    f << doc.dump(2) << '\n';
}

template <typename Fn>
void write_text(const std::filesystem::path &path, Fn &&fn) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    f.imbue(std::locale::classic());
    fn(f);
}

AmplitudeState state_of(const CVector &z) {
    CVector amps(z.size() + 1);
    amps[0] = 1.0;
    amps.tail(z.size()) = z;
    return AmplitudeState(amps / amps.norm());
}

Observable make_observable(const ObservableSpec &spec, std::size_t levels) {
    if (spec.type == "identity") {
        return Observable::identity(levels);
    }
    if (spec.type == "projector") {
        return Observable::projector(levels, spec.index);
    }
    if (spec.type == "fourier") {
        return Observable::fourier(levels, spec.k);
    }
    if (spec.type == "diagonal") {
        if (spec.values.size() != levels) {
            throw ConfigError("observe: diagonal observable needs " + std::to_string(levels) + " values");
        }
        return Observable::diagonal(Eigen::Map<const Eigen::VectorXd>(spec.values.data(), static_cast<Eigen::Index>(levels)));
    }
    std::ifstream in(spec.path);
    if (!in) {
        throw ConfigError("observe: cannot open observable file " + spec.path);
    }
    return read_observable_csv(in, levels, spec.path);
}

int run_command(const ExperimentConfig &config, Command command, const std::filesystem::path &out_dir, std::ostream &log) {
    const RunConfig &run = config.run;
    const ResolvedSystem sys = resolve_system(config);
    json report = {
        {"schema_version", kSchemaVersion},
        {"command", command_name(command)},
        {"config", config.to_json()},
    };
    const bool csv = wants(config.output, "csv");
    int exit_code = 0;
    std::optional<RunReport> run_report;
    TrajectoryColumns columns;

    switch (command) {
        case Command::validate: {
            if (sys.ode) {
                const MeasureCheck check = check_ode_measure_preserving(*sys.ode, run.samples, 1e-9, run.seed);
                report["measure_check"] = {{"preserving", check.preserving}, {"residual", check.residual}};
                report["system"] = to_json(*sys.ode);
            }
            if (sys.map || run.h || (run.t && run.m)) {
                const PolynomialMap map = map_for(sys, run);
                report["map"] = to_json(map);
                report["validation"] = to_json(validate(map, run.samples, run.seed));
                const SparseMatrix A = build_A(map);
                const OperatorNorm norm = operator_norm(A);
                report["operator"] = {
                    {"h_norm", norm.h_norm},
                    {"h_norm_bound", norm.h_norm_bound},
                    {"sparsity", norm.sparsity},
                    {"a_max", norm.a_max},
                    {"default_epsilon", default_epsilon(norm.h_norm_bound)},
                };
                if (csv) {
                    write_text(out_dir / "operator_A.csv", [&](std::ostream &f) {
                        write_triplets_csv(f, A);
                    });
                }
            }
            break;
        }
        case Command::plan: {
            const std::size_t m = require_m(run);
            double eps = 0.0;
            if (run.epsilon) {
                eps = *run.epsilon;
            } else {
                eps = StepOperator(map_for(sys, run)).epsilon();
            }
            report["plan"] = to_json(plan_resources(m, eps, run.plan_base, run.lambda));
            break;
        }
        case Command::iterate:
        case Command::observe: {
            const PolynomialMap map = map_for(sys, run);
            columns.time_step = sys.map ? 1.0 : euler_step(run);
            if (run.mode == "noise_study") {
                throw ConfigError("run.mode: noise_study runs through the noise-study subcommand");
            }
            if (command == Command::iterate && run.mode == "montecarlo") {
                const StepOperator op(map, run.epsilon);
                const ResourcePlan plan = plan_resources(require_m(run), op.epsilon(), run.plan_base, run.lambda);
                report["plan"] = to_json(plan);
                Rng rng = Rng::stream(run.seed, 0);
                run_report = run_montecarlo(map, sys.z0, plan, rng);
                std::size_t successes = run_report->success ? 1 : 0;
                for (std::size_t trial = 1; trial < run.trials; ++trial) {
                    Rng trial_rng = Rng::stream(run.seed, trial);
                    successes += simulate_branching(plan.n0, run_report->probabilities, plan.lambda, trial_rng).success;
                }
                report["success_fraction"] = static_cast<double>(successes) / static_cast<double>(run.trials);
                columns.copy_counts = true;
            } else {
                run_report = run_deterministic(map, sys.z0, run.m.value_or(0), run.epsilon);
            }
            if (command == Command::observe) {
                const AmplitudeState final_state = state_of(run_report->iterates.back());
                json values = json::array();
                std::uint64_t stream = 2;
                for (const auto &spec : config.observe.observables) {
                    const Observable M = make_observable(spec, final_state.levels());
                    const Expectation e = expectation(final_state, M);
                    Rng rng = Rng::stream(run.seed, stream++);
                    const SampledEstimate est =
                        sample_expectation(final_state, M, config.observe.delta, config.observe.alpha, rng);
                    values.push_back({
                        {"name", M.name()},
                        {"state_value", e.state_value},
                        {"paper_value", e.paper_value},
                        {"estimate", est.estimate},
                        {"shots", est.shots},
                        {"norm_bound", M.norm_bound()},
                    });
                }
                report["observables"] = values;
                report["fourier_spectrum"] = complex_vector_json(fourier_spectrum(run_report->iterates.back()));
            }
            break;
        }
        case Command::integrate: {
            if (!sys.ode) {
                throw ConfigError("system: integrate needs an ODE system");
            }
            if (!run.t) {
                throw ConfigError("run.t: required for integrate");
            }
            if (run.mode == "noise_study") {
                throw ConfigError("run.mode: noise_study runs through the noise-study subcommand");
            }
            IntegrateOptions options;
            options.mode = run.mode == "montecarlo" ? RunMode::montecarlo : RunMode::deterministic;
            options.epsilon = run.epsilon;
            options.plan_base = run.plan_base;
            options.lambda = run.lambda;
            options.seed = run.seed;
            run_report = integrate(*sys.ode, sys.z0, *run.t, require_m(run), options);
            columns.time_step = run_report->h;
            columns.copy_counts = options.mode == RunMode::montecarlo;
            if (sys.nls) {
                report["physical_final_state"] = complex_vector_json(sys.nls->from_state(run_report->iterates.back()));
                report["nls_scale"] = sys.nls->scale;
            }
            break;
        }
        case Command::noise_study: {
            const PolynomialMap map = map_for(sys, run);
            columns.time_step = sys.map ? 1.0 : euler_step(run);
            run_report = noise_study(map, sys.z0, require_m(run), run.epsilon, NoiseModel{run.eta, 0}, run.trials, run.seed);
            columns.deltas = true;
            break;
        }
    }

    if (run_report) {
        report["run"] = to_json(*run_report);
        if (!run_report->success) {
            exit_code = 1;
            log << "run failed: " << (run_report->message.empty() ? "bound violated" : run_report->message) << '\n';
        } else if (!run_report->message.empty()) {
            log << run_report->message << '\n';
        }
        if (csv) {
            write_text(out_dir / "trajectory.csv", [&](std::ostream &f) {
                write_trajectory_csv(f, *run_report, columns);
            });
            if (!run_report->iterates.empty()) {
                write_text(out_dir / "final_state.csv", [&](std::ostream &f) {
                    write_state_csv(f, state_of(run_report->iterates.back()).amps());
                });
            }
        }
    }
    report["exit_code"] = exit_code;
    if (wants(config.output, "json")) {
        write_json(out_dir / "report.json", report);
    }
    return exit_code;
}

}  // namespace

int execute(const ExperimentConfig &config, Command command, const std::filesystem::path &out_dir, std::ostream &log) {
    try {
        std::filesystem::create_directories(out_dir);
        return run_command(config, command, out_dir, log);
    } catch (const ConfigError &e) {
        log << "config error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception &e) {
        log << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument &e) {
        log << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error &e) {
        log << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::length_error &e) {
        log << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qeuler
