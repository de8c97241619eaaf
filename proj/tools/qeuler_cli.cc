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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qeuler/config.h"

namespace {

int run(const std::string &subcommand, const std::string &config_path, std::optional<std::uint64_t> seed,
        const std::string &out_dir, bool verbose) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "cannot open config " << config_path << '\n';
        return 2;
    }
    qeuler::ExperimentConfig config;
    try {
        config = qeuler::parse_config(nlohmann::json::parse(in));
    } catch (const std::exception &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    if (seed) {
        config.run.seed = *seed;
    }
    if (verbose) {
        std::cerr << config.to_json().dump(2) << '\n';
    }
    const int code = qeuler::execute(config, qeuler::command_from_name(subcommand), out_dir, std::cerr);
    if (verbose) {
        std::cerr << subcommand << " finished with exit code " << code << '\n';
    }
    return code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact state-vector simulation of quantum Euler iteration for polynomial ODEs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    bool verbose = false;

    const std::pair<const char *, const char *> subcommands[] = {
        {"validate", "check the system, its operator norm and sparsity"},
        {"plan", "copy-count resource plan for m steps"},
        {"iterate", "iterate the map (deterministic or Monte-Carlo)"},
        {"integrate", "quantum Euler integration of an ODE to time t"},
        {"noise-study", "perturbed-unitary error growth against the closed-form bound"},
        {"observe", "expectations and sampled estimates on the final state"},
    };
    for (const auto &[name, description] : subcommands) {
        CLI::App *sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--seed", seed, "override run.seed");
        sub->add_option("--out", out_dir, "report directory");
        sub->add_flag("-v,--verbose", verbose, "echo the resolved config");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return run(app.get_subcommands().front()->get_name(), config_path, seed, out_dir, verbose);
}
