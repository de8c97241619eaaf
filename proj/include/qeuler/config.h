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

#ifndef QEULER_CONFIG_H
#define QEULER_CONFIG_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qeuler {

/// Schema violation; the message names the offending field.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class Command { validate, plan, iterate, integrate, noise_study, observe };

Command command_from_name(const std::string &name);
std::string command_name(Command command);

struct SystemConfig {
    /// Builtin name, or "map" / "ode" for an inline document.
    std::string name;
    /// Builtin parameters (everything except "name"), or the inline document.
    nlohmann::json params = nlohmann::json::object();
};

struct InitialConfig {
    bool random = true;
    std::vector<double> re;
    std::vector<double> im;
};

struct RunConfig {
    std::string mode = "deterministic";
    std::optional<std::size_t> m;
    std::optional<double> t;
    std::optional<double> h;
    /// nullopt means "auto" (0.9 / h_norm_bound).
    std::optional<double> epsilon;
    double plan_base = 16.0;
    /// nullopt means p / 2.
    std::optional<double> lambda;
    std::uint64_t seed = 0;
    double eta = 1e-6;
    std::size_t trials = 1;
    std::size_t samples = 256;
};

struct ObservableSpec {
    std::string type;
    std::size_t index = 0;
    std::size_t k = 0;
    std::vector<double> values;
    std::string path;
};

struct ObserveConfig {
    std::vector<ObservableSpec> observables;
    double delta = 0.05;
    double alpha = 0.05;
};

struct OutputConfig {
    std::vector<std::string> formats{"json", "csv"};
};

struct ExperimentConfig {
    SystemConfig system;
    InitialConfig initial;
    RunConfig run;
    ObserveConfig observe;
    OutputConfig output;

    /// Fully resolved document with every default filled in.
    nlohmann::json to_json() const;
};

/// True for JSON integers >= 0, whether stored signed or unsigned.
inline bool is_non_negative_integer(const nlohmann::json &v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

/// Validates a config document and fills defaults. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json &doc);

/// Runs one subcommand and writes its artifacts into out_dir.
/// Returns 0 on success, 1 on algorithm failure, 2 on configuration error.
int execute(const ExperimentConfig &config, Command command, const std::filesystem::path &out_dir, std::ostream &log);

}  // namespace qeuler

#endif  // QEULER_CONFIG_H
