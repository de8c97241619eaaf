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

#include "qeuler/config.h"

#include <map>
#include <set>
#include <type_traits>

namespace qeuler {

using nlohmann::json;

namespace {

const std::map<std::string, std::set<std::string>> kBuiltinParams = {
    {"orszag_mclaughlin", {"n"}},
    {"lorenz", {"sigma", "rho", "beta"}},
    {"discrete_nls", {"graph", "vertices", "edges", "max_degree", "k", "scale"}},
    {"identity", {"n"}},
    {"power", {"degree"}},
    {"permutation", {"perm"}},
};

void check_keys(const json &doc, const std::string &where, const std::set<std::string> &allowed) {
    if (!doc.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(where + (where.empty() ? "" : ".") + key + ": unknown key '" + key + "'");
        }
    }
}

template <typename T>
T get_field(const json &doc, const std::string &key, const std::string &where) {
    if constexpr (std::is_unsigned_v<T>) {
        if (!is_non_negative_integer(doc.at(key))) {
            throw ConfigError(where + "." + key + ": expected a non-negative integer");
        }
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

double positive(double v, const std::string &field) {
    if (!(v > 0.0)) {
        throw ConfigError(field + ": must be positive");
    }
    return v;
}

SystemConfig parse_system(const json &doc) {
    SystemConfig sys;
    if (doc.is_string()) {
        sys.name = doc.get<std::string>();
    } else if (doc.is_object()) {
        if (doc.contains("map") || doc.contains("ode")) {
            check_keys(doc, "system", {"map", "ode"});
            if (doc.size() != 1) {
                throw ConfigError("system: give exactly one of 'map' or 'ode'");
            }
            sys.name = doc.contains("map") ? "map" : "ode";
            sys.params = doc.at(sys.name);
            if (!sys.params.is_object()) {
                throw ConfigError("system." + sys.name + ": expected an object");
            }
            return sys;
        }
        if (!doc.contains("name")) {
            throw ConfigError("system.name: missing");
        }
        sys.name = get_field<std::string>(doc, "name", "system");
        for (const auto &[key, value] : doc.items()) {
            if (key != "name") {
                sys.params[key] = value;
            }
        }
    } else {
        throw ConfigError("system: expected a builtin name or an object");
    }
    auto it = kBuiltinParams.find(sys.name);
    if (it == kBuiltinParams.end()) {
        throw ConfigError("system.name: unknown builtin '" + sys.name + "'");
    }
    check_keys(sys.params, "system", it->second);
    return sys;
}

InitialConfig parse_initial(const json &doc) {
    InitialConfig init;
    if (doc.is_string()) {
        if (doc.get<std::string>() != "random") {
            throw ConfigError("initial: expected \"random\" or {re, im}");
        }
        return init;
    }
    check_keys(doc, "initial", {"re", "im"});
    init.random = false;
    if (!doc.contains("re")) {
        throw ConfigError("initial.re: missing");
    }
    init.re = get_field<std::vector<double>>(doc, "re", "initial");
    init.im = doc.contains("im") ? get_field<std::vector<double>>(doc, "im", "initial")
                                 : std::vector<double>(init.re.size(), 0.0);
    if (init.im.size() != init.re.size()) {
        throw ConfigError("initial.im: length differs from initial.re");
    }
    return init;
}

// Optional fields may be given as null, which is how the resolved config
// records them.
bool present(const json &doc, const char *key) {
    return doc.contains(key) && !doc.at(key).is_null();
}

RunConfig parse_run(const json &doc) {
    check_keys(
        doc,
        "run",
        {"mode", "m", "t", "h", "epsilon", "plan_base", "lambda", "seed", "eta", "trials", "samples"});
    RunConfig run;
    if (doc.contains("mode")) {
        run.mode = get_field<std::string>(doc, "mode", "run");
        if (run.mode != "deterministic" && run.mode != "montecarlo" && run.mode != "noise_study") {
            throw ConfigError("run.mode: expected deterministic, montecarlo or noise_study");
        }
    }
    if (present(doc, "m")) {
        run.m = get_field<std::size_t>(doc, "m", "run");
        if (*run.m == 0) {
            throw ConfigError("run.m: must be at least 1");
        }
    }
    if (present(doc, "t")) {
        run.t = positive(get_field<double>(doc, "t", "run"), "run.t");
    }
    if (present(doc, "h")) {
        run.h = positive(get_field<double>(doc, "h", "run"), "run.h");
    }
    if (doc.contains("epsilon")) {
        const json &e = doc.at("epsilon");
        if (e.is_string()) {
            if (e.get<std::string>() != "auto") {
                throw ConfigError("run.epsilon: expected a number or \"auto\"");
            }
        } else {
            run.epsilon = positive(get_field<double>(doc, "epsilon", "run"), "run.epsilon");
        }
    }
    if (doc.contains("plan_base")) {
        run.plan_base = positive(get_field<double>(doc, "plan_base", "run"), "run.plan_base");
    }
    if (doc.contains("lambda")) {
        const json &l = doc.at("lambda");
        if (l.is_string()) {
            if (l.get<std::string>() != "auto") {
                throw ConfigError("run.lambda: expected a number or \"auto\"");
            }
        } else {
            run.lambda = positive(get_field<double>(doc, "lambda", "run"), "run.lambda");
        }
    }
    if (doc.contains("seed")) {
        run.seed = get_field<std::uint64_t>(doc, "seed", "run");
    }
    if (doc.contains("eta")) {
        run.eta = get_field<double>(doc, "eta", "run");
        if (!(run.eta >= 0.0)) {
            throw ConfigError("run.eta: must be non-negative");
        }
    }
    if (run.mode == "noise_study") {
        run.trials = 100;
    }
    if (doc.contains("trials")) {
        run.trials = get_field<std::size_t>(doc, "trials", "run");
        if (run.trials == 0) {
            throw ConfigError("run.trials: must be at least 1");
        }
    }
    if (doc.contains("samples")) {
        run.samples = get_field<std::size_t>(doc, "samples", "run");
        if (run.samples == 0) {
            throw ConfigError("run.samples: must be at least 1");
        }
    }
    if ((run.mode == "montecarlo" || run.mode == "noise_study") && !run.m) {
        throw ConfigError("run.m: required for mode " + run.mode);
    }
    return run;
}

ObserveConfig parse_observe(const json &doc) {
    check_keys(doc, "observe", {"observables", "delta", "alpha"});
    ObserveConfig obs;
    if (doc.contains("delta")) {
        obs.delta = positive(get_field<double>(doc, "delta", "observe"), "observe.delta");
    }
    if (doc.contains("alpha")) {
        obs.alpha = get_field<double>(doc, "alpha", "observe");
        if (!(obs.alpha > 0.0 && obs.alpha < 1.0)) {
            throw ConfigError("observe.alpha: must lie in (0, 1)");
        }
    }
    if (doc.contains("observables")) {
        std::size_t i = 0;
        for (const auto &o : doc.at("observables")) {
            const std::string where = "observe.observables[" + std::to_string(i++) + "]";
            check_keys(o, where, {"type", "index", "k", "values", "path"});
            ObservableSpec spec;
            if (!o.contains("type")) {
                throw ConfigError(where + ".type: missing");
            }
            spec.type = get_field<std::string>(o, "type", where);
            if (spec.type == "projector") {
                spec.index = get_field<std::size_t>(o, "index", where);
            } else if (spec.type == "fourier") {
                spec.k = get_field<std::size_t>(o, "k", where);
            } else if (spec.type == "diagonal") {
                spec.values = get_field<std::vector<double>>(o, "values", where);
            } else if (spec.type == "csv") {
                spec.path = get_field<std::string>(o, "path", where);
            } else if (spec.type != "identity") {
                throw ConfigError(where + ".type: unknown observable '" + spec.type + "'");
            }
            obs.observables.push_back(std::move(spec));
        }
    }
    return obs;
}

OutputConfig parse_output(const json &doc) {
    check_keys(doc, "output", {"formats"});
    OutputConfig out;
    if (doc.contains("formats")) {
        out.formats = get_field<std::vector<std::string>>(doc, "formats", "output");
        for (const auto &f : out.formats) {
            if (f != "json" && f != "csv") {
                throw ConfigError("output.formats: unknown format '" + f + "'");
            }
        }
    }
    return out;
}

}  // namespace

Command command_from_name(const std::string &name) {
    static const std::map<std::string, Command> names = {
        {"validate", Command::validate},
        {"plan", Command::plan},
        {"iterate", Command::iterate},
        {"integrate", Command::integrate},
        {"noise-study", Command::noise_study},
        {"observe", Command::observe},
    };
    auto it = names.find(name);
    if (it == names.end()) {
        throw ConfigError("unknown subcommand '" + name + "'");
    }
    return it->second;
}

std::string command_name(Command command) {
    switch (command) {
        case Command::validate:
            return "validate";
        case Command::plan:
            return "plan";
        case Command::iterate:
            return "iterate";
        case Command::integrate:
            return "integrate";
        case Command::noise_study:
            return "noise-study";
        case Command::observe:
            return "observe";
    }
    return "unknown";
}

namespace {

// Flat shorthand: run fields and builtin parameters may sit at the top level,
// e.g. {"system": "orszag_mclaughlin", "n": 5, "mode": "deterministic", "m": 10}.
json hoist_shorthand(const json &doc) {
    static const std::set<std::string> sections{"schema_version", "system", "initial", "run", "observe", "output"};
    static const std::set<std::string> run_keys{
        "mode", "m", "t", "h", "epsilon", "plan_base", "lambda", "seed", "eta", "trials", "samples"};
    if (!doc.is_object()) {
        throw ConfigError("config: expected an object");
    }
    json out = doc;
    for (const auto &[key, value] : doc.items()) {
        if (sections.count(key)) {
            continue;
        }
        json *target = nullptr;
        const char *section = nullptr;
        if (run_keys.count(key)) {
            if (!out.contains("run")) {
                out["run"] = json::object();
            }
            target = &out["run"];
            section = "run";
        } else if (out.contains("system") && out["system"].is_string()) {
            out["system"] = json{{"name", out["system"]}};
            target = &out["system"];
            section = "system";
        } else if (out.contains("system") && out["system"].is_object() && out["system"].contains("name")) {
            target = &out["system"];
            section = "system";
        } else {
            throw ConfigError(key + ": unknown key '" + key + "'");
        }
        if (!target->is_object()) {
            throw ConfigError(std::string(section) + ": expected an object");
        }
        if (target->contains(key)) {
            throw ConfigError(key + ": given both at top level and in " + section);
        }
        (*target)[key] = value;
        out.erase(key);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const json &input) {
    const json doc = hoist_shorthand(input);
    check_keys(doc, "", {"schema_version", "system", "initial", "run", "observe", "output"});
    if (doc.contains("schema_version") && doc.at("schema_version") != 1) {
        throw ConfigError("schema_version: unsupported version");
    }
    if (!doc.contains("system")) {
        throw ConfigError("system: missing");
    }
    ExperimentConfig config;
    config.system = parse_system(doc.at("system"));
    if (doc.contains("initial")) {
        config.initial = parse_initial(doc.at("initial"));
    }
    if (doc.contains("run")) {
        config.run = parse_run(doc.at("run"));
    }
    if (doc.contains("observe")) {
        config.observe = parse_observe(doc.at("observe"));
    }
    if (doc.contains("output")) {
        config.output = parse_output(doc.at("output"));
    }
    return config;
}

json ExperimentConfig::to_json() const {
    json sys = system.name == "map" || system.name == "ode" ? json{{system.name, system.params}} : system.params;
    if (system.name != "map" && system.name != "ode") {
        sys["name"] = system.name;
    }
    json init = initial.random ? json("random") : json{{"re", initial.re}, {"im", initial.im}};
    json r = {
        {"mode", run.mode},
        {"plan_base", run.plan_base},
        {"seed", run.seed},
        {"eta", run.eta},
        {"trials", run.trials},
        {"samples", run.samples},
    };
    r["m"] = run.m ? json(*run.m) : json(nullptr);
    r["t"] = run.t ? json(*run.t) : json(nullptr);
    r["h"] = run.h ? json(*run.h) : json(nullptr);
    r["epsilon"] = run.epsilon ? json(*run.epsilon) : json("auto");
    r["lambda"] = run.lambda ? json(*run.lambda) : json("auto");
    json obs_list = json::array();
    for (const auto &o : observe.observables) {
        json entry = {{"type", o.type}};
        if (o.type == "projector") {
            entry["index"] = o.index;
        } else if (o.type == "fourier") {
            entry["k"] = o.k;
        } else if (o.type == "diagonal") {
            entry["values"] = o.values;
        } else if (o.type == "csv") {
            entry["path"] = o.path;
        }
        obs_list.push_back(entry);
    }
    return {
        {"schema_version", 1},
        {"system", sys},
        {"initial", init},
        {"run", r},
        {"observe", {{"observables", obs_list}, {"delta", observe.delta}, {"alpha", observe.alpha}}},
        {"output", {{"formats", output.formats}}},
    };
}

}  // namespace qeuler
