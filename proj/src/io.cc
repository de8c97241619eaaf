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

#include "qeuler/io.h"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace qeuler {

using nlohmann::json;

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf.data(), ptr);
}

namespace {

json entries_json(const std::vector<Term> &terms) {
    json entries = json::array();
    for (const auto &t : terms) {
        entries.push_back({{"alpha", t.row}, {"index", t.index}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
    }
    return entries;
}

void reject_unknown(const json &doc, const std::set<std::string> &allowed, const std::string &what) {
    if (!doc.is_object()) {
        throw std::invalid_argument(what + ": expected a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (!allowed.contains(key)) {
            throw std::invalid_argument(what + ": unknown key '" + key + "'");
        }
    }
}

struct ParsedPolynomials {
    std::size_t n = 0;
    std::size_t degree = 0;
    std::vector<Term> terms;
    bool real = false;
};

ParsedPolynomials parse_polynomials(const json &doc, bool allow_anchor, const std::set<std::string> &allowed) {
    reject_unknown(doc, allowed, "polynomial document");
    for (const char *key : {"n", "degree", "entries"}) {
        if (!doc.contains(key)) {
            throw std::invalid_argument(std::string("polynomial document: missing '") + key + "'");
        }
    }
    ParsedPolynomials out;
    out.n = doc.at("n").get<std::size_t>();
    out.degree = doc.at("degree").get<std::size_t>();
    out.real = doc.value("real", false);
    for (const auto &e : doc.at("entries")) {
        reject_unknown(e, {"alpha", "index", "re", "im"}, "entry");
        Term t;
        t.row = e.at("alpha").get<std::size_t>();
        t.index = e.at("index").get<std::vector<std::size_t>>();
        t.coeff = Complex(e.value("re", 0.0), e.value("im", 0.0));
        if (t.row == 0) {
            const bool anchor = std::all_of(t.index.begin(), t.index.end(), [](std::size_t k) {
                return k == 0;
            });
            if (!allow_anchor || !anchor || t.coeff != Complex(1.0, 0.0)) {
                throw std::invalid_argument("entry with alpha = 0 must be the anchor a^(0)_{0..0} = 1");
            }
            continue;
        }
        out.terms.push_back(std::move(t));
    }
    return out;
}

}  // namespace

json to_json(const PolynomialMap &map) {
    return {
        {"kind", "map"},
        {"n", map.n()},
        {"degree", map.degree()},
        {"real", map.real_variables()},
        {"entries", entries_json(map.terms())},
    };
}

json to_json(const OdeSystem &sys) {
    return {
        {"kind", "ode"},
        {"n", sys.n()},
        {"degree", sys.degree()},
        {"real", sys.real_variables()},
        {"measure_preserving_claimed", sys.measure_preserving_claimed()},
        {"entries", entries_json(sys.terms())},
    };
}

PolynomialMap map_from_json(const json &doc) {
    if (doc.contains("kind") && doc.at("kind") != "map") {
        throw std::invalid_argument("polynomial document: expected kind 'map'");
    }
    auto p = parse_polynomials(doc, true, {"kind", "n", "degree", "real", "entries"});
    return PolynomialMap(p.n, p.degree, std::move(p.terms), p.real);
}

OdeSystem ode_from_json(const json &doc) {
    if (doc.contains("kind") && doc.at("kind") != "ode") {
        throw std::invalid_argument("polynomial document: expected kind 'ode'");
    }
    auto p = parse_polynomials(doc, false, {"kind", "n", "degree", "real", "measure_preserving_claimed", "entries"});
    return OdeSystem(p.n, p.degree, std::move(p.terms), p.real, doc.value("measure_preserving_claimed", false));
}

json to_json(const ValidationReport &report) {
    return {
        {"s_row", report.s_row},
        {"s_col", report.s_col},
        {"a_max_observed", report.a_max_observed},
        {"measure_deviation", report.measure_deviation},
        {"lipschitz_estimate", report.lipschitz_estimate},
    };
}

json to_json(const ResourcePlan &plan) {
    json j = {
        {"m", plan.m},
        {"epsilon", plan.epsilon},
        {"p", plan.p},
        {"lambda", plan.lambda},
        {"base", plan.base},
        {"log10_n0", plan.log10_n0},
        {"exact", plan.exact},
        {"alternatives",
         {{"log10_n_base8", plan.log10_n_base8}, {"log10_n_gamma", plan.log10_n_gamma}, {"gamma", plan.gamma}}},
    };
    j["n0"] = plan.exact ? json(plan.n0) : json(nullptr);
    return j;
}

json complex_vector_json(const CVector &v) {
    std::vector<double> re(static_cast<std::size_t>(v.size()));
    std::vector<double> im(re.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re[static_cast<std::size_t>(i)] = v[i].real();
        im[static_cast<std::size_t>(i)] = v[i].imag();
    }
    return {{"re", re}, {"im", im}};
}

json to_json(const RunReport &report) {
    json j = {
        {"success", report.success},
        {"message", report.message},
        {"epsilon", report.epsilon},
        {"steps", report.iterates.empty() ? 0 : report.iterates.size() - 1},
        {"probabilities", report.probabilities},
        {"norm_factors", report.norm_factors},
    };
    if (!report.iterates.empty()) {
        j["final_state"] = complex_vector_json(report.iterates.back());
    }
    if (!report.copy_counts.empty()) {
        j["copy_counts"] = report.copy_counts;
        j["flagged_rounds"] = report.flagged_rounds;
    }
    if (report.trials > 0) {
        j["noise"] = {
            {"trials", report.trials},
            {"gamma", report.gamma},
            {"delta_observed", report.delta_observed},
            {"delta_bound", report.delta_bound},
            {"bound_violations", report.bound_violations},
            {"recurrence_violations", report.recurrence_violations},
        };
    }
    if (report.h > 0.0) {
        j["h"] = report.h;
    }
    if (report.measure_residual) {
        j["measure_residual"] = *report.measure_residual;
    }
    return j;
}

void write_trajectory_csv(std::ostream &out, const RunReport &report, const TrajectoryColumns &columns) {
    const std::size_t n = report.iterates.empty() ? 0 : static_cast<std::size_t>(report.iterates.front().size());
    out << "step,t";
    for (std::size_t i = 1; i <= n; ++i) {
        out << ",re_z" << i << ",im_z" << i;
    }
    out << ",probability,norm_factor";
    if (columns.copy_counts) {
        out << ",N_j";
    }
    if (columns.deltas) {
        out << ",delta_observed,delta_bound";
    }
    out << '\n';

    std::size_t rows = report.iterates.size();
    if (columns.copy_counts) {
        rows = std::max(rows, report.copy_counts.size());
    }
    for (std::size_t j = 0; j < rows; ++j) {
        out << j << ',' << format_double(static_cast<double>(j) * columns.time_step);
        if (j < report.iterates.size()) {
            for (const Complex &z : report.iterates[j]) {
                out << ',' << format_double(z.real()) << ',' << format_double(z.imag());
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                out << ",,";
            }
        }
        out << ',';
        if (j >= 1 && j <= report.probabilities.size()) {
            out << format_double(report.probabilities[j - 1]);
        }
        out << ',';
        if (j >= 1 && j <= report.norm_factors.size()) {
            out << format_double(report.norm_factors[j - 1]);
        }
        if (columns.copy_counts) {
            out << ',';
            if (j < report.copy_counts.size()) {
                out << report.copy_counts[j];
            }
        }
        if (columns.deltas) {
            out << ',';
            if (j < report.delta_observed.size()) {
                out << format_double(report.delta_observed[j]);
            }
            out << ',';
            if (j < report.delta_bound.size()) {
                out << format_double(report.delta_bound[j]);
            }
        }
        out << '\n';
    }
}

}  // namespace qeuler
