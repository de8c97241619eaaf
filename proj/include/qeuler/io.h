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

#ifndef QEULER_IO_H
#define QEULER_IO_H

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qeuler/euler_driver.h"
#include "qeuler/polysys.h"

namespace qeuler {

inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double value);

nlohmann::json to_json(const PolynomialMap &map);
nlohmann::json to_json(const OdeSystem &sys);
/// Accepts unsorted multi-indices; anchors (alpha = 0) are only accepted as
/// the implicit a^(0)_{0..0} = 1 entry.
PolynomialMap map_from_json(const nlohmann::json &doc);
OdeSystem ode_from_json(const nlohmann::json &doc);

nlohmann::json to_json(const ValidationReport &report);
nlohmann::json to_json(const ResourcePlan &plan);
nlohmann::json to_json(const RunReport &report);
nlohmann::json complex_vector_json(const CVector &v);

struct TrajectoryColumns {
    /// Time of step j is j * time_step.
    double time_step = 1.0;
    bool copy_counts = false;
    bool deltas = false;
};

/// step,t,re_z1,im_z1,...,probability,norm_factor[,N_j][,delta_observed,delta_bound]
void write_trajectory_csv(std::ostream &out, const RunReport &report, const TrajectoryColumns &columns);

}  // namespace qeuler

#endif  // QEULER_IO_H
