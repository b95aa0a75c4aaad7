// Copyright 2026 The pel Authors
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

#ifndef PEL_APP_EXPERIMENT_SPEC_HPP
#define PEL_APP_EXPERIMENT_SPEC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pel/channels.hpp"
#include "pel/interferometer.hpp"
#include "pel/measurement.hpp"
#include "pel/nogo.hpp"

namespace pel::app {

using Json = nlohmann::ordered_json;

enum class Command { Simulate, Efficiency, NogoSearch, Verify };

std::string command_name(Command c);
std::optional<Command> parse_command(const std::string &name);

struct InterferometerSpec {
    enum class Kind { Identity, Matrix, Mesh, Haar };
    Kind kind = Kind::Identity;
    CMatrix matrix;
    std::vector<double> params;
    std::uint64_t seed = 0;

    ModeUnitary build(int modes, const Tolerances &tol) const;
};

struct SearchSpec {
    /// One search cell per value unless source_efficiencies is given.
    std::vector<double> p_max_values;
    std::vector<double> source_efficiencies;
    int num_sources = 2;
    int num_coherent = 1;
    double alpha_max = 1.5;
    double attenuation = 1.0;
    ConstraintKind constraint = ConstraintKind::Unconstrained;
    double epsilon = 1e-9;
    std::uint64_t budget = 20000;
    std::uint64_t restart_budget = 400;
    int max_patterns = 200;
    int cutoff = 0;

    /// The search spaces this spec describes, in output order.
    std::vector<SearchSpace> spaces() const;
};

struct VerifySpec {
    std::string target;
    int trials = 0;
};

enum class Format { Json, Csv };

struct ExperimentSpec {
    Command command = Command::Simulate;
    int cutoff = 10;
    std::uint64_t seed = 0;
    std::vector<SourceSpec> sources;
    InterferometerSpec interferometer;
    /// Applied to the sources before the interferometer.
    std::vector<LossChannel> losses;
    std::optional<MeasurementPattern> measurement;
    Tolerances tol = default_tolerances();
    double bisection_tol = 1e-8;
    SearchSpec search;
    VerifySpec verify;
    std::optional<std::string> output_path;
    Format format = Format::Json;
};

/// Parses and validates a spec document. Unknown fields are errors. Throws
/// Validation naming the offending field.
ExperimentSpec parse_spec(const Json &doc, Command command);

Json tolerances_to_json(const Tolerances &tol);

}  // namespace pel::app

#endif
