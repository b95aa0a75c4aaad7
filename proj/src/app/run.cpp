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

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "pel/app/experiment_spec.hpp"
#include "pel/app/result_writer.hpp"
#include "pel/app/run.hpp"
#include "pel/efficiency.hpp"
#include "pel/verification.hpp"

#ifndef PEL_VERSION
#define PEL_VERSION "0.0.0"
#endif

namespace pel::app {
namespace {

constexpr double kCommutationThreshold = 1e-9;
constexpr double kCounterexampleThreshold = 1e-3;

struct Outcome {
    Json result;
    CsvTable table;
    bool violated = false;
};

Json read_spec(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot read spec file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error &e) {
        throw Error(ErrorKind::Validation, "spec file '" + path + "' is not valid JSON: " + e.what());
    }
}

std::string b2s(bool b) {
    return b ? "true" : "false";
}

DensityMatrix source_state(const SourceSpec &src, int cutoff, const Tolerances &tol) {
    return make_state(src, cutoff, tol);
}

Outcome run_simulate(const ExperimentSpec &spec) {
    const Tolerances &tol = spec.tol;
    std::vector<DensityMatrix> factors;
    for (const SourceSpec &src : spec.sources) {
        factors.push_back(source_state(src, spec.cutoff, tol));
    }
    DensityMatrix rho = factors.size() == 1 ? factors.front()
                                            : tensor_all(factors, spec.cutoff, TruncationPolicy::Refuse, tol);
    const int modes = rho.modes();
    for (const LossChannel &ch : spec.losses) {
        rho = apply_loss(rho, ch);
    }
    rho = apply_interferometer(rho, spec.interferometer.build(modes, tol));

    MeasurementPattern pattern;
    if (spec.measurement) {
        pattern = *spec.measurement;
    }
    const Conditioned c = condition(rho, pattern, tol);
    const auto surviving = pattern.surviving_modes(modes);

    Outcome o;
    Json &r = o.result;
    r["cutoff"] = spec.cutoff;
    r["modes"] = modes;
    r["herald_probability"] = c.probability;
    r["surviving_modes"] = surviving;
    r["truncation_weight"] = c.state.tail_weight();
    r["photon_number_distribution"] = c.state.photon_number_distribution();
    o.table.header = {"herald_prob", "surviving_modes", "X", "multiphoton_weight"};
    std::vector<std::string> row{format_double(c.probability), std::to_string(surviving.size()), "", ""};
    if (surviving.size() == 1) {
        const double x = single_photon_probability(c.state);
        const double mp = multiphoton_weight(c.state);
        r["X"] = x;
        r["multiphoton_weight"] = mp;
        row[2] = format_double(x);
        row[3] = format_double(mp);
    }
    o.table.rows.push_back(row);
    return o;
}

Json efficiency_json(const EfficiencyResult &e) {
    Json j;
    j["value"] = e.value;
    j["bracket"] = Json::array({e.lo, e.hi});
    j["attained"] = e.attained;
    j["cutoff_used"] = e.cutoff_used;
    j["support"] = e.support;
    j["floor"] = e.floor;
    j["witness_eigenvalue"] = e.witness_eigenvalue;
    return j;
}

Outcome run_efficiency(const ExperimentSpec &spec) {
    std::vector<DensityMatrix> states;
    for (const SourceSpec &src : spec.sources) {
        states.push_back(source_state(src, spec.cutoff, spec.tol));
    }
    const MultimodeEfficiency m = multimode_efficiency(states, spec.bisection_tol, spec.tol);
    Outcome o;
    o.table.header = {"source", "value", "lo", "hi", "attained", "cutoff_used", "witness_eigenvalue"};
    for (std::size_t i = 0; i < m.modes.size(); ++i) {
        const EfficiencyResult &e = m.modes[i];
        o.table.rows.push_back({describe(spec.sources[i]), format_double(e.value), format_double(e.lo),
                                format_double(e.hi), b2s(e.attained), std::to_string(e.cutoff_used),
                                format_double(e.witness_eigenvalue)});
    }
    if (m.modes.size() == 1) {
        o.result = efficiency_json(m.modes.front());
    } else {
        o.result["value"] = m.value;
        Json modes = Json::array();
        for (std::size_t i = 0; i < m.modes.size(); ++i) {
            Json j;
            j["source"] = describe(spec.sources[i]);
            const Json fields = efficiency_json(m.modes[i]);
            for (const auto &[k, v] : fields.items()) {
                j[k] = v;
            }
            modes.push_back(j);
        }
        o.result["modes"] = modes;
    }
    return o;
}

Outcome run_nogo(const ExperimentSpec &spec, const Json &doc, unsigned threads) {
    SearchOptions opts;
    opts.budget = spec.search.budget;
    opts.restart_budget = spec.search.restart_budget;
    opts.seed = spec.seed;
    opts.threads = threads;
    Outcome o;
    o.table.header = {"p_max", "constraint", "best_X", "bound", "herald_prob", "multiphoton_weight", "violated"};
    Json cells = Json::array();
    for (SearchSpace space : spec.search.spaces()) {
        if (space.cutoff == 0 && doc.contains("cutoff")) {
            space.cutoff = spec.cutoff;
        }
        const SearchReport rep = maximize_X(space, opts, spec.tol);
        const std::string cname = constraint_name(space.constraint.kind);
        Json j;
        j["p_max"] = space.p_max();
        j["constraint"] = cname;
        j["source_efficiencies"] = space.source_efficiencies;
        j["num_coherent"] = space.num_coherent;
        j["best_X"] = rep.best_X;
        j["bound"] = rep.bound;
        j["violated"] = rep.violated;
        j["found"] = rep.found;
        j["herald_probability"] = rep.herald_probability;
        j["multiphoton_weight"] = rep.multiphoton_weight;
        j["best_pattern"] = rep.best_pattern;
        j["best_params"] = rep.best_params;
        j["cutoff"] = rep.cutoff;
        j["truncation_tail"] = rep.truncation_tail;
        j["evaluations"] = rep.evaluations;
        j["restarts"] = rep.restarts;
        cells.push_back(j);
        o.violated = o.violated || rep.violated;
        o.table.rows.push_back({format_double(space.p_max()), cname, format_double(rep.best_X),
                                format_double(rep.bound), format_double(rep.herald_probability),
                                format_double(rep.multiphoton_weight), b2s(rep.violated)});
    }
    o.result["budget"] = opts.budget;
    o.result["restart_budget"] = opts.restart_budget;
    o.result["cells"] = cells;
    o.result["violated"] = o.violated;
    return o;
}

Outcome run_verify(const ExperimentSpec &spec, const Json &doc) {
    const std::string &target = spec.verify.target;
    const int cutoff = doc.contains("cutoff") ? spec.cutoff : 6;
    Outcome o;
    Json &r = o.result;
    r["target"] = target;
    if (target == "commutation") {
        const int trials = spec.verify.trials ? spec.verify.trials : 100;
        const CommutationReport rep = verify_commutation(spec.seed, trials, cutoff);
        const bool passed = rep.max_deviation < kCommutationThreshold &&
                            rep.unequal_loss_deviation > kCounterexampleThreshold;
        r["trials"] = rep.trials;
        r["cutoff"] = rep.cutoff;
        r["max_deviation"] = rep.max_deviation;
        r["threshold"] = kCommutationThreshold;
        r["unequal_loss_deviation"] = rep.unequal_loss_deviation;
        r["passed"] = passed;
        o.violated = !passed;
        o.table.header = {"target", "trials", "cutoff", "max_deviation", "unequal_loss_deviation", "passed"};
        o.table.rows.push_back({target, std::to_string(rep.trials), std::to_string(rep.cutoff),
                                format_double(rep.max_deviation), format_double(rep.unequal_loss_deviation),
                                b2s(passed)});
    } else if (target == "bernoulli") {
        const int trials = spec.verify.trials ? spec.verify.trials : 50;
        const BernoulliReport rep = verify_bernoulli_consequence(spec.seed, trials, cutoff);
        r["trials"] = rep.trials;
        r["cutoff"] = cutoff;
        r["max_proportionality_error"] = rep.max_proportionality_error;
        r["max_bound_excess"] = rep.max_bound_excess;
        r["passed"] = rep.passed;
        o.violated = !rep.passed;
        o.table.header = {"target", "trials", "cutoff", "max_proportionality_error", "max_bound_excess", "passed"};
        o.table.rows.push_back({target, std::to_string(rep.trials), std::to_string(cutoff),
                                format_double(rep.max_proportionality_error), format_double(rep.max_bound_excess),
                                b2s(rep.passed)});
    } else {
        throw Error(ErrorKind::Validation,
                    "verify target: expected commutation or bernoulli, got '" + target + "'");
    }
    return o;
}

}  // namespace

const char *version() {
    return PEL_VERSION;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation:
        case ErrorKind::Positivity:
            return exit_code::validation;
        default:
            return exit_code::numerical;
    }
}

RunOutput execute(const RunOptions &options) {
    const auto command = parse_command(options.command);
    if (!command) {
        throw Error(ErrorKind::Validation,
                    "command: expected simulate, efficiency, nogo-search or verify, got '" + options.command + "'");
    }
    if (options.target && *command != Command::Verify) {
        throw Error(ErrorKind::Validation, "only verify takes a positional target");
    }
    Json doc = Json::object();
    if (options.spec_path) {
        doc = read_spec(*options.spec_path);
    } else if (*command != Command::Verify) {
        throw Error(ErrorKind::Validation, "--spec: required for " + options.command);
    }
    if (!doc.is_object()) {
        throw Error(ErrorKind::Validation, "spec: expected a JSON object");
    }
    if (options.seed) {
        doc["seed"] = *options.seed;
    }
    if (options.cutoff) {
        doc["cutoff"] = *options.cutoff;
    }
    if (*command == Command::Verify) {
        if (!doc.contains("verify")) {
            doc["verify"] = Json::object();
        }
        if (options.target) {
            doc["verify"]["target"] = *options.target;
        }
        if (options.trials) {
            doc["verify"]["trials"] = *options.trials;
        }
        if (!doc["verify"].is_object() || !doc["verify"].contains("target")) {
            throw Error(ErrorKind::Validation, "verify.target: missing (commutation or bernoulli)");
        }
    } else if (options.trials) {
        throw Error(ErrorKind::Validation, "--trials applies to verify only");
    }
    if (options.out || options.format) {
        if (!doc.contains("output")) {
            doc["output"] = Json::object();
        }
        if (options.out) {
            doc["output"]["path"] = *options.out;
        }
        if (options.format) {
            doc["output"]["format"] = *options.format;
        }
    }
    const ExperimentSpec spec = parse_spec(doc, *command);
    Json echo = doc;
    echo.erase("output");
    if (!echo.contains("seed")) {
        echo["seed"] = spec.seed;
    }

    const unsigned threads =
        options.threads && *options.threads > 0 ? *options.threads : std::max(1u, std::thread::hardware_concurrency());
    Outcome o;
    switch (*command) {
        case Command::Simulate:
            o = run_simulate(spec);
            break;
        case Command::Efficiency:
            o = run_efficiency(spec);
            break;
        case Command::NogoSearch:
            o = run_nogo(spec, doc, threads);
            break;
        case Command::Verify:
            o = run_verify(spec, doc);
            break;
    }

    RunOutput out;
    out.exit_code = o.violated ? exit_code::violation : exit_code::ok;
    out.path = spec.output_path.value_or("");
    if (spec.format == Format::Csv) {
        out.document = to_csv_text(o.table);
    } else {
        Json full;
        full["command"] = command_name(*command);
        full["version"] = version();
        full["seed"] = spec.seed;
        full["spec_echo"] = echo;
        full["tolerances"] = tolerances_to_json(spec.tol);
        for (auto &[k, v] : o.result.items()) {
            full[k] = v;
        }
        out.document = to_json_text(full);
    }
    return out;
}

int run(const RunOptions &options, std::ostream &out, std::ostream &err) {
    RunOutput res;
    try {
        res = execute(options);
    } catch (const Error &e) {
        err << "pel: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        err << "pel: internal error: " << e.what() << "\n";
        return exit_code::numerical;
    }
    if (res.path.empty()) {
        out << res.document;
        out.flush();
    } else {
        std::ofstream f(res.path, std::ios::binary | std::ios::trunc);
        f << res.document;
        f.flush();
        if (!f) {
            err << "pel: " << error_kind_name(ErrorKind::Io) << " error: cannot write '" << res.path << "'\n";
            return exit_code::numerical;
        }
    }
    if (res.exit_code == exit_code::violation) {
        err << "pel: a checked bound was violated; see the result document\n";
    }
    return res.exit_code;
}

}  // namespace pel::app
