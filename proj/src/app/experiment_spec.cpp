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

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>

#include "pel/app/experiment_spec.hpp"
#include "pel/error.hpp"

namespace pel::app {
namespace {

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw Error(ErrorKind::Validation, path + ": " + what);
}

const Json &require_object(const Json &j, const std::string &path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    return j;
}

void check_keys(const Json &obj, const std::string &path, std::initializer_list<const char *> allowed) {
    for (const auto &[key, value] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return key == a; })) {
            std::string list;
            for (const char *a : allowed) {
                list += list.empty() ? a : std::string(", ") + a;
            }
            fail(path.empty() ? key : path + "." + key, "unknown field (allowed: " + list + ")");
        }
    }
}

std::string join(const std::string &path, const std::string &key) {
    return path.empty() ? key : path + "." + key;
}

double as_number(const Json &j, const std::string &path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(path, "expected a finite number");
    }
    return v;
}

std::int64_t as_integer(const Json &j, const std::string &path) {
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return j.get<std::int64_t>();
}

std::uint64_t as_unsigned(const Json &j, const std::string &path) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
        fail(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

int as_int(const Json &j, const std::string &path, int lo, int hi) {
    const std::int64_t v = as_integer(j, path);
    if (v < lo || v > hi) {
        fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(v);
}

std::string as_string(const Json &j, const std::string &path) {
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

cplx as_complex(const Json &j, const std::string &path) {
    if (j.is_number()) {
        return as_number(j, path);
    }
    if (j.is_array() && j.size() == 2) {
        return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
    }
    fail(path, "expected a number or a [re, im] pair");
}

std::vector<double> as_numbers(const Json &j, const std::string &path) {
    if (!j.is_array()) {
        fail(path, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

const Json *find(const Json &obj, const char *key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

SourceSpec parse_source(const Json &j, const std::string &path) {
    require_object(j, path);
    const Json *type = find(j, "type");
    if (!type) {
        fail(path + ".type", "missing (one of isps, coherent, fock, partial_qubit)");
    }
    const std::string t = as_string(*type, path + ".type");
    auto need = [&](const char *key) -> const Json & {
        const Json *v = find(j, key);
        if (!v) {
            fail(path + "." + key, "missing");
        }
        return *v;
    };
    if (t == "isps") {
        check_keys(j, path, {"type", "p"});
        const double p = as_number(need("p"), path + ".p");
        if (p < 0.0 || p > 1.0) {
            fail(path + ".p", "must lie in [0, 1]");
        }
        return Isps{p};
    }
    if (t == "coherent") {
        check_keys(j, path, {"type", "alpha"});
        return Coherent{as_complex(need("alpha"), path + ".alpha")};
    }
    if (t == "fock") {
        check_keys(j, path, {"type", "n"});
        return FockNumber{as_int(need("n"), path + ".n", 0, 1000)};
    }
    if (t == "partial_qubit") {
        check_keys(j, path, {"type", "p", "q"});
        const double p = as_number(need("p"), path + ".p");
        if (p < 0.0 || p > 1.0) {
            fail(path + ".p", "must lie in [0, 1]");
        }
        return PartialQubit{p, as_complex(need("q"), path + ".q")};
    }
    fail(path + ".type", "unknown source type '" + t + "'");
}

CMatrix parse_matrix(const Json &re, const Json *im, const std::string &path) {
    if (!re.is_array() || re.empty()) {
        fail(path + ".real", "expected a non-empty square array of rows");
    }
    const std::size_t n = re.size();
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = as_numbers(re[i], path + ".real[" + std::to_string(i) + "]");
        if (row.size() != n) {
            fail(path + ".real", "matrix must be square");
        }
        for (std::size_t k = 0; k < n; ++k) {
            m(i, k) = row[k];
        }
    }
    if (im) {
        if (!im->is_array() || im->size() != n) {
            fail(path + ".imag", "must match the shape of real");
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = as_numbers((*im)[i], path + ".imag[" + std::to_string(i) + "]");
            if (row.size() != n) {
                fail(path + ".imag", "must match the shape of real");
            }
            for (std::size_t k = 0; k < n; ++k) {
                m(i, k) += cplx(0.0, row[k]);
            }
        }
    }
    return m;
}

InterferometerSpec parse_interferometer(const Json &j, const std::string &path) {
    require_object(j, path);
    InterferometerSpec s;
    const Json *type = find(j, "type");
    if (!type) {
        fail(path + ".type", "missing (one of identity, matrix, mesh, haar)");
    }
    const std::string t = as_string(*type, path + ".type");
    if (t == "identity") {
        check_keys(j, path, {"type"});
        s.kind = InterferometerSpec::Kind::Identity;
    } else if (t == "matrix") {
        check_keys(j, path, {"type", "real", "imag"});
        const Json *re = find(j, "real");
        if (!re) {
            fail(path + ".real", "missing");
        }
        s.kind = InterferometerSpec::Kind::Matrix;
        s.matrix = parse_matrix(*re, find(j, "imag"), path);
    } else if (t == "mesh") {
        check_keys(j, path, {"type", "params"});
        const Json *p = find(j, "params");
        if (!p) {
            fail(path + ".params", "missing");
        }
        s.kind = InterferometerSpec::Kind::Mesh;
        s.params = as_numbers(*p, path + ".params");
    } else if (t == "haar") {
        check_keys(j, path, {"type", "seed"});
        const Json *seed = find(j, "seed");
        if (!seed) {
            fail(path + ".seed", "missing");
        }
        s.kind = InterferometerSpec::Kind::Haar;
        s.seed = as_unsigned(*seed, path + ".seed");
    } else {
        fail(path + ".type", "unknown interferometer type '" + t + "'");
    }
    return s;
}

MeasurementPattern parse_measurement(const Json &j, const std::string &path) {
    require_object(j, path);
    check_keys(j, path, {"detections"});
    const Json *d = find(j, "detections");
    if (!d || !d->is_array()) {
        fail(path + ".detections", "expected an array");
    }
    MeasurementPattern m;
    for (std::size_t i = 0; i < d->size(); ++i) {
        const std::string p = path + ".detections[" + std::to_string(i) + "]";
        const Json &e = require_object((*d)[i], p);
        check_keys(e, p, {"mode", "count"});
        const Json *mode = find(e, "mode");
        const Json *count = find(e, "count");
        if (!mode) {
            fail(p + ".mode", "missing");
        }
        if (!count) {
            fail(p + ".count", "missing (a photon count or \"traced\")");
        }
        Detection det{as_int(*mode, p + ".mode", 0, 1 << 20), 0};
        if (count->is_string()) {
            if (count->get<std::string>() != "traced") {
                fail(p + ".count", "expected a photon count or \"traced\"");
            }
            det.count = MeasurementPattern::traced_out;
        } else {
            det.count = as_int(*count, p + ".count", 0, 1 << 20);
        }
        m.detections.push_back(det);
    }
    return m;
}

void parse_tolerances(const Json &j, Tolerances &tol, const std::string &path) {
    require_object(j, path);
    check_keys(j, path,
               {"hermiticity", "trace", "psd", "tail", "unitarity", "herald_floor", "feasibility", "conditioning",
                "efficiency_floor", "bisection", "max_dimension"});
    auto set = [&](const char *key, double &field) {
        if (const Json *v = find(j, key)) {
            const double x = as_number(*v, join(path, key));
            if (!(x > 0.0)) {
                fail(join(path, key), "must be positive");
            }
            field = x;
        }
    };
    set("hermiticity", tol.hermiticity);
    set("trace", tol.trace);
    set("psd", tol.psd);
    set("tail", tol.tail);
    set("unitarity", tol.unitarity);
    set("herald_floor", tol.herald_floor);
    set("feasibility", tol.feasibility);
    set("conditioning", tol.conditioning);
    set("efficiency_floor", tol.efficiency_floor);
    set("bisection", tol.bisection);
    if (const Json *v = find(j, "max_dimension")) {
        tol.max_dimension = static_cast<std::size_t>(as_int(*v, join(path, "max_dimension"), 1, 1 << 24));
    }
}

SearchSpec parse_search(const Json &j, const std::string &path) {
    require_object(j, path);
    check_keys(j, path,
               {"p_max", "source_efficiencies", "num_sources", "num_coherent", "alpha_max", "attenuation",
                "constraint", "epsilon", "budget", "restart_budget", "max_patterns", "cutoff"});
    SearchSpec s;
    if (const Json *v = find(j, "p_max")) {
        s.p_max_values = v->is_array() ? as_numbers(*v, path + ".p_max")
                                       : std::vector<double>{as_number(*v, path + ".p_max")};
    }
    if (const Json *v = find(j, "source_efficiencies")) {
        s.source_efficiencies = as_numbers(*v, path + ".source_efficiencies");
        if (s.source_efficiencies.empty()) {
            fail(path + ".source_efficiencies", "must not be empty");
        }
        if (!s.p_max_values.empty()) {
            fail(path + ".p_max", "give either p_max or source_efficiencies, not both");
        }
    }
    if (s.p_max_values.empty() && s.source_efficiencies.empty()) {
        fail(path + ".p_max", "missing (or give source_efficiencies)");
    }
    for (double p : s.p_max_values) {
        if (p < 0.0 || p > 1.0) {
            fail(path + ".p_max", "values must lie in [0, 1]");
        }
    }
    if (const Json *v = find(j, "num_sources")) {
        s.num_sources = as_int(*v, path + ".num_sources", 1, 16);
    }
    if (const Json *v = find(j, "num_coherent")) {
        s.num_coherent = as_int(*v, path + ".num_coherent", 0, 16);
    }
    if (const Json *v = find(j, "alpha_max")) {
        s.alpha_max = as_number(*v, path + ".alpha_max");
    }
    if (const Json *v = find(j, "attenuation")) {
        s.attenuation = as_number(*v, path + ".attenuation");
    }
    if (const Json *v = find(j, "constraint")) {
        const std::string c = as_string(*v, path + ".constraint");
        if (c == "no_multiphoton") {
            s.constraint = ConstraintKind::NoMultiphoton;
        } else if (c == "unconstrained") {
            s.constraint = ConstraintKind::Unconstrained;
        } else {
            fail(path + ".constraint", "expected no_multiphoton or unconstrained");
        }
    }
    if (const Json *v = find(j, "epsilon")) {
        s.epsilon = as_number(*v, path + ".epsilon");
    }
    if (const Json *v = find(j, "budget")) {
        s.budget = as_unsigned(*v, path + ".budget");
    }
    if (const Json *v = find(j, "restart_budget")) {
        s.restart_budget = as_unsigned(*v, path + ".restart_budget");
    }
    if (const Json *v = find(j, "max_patterns")) {
        s.max_patterns = as_int(*v, path + ".max_patterns", 1, 1 << 20);
    }
    if (const Json *v = find(j, "cutoff")) {
        s.cutoff = as_int(*v, path + ".cutoff", 0, 1000);
    }
    if (s.budget < 1) {
        fail(path + ".budget", "must be at least 1");
    }
    if (s.restart_budget < 1) {
        fail(path + ".restart_budget", "must be at least 1");
    }
    for (const SearchSpace &space : s.spaces()) {
        try {
            space.validate();
        } catch (const Error &e) {
            fail(path, e.what());
        }
    }
    return s;
}

}  // namespace

std::string command_name(Command c) {
    switch (c) {
        case Command::Simulate:
            return "simulate";
        case Command::Efficiency:
            return "efficiency";
        case Command::NogoSearch:
            return "nogo-search";
        case Command::Verify:
            return "verify";
    }
    return "unknown";
}

std::optional<Command> parse_command(const std::string &name) {
    for (Command c : {Command::Simulate, Command::Efficiency, Command::NogoSearch, Command::Verify}) {
        if (command_name(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

ModeUnitary InterferometerSpec::build(int modes, const Tolerances &tol) const {
    switch (kind) {
        case Kind::Identity:
            return ModeUnitary::identity(modes);
        case Kind::Matrix:
            if (static_cast<int>(matrix.rows()) != modes) {
                fail("interferometer.real", "matrix is " + std::to_string(matrix.rows()) + "x" +
                                                std::to_string(matrix.rows()) + " but there are " +
                                                std::to_string(modes) + " modes");
            }
            try {
                return ModeUnitary(matrix, tol);
            } catch (const Error &e) {
                fail("interferometer", e.what());
            }
        case Kind::Mesh:
            try {
                return from_mesh(params, modes);
            } catch (const Error &e) {
                fail("interferometer.params", e.what());
            }
        case Kind::Haar:
            return haar_random(modes, seed);
    }
    return ModeUnitary::identity(modes);
}

std::vector<SearchSpace> SearchSpec::spaces() const {
    std::vector<SearchSpace> out;
    auto make = [&](std::vector<double> eff) {
        SearchSpace s;
        s.source_efficiencies = std::move(eff);
        s.num_coherent = num_coherent;
        s.alpha_max = alpha_max;
        s.attenuation = attenuation;
        s.cutoff = cutoff;
        s.max_patterns = max_patterns;
        s.constraint = {constraint, epsilon};
        return s;
    };
    if (!source_efficiencies.empty()) {
        out.push_back(make(source_efficiencies));
    } else {
        for (double p : p_max_values) {
            out.push_back(make(std::vector<double>(static_cast<std::size_t>(num_sources), p)));
        }
    }
    return out;
}

ExperimentSpec parse_spec(const Json &doc, Command command) {
    require_object(doc, "spec");
    check_keys(doc, "",
               {"command", "cutoff", "seed", "sources", "interferometer", "losses", "measurement", "tolerances",
                "efficiency", "search", "verify", "output"});
    ExperimentSpec s;
    s.command = command;
    if (const Json *v = find(doc, "command")) {
        const std::string name = as_string(*v, "command");
        const auto c = parse_command(name);
        if (!c) {
            fail("command", "unknown command '" + name + "'");
        }
        if (*c != command) {
            fail("command", "spec is for '" + name + "' but '" + command_name(command) + "' was requested");
        }
    }
    if (const Json *v = find(doc, "cutoff")) {
        s.cutoff = as_int(*v, "cutoff", 0, 1000);
    }
    if (const Json *v = find(doc, "seed")) {
        s.seed = as_unsigned(*v, "seed");
    }
    if (const Json *v = find(doc, "tolerances")) {
        parse_tolerances(*v, s.tol, "tolerances");
    }
    if (const Json *v = find(doc, "sources")) {
        if (!v->is_array()) {
            fail("sources", "expected an array");
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            s.sources.push_back(parse_source((*v)[i], "sources[" + std::to_string(i) + "]"));
        }
    }
    if (const Json *v = find(doc, "interferometer")) {
        s.interferometer = parse_interferometer(*v, "interferometer");
    }
    if (const Json *v = find(doc, "losses")) {
        if (!v->is_array()) {
            fail("losses", "expected an array");
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            const std::string p = "losses[" + std::to_string(i) + "]";
            const Json &e = require_object((*v)[i], p);
            check_keys(e, p, {"p", "modes"});
            const Json *pv = find(e, "p");
            if (!pv) {
                fail(p + ".p", "missing");
            }
            LossChannel ch{as_number(*pv, p + ".p"), {}};
            if (!(ch.p > 0.0 && ch.p <= 1.0)) {
                fail(p + ".p", "must lie in (0, 1]");
            }
            if (const Json *mv = find(e, "modes")) {
                if (!mv->is_array()) {
                    fail(p + ".modes", "expected an array of mode indices");
                }
                for (std::size_t k = 0; k < mv->size(); ++k) {
                    ch.modes.push_back(as_int((*mv)[k], p + ".modes[" + std::to_string(k) + "]", 0, 1 << 20));
                }
            }
            s.losses.push_back(std::move(ch));
        }
    }
    if (const Json *v = find(doc, "measurement")) {
        s.measurement = parse_measurement(*v, "measurement");
    }
    if (const Json *v = find(doc, "efficiency")) {
        require_object(*v, "efficiency");
        check_keys(*v, "efficiency", {"bisection_tol"});
        if (const Json *b = find(*v, "bisection_tol")) {
            s.bisection_tol = as_number(*b, "efficiency.bisection_tol");
        }
    }
    if (const Json *v = find(doc, "search")) {
        s.search = parse_search(*v, "search");
    }
    if (const Json *v = find(doc, "verify")) {
        require_object(*v, "verify");
        check_keys(*v, "verify", {"target", "trials"});
        if (const Json *t = find(*v, "target")) {
            s.verify.target = as_string(*t, "verify.target");
        }
        if (const Json *t = find(*v, "trials")) {
            s.verify.trials = as_int(*t, "verify.trials", 1, 1 << 24);
        }
    }
    if (const Json *v = find(doc, "output")) {
        require_object(*v, "output");
        check_keys(*v, "output", {"path", "format"});
        if (const Json *p = find(*v, "path")) {
            s.output_path = as_string(*p, "output.path");
        }
        if (const Json *f = find(*v, "format")) {
            const std::string fmt = as_string(*f, "output.format");
            if (fmt == "json") {
                s.format = Format::Json;
            } else if (fmt == "csv") {
                s.format = Format::Csv;
            } else {
                fail("output.format", "expected json or csv");
            }
        }
    }

    // Command-specific requirements.
    switch (command) {
        case Command::Simulate:
        case Command::Efficiency:
            if (s.sources.empty()) {
                fail("sources", "at least one source is required for " + command_name(command));
            }
            break;
        case Command::NogoSearch:
            if (!find(doc, "search")) {
                fail("search", "missing; nogo-search needs a search section");
            }
            break;
        case Command::Verify:
            break;
    }
    return s;
}

Json tolerances_to_json(const Tolerances &tol) {
    Json j;
    j["hermiticity"] = tol.hermiticity;
    j["trace"] = tol.trace;
    j["psd"] = tol.psd;
    j["tail"] = tol.tail;
    j["unitarity"] = tol.unitarity;
    j["herald_floor"] = tol.herald_floor;
    j["feasibility"] = tol.feasibility;
    j["conditioning"] = tol.conditioning;
    j["efficiency_floor"] = tol.efficiency_floor;
    j["bisection"] = tol.bisection;
    j["max_dimension"] = tol.max_dimension;
    return j;
}

}  // namespace pel::app
