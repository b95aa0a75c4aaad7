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

// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>
#include <vector>

#include "pel/channels.hpp"
#include "pel/efficiency.hpp"
#include "pel/linalg.hpp"
#include "pel/nogo.hpp"
#include "pel/verification.hpp"

namespace {

using namespace pel;
namespace fs = std::filesystem;

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string sci(double v) {
    return fmt("%.3e", v);
}

DensityMatrix ginibre(const BasisPtr &basis, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    const std::size_t d = basis->dimension();
    CMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(i, j) = cplx(g(rng), g(rng));
        }
    }
    CMatrix rho = multiply_adjoint(m, m);
    rho *= cplx(1.0 / rho.trace().real());
    for (std::size_t i = 0; i < d; ++i) {
        rho(i, i) = rho(i, i).real();
        for (std::size_t j = 0; j < i; ++j) {
            rho(i, j) = std::conj(rho(j, i));
        }
    }
    return DensityMatrix(basis, std::move(rho));
}

DensityMatrix bounded(int support, int cutoff, std::mt19937_64 &rng) {
    const auto small = ginibre(make_basis(1, support), rng);
    const auto d = static_cast<std::size_t>(cutoff + 1);
    CMatrix m(d, d);
    for (std::size_t i = 0; i < small.dimension(); ++i) {
        for (std::size_t j = 0; j < small.dimension(); ++j) {
            m(i, j) = small(i, j);
        }
    }
    return DensityMatrix(make_basis(1, cutoff), std::move(m));
}

Verdict commutation() {
    const auto r = verify_commutation(42, 100, 6);
    const bool pass = r.trials == 100 && r.max_deviation < 1e-9 && r.unequal_loss_deviation > 1e-3;
    return {pass, "trials=" + std::to_string(r.trials) + " max_trace_distance=" + sci(r.max_deviation) +
                      " unequal_loss=" + sci(r.unequal_loss_deviation)};
}

Verdict channel_oracles() {
    std::mt19937_64 rng(2024);
    double lindblad = 0.0, completeness = 0.0, semigroup = 0.0, round_trip = 0.0;
    bool warned = false;
    for (double p : {0.3, 0.6, 0.9}) {
        for (int n = 0; n <= 8; ++n) {
            completeness = std::max(completeness, kraus_completeness_error(kraus_operators(p, n)));
        }
    }
    std::uniform_real_distribution<double> u(0.3, 1.0);
    for (int t = 0; t < 30; ++t) {
        const auto basis = t % 2 == 0 ? make_basis(1, 6) : make_basis(2, 3);
        const auto rho = ginibre(basis, rng);
        for (double p : {0.3, 0.6, 0.9}) {
            const auto k = apply_loss(rho, {p, {}});
            const auto l = apply_loss_lindblad(rho, LindbladParams::for_transmissivity(p, basis->cutoff()));
            warned = warned || l.accuracy_warning;
            lindblad = std::max(lindblad, max_abs_diff(k.elements(), l.state.elements()));
            const double q = u(rng);
            const auto seq = apply_loss(apply_loss(rho, {q, {}}), {p, {}});
            semigroup = std::max(semigroup, max_abs_diff(seq.elements(), apply_loss(rho, {p * q, {}}).elements()));
        }
        const auto b = bounded(4, 6, rng);
        const double q = u(rng);
        round_trip = std::max(round_trip, max_abs_diff(invert_loss(apply_loss(b, {q, {}}), {q, {}}), b.elements()));
    }
    const bool pass = lindblad < 1e-7 && !warned && completeness < 1e-12 && semigroup < 1e-10 && round_trip < 1e-9;
    return {pass, "kraus_vs_lindblad=" + sci(lindblad) + " completeness=" + sci(completeness) +
                      " semigroup=" + sci(semigroup) + " round_trip=" + sci(round_trip)};
}

Verdict efficiency_correctness() {
    double isps = 0.0;
    for (int k = 1; k <= 9; ++k) {
        const double p = 0.1 * k;
        isps = std::max(isps, std::abs(generalized_efficiency(make_state(Isps{p}, 4)).value - p));
    }
    const double fock2 = std::abs(generalized_efficiency(make_state(FockNumber{2}, 4)).value - 1.0);

    const auto coh = generalized_efficiency(make_state(Coherent{0.8}, 12));
    const bool coherent_ok = coh.value <= coh.floor + 1e-8 && !coh.attained;

    double qubit = 0.0;
    int points = 0;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double qmax = std::sqrt(p * (1.0 - p));
        for (double f : {0.0, 0.5, 0.9, 1.0}) {
            const cplx q = std::polar(f * qmax, 0.4 * points++);
            const double solver = generalized_efficiency(make_state(PartialQubit{p, q}, 2)).value;
            qubit = std::max(qubit, std::abs(solver - qubit_efficiency_formula(p, q)));
        }
    }
    const bool pass = isps < 1e-6 && fock2 < 1e-6 && coherent_ok && qubit < 1e-5 && points == 20;
    std::string detail = "isps_err=" + sci(isps) + " fock2_err=" + sci(fock2) + " qubit_grid_err=" + sci(qubit) +
                         " coherent(0.8,cutoff 12): value=" + fmt("%.6f", coh.value) + " floor=" +
                         fmt("%.6f", coh.floor) + " attained=" + (coh.attained ? "true" : "false") +
                         (coherent_ok ? "" : " [coherent sub-check fails]");
    return {pass, detail};
}

unsigned threads() {
    return std::max(1u, std::thread::hardware_concurrency());
}

Verdict nogo_grid(ConstraintKind kind) {
    bool pass = true;
    std::ostringstream os;
    for (double p : {0.2, 0.4, 0.6, 0.8}) {
        for (int sources : {2, 3}) {
            SearchSpace s;
            s.source_efficiencies = std::vector<double>(static_cast<std::size_t>(sources), p);
            s.constraint.kind = kind;
            SearchOptions o;
            o.budget = 20000;
            o.seed = 1000 + static_cast<std::uint64_t>(p * 10) * 10 + sources;
            o.threads = threads();
            const auto r = maximize_X(s, o);
            const double bound = kind == ConstraintKind::NoMultiphoton ? p : std::max(p, 0.5);
            const bool ok = r.found && r.best_X <= bound + 1e-6 && !r.violated && r.evaluations == 20000;
            pass = pass && ok;
            os << " [p=" << p << " Ms=" << sources << " X=" << fmt("%.6f", r.best_X) << (ok ? "" : " !") << "]";
        }
    }
    return {pass, "cells:" + os.str()};
}

// Measured once for this seed and budget; a change means the search changed.
constexpr double kPinnedTightnessX = 0.39453637450453344;

Verdict tightness() {
    SearchSpace s;
    s.source_efficiencies = {0.3, 0.3};
    SearchOptions o;
    o.budget = 50000;
    o.seed = 30;
    o.threads = threads();
    const auto r = maximize_X(s, o);
    const bool pinned = std::abs(r.best_X - kPinnedTightnessX) <= 1e-9;
    const bool pass = r.best_X > 0.3 && r.best_X <= 0.5 + 1e-6 && !r.violated && pinned;
    return {pass, "best_X=" + fmt("%.17g", r.best_X) + " herald_prob=" + sci(r.herald_probability) +
                      " multiphoton=" + sci(r.multiphoton_weight) + " pinned=" + fmt("%.17g", kPinnedTightnessX)};
}

Verdict bernoulli() {
    const auto r = verify_bernoulli_consequence(7, 50, 6);
    const std::vector<double> one = {0.0, 1.0}, two = {0.0, 0.0, 1.0};
    const bool examples = std::abs(bernoulli_diagonal(one, 0.6)[1] - 0.6) < 1e-15 &&
                          std::abs(bernoulli_diagonal(two, 0.5)[1] - 0.5) < 1e-15 &&
                          std::abs(bernoulli_diagonal(two, 0.4)[1] - 0.48) < 1e-15;
    const bool pass = r.passed && r.trials == 50 && r.max_proportionality_error < 1e-10 && examples;
    return {pass, "trials=" + std::to_string(r.trials) + " proportionality_err=" + sci(r.max_proportionality_error) +
                      " bound_excess=" + sci(r.max_bound_excess)};
}

Verdict loss_covariance() {
    std::mt19937_64 rng(88);
    const double tol = 1e-8;
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const auto rho = bounded(1 + t % 4, 6, rng);
        const double e = generalized_efficiency(rho, tol).value;
        for (double q : {0.5, 0.8}) {
            const double eq = generalized_efficiency(apply_loss(rho, {q, {}}), tol).value;
            worst = std::max(worst, std::abs(eq - q * e));
        }
    }
    return {worst <= 2 * tol, "max|E(E_q rho) - q E(rho)|=" + sci(worst)};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int spawn(const std::string &args) {
    const std::string cmd = std::string(PEL_BINARY) + " " + args;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict determinism() {
    const fs::path dir = fs::temp_directory_path() / ("pel_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path spec = dir / "spec.json";
    std::ofstream(spec) << R"({"seed": 17, "search": {"p_max": [0.3, 0.6], "num_sources": 2, "budget": 2000}})";
    bool pass = true;
    std::string detail;
    const std::string base = "nogo-search --spec " + spec.string();
    const int a = spawn(base + " --threads 1 --out " + (dir / "a.json").string());
    const int b = spawn(base + " --threads 1 --out " + (dir / "b.json").string());
    const int c = spawn(base + " --threads 4 --out " + (dir / "c.json").string());
    pass = a == 0 && b == 0 && c == 0;
    const std::string ja = slurp(dir / "a.json"), jb = slurp(dir / "b.json"), jc = slurp(dir / "c.json");
    pass = pass && !ja.empty() && ja == jb && ja == jc;
    detail = "exit=" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
             " bytes=" + std::to_string(ja.size()) + " repeat_identical=" + (ja == jb ? "yes" : "no") +
             " threads_1_vs_4_identical=" + (ja == jc ? "yes" : "no");
    fs::remove_all(dir);
    return {pass, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"commutation of equal loss with interferometers", commutation},
        {"channel oracles", channel_oracles},
        {"efficiency correctness", efficiency_correctness},
        {"no-go bound without multiphoton output", [] { return nogo_grid(ConstraintKind::NoMultiphoton); }},
        {"no-go bound unconstrained", [] { return nogo_grid(ConstraintKind::Unconstrained); }},
        {"improvement below one half", tightness},
        {"Bernoulli consequences", bernoulli},
        {"loss covariance of efficiency", loss_covariance},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += v.pass ? 0 : 1;
        std::printf("criterion %zu %s: %s (%s; %.1fs)\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                    v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
