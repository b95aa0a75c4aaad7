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
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "pel/error.hpp"
#include "pel/interferometer.hpp"
#include "pel/nogo.hpp"

namespace pel {
namespace {

constexpr double kNoPattern = -1.0;
constexpr double kViolationSlack = 1e-6;

class Objective {
   public:
    Objective(const SchemeEvaluator &eval, std::uint64_t budget) : eval_(eval), left_(budget) {
    }
    bool exhausted() const {
        return left_ == 0;
    }
    std::uint64_t used() const {
        return used_;
    }
    double operator()(std::span<const double> x) {
        if (left_ == 0) {
            return -std::numeric_limits<double>::infinity();
        }
        --left_;
        ++used_;
        const auto scan = eval_.scan(x);
        if (scan.best) {
            return scan.best->outcome.X;
        }
        // Infeasible points rank by how far they are from the constraint.
        return std::isfinite(scan.min_multiphoton_weight) ? kNoPattern - scan.min_multiphoton_weight
                                                          : 2.0 * kNoPattern;
    }

   private:
    const SchemeEvaluator &eval_;
    std::uint64_t left_;
    std::uint64_t used_ = 0;
};

struct RestartResult {
    double f = -std::numeric_limits<double>::infinity();
    std::vector<double> x;
    std::uint64_t used = 0;
};

struct Coordinate {
    std::size_t index;
    double width;
    /// Index of the other component of an ancilla amplitude, or npos for mesh angles.
    std::size_t partner;
};

std::vector<double> random_point(const SearchSpace &space, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int m = space.modes();
    const auto layout = mesh_layout(m);
    std::vector<double> x(space.param_count(), 0.0);
    for (std::size_t k = 0; k < layout.size(); ++k) {
        x[2 * k] = std::numbers::pi * unit(rng);
        x[2 * k + 1] = 2.0 * std::numbers::pi * unit(rng) - std::numbers::pi;
    }
    // Output phases do not change photon-number statistics and stay at zero.
    const std::size_t off = mesh_param_count(m);
    for (int c = 0; c < space.num_coherent; ++c) {
        const double r = space.alpha_max * std::sqrt(unit(rng));
        const double a = 2.0 * std::numbers::pi * unit(rng);
        x[off + 2 * static_cast<std::size_t>(c)] = r * std::cos(a);
        x[off + 2 * static_cast<std::size_t>(c) + 1] = r * std::sin(a);
    }
    return x;
}

std::vector<Coordinate> coordinates(const SearchSpace &space) {
    const int m = space.modes();
    const auto layout = mesh_layout(m);
    std::vector<Coordinate> out;
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    for (std::size_t k = 0; k < layout.size(); ++k) {
        out.push_back({2 * k, std::numbers::pi / 2, none});
        out.push_back({2 * k + 1, std::numbers::pi, none});
    }
    const std::size_t off = mesh_param_count(m);
    for (int c = 0; c < space.num_coherent; ++c) {
        const std::size_t re = off + 2 * static_cast<std::size_t>(c);
        out.push_back({re, space.alpha_max, re + 1});
        out.push_back({re + 1, space.alpha_max, re});
    }
    return out;
}

// Golden-section maximization of f along one coordinate on [lo, hi] with a
// fixed number of evaluations; x ends at the best point seen if it beats fx.
void golden_line(Objective &f, std::vector<double> &x, double &fx, std::size_t i, double lo, double hi, int evals) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<double> y = x;
    double best_f = fx;
    double best_v = x[i];
    auto eval_at = [&](double v) {
        y[i] = v;
        const double r = f(y);
        if (r > best_f) {
            best_f = r;
            best_v = v;
        }
        return r;
    };
    double a = lo;
    double b = hi;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = eval_at(c);
    double fd = eval_at(d);
    for (int k = 2; k < evals && !f.exhausted(); ++k) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = eval_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = eval_at(d);
        }
    }
    if (best_f > fx) {
        fx = best_f;
        x[i] = best_v;
    }
}

RestartResult run_restart(const SchemeEvaluator &eval, std::uint64_t seed, std::uint64_t index,
                          std::uint64_t budget) {
    const SearchSpace &space = eval.space();
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    Objective f(eval, budget);
    RestartResult res;

    const std::uint64_t samples = std::clamp<std::uint64_t>(budget / 8, 1, 16);
    for (std::uint64_t s = 0; s < samples && !f.exhausted(); ++s) {
        std::vector<double> x = random_point(space, rng);
        const double v = f(x);
        if (v > res.f) {
            res.f = v;
            res.x = std::move(x);
        }
    }
    const auto coords = coordinates(space);
    constexpr int line_evals = 6;
    double shrink = 1.0;
    while (!f.exhausted() && !coords.empty()) {
        for (const Coordinate &c : coords) {
            if (f.exhausted()) {
                break;
            }
            const double w = c.width * shrink;
            double lo = res.x[c.index] - w;
            double hi = res.x[c.index] + w;
            if (c.partner != static_cast<std::size_t>(-1)) {
                const double other = res.x[c.partner];
                const double reach = std::sqrt(std::max(0.0, space.alpha_max * space.alpha_max - other * other));
                lo = std::max(lo, -reach);
                hi = std::min(hi, reach);
                if (!(hi > lo)) {
                    continue;
                }
            }
            golden_line(f, res.x, res.f, c.index, lo, hi, line_evals);
        }
        shrink *= 0.5;
        if (shrink < 1e-7) {
            shrink = 1.0;
        }
    }
    res.used = f.used();
    return res;
}

}  // namespace

SearchReport maximize_X(const SearchSpace &space, const SearchOptions &options, const Tolerances &tol) {
    if (options.budget < 1) {
        throw Error(ErrorKind::Validation, "search budget must be at least 1");
    }
    if (options.restart_budget < 1) {
        throw Error(ErrorKind::Validation, "restart budget must be at least 1");
    }
    const SchemeEvaluator eval(space, tol);
    const std::uint64_t restarts = (options.budget + options.restart_budget - 1) / options.restart_budget;
    std::vector<RestartResult> results(restarts);

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, restarts));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (std::uint64_t i = next++; i < restarts; i = next++) {
            const std::uint64_t b = std::min(options.restart_budget, options.budget - i * options.restart_budget);
            results[i] = run_restart(eval, options.seed, i, b);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    SearchReport rep;
    rep.bound = space.bound();
    rep.cutoff = eval.cutoff();
    rep.restarts = static_cast<int>(restarts);
    const RestartResult *best = nullptr;
    for (const RestartResult &r : results) {
        rep.evaluations += r.used;
        if (!best || r.f > best->f) {
            best = &r;
        }
    }
    if (best && !best->x.empty()) {
        rep.best_params = best->x;
        rep.truncation_tail = eval.truncation_tail(best->x);
        if (const auto p = eval.best_pattern(best->x)) {
            rep.found = true;
            rep.best_X = p->outcome.X;
            rep.best_pattern = p->counts;
            rep.herald_probability = p->outcome.herald_probability;
            rep.multiphoton_weight = p->outcome.multiphoton_weight;
        }
    }
    rep.violated = rep.best_X > rep.bound + kViolationSlack;
    return rep;
}

}  // namespace pel
