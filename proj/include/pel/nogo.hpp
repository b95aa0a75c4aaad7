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

#ifndef PEL_NOGO_HPP
#define PEL_NOGO_HPP

// Search over heralded linear-optical schemes for the largest single-photon
// probability X of one surviving output mode.
//
// Modes 0..Ms-1 carry the single-photon sources, modes Ms..M-1 carry coherent
// ancillas. Parameters are the M^2 mesh parameters (see interferometer.hpp)
// followed by (Re, Im) of each ancilla amplitude. In the search, mode 0
// survives and every other mode is counted; a pattern is the vector of counts
// on modes 1..M-1.
//
// The search is a probe, not a proof: it looks for counterexamples to the
// bounds X <= p_max (no multiphoton output) and X <= max(p_max, 1/2).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pel/density_matrix.hpp"
#include "pel/measurement.hpp"

namespace pel {

enum class ConstraintKind { NoMultiphoton, Unconstrained };

struct Constraint {
    ConstraintKind kind = ConstraintKind::Unconstrained;
    /// Largest multiphoton weight accepted under NoMultiphoton.
    double epsilon = 1e-9;
};

std::string constraint_name(ConstraintKind kind);

struct SearchSpace {
    std::vector<double> source_efficiencies;
    int num_coherent = 1;
    /// Bound on |alpha| of each ancilla.
    double alpha_max = 1.5;
    /// Loss q applied to every input before the interferometer: sources
    /// become ISPS(q p) and ancilla amplitudes scale by sqrt(q).
    double attenuation = 1.0;
    /// Joint photon-number cutoff; 0 picks one from the ancilla tail.
    int cutoff = 0;
    int max_patterns = 200;
    Constraint constraint;

    int num_sources() const {
        return static_cast<int>(source_efficiencies.size());
    }
    int modes() const {
        return num_sources() + num_coherent;
    }
    std::size_t param_count() const;
    double p_max() const;
    /// p_max under NoMultiphoton, max(p_max, 1/2) otherwise.
    double bound() const;
    /// Throws Validation on an ill-formed space.
    void validate() const;
};

/// Cutoff used for the space: the explicit one, or num_sources plus enough
/// photons that the ancilla tail stays below 1e-13. Throws Capacity when the
/// joint basis would exceed tol.max_dimension.
int resolve_cutoff(const SearchSpace &space, const Tolerances &tol = default_tolerances());

struct SchemeOutcome {
    double X = 0.0;
    double herald_probability = 0.0;
    double multiphoton_weight = 0.0;
    bool constraint_satisfied = true;
};

/// Literal pipeline: product input from make_state and tensor, interferometer
/// lift, conditioning on `pattern`, then X and multiphoton weight of the
/// survivor. The pattern must leave exactly one mode.
SchemeOutcome evaluate_scheme(const SearchSpace &space, std::span<const double> params,
                              const MeasurementPattern &pattern, const Tolerances &tol = default_tolerances());

/// Counts on modes 1..M-1 as a pattern with mode 0 surviving.
MeasurementPattern counts_to_pattern(std::span<const int> counts);

struct PatternScore {
    std::vector<int> counts;
    SchemeOutcome outcome;
};

/// Fast evaluation of every pattern at once. Each source configuration
/// s in {0,1}^Ms is a pure state prod_{j in s} (sum_k U_kj a_k^H) |beta>,
/// with |beta> the coherent product state U alpha; pattern probabilities
/// accumulate over the ensemble. Amplitudes with total photon number within
/// the cutoff are exact, and the truncated tail t bounds the error of every
/// pattern's X and multiphoton weight by t / herald probability.
class SchemeEvaluator {
   public:
    SchemeEvaluator(const SearchSpace &space, const Tolerances &tol = default_tolerances());

    const SearchSpace &space() const noexcept {
        return space_;
    }
    int cutoff() const noexcept {
        return basis_->cutoff();
    }
    /// Upper bound on the probability lost to truncation for the given ancilla amplitudes.
    double truncation_tail(std::span<const double> params) const;

    /// Best admissible pattern among the max_patterns most probable ones:
    /// herald probability at least the herald floor, truncation uncertainty
    /// at most 1e-9, and the constraint. Empty when none qualifies.
    std::optional<PatternScore> best_pattern(std::span<const double> params) const;

    struct Scan {
        std::optional<PatternScore> best;
        /// Smallest multiphoton weight among the certified candidates, or
        /// infinity when there is none; steers the search toward the
        /// constraint when no pattern satisfies it.
        double min_multiphoton_weight;
    };
    Scan scan(std::span<const double> params) const;

    /// Outcome of one pattern, same numbers as best_pattern uses.
    SchemeOutcome evaluate(std::span<const double> params, std::span<const int> counts) const;

    /// Herald probability, P(n0 = 0) and P(n0 = 1) per pattern index.
    struct Tallies {
        std::vector<double> herald;
        std::vector<double> zero;
        std::vector<double> one;
    };
    Tallies tallies(std::span<const double> params) const;

   private:
    SearchSpace space_;
    Tolerances tol_;
    BasisPtr basis_;
    BasisPtr pattern_basis_;
    std::vector<std::uint32_t> pattern_of_;
    std::vector<std::uint8_t> survivor_of_;
};

struct SearchReport {
    double best_X = 0.0;
    std::vector<double> best_params;
    std::vector<int> best_pattern;
    double herald_probability = 0.0;
    double multiphoton_weight = 0.0;
    double bound = 0.0;
    bool violated = false;
    bool found = false;
    int cutoff = 0;
    double truncation_tail = 0.0;
    std::uint64_t evaluations = 0;
    int restarts = 0;
};

struct SearchOptions {
    std::uint64_t budget = 20000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Evaluations per random restart.
    std::uint64_t restart_budget = 400;
};

/// Random restarts refined by coordinate-wise golden-section search. Restart
/// i draws from its own stream seeded by (seed, i) and the best-of merge
/// prefers the lower restart index on ties, so the report depends on the seed
/// and budget but not on the thread count.
SearchReport maximize_X(const SearchSpace &space, const SearchOptions &options,
                        const Tolerances &tol = default_tolerances());

}  // namespace pel

#endif
