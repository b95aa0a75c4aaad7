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
#include <map>
#include <sstream>

#include "pel/error.hpp"
#include "pel/measurement.hpp"

namespace pel {
namespace {

void require_single_mode(const DensityMatrix &rho, const char *what) {
    if (rho.modes() != 1) {
        throw Error(ErrorKind::Validation, std::string(what) + " needs a single-mode state");
    }
}

// Basis indices whose counted modes match the pattern.
std::vector<std::size_t> matching(const FockBasis &basis, const MeasurementPattern &pattern) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        bool ok = true;
        for (const Detection &d : pattern.detections) {
            if (d.count != MeasurementPattern::traced_out && basis.photons(i, d.mode) != d.count) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace

std::vector<int> MeasurementPattern::surviving_modes(int total_modes) const {
    std::vector<int> out;
    for (int k = 0; k < total_modes; ++k) {
        const bool hit = std::any_of(detections.begin(), detections.end(), [k](const Detection &d) {
            return d.mode == k;
        });
        if (!hit) {
            out.push_back(k);
        }
    }
    return out;
}

int MeasurementPattern::detected_photons() const {
    int total = 0;
    for (const Detection &d : detections) {
        if (d.count != traced_out) {
            total += d.count;
        }
    }
    return total;
}

std::string MeasurementPattern::describe() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < detections.size(); ++i) {
        os << (i ? ", " : "") << "mode " << detections[i].mode << ": ";
        if (detections[i].count == traced_out) {
            os << "traced";
        } else {
            os << detections[i].count;
        }
    }
    os << "}";
    return os.str();
}

void MeasurementPattern::validate(int total_modes) const {
    std::vector<bool> seen(static_cast<std::size_t>(std::max(total_modes, 0)), false);
    for (const Detection &d : detections) {
        if (d.mode < 0 || d.mode >= total_modes) {
            throw Error(ErrorKind::Validation, "measurement mode " + std::to_string(d.mode) + " is outside [0, " +
                                                   std::to_string(total_modes) + ")");
        }
        if (seen[static_cast<std::size_t>(d.mode)]) {
            throw Error(ErrorKind::Validation, "measurement lists mode " + std::to_string(d.mode) + " twice");
        }
        seen[static_cast<std::size_t>(d.mode)] = true;
        if (d.count < 0 && d.count != traced_out) {
            throw Error(ErrorKind::Validation, "negative photon count on mode " + std::to_string(d.mode));
        }
    }
    if (surviving_modes(total_modes).empty()) {
        throw Error(ErrorKind::Validation, "measurement must leave at least one mode undetected");
    }
}

double outcome_probability(const DensityMatrix &rho, const MeasurementPattern &pattern) {
    pattern.validate(rho.modes());
    double p = 0.0;
    for (std::size_t i : matching(rho.basis(), pattern)) {
        p += rho(i, i).real();
    }
    return p;
}

Conditioned condition(const DensityMatrix &rho, const MeasurementPattern &pattern, const Tolerances &tol) {
    pattern.validate(rho.modes());
    const FockBasis &basis = rho.basis();
    const auto keep = pattern.surviving_modes(rho.modes());
    std::vector<int> traced;
    for (const Detection &d : pattern.detections) {
        if (d.count == MeasurementPattern::traced_out) {
            traced.push_back(d.mode);
        }
    }
    const int remaining = basis.cutoff() - pattern.detected_photons();
    if (remaining < 0) {
        throw Error(ErrorKind::HeraldImpossible,
                    "pattern " + pattern.describe() + " detects more photons than the basis cutoff holds");
    }
    const BasisPtr out_basis = make_basis(static_cast<int>(keep.size()), remaining);

    // Group matching indices by the occupation of the traced-out modes.
    std::map<std::vector<int>, std::vector<std::pair<std::size_t, std::size_t>>> groups;
    double prob = 0.0;
    std::vector<int> occ(keep.size());
    for (std::size_t i : matching(basis, pattern)) {
        std::vector<int> key(traced.size());
        for (std::size_t t = 0; t < traced.size(); ++t) {
            key[t] = basis.photons(i, traced[t]);
        }
        for (std::size_t k = 0; k < keep.size(); ++k) {
            occ[k] = basis.photons(i, keep[k]);
        }
        groups[key].emplace_back(out_basis->index_of(occ), i);
        prob += rho(i, i).real();
    }
    if (!(prob >= tol.herald_floor)) {
        std::ostringstream os;
        os << "outcome " << pattern.describe() << " has probability " << prob << " below the herald floor "
           << tol.herald_floor;
        throw Error(ErrorKind::HeraldImpossible, os.str());
    }
    const std::size_t d = out_basis->dimension();
    CMatrix out(d, d);
    for (const auto &[key, members] : groups) {
        for (const auto &[oi, fi] : members) {
            for (const auto &[oj, fj] : members) {
                out(oi, oj) += rho(fi, fj);
            }
        }
    }
    out *= cplx(1.0 / prob);
    return {DensityMatrix(out_basis, std::move(out), true, rho.tail_weight()), prob};
}

double single_photon_probability(const DensityMatrix &rho) {
    require_single_mode(rho, "single-photon probability");
    return rho.dimension() > 1 ? rho(1, 1).real() : 0.0;
}

double multiphoton_weight(const DensityMatrix &rho) {
    require_single_mode(rho, "multiphoton weight");
    double w = 0.0;
    for (std::size_t n = 2; n < rho.dimension(); ++n) {
        w += rho(n, n).real();
    }
    return w;
}

}  // namespace pel
