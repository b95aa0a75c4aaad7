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

#ifndef PEL_ERROR_HPP
#define PEL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pel {

enum class ErrorKind {
    Validation,        // malformed input, wrong arity, out-of-domain parameter
    Contract,          // precondition on numerical input violated (e.g. non-Hermitian)
    Positivity,        // requested state would not be positive semidefinite
    Capacity,          // basis dimension or photon number beyond configured limits
    Truncation,        // truncation discarded more weight than the tail tolerance
    Conditioning,      // inverse loss amplification beyond the conditioning bound
    HeraldImpossible,  // conditioning on an outcome below the herald floor
    NonMonotone,       // feasibility verdicts contradicted monotonicity in p
    Io,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

}  // namespace pel

#endif
