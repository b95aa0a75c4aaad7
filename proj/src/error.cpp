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

#include "pel/error.hpp"

namespace pel {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation:
            return "validation";
        case ErrorKind::Contract:
            return "contract";
        case ErrorKind::Positivity:
            return "positivity";
        case ErrorKind::Capacity:
            return "capacity";
        case ErrorKind::Truncation:
            return "truncation";
        case ErrorKind::Conditioning:
            return "conditioning";
        case ErrorKind::HeraldImpossible:
            return "herald-impossible";
        case ErrorKind::NonMonotone:
            return "non-monotone";
        case ErrorKind::Io:
            return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + " error: " + message), kind_(kind) {
}

}  // namespace pel
