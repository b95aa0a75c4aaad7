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

#ifndef PEL_APP_RUN_HPP
#define PEL_APP_RUN_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "pel/error.hpp"

namespace pel::app {

const char *version();

struct RunOptions {
    std::string command;
    /// verify only: commutation or bernoulli.
    std::optional<std::string> target;
    std::optional<std::string> spec_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> cutoff;
    std::optional<unsigned> threads;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> trials;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation = 2;
inline constexpr int numerical = 3;
inline constexpr int violation = 4;
}  // namespace exit_code

int exit_code_for(ErrorKind kind);

struct RunOutput {
    int exit_code = exit_code::ok;
    std::string document;
    /// Where the document goes; empty means standard output.
    std::string path;
};

/// Executes a command and renders its result document. Throws Error.
RunOutput execute(const RunOptions &options);

/// execute() plus output and error reporting; returns the process exit code.
int run(const RunOptions &options, std::ostream &out, std::ostream &err);

}  // namespace pel::app

#endif
