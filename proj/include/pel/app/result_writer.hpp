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

#ifndef PEL_APP_RESULT_WRITER_HPP
#define PEL_APP_RESULT_WRITER_HPP

#include <string>
#include <vector>

#include "pel/app/experiment_spec.hpp"

namespace pel::app {

/// JSON text with keys in insertion order, two-space indentation, a trailing
/// newline, and doubles printed with 17 significant digits. Non-finite
/// numbers become null.
std::string to_json_text(const Json &doc);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Comma-separated rows with LF line endings; fields containing commas or
/// quotes are quoted.
std::string to_csv_text(const CsvTable &table);

}  // namespace pel::app

#endif
