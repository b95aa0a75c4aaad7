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

#include <cmath>
#include <cstdio>
#include <sstream>

#include "pel/app/result_writer.hpp"

namespace pel::app {
namespace {

void write(const Json &j, std::ostringstream &os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto &[key, value] : j.items()) {
                os << (first ? "" : ",\n") << pad << Json(key).dump() << ": ";
                write(value, os, indent + 2);
                first = false;
            }
            os << "\n" << close << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto &v : j) {
                flat = flat && !v.is_structured();
            }
            os << "[";
            bool first = true;
            for (const auto &v : j) {
                os << (first ? "" : ",") << (flat ? (first ? "" : " ") : "\n" + pad);
                write(v, os, indent + 2);
                first = false;
            }
            os << (flat ? "" : "\n" + close) << "]";
            return;
        }
        case Json::value_t::number_float:
            os << format_double(j.get<double>());
            return;
        default:
            os << j.dump();
            return;
    }
}

std::string quote_csv(const std::string &field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_json_text(const Json &doc) {
    std::ostringstream os;
    write(doc, os, 0);
    os << "\n";
    return os.str();
}

std::string to_csv_text(const CsvTable &table) {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string> &fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            os << (i ? "," : "") << quote_csv(fields[i]);
        }
        os << "\n";
    };
    line(table.header);
    for (const auto &row : table.rows) {
        line(row);
    }
    return os.str();
}

}  // namespace pel::app
