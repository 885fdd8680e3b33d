// Copyright 2026 The cvqss Authors
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

#pragma once

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace cvqss::harness {

using Cell = std::variant<double, std::string>;

/// A result table plus free-form summary fields.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

/// 9 significant digits; "nan" for missing values.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (x == 0.0) return "0";
    std::ostringstream os;
    os.precision(9);
    os << x;
    return os.str();
}

inline nlohmann::ordered_json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::stod(format_number(x));
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i]);
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "");
            if (const auto* d = std::get_if<double>(&row[i])) os << format_number(*d);
            else os << csv_escape(std::get<std::string>(row[i]));
        }
        os << "\n";
    }
}

inline void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json j;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        auto jr = nlohmann::ordered_json::array();
        for (const auto& c : row) {
            if (const auto* d = std::get_if<double>(&c)) jr.push_back(json_number(*d));
            else jr.push_back(std::get<std::string>(c));
        }
        j["rows"].push_back(std::move(jr));
    }
    j["summary"] = t.summary;
    os << j.dump(2) << "\n";
}

inline void write_table(std::ostream& os, const Table& t, const std::string& format) {
    if (format == "json") write_json(os, t);
    else write_csv(os, t);
}

}  // namespace cvqss::harness
