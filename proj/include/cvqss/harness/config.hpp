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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvqss/protocols.hpp"
#include "cvqss/units.hpp"

namespace cvqss::harness {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Protocol { mz, pia, two_opa, single_ff, double_ff, adversary_1, adversary_3, summary };

inline const std::map<std::string, Protocol>& protocol_names() {
    static const std::map<std::string, Protocol> names{
        {"mz", Protocol::mz},
        {"pia", Protocol::pia},
        {"two_opa", Protocol::two_opa},
        {"single_ff", Protocol::single_ff},
        {"double_ff", Protocol::double_ff},
        {"adversary_1", Protocol::adversary_1},
        {"adversary_3", Protocol::adversary_3},
        {"summary", Protocol::summary},
    };
    return names;
}

inline std::string to_string(Protocol p) {
    for (const auto& [name, v] : protocol_names())
        if (v == p) return name;
    return "?";
}

/// Inclusive grid; a single step means the lower end only. An explicit list
/// replaces the grid.
struct Range {
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 1;
    std::vector<double> list;

    std::vector<double> values() const {
        if (!list.empty()) return list;
        std::vector<double> xs;
        if (steps == 1) return {from};
        for (std::size_t i = 0; i < steps; ++i)
            xs.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1));
        return xs;
    }
};

enum class SweepAxis { v_sq_db, v_N, R, gain };

inline const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::v_sq_db: return "v_sq_db";
        case SweepAxis::v_N: return "v_N";
        case SweepAxis::R: return "R";
        case SweepAxis::gain: return "gain";
    }
    return "?";
}

/// Everything needed to build one pipeline, plus the sweep around it.
struct ExperimentConfig {
    std::string name = "custom";
    Protocol protocol = Protocol::single_ff;
    ShareChoice player = ShareChoice::player2;

    DealerConfig dealer;
    bool pure_squeezing = true;  // v_anti = 1/v_sq + anti_excess unless v_anti is given
    double anti_excess = 0.0;    // decoherence noise on the anti-squeezed quadratures

    double eta_mz = 1.0;    // mode matching of shares 1 and 2
    double eta_bs = 1.0;    // mode matching at the feed-forward beam splitter
    double eta_lo = 1.0;    // mode matching of the reconstructed beam onto the displacement mirror
    std::optional<double> mirror_R;  // displacement mirror reflectivity; empty: ideal displacement
    double eta_ff = 1.0;    // feed-forward detector efficiency
    double dark_noise = 0.0;  // feed-forward detector electronic noise, QNL units
    double eta_hom = 1.0;   // verification homodyne efficiency (measured, then inferred back)

    double R = 2.0 / 3.0;
    double R1 = 0.5;
    std::optional<double> gain;  // protocol gain; empty: the protocol's unity setting

    std::map<SweepAxis, Range> sweep;

    bool oracle = false;
    std::size_t shots = 1'000'000;
    std::uint64_t seed = 1;

    std::string out_path;
    std::string format = "csv";

    bool classical_dealer() const { return dealer.classical(); }
    void validate() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& text) {
    auto parse_one = [&](const std::string& t) {
        const std::string v = trim(t);
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
            throw ConfigError(key + ": expected a number, got '" + text + "'");
        return x;
    };
    const auto colon = text.find(':');
    if (colon == std::string::npos) return parse_one(text);
    // "50:1" ratio, read as a reflectivity.
    const double r = parse_one(text.substr(0, colon));
    const double t = parse_one(text.substr(colon + 1));
    if (!(r >= 0.0) || !(t >= 0.0) || !(r + t > 0.0)) throw ConfigError(key + ": bad ratio '" + text + "'");
    return ratio_to_reflectivity(r, t);
}

inline std::size_t parse_count(const std::string& key, const std::string& text) {
    const double x = parse_number(key, text);
    if (!(x >= 1.0) || x != std::floor(x) || x > 1e9) throw ConfigError(key + ": expected a positive integer");
    return static_cast<std::size_t>(x);
}

inline bool parse_bool(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key + ": expected a boolean");
}

}  // namespace detail

/// Collects raw key/value pairs, then resolves them into an ExperimentConfig.
class ConfigBuilder {
  public:
    void set(const std::string& key, const std::string& value) {
        if (key.empty()) throw ConfigError("empty key");
        values_[key] = value;
    }

    void merge_text(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
            set(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
        }
    }

    void merge_json(const nlohmann::json& j, const std::string& prefix = "") {
        if (!j.is_object()) throw ConfigError("JSON config must be an object");
        for (const auto& [k, v] : j.items()) {
            const std::string key = prefix.empty() ? k : prefix + "." + k;
            if (v.is_object()) {
                merge_json(v, key);
            } else if (v.is_string()) {
                set(key, v.get<std::string>());
            } else if (v.is_boolean()) {
                set(key, v.get<bool>() ? "true" : "false");
            } else if (v.is_number()) {
                set(key, number_text(v, key));
            } else if (v.is_array()) {
                std::string joined;
                for (const auto& x : v) joined += (joined.empty() ? "" : ",") + number_text(x, key);
                set(key, joined);
            } else {
                throw ConfigError(key + ": unsupported JSON value");
            }
        }
    }

    void merge_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string text = buf.str();
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            try {
                merge_json(nlohmann::json::parse(text));
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(path + ": " + e.what());
            }
        } else {
            merge_text(text);
        }
    }

    ExperimentConfig build() const;

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    static std::string number_text(const nlohmann::json& v, const std::string& key) {
        if (!v.is_number()) throw ConfigError(key + ": expected a number");
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }

    std::map<std::string, std::string> values_;
};

inline ExperimentConfig ConfigBuilder::build() const {
    ExperimentConfig c;
    auto v = values_;
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = v.find(key);
        if (it == v.end()) return std::nullopt;
        std::string s = it->second;
        v.erase(it);
        return s;
    };
    auto number = [&](const std::string& key) -> std::optional<double> {
        if (auto s = take(key)) return detail::parse_number(key, *s);
        return std::nullopt;
    };
    // A field given either linearly or in dB (10 log10 relative to the QNL).
    auto linear_or_db = [&](const std::string& key) -> std::optional<double> {
        auto lin = number(key);
        auto db = number(key + "_db");
        if (lin && db) throw ConfigError(key + " and " + key + "_db are mutually exclusive");
        if (db) return db_to_linear(*db);
        return lin;
    };

    if (auto s = take("name")) c.name = *s;
    if (auto s = take("protocol")) {
        auto it = protocol_names().find(*s);
        if (it == protocol_names().end()) throw ConfigError("unknown protocol '" + *s + "'");
        c.protocol = it->second;
    }
    if (auto p = number("player")) {
        if (*p == 1.0) c.player = ShareChoice::player1;
        else if (*p == 2.0) c.player = ShareChoice::player2;
        else throw ConfigError("player: expected 1 or 2 (the partner of player 3)");
    }

    if (auto x = linear_or_db("dealer.v_sq")) c.dealer.v_sq = *x;
    if (auto x = linear_or_db("dealer.v_anti")) {
        c.dealer.v_anti = *x;
        c.pure_squeezing = false;
    }
    if (auto x = linear_or_db("dealer.anti_excess")) {
        if (!c.pure_squeezing) throw ConfigError("dealer.anti_excess and dealer.v_anti are mutually exclusive");
        if (!(*x >= 0.0)) throw ConfigError("dealer.anti_excess must be >= 0");
        c.anti_excess = *x;
    }
    if (auto x = linear_or_db("dealer.v_N")) c.dealer.v_noise = *x;
    if (auto x = number("dealer.secret_plus")) c.dealer.secret_plus = *x;
    if (auto x = number("dealer.secret_minus")) c.dealer.secret_minus = *x;
    if (auto x = number("dealer.eta")) c.dealer.eta_encode = *x;
    if (c.pure_squeezing) c.dealer.v_anti = 1.0 / c.dealer.v_sq + c.anti_excess;

    if (auto x = number("optics.eta_mz")) c.eta_mz = *x;
    if (auto x = number("optics.eta_bs")) c.eta_bs = *x;
    if (auto x = number("optics.eta_lo")) c.eta_lo = *x;
    if (auto x = number("optics.mirror")) c.mirror_R = *x;
    if (auto x = number("optics.eta_ff")) c.eta_ff = *x;
    if (auto x = linear_or_db("optics.dark")) c.dark_noise = *x;
    if (auto x = number("optics.eta_hom")) c.eta_hom = *x;

    if (auto x = number("protocol.R")) c.R = *x;
    if (auto x = number("protocol.R1")) c.R1 = *x;
    if (auto x = number("protocol.gain")) c.gain = *x;

    for (auto axis : {SweepAxis::v_sq_db, SweepAxis::v_N, SweepAxis::R, SweepAxis::gain}) {
        const std::string base = std::string("sweep.") + to_string(axis);
        auto from = number(base + ".from");
        auto to = number(base + ".to");
        auto steps = take(base + ".steps");
        if (auto list = take(base + ".values")) {
            if (from || to || steps) throw ConfigError(base + ".values excludes .from/.to/.steps");
            Range r;
            std::istringstream in(*list);
            std::string item;
            while (std::getline(in, item, ',')) r.list.push_back(detail::parse_number(base + ".values", item));
            if (r.list.empty()) throw ConfigError(base + ".values is empty");
            c.sweep[axis] = r;
            continue;
        }
        if (!from && !to && !steps) continue;
        if (!from || !to) throw ConfigError(base + ": needs both .from and .to");
        Range r{*from, *to, steps ? detail::parse_count(base + ".steps", *steps) : 41, {}};
        if (r.steps == 1 && r.from != r.to) throw ConfigError(base + ": one step needs from == to");
        c.sweep[axis] = r;
    }

    if (auto s = take("oracle.enabled")) c.oracle = detail::parse_bool("oracle.enabled", *s);
    if (auto s = take("oracle.shots")) c.shots = detail::parse_count("oracle.shots", *s);
    if (auto s = take("oracle.seed")) {
        const double x = detail::parse_number("oracle.seed", *s);
        if (x < 0 || x != std::floor(x)) throw ConfigError("oracle.seed: expected a non-negative integer");
        c.seed = static_cast<std::uint64_t>(x);
    }
    if (auto s = take("output.path")) c.out_path = *s;
    if (auto s = take("output.format")) c.format = *s;

    if (!v.empty()) throw ConfigError("unknown key '" + v.begin()->first + "'");
    c.validate();
    return c;
}

inline void ExperimentConfig::validate() const {
    auto unit = [](double x, const char* what, bool allow_zero = false) {
        if (!(allow_zero ? x >= 0.0 : x > 0.0) || x > 1.0)
            throw ConfigError(std::string(what) + " must lie in " + (allow_zero ? "[0, 1]" : "(0, 1]"));
    };
    try {
        dealer.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("dealer: ") + e.what());
    }
    unit(eta_mz, "optics.eta_mz");
    unit(eta_bs, "optics.eta_bs");
    unit(eta_lo, "optics.eta_lo");
    unit(eta_ff, "optics.eta_ff");
    unit(eta_hom, "optics.eta_hom");
    if (mirror_R && !(*mirror_R > 0.0 && *mirror_R < 1.0)) throw ConfigError("optics.mirror must lie in (0, 1)");
    if (eta_lo < 1.0 && !mirror_R) throw ConfigError("optics.eta_lo needs optics.mirror");
    if (!(dark_noise >= 0.0)) throw ConfigError("optics.dark must be >= 0");
    unit(R, "protocol.R", true);
    unit(R1, "protocol.R1", true);
    if (shots < 10'000) throw ConfigError("oracle.shots must be at least 10000");
    if (format != "csv" && format != "json") throw ConfigError("output.format must be csv or json");
    for (const auto& [axis, r] : sweep) {
        for (double x : r.values()) {
            if (!std::isfinite(x)) throw ConfigError("sweep values must be finite");
            if (axis == SweepAxis::R && (x < 0.0 || x > 1.0)) throw ConfigError("sweep.R must stay within [0, 1]");
            if (axis == SweepAxis::v_N && x < 0.0) throw ConfigError("sweep.v_N must be >= 0");
            if (axis == SweepAxis::v_sq_db && x > 0.0) throw ConfigError("sweep.v_sq_db must be <= 0");
        }
    }
    if (sweep.count(SweepAxis::v_sq_db) && !pure_squeezing)
        throw ConfigError("sweep.v_sq_db needs v_anti derived from v_sq (drop dealer.v_anti)");
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    ConfigBuilder b;
    b.merge_text(text);
    return b.build();
}

}  // namespace cvqss::harness
