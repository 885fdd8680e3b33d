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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cvqss/harness/commands.hpp"
#include "cvqss/harness/presets.hpp"

namespace h = cvqss::harness;

namespace {

struct Options {
    std::string config;
    std::string preset;
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> shots;
};

h::ExperimentConfig load(const Options& o) {
    if (o.config.empty() && o.preset.empty()) throw h::ConfigError("need --config or --preset");
    h::ConfigBuilder b;
    if (!o.preset.empty()) b.merge_text(h::find_preset(o.preset).text);
    if (!o.config.empty()) b.merge_file(o.config);
    if (o.seed) b.set("oracle.seed", std::to_string(*o.seed));
    if (o.shots) b.set("oracle.shots", std::to_string(*o.shots));
    if (!o.format.empty()) b.set("output.format", o.format);
    return b.build();
}

std::string output_path(const Options& o, const h::ExperimentConfig& c, const std::string& command) {
    if (!o.out.empty()) return o.out;
    if (!c.out_path.empty()) return c.out_path;
    if (const char* dir = std::getenv("CVQSS_OUTPUT_DIR"); dir && *dir) {
        std::string file = c.name;
        if (command != "run") file += "-" + command;
        return (std::filesystem::path(dir) / (file + "." + c.format)).string();
    }
    return "-";
}

int execute(const std::string& command, const Options& o) {
    const auto cfg = load(o);
    h::CommandResult res;
    if (command == "run") res = h::command_run(cfg);
    else if (command == "region") res = h::command_region(cfg);
    else res = h::command_oracle(cfg);

    const std::string path = output_path(o, cfg, command);
    if (path == "-") {
        h::write_table(std::cout, res.table, cfg.format);
    } else {
        const auto parent = std::filesystem::path(path).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw h::ConfigError("cannot write '" + path + "'");
        h::write_table(out, res.table, cfg.format);
        std::cerr << "wrote " << path << "\n";
    }
    if (!res.message.empty()) std::cerr << "cvqss: " << res.message << "\n";
    return res.exit_code;
}

int list_presets(const Options& o) {
    if (!o.preset.empty()) {
        std::cout << h::find_preset(o.preset).text;
        return h::kExitOk;
    }
    for (const auto& p : h::presets()) std::cout << p.name << "\t" << p.description << "\n";
    return h::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear Gaussian simulator for (2,3) continuous-variable quantum state sharing"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Config file (key = value lines, or JSON)");
        sub->add_option("--preset", o.preset, "Named preset; --config entries override it");
        sub->add_option("--out", o.out, "Output file, '-' for stdout");
        sub->add_option("--seed", o.seed, "Oracle seed");
        sub->add_option("--shots", o.shots, "Oracle shots");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto* run = app.add_subcommand("run", "Evaluate the configured sweep");
    auto* region = app.add_subcommand("region", "Pareto frontier of the accessible (T, V) region");
    auto* oracle = app.add_subcommand("oracle", "Check every grid point against Monte Carlo samples");
    auto* list = app.add_subcommand("presets", "List presets, or print one with --preset");
    for (auto* sub : {run, region, oracle}) add_common(sub);
    list->add_option("--preset", o.preset, "Preset to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return h::kExitConfig;
    }

    try {
        if (*list) return list_presets(o);
        for (auto* sub : {run, region, oracle})
            if (*sub) return execute(sub->get_name(), o);
    } catch (const h::ConfigError& e) {
        std::cerr << "cvqss: config error: " << e.what() << "\n";
        return h::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "cvqss: " << e.what() << "\n";
        return 1;
    }
    return h::kExitOk;
}
