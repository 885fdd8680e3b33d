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

// Run a named preset through the harness and write the table as CSV.

#include <iostream>

#include "cvqss/harness/commands.hpp"
#include "cvqss/harness/presets.hpp"

using namespace cvqss::harness;

int main(int argc, char** argv) {
    const std::string name = argc > 1 ? argv[1] : "fig3b";
    auto res = command_run(parse_config_text(find_preset(name).text));
    write_csv(std::cout, res.table);
    if (!res.message.empty()) std::cerr << res.message << '\n';
    return res.exit_code;
}
