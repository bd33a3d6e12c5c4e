#pragma once

#include <string>
#include <vector>

namespace bzx {

// bundled scenario files (JSON text); names: mo8-smash-Meta, ko-smash-Meta,
// theorem21 (alias of mo8-smash-Meta)
std::string builtin_scenario_json(const std::string& name);
std::vector<std::string> builtin_scenario_names();

}  // namespace bzx
