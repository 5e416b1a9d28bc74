#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bpslab/spec.hpp"

namespace bpslab {

// Named presets: "one", "parity", "example1", "example2", "qperiodic:<q>".
MultiplicativeSpec preset(std::string_view name);
std::vector<std::string> preset_names();

// Spec file: {"exceptional":[{"p":3,"values":[[2,0],[-15,0],[0,0]]}]}
// values[k-1] = f(p^k) as [re, im]. Parse failures report line and column.
MultiplicativeSpec parse_spec(std::string_view json_text);
MultiplicativeSpec load_spec_file(const std::string& path);

std::string to_json(const MultiplicativeSpec& spec);

}  // namespace bpslab
