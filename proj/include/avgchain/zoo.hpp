#pragma once

#include <string>
#include <vector>

#include "avgchain/system.hpp"

namespace avgchain {

// Built-in systems by name. Accepted spellings: colon-separated parameters
// ("mod2k:3", "tent:8:true-map") or call syntax ("mod2k(3)").
MetricSystem zoo(const std::string& name);

std::vector<std::string> zoo_families();       // name templates
std::vector<std::string> zoo_default_suite();  // concrete default instances

}  // namespace avgchain
