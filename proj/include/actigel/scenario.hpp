#ifndef ACTIGEL_SCENARIO_HPP
#define ACTIGEL_SCENARIO_HPP

#include <string>
#include <vector>

#include "actigel/config.hpp"

namespace actigel::scenario {

inline constexpr const char* kVersion = "actigel 0.1.0";

struct RunResult {
  std::vector<std::string> outputs;  // paths written, manifest last
};

// Executes the configured scenario and writes CSV artifacts plus a
// manifest echoing the resolved config and code version into out_dir.
RunResult run(const config::ScenarioConfig& cfg, const std::string& out_dir);

}  // namespace actigel::scenario

#endif
