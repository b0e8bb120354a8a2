#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace decaycert {

// Exit-status contract: 0 certified/passed, 1 well-formed negative verdict,
// 2 parse or numerical error.
struct RunConfig {
  std::string command;
  std::string input_path;
  std::string output_dir = "out";
  std::uint64_t seed = 42;
  std::vector<std::string> overrides;  // "section.key=value", applied in order
};

int run(const RunConfig& rc);

}  // namespace decaycert
