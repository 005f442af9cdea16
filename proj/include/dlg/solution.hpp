#pragma once

#include <string>
#include <vector>

#include "dlg/physics.hpp"

namespace dlg {

// An ordered shot sequence that solves a level; shot i uses bird i of the
// level's queue. expected_outcome lists the objects each shot destroys.
struct SolutionStrategy {
  std::vector<Shot> shots;
  std::vector<std::vector<std::string>> expected_outcome;
};

std::string solution_to_json(const SolutionStrategy& s);
SolutionStrategy solution_from_json(const std::string& text);

}  // namespace dlg
