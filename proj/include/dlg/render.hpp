#pragma once

#include <optional>
#include <string>

#include "dlg/solution.hpp"

namespace dlg {

// Scale drawing of the level as a standalone SVG document. With a solution,
// each shot's launch arc is drawn dashed with its order numeral and a
// "Tap at x%" label where a tap applies.
std::string render_level(const Level& level,
                         const SolutionStrategy* solution,
                         const Config& cfg);

}  // namespace dlg
