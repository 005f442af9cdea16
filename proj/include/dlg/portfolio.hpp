#pragma once

#include "dlg/analyzer.hpp"

namespace dlg {

// The fixed 10-variant portfolio player used for deceptiveness replay and
// for pluggable scripted agents. Strategies draw birds from the level's
// queue; tap fractions apply only when the queued bird has a power.
std::vector<Strategy> portfolio_variants();

// Plays one strategy against a fresh simulation of the level using the
// level's own bird queue; true iff all pigs die.
bool strategy_solves_level(const Level& level, const Strategy& strategy,
                           const Config& cfg);

// P_nt row for one level over the whole portfolio.
std::vector<bool> portfolio_outcomes(const Level& level, const Config& cfg);

}  // namespace dlg
