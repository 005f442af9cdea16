#include "dlg/solution.hpp"

#include <json.hpp>

namespace dlg {

using nlohmann::json;

std::string solution_to_json(const SolutionStrategy& s) {
  json shots = json::array();
  for (size_t i = 0; i < s.shots.size(); i++) {
    const Shot& shot = s.shots[i];
    json j{{"releaseAngle", shot.release_angle},
           {"launchSpeed", shot.launch_speed}};
    if (shot.tap_fraction) j["tapFraction"] = *shot.tap_fraction;
    if (shot.target_ref) j["targetRef"] = *shot.target_ref;
    if (shot.target_point)
      j["targetPoint"] = {shot.target_point->x, shot.target_point->y};
    json expected = json::array();
    if (i < s.expected_outcome.size())
      for (const auto& id : s.expected_outcome[i]) expected.push_back(id);
    j["expectedOutcome"] = expected;
    shots.push_back(j);
  }
  return json{{"schema_version", 1}, {"shots", shots}}.dump(2);
}

SolutionStrategy solution_from_json(const std::string& text) {
  json j = json::parse(text);
  SolutionStrategy s;
  for (const auto& js : j.at("shots")) {
    Shot shot;
    shot.release_angle = js.at("releaseAngle").get<double>();
    shot.launch_speed = js.value("launchSpeed", 20.0);
    if (js.contains("tapFraction"))
      shot.tap_fraction = js["tapFraction"].get<double>();
    if (js.contains("targetRef"))
      shot.target_ref = js["targetRef"].get<std::string>();
    if (js.contains("targetPoint"))
      shot.target_point =
          Vec2{js["targetPoint"][0].get<double>(), js["targetPoint"][1].get<double>()};
    s.shots.push_back(shot);
    std::vector<std::string> expected;
    for (const auto& id : js.value("expectedOutcome", json::array()))
      expected.push_back(id.get<std::string>());
    s.expected_outcome.push_back(expected);
  }
  return s;
}

}  // namespace dlg
