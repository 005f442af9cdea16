#include "dlg/metrics.hpp"

#include <cstdio>

namespace dlg {

namespace {

double fraction(const std::vector<bool>& outcomes, const char* what) {
  if (outcomes.empty())
    throw ModelError(std::string("empty batch for ") + what);
  int hits = 0;
  for (bool b : outcomes)
    if (b) hits++;
  return double(hits) / double(outcomes.size());
}

double mean_row(const std::vector<bool>& row, const char* what) {
  return fraction(row, what);
}

}  // namespace

double stability_rate(const std::vector<bool>& outcomes) {
  return fraction(outcomes, "stability rate");
}

double solvability_rate(const std::vector<bool>& outcomes) {
  return fraction(outcomes, "solvability rate");
}

double deceptive_score(const DeceptionBatchResult& batch) {
  if (batch.per_level.empty())
    throw ModelError("empty batch for deceptive score");
  double sum = 0.0;
  for (const auto& row : batch.per_level) {
    if (row.empty())
      throw ModelError("level with no tested strategies in deceptive score");
    double unsolved = 0.0;
    for (bool p : row)
      if (!p) unsolved += 1.0;
    sum += unsolved / double(row.size());
  }
  return sum / double(batch.per_level.size());
}

double solve_rate_difference(const AgentResultMatrix& matrix) {
  if (matrix.human.empty() || matrix.generated.empty() ||
      matrix.human.size() != matrix.generated.size())
    throw ModelError("agent matrix needs matching nonempty agent rows");
  size_t m = matrix.human[0].size();
  size_t n = matrix.generated[0].size();
  if (m == 0 || n == 0) throw ModelError("agent matrix has an empty corpus");
  double sum = 0.0;
  for (size_t a = 0; a < matrix.human.size(); a++) {
    if (matrix.human[a].size() != m || matrix.generated[a].size() != n)
      throw ModelError("ragged agent matrix");
    sum += mean_row(matrix.human[a], "human corpus") -
           mean_row(matrix.generated[a], "generated corpus");
  }
  return sum / double(matrix.human.size());
}

std::string metrics_csv(const std::vector<CategoryReportRow>& rows) {
  std::string out = "category,R,S,D,C\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.2f,%.2f,%.2f,%.2f\n",
                  to_string(r.category), r.stability, r.solvability,
                  r.deceptive, r.solve_difference);
    out += buf;
  }
  return out;
}

}  // namespace dlg
