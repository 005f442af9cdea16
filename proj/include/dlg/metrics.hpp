#pragma once

#include <string>
#include <vector>

#include "dlg/model.hpp"
#include "dlg/templates.hpp"

namespace dlg {

// Portfolio replay outcomes for one generated batch: row n holds P_nt for
// the T_n strategies tested against level n (the shipped solution is never
// among them).
struct DeceptionBatchResult {
  DeceptionCategory category = DeceptionCategory::RollingFalling;
  std::vector<std::vector<bool>> per_level;  // per_level[n][t] = P_nt
  std::vector<bool> stability_outcomes;
  std::vector<bool> solvability_outcomes;
};

// Agent solve outcomes over the two corpora: human[a][m] = P_am over M
// human-created levels, generated[a][n] = P_an over N generated levels.
struct AgentResultMatrix {
  std::vector<std::vector<bool>> human;
  std::vector<std::vector<bool>> generated;
};

// stable count / total. Throws ModelError on an empty batch.
double stability_rate(const std::vector<bool>& outcomes);

// solved count / total. Throws ModelError on an empty batch.
double solvability_rate(const std::vector<bool>& outcomes);

// D_i = (1/N) sum_n (1/T_n) sum_t (1 - P_nt). Throws ModelError when the
// batch is empty or some level has no tested strategies.
double deceptive_score(const DeceptionBatchResult& batch);

// C_i = (1/A) sum_a [(1/M) sum_m P_am - (1/N) sum_n P_an]. Positive means
// the generated levels are harder for the agents. Throws ModelError on an
// empty or ragged matrix.
double solve_rate_difference(const AgentResultMatrix& matrix);

struct CategoryReportRow {
  DeceptionCategory category = DeceptionCategory::RollingFalling;
  double stability = 0.0;
  double solvability = 0.0;
  double deceptive = 0.0;
  double solve_difference = 0.0;
};

// CSV with header category,R,S,D,C and two-decimal values.
std::string metrics_csv(const std::vector<CategoryReportRow>& rows);

}  // namespace dlg
