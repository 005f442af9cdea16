#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlg/level_xml.hpp"
#include "dlg/metrics.hpp"
#include "dlg/portfolio.hpp"
#include "dlg/render.hpp"
#include "dlg/repository.hpp"
#include "dlg/rng.hpp"
#include "dlg/templates.hpp"
#include "dlg/validator.hpp"

namespace fs = std::filesystem;
using namespace dlg;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void run_parallel(size_t count, int jobs, const std::function<void(size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; i++) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  size_t n = std::min<size_t>(size_t(jobs), count);
  for (size_t w = 0; w < n; w++)
    workers.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        fn(i);
    });
  for (auto& t : workers) t.join();
}

std::vector<fs::path> sorted_files(const fs::path& dir, const char* ext) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const fs::path& p = e.path();
    if (p.extension() == ext && p.string().find(".solution.") == std::string::npos)
      out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct LoadedLevel {
  fs::path path;
  Level level;
  std::optional<SolutionStrategy> solution;
  std::string category;  // from the file name prefix, may be empty
};

std::vector<LoadedLevel> load_levels(const fs::path& dir, const Config& cfg) {
  std::vector<LoadedLevel> out;
  for (const fs::path& p : sorted_files(dir, ".xml")) {
    LoadedLevel ll;
    ll.path = p;
    ll.level = parse_level(read_file(p), cfg);
    fs::path sol = p;
    sol.replace_extension(".solution.json");
    if (fs::exists(sol)) ll.solution = solution_from_json(read_file(sol));
    std::string stem = p.stem().string();
    auto us = stem.rfind('_');
    if (us != std::string::npos) ll.category = stem.substr(0, us);
    out.push_back(std::move(ll));
  }
  return out;
}

int cmd_extract(const fs::path& repo_root, const fs::path& dir,
                const Config& cfg) {
  EntityRepository repo(repo_root, cfg);
  int entities = 0, files = 0;
  for (const fs::path& p : sorted_files(dir, ".xml")) {
    Level instance = parse_level(read_file(p), cfg);
    auto extracted = extract_entities(instance, cfg);
    for (size_t i = 0; i < extracted.size(); i++) {
      PhysicalEntity canonical = canonical_entity(extracted[i], cfg);
      nlohmann::json prov{{"source", p.filename().string()},
                          {"entity_index", i}};
      repo.put(canonical, prov.dump());
      entities++;
    }
    files++;
  }
  std::cout << "extracted " << entities << " entities from " << files
            << " instance files into " << repo_root.string() << "\n";
  return 0;
}

int cmd_analyze(const fs::path& repo_root, int jobs, const Config& cfg) {
  EntityRepository repo(repo_root, cfg);
  std::vector<std::string> pending;
  for (const std::string& hash : repo.list())
    if (!repo.has_metadata(hash)) pending.push_back(hash);
  run_parallel(pending.size(), jobs, [&](size_t i) {
    PhysicalEntity entity = repo.get(pending[i]);
    EntityMetadata meta =
        analyze_entity(entity, enumerate_strategies(entity, cfg), cfg);
    meta.entity_hash = pending[i];
    repo.put_metadata(pending[i], meta);
  });
  std::cout << "analyzed " << pending.size() << " entities ("
            << repo.list().size() << " total in repository)\n";
  return 0;
}

int cmd_generate(const fs::path& repo_root, const std::string& category_name,
                 int count, uint64_t seed, int jobs, const fs::path& out_dir,
                 const Config& cfg) {
  auto category = category_from_string(category_name);
  if (!category) {
    std::cerr << "unknown category: " << category_name << "\n";
    return 2;
  }
  EntityRepository repo(repo_root, cfg);
  EntityPool pool = load_pool(repo);
  if (pool.entries.empty()) {
    std::cerr << "no analyzed entities in " << repo_root.string()
              << "; run extract and analyze first\n";
    return 1;
  }
  fs::create_directories(out_dir);
  std::vector<std::string> errors{size_t(count), std::string()};
  std::atomic<int> produced{0};
  run_parallel(size_t(count), jobs, [&](size_t k) {
    GenerationRequest req;
    req.category = *category;
    req.seed = mix_seed(seed, k);
    try {
      CandidateLevel c = generate(req, pool, cfg);
      std::string base = to_string(*category) + std::string("_") +
                         std::to_string(k);
      atomic_write(out_dir / (base + ".xml"), serialize_level(c.level));
      atomic_write(out_dir / (base + ".solution.json"),
                   solution_to_json(c.solution));
      atomic_write(out_dir / (base + ".provenance.json"), c.provenance);
      produced++;
    } catch (const GenerationError& e) {
      errors[k] = e.what();
    }
  });
  for (size_t k = 0; k < errors.size(); k++)
    if (!errors[k].empty())
      std::cerr << "level " << k << ": " << errors[k] << "\n";
  std::cout << "generated " << produced.load() << "/" << count << " "
            << to_string(*category) << " levels in " << out_dir.string()
            << "\n";
  return produced.load() == count ? 0 : 1;
}

int cmd_validate(const fs::path& dir, int jobs, const fs::path& report_path,
                 const Config& cfg) {
  std::vector<LoadedLevel> levels;
  try {
    levels = load_levels(dir, cfg);
  } catch (const std::exception& e) {
    std::cerr << "validate: " << e.what() << "\n";
    return 1;
  }
  std::vector<std::string> lines(levels.size());
  std::atomic<int> failures{0};
  run_parallel(levels.size(), jobs, [&](size_t i) {
    ValidationReport report;
    if (levels[i].solution) {
      report = check_solvability(levels[i].level, *levels[i].solution, cfg);
    } else {
      auto [stable, speed] = check_stability(levels[i].level, cfg);
      report.stable = stable;
      report.max_observed_speed = speed;
      if (!stable) report.failure_stage = FailureStage::Unstable;
    }
    lines[i] = report_record(levels[i].path.filename().string(), report);
    bool ok = levels[i].solution ? report.solvable : report.stable;
    if (!ok) failures++;
  });
  std::ofstream out(report_path);
  for (const auto& line : lines) out << line << "\n";
  std::cout << (levels.size() - size_t(failures.load())) << "/" << levels.size()
            << " levels valid; report in " << report_path.string() << "\n";
  return failures.load() == 0 ? 0 : 1;
}

int cmd_score(const std::string& mode, const fs::path& generated_dir,
              const fs::path& human_dir, int jobs, const fs::path& csv_path,
              const Config& cfg) {
  auto levels = load_levels(generated_dir, cfg);
  if (levels.empty()) {
    std::cerr << "no levels in " << generated_dir.string() << "\n";
    return 1;
  }
  std::map<std::string, std::vector<size_t>> by_category;
  for (size_t i = 0; i < levels.size(); i++)
    by_category[levels[i].category.empty() ? "all" : levels[i].category]
        .push_back(i);

  std::vector<bool> stable(levels.size()), solvable(levels.size());
  std::vector<std::vector<bool>> outcomes(levels.size());
  run_parallel(levels.size(), jobs, [&](size_t i) {
    auto [st, speed] = check_stability(levels[i].level, cfg);
    (void)speed;
    stable[i] = st;
    solvable[i] =
        levels[i].solution &&
        check_solvability(levels[i].level, *levels[i].solution, cfg).solvable;
    outcomes[i] = portfolio_outcomes(levels[i].level, cfg);
  });

  std::vector<std::vector<bool>> human_outcomes;
  if (mode == "compare") {
    auto human = load_levels(human_dir, cfg);
    if (human.empty()) {
      std::cerr << "no human-corpus levels in " << human_dir.string() << "\n";
      return 1;
    }
    human_outcomes.resize(human.size());
    run_parallel(human.size(), jobs, [&](size_t i) {
      human_outcomes[i] = portfolio_outcomes(human[i].level, cfg);
    });
  }

  std::vector<CategoryReportRow> rows;
  for (const auto& [name, idxs] : by_category) {
    CategoryReportRow row;
    auto cat = category_from_string(name);
    row.category = cat ? *cat : DeceptionCategory::RollingFalling;
    std::vector<bool> st, sv;
    DeceptionBatchResult batch;
    for (size_t i : idxs) {
      st.push_back(stable[i]);
      sv.push_back(solvable[i]);
      batch.per_level.push_back(outcomes[i]);
    }
    row.stability = stability_rate(st);
    row.solvability = solvability_rate(sv);
    row.deceptive = deceptive_score(batch);
    if (mode == "compare") {
      AgentResultMatrix matrix;
      size_t agents = portfolio_variants().size();
      matrix.human.resize(agents);
      matrix.generated.resize(agents);
      for (size_t a = 0; a < agents; a++) {
        for (const auto& h : human_outcomes) matrix.human[a].push_back(h[a]);
        for (size_t i : idxs) matrix.generated[a].push_back(outcomes[i][a]);
      }
      row.solve_difference = solve_rate_difference(matrix);
    }
    rows.push_back(row);
  }
  std::string csv = metrics_csv(rows);
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    atomic_write(csv_path, csv);
    std::cout << "report written to " << csv_path.string() << "\n";
  }
  return 0;
}

int cmd_render(const fs::path& level_path, const fs::path& solution_path,
               const fs::path& out_path, const Config& cfg) {
  Level level = parse_level(read_file(level_path), cfg);
  std::optional<SolutionStrategy> solution;
  if (!solution_path.empty())
    solution = solution_from_json(read_file(solution_path));
  std::string svg =
      render_level(level, solution ? &*solution : nullptr, cfg);
  fs::path out = out_path;
  if (out.empty()) {
    out = level_path;
    out.replace_extension(".svg");
  }
  atomic_write(out, svg);
  std::cout << "rendered " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deceptive level generation pipeline"};
  app.require_subcommand(1);

  std::string config_path;
  std::string repo_arg;
  uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--repo", repo_arg, "entity repository root");
  app.add_option("--seed", seed, "master RNG seed");
  app.add_option("--jobs", jobs, "worker threads for batch commands");

  std::string extract_dir, gen_category = "TNT", gen_out = "levels";
  std::string validate_dir, validate_report = "validation.jsonl";
  std::string score_mode = "deceptive", score_generated, score_human;
  std::string score_csv;
  std::string render_level_path, render_solution, render_out;
  int gen_count = 1;

  auto* extract = app.add_subcommand("extract", "split instances into entities");
  extract->add_option("instances", extract_dir, "directory of level documents")
      ->required();

  app.add_subcommand("analyze", "run the strategy catalog on new entities");

  auto* generate = app.add_subcommand("generate", "instantiate a template");
  generate->add_option("--category", gen_category,
                       "RollingFalling|ClearingPaths|StrengthAnalysis|"
                       "NonGreedy|TapTime|TNT")
      ->required();
  generate->add_option("--count", gen_count, "levels to generate");
  generate->add_option("--out", gen_out, "output directory");

  auto* validate = app.add_subcommand("validate", "stability and replay checks");
  validate->add_option("levels", validate_dir, "directory of generated levels")
      ->required();
  validate->add_option("--report", validate_report, "JSONL report path");

  auto* score = app.add_subcommand("score", "corpus metrics");
  score->add_option("--mode", score_mode, "deceptive|compare");
  score->add_option("--generated", score_generated, "generated levels dir")
      ->required();
  score->add_option("--human", score_human, "comparison corpus dir");
  score->add_option("--csv", score_csv, "CSV output path (default stdout)");

  auto* render = app.add_subcommand("render", "draw a level as SVG");
  render->add_option("level", render_level_path, "level document")->required();
  render->add_option("--solution", render_solution, "solution document");
  render->add_option("--out", render_out, "SVG output path");

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    fs::path repo_root = repo_arg;
    if (repo_root.empty()) {
      const char* env = std::getenv("DLG_REPO");
      repo_root = env ? env : "repo";
    }

    if (extract->parsed()) return cmd_extract(repo_root, extract_dir, cfg);
    if (app.got_subcommand("analyze")) return cmd_analyze(repo_root, jobs, cfg);
    if (generate->parsed())
      return cmd_generate(repo_root, gen_category, gen_count, seed, jobs,
                          gen_out, cfg);
    if (validate->parsed())
      return cmd_validate(validate_dir, jobs, validate_report, cfg);
    if (score->parsed())
      return cmd_score(score_mode, score_generated, score_human, jobs,
                       score_csv, cfg);
    if (render->parsed())
      return cmd_render(render_level_path, render_solution, render_out, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
