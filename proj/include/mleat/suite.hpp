#ifndef MLEAT_SUITE_HPP
#define MLEAT_SUITE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mleat/builtin_stimuli.hpp"
#include "mleat/eatmap.hpp"
#include "mleat/ml_eat.hpp"
#include "mleat/stimulus.hpp"
#include "mleat/taxonomy.hpp"

namespace mleat {

enum class ReportFormat { table, csv, json };

struct Thresholds {
  double alpha = 0.05;
  double effect_threshold = 0.2;
  double anisotropy_mean = 0.95;
  double anisotropy_std = 0.05;
};

struct EmbeddingSource {
  std::string label;
  std::string path;
  std::optional<std::size_t> dimension;
};

struct TestDef {
  std::string name;
  std::string title;
  std::string x, y, a, b;  // group names, roles must match the slots
  std::string embedding;   // label; may stay empty when only one source exists
};

struct OutputConfig {
  ReportFormat format = ReportFormat::table;
  std::string destination;  // empty or "-" means stdout
  std::string eatmap_dir;   // when set, `run` drops per-test .svg/.txt maps here
};

// A full suite: embeddings, groups, tests and the knobs shared by every test.
struct SuiteConfig {
  std::filesystem::path base_dir;  // anchor for relative paths in the config
  std::vector<EmbeddingSource> embeddings;
  std::vector<StimulusGroupSpec> groups;
  std::vector<TestDef> tests;
  PermutationStrategy strategy;
  Thresholds thresholds;
  ResolvePolicy policy;
  EngineOptions engine;
  OutputConfig output;
};

// JSON keys: embeddings, groups, tests, strategy, thresholds, output, policy.
// Throws ConfigError on malformed or inconsistent input. Tests given as
// {"builtin": name} are expanded into groups and a test definition.
SuiteConfig parse_suite_config(const std::string& json_text,
                               const std::filesystem::path& base_dir = {});
SuiteConfig load_suite_config(const std::filesystem::path& path);

// In-memory config for a named built-in suite ("caliskan10" or a single
// built-in test name) against one embedding file.
SuiteConfig builtin_suite_config(const std::string& suite_name, const std::string& path,
                                 std::optional<std::size_t> dimension = std::nullopt);

struct ReportRow {
  std::string name;
  std::string title;
  bool ok = false;
  std::string error;  // per-test failure; the rest of the suite still runs
  std::vector<std::string> warnings;
  MlEatResult result;
  Level2Verdict verdict_x, verdict_y;
  EatPattern pattern = EatPattern::Non_Directional;
  AnisotropyDiagnostic anisotropy;
};

// Runs every test in config order. Each embedding file is loaded once,
// restricted to the tokens the suite actually references. Per-test errors are
// recorded in their row; config-level problems (bad config, unreadable
// embedding) throw.
std::vector<ReportRow> run_suite(const SuiteConfig& config);

// table: fixed-width human-readable summary, effects to two decimals in the
//   publication style (".60*"), Level 2 cells carrying +/-/(middle dot)
//   markers for significant-positive / significant-negative / neither.
// csv: one flat row per test at full double precision.
// json: complete structure; numeric fields survive a parse round-trip.
std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format);

struct EatMapEntry {
  std::string name;
  EatMapShading shading;
};

// Rebuilds the per-test shadings from a JSON report produced by
// render_report(..., ReportFormat::json). Failed rows are skipped.
std::vector<EatMapEntry> eatmap_entries_from_report(const std::string& report_json);

struct DiachronicSlice {
  std::string label;
  std::string path;
  std::optional<std::size_t> dimension;
};

// One query swept across an ordered series of embedding snapshots.
struct DiachronicConfig {
  std::filesystem::path base_dir;
  std::vector<DiachronicSlice> slices;
  std::vector<StimulusGroupSpec> groups;
  TestDef test;
  PermutationStrategy strategy;
  Thresholds thresholds;
  ResolvePolicy policy;
  EngineOptions engine;
};

// JSON keys: slices, plus either {"builtin": name} or groups/test, plus the
// usual strategy/thresholds/policy.
DiachronicConfig parse_diachronic_config(const std::string& json_text,
                                         const std::filesystem::path& base_dir = {});
DiachronicConfig load_diachronic_config(const std::filesystem::path& path);

struct DiachronicRecord {
  std::string label;
  bool ok = false;
  std::string error;
  EffectSize level1, level2_x, level2_y;
  EatPattern pattern = EatPattern::Non_Directional;
};

// Evaluates the query on every slice in order. A failing slice is recorded
// and skipped; only when every slice fails does the run itself throw.
std::vector<DiachronicRecord> diachronic_run(const DiachronicConfig& config);

// Columns: label,d1,p1,d2x,p2x,d2y,p2y,pattern. The p columns hold the
// direction-consistent one-sided p (p_greater for d >= 0, else p_less).
// Failed slices are omitted.
std::string diachronic_csv(const std::vector<DiachronicRecord>& records);

}  // namespace mleat

#endif
