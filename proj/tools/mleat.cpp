#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mleat/builtin_stimuli.hpp"
#include "mleat/eatmap.hpp"
#include "mleat/errors.hpp"
#include "mleat/suite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Overrides {
  std::optional<std::string> strategy_mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> exact_limit;
  std::optional<unsigned> threads;
  std::optional<double> alpha;
  std::optional<double> effect_threshold;
  bool allow_missing = false;
  bool lowercase = false;
  bool allow_unequal = false;
};

void add_override_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--strategy", o.strategy_mode, "Permutation strategy: exact, mc or auto")
      ->check(CLI::IsMember({"exact", "mc", "auto"}));
  cmd->add_option("--seed", o.seed, "Seed for Monte Carlo permutation sampling");
  cmd->add_option("--samples", o.samples, "Monte Carlo sample count");
  cmd->add_option("--exact-limit", o.exact_limit,
                  "Largest split count still enumerated exactly in auto mode");
  cmd->add_option("--threads", o.threads, "Worker threads for Monte Carlo sampling (0 = all)");
  cmd->add_option("--alpha", o.alpha, "Significance level");
  cmd->add_option("--effect-threshold", o.effect_threshold,
                  "Minimum |d| for a directional Level 2 verdict");
  cmd->add_flag("--allow-missing", o.allow_missing, "Drop missing tokens instead of failing");
  cmd->add_flag("--lowercase", o.lowercase, "Retry missing tokens in ASCII lowercase");
  cmd->add_flag("--allow-unequal", o.allow_unequal,
                "Permit unequal group sizes (forces Monte Carlo on that level)");
}

mleat::PermutationStrategy::Mode mode_from_name(const std::string& s) {
  if (s == "exact") return mleat::PermutationStrategy::Mode::exact;
  if (s == "mc") return mleat::PermutationStrategy::Mode::monte_carlo;
  return mleat::PermutationStrategy::Mode::auto_select;
}

template <typename Config>
void apply_overrides(Config& config, const Overrides& o) {
  if (o.strategy_mode) config.strategy.mode = mode_from_name(*o.strategy_mode);
  if (o.seed) config.strategy.seed = *o.seed;
  if (o.samples) config.strategy.samples = *o.samples;
  if (o.exact_limit) config.strategy.exact_limit = *o.exact_limit;
  if (o.threads) config.engine.threads = *o.threads;
  if (o.alpha) {
    config.thresholds.alpha = *o.alpha;
    config.engine.alpha = *o.alpha;
  }
  if (o.effect_threshold) config.thresholds.effect_threshold = *o.effect_threshold;
  if (o.allow_missing) config.policy.on_missing = mleat::ResolvePolicy::OnMissing::lenient;
  if (o.lowercase) config.policy.lowercase_fallback = true;
  if (o.allow_unequal) config.engine.allow_unequal = true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mleat::IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& text, const std::string& destination) {
  if (destination.empty() || destination == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(destination, std::ios::binary);
  if (!out) throw mleat::IoError("cannot write '" + destination + "'");
  out << text;
}

std::string safe_filename(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  return out.empty() ? std::string("map") : out;
}

void write_eatmaps(const std::vector<mleat::EatMapEntry>& entries, const std::string& dir,
                   mleat::MapFormat format) {
  fs::create_directories(dir);
  const char* ext = format == mleat::MapFormat::svg ? ".svg" : ".txt";
  for (const mleat::EatMapEntry& entry : entries) {
    const fs::path path = fs::path(dir) / (safe_filename(entry.name) + ext);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mleat::IoError("cannot write '" + path.string() + "'");
    out << mleat::render_eatmap(entry.shading, format);
  }
}

json config_to_json(const mleat::SuiteConfig& config) {
  json j;
  for (const mleat::EmbeddingSource& e : config.embeddings) {
    json src;
    src["path"] = e.path;
    if (e.dimension) src["dimension"] = *e.dimension;
    j["embeddings"][e.label] = src;
  }
  for (const mleat::StimulusGroupSpec& g : config.groups) {
    json grp;
    grp["role"] = std::string(mleat::role_name(g.role));
    if (!g.tokens.empty())
      grp["tokens"] = g.tokens;
    else
      grp["vector_file"] = g.vector_file;
    if (!g.display.empty()) grp["display"] = g.display;
    j["groups"][g.name] = grp;
  }
  j["tests"] = json::array();
  for (const mleat::TestDef& t : config.tests) {
    json tj{{"name", t.name}, {"x", t.x}, {"y", t.y}, {"a", t.a}, {"b", t.b}};
    if (!t.title.empty()) tj["title"] = t.title;
    if (!t.embedding.empty()) tj["embedding"] = t.embedding;
    j["tests"].push_back(std::move(tj));
  }
  j["strategy"] = json{{"mode", "auto"},
                       {"samples", config.strategy.samples},
                       {"seed", config.strategy.seed},
                       {"exact_limit", config.strategy.exact_limit}};
  j["thresholds"] = json{{"alpha", config.thresholds.alpha},
                         {"effect_threshold", config.thresholds.effect_threshold},
                         {"anisotropy_mean", config.thresholds.anisotropy_mean},
                         {"anisotropy_std", config.thresholds.anisotropy_std}};
  j["policy"] = json{{"on_missing", "strict"}, {"lowercase", false}};
  return j;
}

int cmd_run(const std::string& config_path, const std::string& builtin,
            const std::string& embedding, std::optional<std::size_t> dimension,
            const Overrides& overrides, const std::string& format_name, const std::string& out,
            const std::string& eatmap_dir) {
  mleat::SuiteConfig config;
  if (!config_path.empty()) {
    config = mleat::load_suite_config(config_path);
  } else {
    if (embedding.empty())
      throw mleat::ConfigError("--builtin needs --embedding PATH");
    config = mleat::builtin_suite_config(builtin, embedding, dimension);
  }
  apply_overrides(config, overrides);
  if (!format_name.empty()) {
    if (format_name == "table")
      config.output.format = mleat::ReportFormat::table;
    else if (format_name == "csv")
      config.output.format = mleat::ReportFormat::csv;
    else
      config.output.format = mleat::ReportFormat::json;
  }
  if (!out.empty()) config.output.destination = out;
  if (!eatmap_dir.empty()) config.output.eatmap_dir = eatmap_dir;

  const std::vector<mleat::ReportRow> rows = mleat::run_suite(config);
  write_output(mleat::render_report(rows, config.output.format), config.output.destination);

  if (!config.output.eatmap_dir.empty()) {
    std::vector<mleat::EatMapEntry> entries;
    for (const mleat::ReportRow& r : rows) {
      if (!r.ok) continue;
      mleat::EatMapEntry entry;
      entry.name = r.name;
      entry.shading = mleat::shading_from_verdicts(r.verdict_x, r.verdict_y,
                                                   r.result.meta.x_name, r.result.meta.y_name,
                                                   r.result.meta.a_name, r.result.meta.b_name);
      entries.push_back(std::move(entry));
    }
    write_eatmaps(entries, config.output.eatmap_dir, mleat::MapFormat::svg);
    write_eatmaps(entries, config.output.eatmap_dir, mleat::MapFormat::ascii);
  }

  int failures = 0;
  for (const mleat::ReportRow& r : rows) {
    if (r.ok) continue;
    ++failures;
    std::cerr << "test '" << r.name << "' failed: " << r.error << '\n';
  }
  return failures > 0 ? 1 : 0;
}

int cmd_diachronic(const std::string& config_path, const Overrides& overrides,
                   const std::string& out) {
  mleat::DiachronicConfig config = mleat::load_diachronic_config(config_path);
  apply_overrides(config, overrides);
  const std::vector<mleat::DiachronicRecord> records = mleat::diachronic_run(config);
  write_output(mleat::diachronic_csv(records), out);
  int failures = 0;
  for (const mleat::DiachronicRecord& r : records) {
    if (r.ok) continue;
    ++failures;
    std::cerr << "slice '" << r.label << "' failed: " << r.error << '\n';
  }
  return failures > 0 ? 1 : 0;
}

int cmd_eatmap(const std::string& report_path, const std::string& format_name,
               const std::string& out) {
  const mleat::MapFormat format =
      format_name == "ascii" ? mleat::MapFormat::ascii : mleat::MapFormat::svg;
  const std::vector<mleat::EatMapEntry> entries =
      mleat::eatmap_entries_from_report(slurp(report_path));
  if (entries.empty()) {
    std::cerr << "no successful tests in report; nothing to render\n";
    return 0;
  }
  if (!out.empty() && out != "-") {
    write_eatmaps(entries, out, format);
    return 0;
  }
  for (const mleat::EatMapEntry& entry : entries) {
    if (entries.size() > 1) std::cout << "# " << entry.name << '\n';
    std::cout << mleat::render_eatmap(entry.shading, format);
    if (format == mleat::MapFormat::svg) std::cout << '\n';
  }
  return 0;
}

int cmd_stimuli(const std::string& name, const std::string& suite, const std::string& embedding,
                std::optional<std::size_t> dimension, const std::string& out) {
  if (!suite.empty()) {
    const std::string path = embedding.empty() ? "glove.840B.300d.txt" : embedding;
    mleat::SuiteConfig config = mleat::builtin_suite_config(suite, path, dimension);
    write_output(config_to_json(config).dump(2) + "\n", out);
    return 0;
  }
  if (!name.empty()) {
    const mleat::BuiltinTest* test = mleat::find_builtin(name);
    if (!test) throw mleat::ConfigError("unknown built-in test '" + name + "'");
    json j{{"name", test->name},
           {"title", test->title},
           {"x", json{{"label", test->x_name}, {"tokens", test->x}}},
           {"y", json{{"label", test->y_name}, {"tokens", test->y}}},
           {"a", json{{"label", test->a_name}, {"tokens", test->a}}},
           {"b", json{{"label", test->b_name}, {"tokens", test->b}}}};
    write_output(j.dump(2) + "\n", out);
    return 0;
  }
  std::ostringstream listing;
  for (const mleat::BuiltinTest& t : mleat::builtin_tests()) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-28s %-34s targets %zu/%zu, attributes %zu/%zu\n",
                  t.name.c_str(), t.title.c_str(), t.x.size(), t.y.size(), t.a.size(),
                  t.b.size());
    listing << line;
  }
  write_output(listing.str(), out);
  return 0;
}

int cmd_validate(const std::string& config_path) {
  json root;
  try {
    root = json::parse(slurp(config_path));
  } catch (const json::exception& e) {
    throw mleat::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (root.is_object() && root.contains("slices")) {
    const mleat::DiachronicConfig config = mleat::load_diachronic_config(config_path);
    std::cout << "ok: diachronic config with " << config.slices.size() << " slices, "
              << config.groups.size() << " groups, test '" << config.test.name << "'\n";
  } else {
    const mleat::SuiteConfig config = mleat::load_suite_config(config_path);
    std::cout << "ok: " << config.embeddings.size() << " embeddings, " << config.groups.size()
              << " groups, " << config.tests.size() << " tests\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel embedding association tests over word vector spaces"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a test suite and print a report");
  std::string run_config, run_builtin, run_embedding, run_format, run_out, run_eatmap_dir;
  std::optional<std::size_t> run_dimension;
  Overrides run_overrides;
  run->add_option("--config", run_config, "Suite config JSON");
  run->add_option("--builtin", run_builtin,
                  "Built-in test name or 'caliskan10' (instead of --config)");
  run->add_option("--embedding", run_embedding, "Embedding file for --builtin");
  run->add_option("--dimension", run_dimension, "Expected embedding dimension");
  run->add_option("--format", run_format, "Report format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  run->add_option("--out", run_out, "Write the report here instead of stdout");
  run->add_option("--eatmap-dir", run_eatmap_dir, "Also write per-test association maps here");
  add_override_options(run, run_overrides);

  // diachronic
  auto* dia = app.add_subcommand("diachronic", "Run one test across embedding slices");
  std::string dia_config, dia_out;
  Overrides dia_overrides;
  dia->add_option("--config", dia_config, "Diachronic config JSON")->required();
  dia->add_option("--out", dia_out, "Write the CSV here instead of stdout");
  add_override_options(dia, dia_overrides);

  // eatmap
  auto* map = app.add_subcommand("eatmap", "Render association maps from a JSON report");
  std::string map_report, map_format = "svg", map_out;
  map->add_option("report", map_report, "Report produced by 'run --format json'")->required();
  map->add_option("--format", map_format, "Map format")->check(CLI::IsMember({"svg", "ascii"}));
  map->add_option("--out", map_out, "Directory for per-test map files");

  // stimuli
  auto* stim = app.add_subcommand("stimuli", "List or export built-in stimulus sets");
  std::string stim_name, stim_suite, stim_embedding, stim_out;
  std::optional<std::size_t> stim_dimension;
  stim->add_option("name", stim_name, "Built-in test to export as JSON");
  stim->add_option("--suite", stim_suite, "Export a runnable config for this suite");
  stim->add_option("--embedding", stim_embedding, "Embedding path to put in the config");
  stim->add_option("--dimension", stim_dimension, "Expected embedding dimension");
  stim->add_option("--out", stim_out, "Write here instead of stdout");

  // validate
  auto* val = app.add_subcommand("validate", "Check a config file without running it");
  std::string val_config;
  val->add_option("--config", val_config, "Config JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (run_config.empty() == run_builtin.empty())
        throw mleat::ConfigError("run needs exactly one of --config or --builtin");
      return cmd_run(run_config, run_builtin, run_embedding, run_dimension, run_overrides,
                     run_format, run_out, run_eatmap_dir);
    }
    if (*dia) return cmd_diachronic(dia_config, dia_overrides, dia_out);
    if (*map) return cmd_eatmap(map_report, map_format, map_out);
    if (*stim) return cmd_stimuli(stim_name, stim_suite, stim_embedding, stim_dimension, stim_out);
    if (*val) return cmd_validate(val_config);
  } catch (const mleat::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
