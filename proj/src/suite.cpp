#include "mleat/suite.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "mleat/errors.hpp"

namespace mleat {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- json utils

const json* opt_member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json* v = opt_member(obj, key);
  if (!v || !v->is_string())
    throw ConfigError(where + ": missing or non-string '" + key + "'");
  return v->get<std::string>();
}

double read_number(const json& v, const char* key, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t read_count(const json& v, const char* key, const std::string& where) {
  if (!v.is_number_unsigned())
    throw ConfigError(where + ": '" + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

// ------------------------------------------------------------- string utils

std::string ascii_lower_copy(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string shortest_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Publication-style two-decimal effect formatting: leading zero dropped,
// negative zero normalized away.
std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  if (s.rfind("0.", 0) == 0)
    s = s.substr(1);
  else if (s.rfind("-0.", 0) == 0)
    s = "-" + s.substr(2);
  return s;
}

std::string fmt_effect(const EffectSize& e) { return fmt2(e.d) + (e.significant ? "*" : ""); }

std::string fmt_cell(const CellStats& c) { return fmt2(c.mean) + " (" + fmt2(c.std_dev) + ")"; }

// Level 2 cell marker standing in for the publication's cell colors:
// '+' significant positive (red), '-' significant negative (blue),
// middle dot otherwise (gray).
const char* kDotMarker = "\xC2\xB7";

std::string marker(const EffectSize& e) {
  if (e.significant) return e.d > 0.0 ? "+" : "-";
  return kDotMarker;
}

// ------------------------------------------------------------ config pieces

GroupRole parse_role(const std::string& s, const std::string& where) {
  if (s == "target_X") return GroupRole::target_X;
  if (s == "target_Y") return GroupRole::target_Y;
  if (s == "attribute_A") return GroupRole::attribute_A;
  if (s == "attribute_B") return GroupRole::attribute_B;
  throw ConfigError(where + ": unknown role '" + s +
                    "' (expected target_X, target_Y, attribute_A or attribute_B)");
}

PermutationStrategy::Mode parse_mode(const std::string& s, const std::string& where) {
  if (s == "exact") return PermutationStrategy::Mode::exact;
  if (s == "mc" || s == "monte_carlo") return PermutationStrategy::Mode::monte_carlo;
  if (s == "auto") return PermutationStrategy::Mode::auto_select;
  throw ConfigError(where + ": unknown strategy mode '" + s + "' (expected exact, mc or auto)");
}

std::string mode_string(PermutationStrategy::Mode m) {
  switch (m) {
    case PermutationStrategy::Mode::exact: return "exact";
    case PermutationStrategy::Mode::monte_carlo: return "monte_carlo";
    case PermutationStrategy::Mode::auto_select: return "auto";
  }
  return "?";
}

void parse_strategy(const json& obj, PermutationStrategy& strategy, EngineOptions& engine) {
  if (!obj.is_object()) throw ConfigError("'strategy' must be an object");
  if (const json* v = opt_member(obj, "mode"))
    strategy.mode = parse_mode(v->get<std::string>(), "strategy");
  if (const json* v = opt_member(obj, "samples"))
    strategy.samples = read_count(*v, "samples", "strategy");
  if (const json* v = opt_member(obj, "seed")) strategy.seed = read_count(*v, "seed", "strategy");
  if (const json* v = opt_member(obj, "exact_limit"))
    strategy.exact_limit = read_count(*v, "exact_limit", "strategy");
  if (const json* v = opt_member(obj, "threads"))
    engine.threads = static_cast<unsigned>(read_count(*v, "threads", "strategy"));
  if (strategy.samples == 0) throw ConfigError("strategy: 'samples' must be positive");
}

void parse_thresholds(const json& obj, Thresholds& thresholds, EngineOptions& engine) {
  if (!obj.is_object()) throw ConfigError("'thresholds' must be an object");
  if (const json* v = opt_member(obj, "alpha"))
    thresholds.alpha = read_number(*v, "alpha", "thresholds");
  if (const json* v = opt_member(obj, "effect_threshold"))
    thresholds.effect_threshold = read_number(*v, "effect_threshold", "thresholds");
  if (const json* v = opt_member(obj, "anisotropy_mean"))
    thresholds.anisotropy_mean = read_number(*v, "anisotropy_mean", "thresholds");
  if (const json* v = opt_member(obj, "anisotropy_std"))
    thresholds.anisotropy_std = read_number(*v, "anisotropy_std", "thresholds");
  if (const json* v = opt_member(obj, "std_convention")) {
    const std::string s = v->get<std::string>();
    if (s == "sample")
      engine.std_convention = StdConvention::sample;
    else if (s == "population")
      engine.std_convention = StdConvention::population;
    else
      throw ConfigError("thresholds: unknown std_convention '" + s + "'");
  }
  if (thresholds.alpha <= 0.0 || thresholds.alpha >= 1.0)
    throw ConfigError("thresholds: 'alpha' must lie in (0, 1)");
}

void parse_policy(const json& obj, ResolvePolicy& policy, EngineOptions& engine) {
  if (!obj.is_object()) throw ConfigError("'policy' must be an object");
  if (const json* v = opt_member(obj, "on_missing")) {
    const std::string s = v->get<std::string>();
    if (s == "strict")
      policy.on_missing = ResolvePolicy::OnMissing::strict;
    else if (s == "lenient")
      policy.on_missing = ResolvePolicy::OnMissing::lenient;
    else
      throw ConfigError("policy: unknown on_missing '" + s + "'");
  }
  if (const json* v = opt_member(obj, "lowercase")) policy.lowercase_fallback = v->get<bool>();
  if (const json* v = opt_member(obj, "allow_unequal")) engine.allow_unequal = v->get<bool>();
}

ReportFormat parse_format(const std::string& s, const std::string& where) {
  if (s == "table") return ReportFormat::table;
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw ConfigError(where + ": unknown format '" + s + "' (expected table, csv or json)");
}

void parse_output(const json& obj, OutputConfig& output) {
  if (!obj.is_object()) throw ConfigError("'output' must be an object");
  if (const json* v = opt_member(obj, "format"))
    output.format = parse_format(v->get<std::string>(), "output");
  if (const json* v = opt_member(obj, "destination"))
    output.destination = v->get<std::string>();
  if (const json* v = opt_member(obj, "eatmap_dir")) output.eatmap_dir = v->get<std::string>();
}

void parse_embeddings(const json& obj, std::vector<EmbeddingSource>& out) {
  if (!obj.is_object()) throw ConfigError("'embeddings' must be an object of label -> source");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    EmbeddingSource src;
    src.label = it.key();
    const json& v = it.value();
    if (v.is_string()) {
      src.path = v.get<std::string>();
    } else if (v.is_object()) {
      src.path = require_string(v, "path", "embeddings." + src.label);
      if (const json* d = opt_member(v, "dimension"))
        src.dimension = read_count(*d, "dimension", "embeddings." + src.label);
    } else {
      throw ConfigError("embeddings." + src.label + ": must be a path or an object");
    }
    out.push_back(std::move(src));
  }
}

void parse_groups(const json& obj, std::vector<StimulusGroupSpec>& out) {
  if (!obj.is_object()) throw ConfigError("'groups' must be an object of name -> group");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    StimulusGroupSpec spec;
    spec.name = it.key();
    const json& v = it.value();
    const std::string where = "groups." + spec.name;
    if (!v.is_object()) throw ConfigError(where + ": must be an object");
    spec.role = parse_role(require_string(v, "role", where), where);
    const json* tokens = opt_member(v, "tokens");
    const json* file = opt_member(v, "vector_file");
    if (!!tokens == !!file)
      throw ConfigError(where + ": exactly one of 'tokens' or 'vector_file' is required");
    if (tokens) {
      if (!tokens->is_array()) throw ConfigError(where + ": 'tokens' must be an array");
      for (const json& t : *tokens) {
        if (!t.is_string()) throw ConfigError(where + ": 'tokens' must contain strings");
        spec.tokens.push_back(t.get<std::string>());
      }
      if (spec.tokens.empty()) throw ConfigError(where + ": 'tokens' is empty");
    } else {
      spec.vector_file = file->get<std::string>();
    }
    if (const json* d = opt_member(v, "display")) spec.display = d->get<std::string>();
    out.push_back(std::move(spec));
  }
}

GroupRole slot_role(char slot) {
  switch (slot) {
    case 'x': return GroupRole::target_X;
    case 'y': return GroupRole::target_Y;
    case 'a': return GroupRole::attribute_A;
    default: return GroupRole::attribute_B;
  }
}

// Materializes a built-in test into a config: four qualified groups plus the
// test definition itself.
void add_builtin_test(SuiteConfig& config, const BuiltinTest& builtin,
                      const std::string& embedding_label, const std::string& name_override) {
  const std::string name = name_override.empty() ? builtin.name : name_override;
  auto add_group = [&config, &name](char slot, const std::string& display,
                                    const std::vector<std::string>& tokens) {
    StimulusGroupSpec spec;
    spec.name = name + "." + slot;
    spec.role = slot_role(slot);
    spec.tokens = tokens;
    spec.display = display;
    config.groups.push_back(std::move(spec));
  };
  add_group('x', builtin.x_name, builtin.x);
  add_group('y', builtin.y_name, builtin.y);
  add_group('a', builtin.a_name, builtin.a);
  add_group('b', builtin.b_name, builtin.b);

  TestDef test;
  test.name = name;
  test.title = builtin.title;
  test.x = name + ".x";
  test.y = name + ".y";
  test.a = name + ".a";
  test.b = name + ".b";
  test.embedding = embedding_label;
  config.tests.push_back(std::move(test));
}

void parse_tests(const json& arr, SuiteConfig& config) {
  if (!arr.is_array()) throw ConfigError("'tests' must be an array");
  std::size_t index = 0;
  for (const json& v : arr) {
    const std::string where = "tests[" + std::to_string(index++) + "]";
    if (!v.is_object()) throw ConfigError(where + ": must be an object");
    std::string embedding;
    if (const json* e = opt_member(v, "embedding")) embedding = e->get<std::string>();
    if (const json* b = opt_member(v, "builtin")) {
      const std::string builtin_name = b->get<std::string>();
      const BuiltinTest* builtin = find_builtin(builtin_name);
      if (!builtin) throw ConfigError(where + ": unknown builtin '" + builtin_name + "'");
      std::string name_override;
      if (const json* n = opt_member(v, "name")) name_override = n->get<std::string>();
      add_builtin_test(config, *builtin, embedding, name_override);
      continue;
    }
    TestDef test;
    test.name = require_string(v, "name", where);
    if (const json* t = opt_member(v, "title")) test.title = t->get<std::string>();
    test.x = require_string(v, "x", where);
    test.y = require_string(v, "y", where);
    test.a = require_string(v, "a", where);
    test.b = require_string(v, "b", where);
    test.embedding = embedding;
    config.tests.push_back(std::move(test));
  }
}

// Structural checks shared by parsed and programmatic configs.
void validate_config(const SuiteConfig& config) {
  std::unordered_set<std::string> labels;
  for (const EmbeddingSource& e : config.embeddings) {
    if (e.label.empty()) throw ConfigError("embedding with empty label");
    if (!labels.insert(e.label).second)
      throw ConfigError("duplicate embedding label '" + e.label + "'");
  }
  std::unordered_map<std::string, const StimulusGroupSpec*> groups;
  for (const StimulusGroupSpec& g : config.groups)
    if (!groups.emplace(g.name, &g).second)
      throw ConfigError("duplicate group name '" + g.name + "'");
  std::unordered_set<std::string> test_names;
  for (const TestDef& t : config.tests) {
    if (!test_names.insert(t.name).second)
      throw ConfigError("duplicate test name '" + t.name + "'");
    const struct {
      const std::string* group;
      GroupRole role;
      const char* slot;
    } slots[4] = {{&t.x, GroupRole::target_X, "x"},
                  {&t.y, GroupRole::target_Y, "y"},
                  {&t.a, GroupRole::attribute_A, "a"},
                  {&t.b, GroupRole::attribute_B, "b"}};
    bool needs_embedding = false;
    for (const auto& s : slots) {
      auto it = groups.find(*s.group);
      if (it == groups.end())
        throw ConfigError("test '" + t.name + "': unknown group '" + *s.group + "'");
      if (it->second->role != s.role)
        throw ConfigError("test '" + t.name + "': group '" + *s.group + "' has role " +
                          std::string(role_name(it->second->role)) + " but fills slot " +
                          s.slot);
      if (!it->second->tokens.empty()) needs_embedding = true;
    }
    if (!t.embedding.empty() && !labels.count(t.embedding))
      throw ConfigError("test '" + t.name + "': unknown embedding '" + t.embedding + "'");
    if (t.embedding.empty() && needs_embedding && config.embeddings.size() != 1)
      throw ConfigError("test '" + t.name +
                        "': no embedding named and the config does not have exactly one");
  }
}

}  // namespace

SuiteConfig parse_suite_config(const std::string& json_text,
                               const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  SuiteConfig config;
  config.base_dir = base_dir;
  if (const json* v = opt_member(root, "strategy"))
    parse_strategy(*v, config.strategy, config.engine);
  if (const json* v = opt_member(root, "thresholds"))
    parse_thresholds(*v, config.thresholds, config.engine);
  if (const json* v = opt_member(root, "policy")) parse_policy(*v, config.policy, config.engine);
  if (const json* v = opt_member(root, "output")) parse_output(*v, config.output);
  if (const json* v = opt_member(root, "embeddings")) parse_embeddings(*v, config.embeddings);
  if (const json* v = opt_member(root, "groups")) parse_groups(*v, config.groups);
  if (const json* v = opt_member(root, "tests")) parse_tests(*v, config);
  config.engine.alpha = config.thresholds.alpha;
  validate_config(config);
  return config;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_suite_config(buffer.str(), path.parent_path());
}

SuiteConfig builtin_suite_config(const std::string& suite_name, const std::string& path,
                                 std::optional<std::size_t> dimension) {
  SuiteConfig config;
  EmbeddingSource src;
  src.label = "embedding";
  src.path = path;
  src.dimension = dimension;
  config.embeddings.push_back(std::move(src));

  if (suite_name == "caliskan10") {
    for (const std::string& name : builtin_suite_caliskan10())
      add_builtin_test(config, *find_builtin(name), "embedding", "");
  } else if (const BuiltinTest* builtin = find_builtin(suite_name)) {
    add_builtin_test(config, *builtin, "embedding", "");
  } else {
    throw ConfigError("unknown built-in suite or test '" + suite_name + "'");
  }
  config.engine.alpha = config.thresholds.alpha;
  validate_config(config);
  return config;
}

namespace {

// Union of tokens each embedding label must supply, including lowercase
// variants when the fallback is enabled.
std::unordered_map<std::string, std::unordered_set<std::string>> needed_vocabulary(
    const SuiteConfig& config) {
  std::unordered_map<std::string, const StimulusGroupSpec*> groups;
  for (const StimulusGroupSpec& g : config.groups) groups.emplace(g.name, &g);

  std::unordered_map<std::string, std::unordered_set<std::string>> vocab;
  for (const TestDef& t : config.tests) {
    std::string label = t.embedding;
    if (label.empty() && config.embeddings.size() == 1) label = config.embeddings[0].label;
    for (const std::string* name : {&t.x, &t.y, &t.a, &t.b}) {
      const StimulusGroupSpec* g = groups.at(*name);
      for (const std::string& token : g->tokens) {
        vocab[label].insert(token);
        if (config.policy.lowercase_fallback) vocab[label].insert(ascii_lower_copy(token));
      }
    }
  }
  return vocab;
}

}  // namespace

std::vector<ReportRow> run_suite(const SuiteConfig& config) {
  validate_config(config);

  std::unordered_map<std::string, const StimulusGroupSpec*> groups;
  for (const StimulusGroupSpec& g : config.groups) groups.emplace(g.name, &g);
  std::unordered_map<std::string, const EmbeddingSource*> sources;
  for (const EmbeddingSource& e : config.embeddings) sources.emplace(e.label, &e);

  // Load each referenced embedding once, restricted to the suite vocabulary.
  auto vocab = needed_vocabulary(config);
  std::unordered_map<std::string, EmbeddingSpace> spaces;
  for (const auto& [label, tokens] : vocab) {
    if (label.empty()) continue;  // vector-file-only tests
    const EmbeddingSource* src = sources.at(label);
    std::filesystem::path path(src->path);
    if (path.is_relative() && !config.base_dir.empty()) path = config.base_dir / path;
    LoadOptions options;
    options.expected_dimension = src->dimension;
    options.vocabulary = tokens.empty() ? nullptr : &tokens;
    options.source_label = label;
    spaces.emplace(label, load_embedding_file(path, options));
  }

  std::vector<ReportRow> rows;
  rows.reserve(config.tests.size());
  for (const TestDef& t : config.tests) {
    ReportRow row;
    row.name = t.name;
    row.title = t.title.empty() ? t.name : t.title;
    try {
      std::string label = t.embedding;
      if (label.empty() && config.embeddings.size() == 1) label = config.embeddings[0].label;
      const EmbeddingSpace* space = nullptr;
      if (auto it = spaces.find(label); it != spaces.end()) space = &it->second;

      auto resolve = [&](const std::string& group_name) {
        return resolve_group(space, *groups.at(group_name), config.policy, &row.warnings,
                             config.base_dir);
      };
      const ResolvedGroup x = resolve(t.x);
      const ResolvedGroup y = resolve(t.y);
      const ResolvedGroup a = resolve(t.a);
      const ResolvedGroup b = resolve(t.b);

      row.result = run_ml_eat(x, y, a, b, config.strategy, config.engine, &row.warnings);
      row.verdict_x = verdict(row.result.level2_x, config.thresholds.effect_threshold,
                              config.thresholds.alpha);
      row.verdict_y = verdict(row.result.level2_y, config.thresholds.effect_threshold,
                              config.thresholds.alpha);
      row.pattern = classify(row.verdict_x, row.verdict_y);
      row.anisotropy = anisotropy_diagnostic(
          row.result.cell_xa, row.result.cell_xb, row.result.cell_ya, row.result.cell_yb,
          config.thresholds.anisotropy_mean, config.thresholds.anisotropy_std);
      if (row.anisotropy.flagged) row.warnings.push_back(row.anisotropy.rationale);
      row.ok = true;
    } catch (const Error& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

// --------------------------------------------------------------- rendering

std::string pad_left(const std::string& text, std::size_t display_width,
                     std::size_t column_width) {
  std::string out;
  if (display_width < column_width) out.assign(column_width - display_width, ' ');
  return out + text;
}

std::string pad_right(const std::string& text, std::size_t column_width) {
  std::string out = text;
  if (out.size() < column_width) out.resize(column_width, ' ');
  return out;
}

// Display width of a Level 2 cell; the middle-dot marker is two bytes but one
// column.
std::size_t l2_width(const std::string& cell) {
  std::size_t w = cell.size();
  if (cell.size() >= 2 && cell.compare(cell.size() - 2, 2, kDotMarker) == 0) w -= 1;
  return w;
}

std::string render_table(const std::vector<ReportRow>& rows) {
  std::size_t name_w = 4;
  for (const ReportRow& r : rows) name_w = std::max(name_w, r.name.size());

  constexpr std::size_t kL1 = 9, kL2 = 12, kL3 = 12, kPattern = 17;
  std::ostringstream out;
  out << pad_right("Test", name_w) << pad_left("Level 1", 7, kL1)
      << pad_left("L2 (A,B,X)", 10, kL2) << pad_left("L2 (A,B,Y)", 10, kL2)
      << pad_left("L3 (A,X)", 8, kL3) << pad_left("L3 (B,X)", 8, kL3)
      << pad_left("L3 (A,Y)", 8, kL3) << pad_left("L3 (B,Y)", 8, kL3) << "  "
      << pad_right("Pattern", kPattern) << "Notes" << '\n';

  for (const ReportRow& r : rows) {
    out << pad_right(r.name, name_w);
    if (!r.ok) {
      out << "  ERROR: " << r.error << '\n';
      continue;
    }
    const std::string l1 = fmt_effect(r.result.level1);
    const std::string l2x = fmt_effect(r.result.level2_x) + " " + marker(r.result.level2_x);
    const std::string l2y = fmt_effect(r.result.level2_y) + " " + marker(r.result.level2_y);
    out << pad_left(l1, l1.size(), kL1) << pad_left(l2x, l2_width(l2x), kL2)
        << pad_left(l2y, l2_width(l2y), kL2);
    for (const CellStats* c :
         {&r.result.cell_xa, &r.result.cell_xb, &r.result.cell_ya, &r.result.cell_yb}) {
      const std::string cell = fmt_cell(*c);
      out << pad_left(cell, cell.size(), kL3);
    }
    out << "  " << pad_right(std::string(pattern_name(r.pattern)), kPattern)
        << (r.anisotropy.flagged ? "anisotropic" : "") << '\n';
  }
  return out.str();
}

void append_effect_csv(std::ostringstream& out, const ReportRow& r, const EffectSize& e) {
  if (!r.ok) {
    out << ",,,,";
    return;
  }
  out << shortest_double(e.d) << ',' << shortest_double(e.p_greater) << ','
      << shortest_double(e.p_less) << ',' << shortest_double(e.p_equal) << ','
      << (e.significant ? "true" : "false");
}

std::string render_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "test,error,"
         "d1,p1_greater,p1_less,p1_equal,sig1,"
         "d2x,p2x_greater,p2x_less,p2x_equal,sig2x,"
         "d2y,p2y_greater,p2y_less,p2y_equal,sig2y,"
         "mean_xa,std_xa,count_xa,mean_xb,std_xb,count_xb,"
         "mean_ya,std_ya,count_ya,mean_yb,std_yb,count_yb,"
         "pattern,direction,anisotropy,warnings\n";
  for (const ReportRow& r : rows) {
    out << csv_field(r.name) << ',' << csv_field(r.error) << ',';
    append_effect_csv(out, r, r.result.level1);
    out << ',';
    append_effect_csv(out, r, r.result.level2_x);
    out << ',';
    append_effect_csv(out, r, r.result.level2_y);
    out << ',';
    for (const CellStats* c :
         {&r.result.cell_xa, &r.result.cell_xb, &r.result.cell_ya, &r.result.cell_yb}) {
      if (r.ok)
        out << shortest_double(c->mean) << ',' << shortest_double(c->std_dev) << ','
            << c->count << ',';
      else
        out << ",,,";
    }
    if (r.ok)
      out << pattern_name(r.pattern) << ',' << direction_name(pattern_direction(r.pattern))
          << ',' << (r.anisotropy.flagged ? "true" : "false");
    else
      out << ",,";
    std::string joined;
    for (const std::string& w : r.warnings) {
      if (!joined.empty()) joined += "; ";
      joined += w;
    }
    out << ',' << csv_field(joined) << '\n';
  }
  return out.str();
}

json effect_to_json(const EffectSize& e) {
  return json{{"d", e.d},
              {"p_greater", e.p_greater},
              {"p_less", e.p_less},
              {"p_equal", e.p_equal},
              {"significant", e.significant},
              {"all_ties", e.all_ties},
              {"mode", mode_string(e.resolved_mode)},
              {"draws", e.draws}};
}

json cell_to_json(const CellStats& c) {
  return json{{"mean", c.mean},
              {"std", c.std_dev},
              {"count", c.count},
              {"degenerate", c.degenerate}};
}

json verdict_to_json(const Level2Verdict& v) {
  return json{{"toward", std::string(toward_name(v.toward))}, {"d", v.d}, {"p_used", v.p_used}};
}

}  // namespace

std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format) {
  if (format == ReportFormat::table) return render_table(rows);
  if (format == ReportFormat::csv) return render_csv(rows);

  json out;
  out["rows"] = json::array();
  for (const ReportRow& r : rows) {
    json row;
    row["test"] = r.name;
    row["title"] = r.title;
    row["ok"] = r.ok;
    row["error"] = r.error.empty() ? json() : json(r.error);
    row["warnings"] = r.warnings;
    if (r.ok) {
      row["level1"] = effect_to_json(r.result.level1);
      row["level2_x"] = effect_to_json(r.result.level2_x);
      row["level2_y"] = effect_to_json(r.result.level2_y);
      row["level3"] = json{{"xa", cell_to_json(r.result.cell_xa)},
                           {"xb", cell_to_json(r.result.cell_xb)},
                           {"ya", cell_to_json(r.result.cell_ya)},
                           {"yb", cell_to_json(r.result.cell_yb)}};
      row["verdicts"] =
          json{{"x", verdict_to_json(r.verdict_x)}, {"y", verdict_to_json(r.verdict_y)}};
      row["pattern"] = std::string(pattern_name(r.pattern));
      row["direction"] = std::string(direction_name(pattern_direction(r.pattern)));
      row["anisotropy"] = json{{"flagged", r.anisotropy.flagged},
                               {"min_cell_mean", r.anisotropy.min_cell_mean},
                               {"max_cell_mean", r.anisotropy.max_cell_mean},
                               {"max_cell_std", r.anisotropy.max_cell_std},
                               {"rationale", r.anisotropy.rationale}};
      row["groups"] = json{
          {"x", json{{"name", r.result.meta.x_name}, {"size", r.result.meta.nx}}},
          {"y", json{{"name", r.result.meta.y_name}, {"size", r.result.meta.ny}}},
          {"a", json{{"name", r.result.meta.a_name}, {"size", r.result.meta.na}}},
          {"b", json{{"name", r.result.meta.b_name}, {"size", r.result.meta.nb}}}};
      row["strategy"] = json{{"mode", mode_string(r.result.meta.strategy.mode)},
                             {"samples", r.result.meta.strategy.samples},
                             {"seed", r.result.meta.strategy.seed},
                             {"exact_limit", r.result.meta.strategy.exact_limit}};
    }
    out["rows"].push_back(std::move(row));
  }
  return out.dump(2) + "\n";
}

std::vector<EatMapEntry> eatmap_entries_from_report(const std::string& report_json) {
  json root;
  try {
    root = json::parse(report_json);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  const json* rows = opt_member(root, "rows");
  if (!rows || !rows->is_array())
    throw ConfigError("report JSON has no 'rows' array; expected the json report format");

  std::vector<EatMapEntry> entries;
  for (const json& row : *rows) {
    if (!row.is_object()) continue;
    const json* ok = opt_member(row, "ok");
    if (!ok || !ok->is_boolean() || !ok->get<bool>()) continue;
    const json* verdicts = opt_member(row, "verdicts");
    const json* groups = opt_member(row, "groups");
    if (!verdicts || !groups) continue;

    auto toward_of = [&](const char* key) {
      const json* v = opt_member(*verdicts, key);
      if (!v) return std::string("none");
      return require_string(*v, "toward", "report verdicts");
    };
    auto name_of = [&](const char* key) {
      const json* g = opt_member(*groups, key);
      if (!g) return std::string(key);
      return require_string(*g, "name", "report groups");
    };

    EatMapEntry entry;
    entry.name = require_string(row, "test", "report row");
    const std::string tx = toward_of("x");
    const std::string ty = toward_of("y");
    entry.shading.xa = tx == "A";
    entry.shading.xb = tx == "B";
    entry.shading.ya = ty == "A";
    entry.shading.yb = ty == "B";
    entry.shading.x_label = name_of("x");
    entry.shading.y_label = name_of("y");
    entry.shading.a_label = name_of("a");
    entry.shading.b_label = name_of("b");
    entries.push_back(std::move(entry));
  }
  return entries;
}

DiachronicConfig parse_diachronic_config(const std::string& json_text,
                                         const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  DiachronicConfig config;
  config.base_dir = base_dir;

  const json* slices = opt_member(root, "slices");
  if (!slices || !slices->is_array() || slices->empty())
    throw ConfigError("diachronic config needs a non-empty 'slices' array");
  for (const json& v : *slices) {
    DiachronicSlice slice;
    if (!v.is_object()) throw ConfigError("slices: each slice must be an object");
    slice.label = require_string(v, "label", "slices");
    slice.path = require_string(v, "path", "slices");
    if (const json* d = opt_member(v, "dimension"))
      slice.dimension = read_count(*d, "dimension", "slices");
    config.slices.push_back(std::move(slice));
  }

  if (const json* v = opt_member(root, "strategy"))
    parse_strategy(*v, config.strategy, config.engine);
  if (const json* v = opt_member(root, "thresholds"))
    parse_thresholds(*v, config.thresholds, config.engine);
  if (const json* v = opt_member(root, "policy")) parse_policy(*v, config.policy, config.engine);
  config.engine.alpha = config.thresholds.alpha;

  if (const json* b = opt_member(root, "builtin")) {
    const std::string builtin_name = b->get<std::string>();
    const BuiltinTest* builtin = find_builtin(builtin_name);
    if (!builtin) throw ConfigError("unknown builtin '" + builtin_name + "'");
    SuiteConfig scratch;
    add_builtin_test(scratch, *builtin, "", "");
    config.groups = std::move(scratch.groups);
    config.test = std::move(scratch.tests.front());
    return config;
  }

  const json* groups = opt_member(root, "groups");
  const json* test = opt_member(root, "test");
  if (!groups || !test)
    throw ConfigError("diachronic config needs either 'builtin' or 'groups' plus 'test'");
  parse_groups(*groups, config.groups);
  const std::string where = "test";
  config.test.name = require_string(*test, "name", where);
  config.test.x = require_string(*test, "x", where);
  config.test.y = require_string(*test, "y", where);
  config.test.a = require_string(*test, "a", where);
  config.test.b = require_string(*test, "b", where);
  return config;
}

DiachronicConfig load_diachronic_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_diachronic_config(buffer.str(), path.parent_path());
}

std::vector<DiachronicRecord> diachronic_run(const DiachronicConfig& config) {
  std::unordered_map<std::string, const StimulusGroupSpec*> groups;
  for (const StimulusGroupSpec& g : config.groups)
    if (!groups.emplace(g.name, &g).second)
      throw ConfigError("duplicate group name '" + g.name + "'");
  for (const std::string* name :
       {&config.test.x, &config.test.y, &config.test.a, &config.test.b})
    if (!groups.count(*name))
      throw ConfigError("test '" + config.test.name + "': unknown group '" + *name + "'");

  std::unordered_set<std::string> vocabulary;
  for (const auto& [name, spec] : groups)
    for (const std::string& token : spec->tokens) {
      vocabulary.insert(token);
      if (config.policy.lowercase_fallback) vocabulary.insert(ascii_lower_copy(token));
    }

  std::vector<DiachronicRecord> records;
  records.reserve(config.slices.size());
  std::size_t failures = 0;
  for (const DiachronicSlice& slice : config.slices) {
    DiachronicRecord rec;
    rec.label = slice.label;
    try {
      std::filesystem::path path(slice.path);
      if (path.is_relative() && !config.base_dir.empty()) path = config.base_dir / path;
      LoadOptions options;
      options.expected_dimension = slice.dimension;
      options.vocabulary = vocabulary.empty() ? nullptr : &vocabulary;
      options.source_label = slice.label;
      const EmbeddingSpace space = load_embedding_file(path, options);

      std::vector<std::string> warnings;
      auto resolve = [&](const std::string& group_name) {
        return resolve_group(&space, *groups.at(group_name), config.policy, &warnings,
                             config.base_dir);
      };
      const ResolvedGroup x = resolve(config.test.x);
      const ResolvedGroup y = resolve(config.test.y);
      const ResolvedGroup a = resolve(config.test.a);
      const ResolvedGroup b = resolve(config.test.b);

      const MlEatResult result =
          run_ml_eat(x, y, a, b, config.strategy, config.engine, &warnings);
      rec.level1 = result.level1;
      rec.level2_x = result.level2_x;
      rec.level2_y = result.level2_y;
      rec.pattern = classify(
          verdict(result.level2_x, config.thresholds.effect_threshold, config.thresholds.alpha),
          verdict(result.level2_y, config.thresholds.effect_threshold,
                  config.thresholds.alpha));
      rec.ok = true;
    } catch (const Error& e) {
      rec.ok = false;
      rec.error = e.what();
      ++failures;
    }
    records.push_back(std::move(rec));
  }
  if (failures == config.slices.size())
    throw Error("all " + std::to_string(failures) +
                " slices failed; first: " + records.front().error);
  return records;
}

std::string diachronic_csv(const std::vector<DiachronicRecord>& records) {
  std::ostringstream out;
  out << "label,d1,p1,d2x,p2x,d2y,p2y,pattern\n";
  auto directed_p = [](const EffectSize& e) {
    return e.d >= 0.0 ? e.p_greater : e.p_less;
  };
  for (const DiachronicRecord& r : records) {
    if (!r.ok) continue;
    out << csv_field(r.label) << ',' << shortest_double(r.level1.d) << ','
        << shortest_double(directed_p(r.level1)) << ',' << shortest_double(r.level2_x.d) << ','
        << shortest_double(directed_p(r.level2_x)) << ',' << shortest_double(r.level2_y.d)
        << ',' << shortest_double(directed_p(r.level2_y)) << ',' << pattern_name(r.pattern)
        << '\n';
  }
  return out.str();
}

}  // namespace mleat
