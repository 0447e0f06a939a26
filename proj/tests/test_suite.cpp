#include <doctest.h>

#include <json.hpp>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mleat/builtin_stimuli.hpp"
#include "mleat/errors.hpp"
#include "mleat/suite.hpp"

#include "oracles.hpp"

using namespace mleat;
using nlohmann::json;

namespace {

// Four clustered stimulus groups written to one embedding file. X and A sit
// near the first axis, Y and B near the second, so every test direction is
// known in advance.
struct SuiteFixture {
  std::filesystem::path path;
  oracle::Group x, y, a, b;
};

SuiteFixture make_fixture(const std::string& filename, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t dim = 8;
  oracle::Vec e1(dim, 0.0f), e2(dim, 0.0f);
  e1[0] = 1.0f;
  e2[1] = 1.0f;

  SuiteFixture f;
  f.x = oracle::clustered_group(rng, 8, dim, e1, 0.3);
  f.y = oracle::clustered_group(rng, 8, dim, e2, 0.3);
  f.a = oracle::clustered_group(rng, 8, dim, e1, 0.3);
  f.b = oracle::clustered_group(rng, 8, dim, e2, 0.3);

  std::vector<std::string> tokens;
  std::vector<float> data;
  auto push = [&](const char* prefix, const oracle::Group& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      tokens.push_back(prefix + std::to_string(i));
      data.insert(data.end(), g[i].begin(), g[i].end());
    }
  };
  push("x", f.x);
  push("y", f.y);
  push("a", f.a);
  push("b", f.b);

  const EmbeddingSpace space(dim, "fixture", std::move(tokens), std::move(data));
  std::ostringstream out;
  save_embedding_space(space, out);
  f.path = oracle::write_temp(filename, out.str());
  return f;
}

std::string tokens_json(const char* prefix, std::size_t n) {
  std::string out = "[";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ",";
    out += "\"" + std::string(prefix) + std::to_string(i) + "\"";
  }
  return out + "]";
}

std::string fixture_config(const SuiteFixture& f) {
  return std::string(R"({
    "embeddings": {"toy": ")") +
         f.path.string() + R"("},
    "groups": {
      "gx": {"role": "target_X", "tokens": )" +
         tokens_json("x", 8) + R"(},
      "gy": {"role": "target_Y", "tokens": )" +
         tokens_json("y", 8) + R"(},
      "ga": {"role": "attribute_A", "tokens": )" +
         tokens_json("a", 8) + R"(},
      "gb": {"role": "attribute_B", "tokens": )" +
         tokens_json("b", 8) + R"(}
    },
    "tests": [{"name": "toy", "title": "Toy", "x": "gx", "y": "gy", "a": "ga", "b": "gb"}]
  })";
}

ReportRow sample_ok_row() {
  ReportRow r;
  r.name = "toy-test";
  r.title = "Toy";
  r.ok = true;
  r.result.level1.d = 1.5;
  r.result.level1.p_greater = 0.001;
  r.result.level1.p_less = 0.999;
  r.result.level1.significant = true;
  r.result.level1.draws = 12870;
  r.result.level2_x.d = 0.6012;
  r.result.level2_x.p_greater = 0.002;
  r.result.level2_x.p_less = 0.998;
  r.result.level2_x.significant = true;
  r.result.level2_y.d = -0.69;
  r.result.level2_y.p_greater = 0.97;
  r.result.level2_y.p_less = 0.03;
  r.result.level2_y.significant = true;
  r.result.cell_xa = {0.10, 0.10, 64, false};
  r.result.cell_xb = {0.062, 0.081, 64, false};
  r.result.cell_ya = {-0.004, 0.07, 64, false};
  r.result.cell_yb = {0.13, 0.12, 64, false};
  r.result.meta.x_name = "Targets-X";
  r.result.meta.y_name = "Targets-Y";
  r.result.meta.a_name = "Attr-A";
  r.result.meta.b_name = "Attr-B";
  r.result.meta.nx = r.result.meta.ny = 8;
  r.result.meta.na = r.result.meta.nb = 8;
  r.verdict_x = {Toward::A, 0.6012, 0.002};
  r.verdict_y = {Toward::B, -0.69, 0.03};
  r.pattern = EatPattern::AB_Divergent;
  r.anisotropy.flagged = true;
  r.anisotropy.rationale = "all cell means high";
  return r;
}

ReportRow sample_error_row() {
  ReportRow r;
  r.name = "broken";
  r.title = "broken";
  r.ok = false;
  r.error = "group 'gx': token 'missing' not found";
  return r;
}

}  // namespace

TEST_CASE("run_suite computes what the reference computes") {
  const SuiteFixture f = make_fixture("suite_fixture_main.txt", 101);
  const SuiteConfig config = parse_suite_config(fixture_config(f));
  const std::vector<ReportRow> rows = run_suite(config);
  REQUIRE(rows.size() == 1);
  const ReportRow& r = rows[0];
  REQUIRE(r.ok);
  CHECK(r.error.empty());

  CHECK(r.result.level1.d ==
        doctest::Approx(oracle::level1_effect(f.x, f.y, f.a, f.b)).epsilon(1e-12));
  CHECK(r.result.level2_x.d ==
        doctest::Approx(oracle::level2_effect(f.x, f.a, f.b)).epsilon(1e-12));
  const oracle::PValues p1 = oracle::level1_pvalues(f.x, f.y, f.a, f.b);
  CHECK(r.result.level1.p_greater == p1.p_greater);
  CHECK(r.result.level1.p_less == p1.p_less);

  const oracle::CellStats xa = oracle::cell_stats(f.x, f.a);
  CHECK(r.result.cell_xa.mean == doctest::Approx(xa.mean).epsilon(1e-12));
  CHECK(r.result.cell_xa.count == 64);

  // clustered construction pins the directions
  CHECK(r.verdict_x.toward == Toward::A);
  CHECK(r.verdict_y.toward == Toward::B);
  CHECK(r.pattern == EatPattern::AB_Divergent);
  CHECK_FALSE(r.anisotropy.flagged);
}

TEST_CASE("a failing test is isolated to its row") {
  const SuiteFixture f = make_fixture("suite_fixture_isolate.txt", 102);
  std::string cfg = fixture_config(f);
  // add a second test whose group wants a token the embedding lacks
  const std::string extra =
      R"("tests": [{"name": "toy", "title": "Toy", "x": "gx", "y": "gy", "a": "ga", "b": "gb"},
                   {"name": "bad", "x": "gbad", "y": "gy", "a": "ga", "b": "gb"}])";
  cfg.replace(cfg.find(R"("tests": [{"name": "toy", "title": "Toy", "x": "gx", "y": "gy", "a": "ga", "b": "gb"}])"),
              std::string(R"("tests": [{"name": "toy", "title": "Toy", "x": "gx", "y": "gy", "a": "ga", "b": "gb"}])")
                  .size(),
              extra);
  cfg.replace(cfg.find("\"gx\": {"), 7,
              R"("gbad": {"role": "target_X", "tokens": ["nosuchtoken","x1","x2","x3","x4","x5","x6","x7"]}, "gx": {)");

  const SuiteConfig config = parse_suite_config(cfg);
  const std::vector<ReportRow> rows = run_suite(config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ok);
  CHECK_FALSE(rows[1].ok);
  CHECK(rows[1].error.find("nosuchtoken") != std::string::npos);
}

TEST_CASE("builtin tests expand with display labels") {
  // embedding covering every token of the builtin math/arts test
  const BuiltinTest* builtin = find_builtin("math-arts-male-female");
  REQUIRE(builtin != nullptr);
  std::mt19937_64 rng(103);
  std::vector<std::string> tokens;
  std::vector<float> data;
  for (const auto* list : {&builtin->x, &builtin->y, &builtin->a, &builtin->b})
    for (const std::string& tok : *list) {
      tokens.push_back(tok);
      const oracle::Vec v = oracle::random_unit(rng, 6);
      data.insert(data.end(), v.begin(), v.end());
    }
  const EmbeddingSpace space(6, "builtin", std::move(tokens), std::move(data));
  std::ostringstream out;
  save_embedding_space(space, out);
  const auto path = oracle::write_temp("suite_fixture_builtin.txt", out.str());

  const std::string cfg = std::string(R"({
    "embeddings": {"e": ")") + path.string() + R"("},
    "tests": [{"builtin": "math-arts-male-female"}]
  })";
  const SuiteConfig config = parse_suite_config(cfg);
  REQUIRE(config.tests.size() == 1);
  CHECK(config.tests[0].name == "math-arts-male-female");
  CHECK(config.groups.size() == 4);

  const std::vector<ReportRow> rows = run_suite(config);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].ok);
  CHECK(rows[0].result.meta.x_name == "Math");
  CHECK(rows[0].result.meta.b_name == "Female");
  CHECK(rows[0].result.meta.nx == 8);
}

TEST_CASE("builtin_suite_config assembles runnable configs") {
  const SuiteConfig ten = builtin_suite_config("caliskan10", "vectors.txt", 300);
  CHECK(ten.tests.size() == 10);
  CHECK(ten.groups.size() == 40);
  REQUIRE(ten.embeddings.size() == 1);
  CHECK(ten.embeddings[0].path == "vectors.txt");
  CHECK(ten.embeddings[0].dimension == 300);
  CHECK(ten.tests[0].name == "flower-insect-pu25");

  const SuiteConfig one = builtin_suite_config("young-old-pu8", "v.txt", std::nullopt);
  CHECK(one.tests.size() == 1);

  CHECK_THROWS_AS(builtin_suite_config("nope", "v.txt", std::nullopt), ConfigError);
}

TEST_CASE("config parsing rejects malformed input") {
  auto bad = [](const std::string& text) {
    CHECK_THROWS_AS(parse_suite_config(text), ConfigError);
  };
  bad("not json at all");
  bad("[]");
  bad(R"({"embeddings": 7})");
  bad(R"({"embeddings": {"e": 7}})");
  bad(R"({"groups": {"g": {"role": "sideways", "tokens": ["a"]}}})");
  bad(R"({"groups": {"g": {"role": "target_X"}}})");
  bad(R"({"groups": {"g": {"role": "target_X", "tokens": [], "vector_file": "v"}}})");
  bad(R"({"groups": {"g": {"role": "target_X", "tokens": []}}})");
  bad(R"({"groups": {"g": {"role": "target_X", "tokens": [7]}}})");
  bad(R"({"tests": [{"name": "t"}]})");
  bad(R"({"tests": [{"builtin": "no-such-builtin"}]})");
  bad(R"({"strategy": {"mode": "psychic"}})");
  bad(R"({"strategy": {"samples": 0}})");
  bad(R"({"thresholds": {"alpha": 1.5}})");
  bad(R"({"policy": {"on_missing": "shrug"}})");
  bad(R"({"output": {"format": "pdf"}})");

  // structural cross-reference failures
  const std::string groups = R"(
    "groups": {
      "gx": {"role": "target_X", "tokens": ["a","b","c","d","e","f","g","h"]},
      "gy": {"role": "target_Y", "tokens": ["a","b","c","d","e","f","g","h"]},
      "ga": {"role": "attribute_A", "tokens": ["a","b","c","d","e","f","g","h"]},
      "gb": {"role": "attribute_B", "tokens": ["a","b","c","d","e","f","g","h"]}
    })";
  bad(R"({"embeddings": {"e": "p"},)" + groups +
      R"(, "tests": [{"name":"t","x":"nope","y":"gy","a":"ga","b":"gb"}]})");
  bad(R"({"embeddings": {"e": "p"},)" + groups +
      R"(, "tests": [{"name":"t","x":"gy","y":"gy","a":"ga","b":"gb"}]})");  // role mismatch
  bad(R"({"embeddings": {"e": "p"},)" + groups +
      R"(, "tests": [{"name":"t","x":"gx","y":"gy","a":"ga","b":"gb","embedding":"missing"}]})");
  bad(R"({"embeddings": {"e": "p"},)" + groups +
      R"(, "tests": [{"name":"t","x":"gx","y":"gy","a":"ga","b":"gb"},
                     {"name":"t","x":"gx","y":"gy","a":"ga","b":"gb"}]})");  // dup test
  bad(R"({"embeddings": {"e": "p", "f": "q"},)" + groups +
      R"(, "tests": [{"name":"t","x":"gx","y":"gy","a":"ga","b":"gb"}]})");  // ambiguous

  // a valid config parses
  const SuiteConfig ok = parse_suite_config(
      R"({"embeddings": {"e": "p"},)" + groups +
      R"(, "tests": [{"name":"t","x":"gx","y":"gy","a":"ga","b":"gb"}],
          "strategy": {"mode": "mc", "samples": 5000, "seed": 3, "threads": 2},
          "thresholds": {"alpha": 0.01, "effect_threshold": 0.5, "std_convention": "population"},
          "policy": {"on_missing": "lenient", "lowercase": true, "allow_unequal": true},
          "output": {"format": "csv", "destination": "out.csv", "eatmap_dir": "maps"}})");
  CHECK(ok.strategy.mode == PermutationStrategy::Mode::monte_carlo);
  CHECK(ok.strategy.samples == 5000);
  CHECK(ok.engine.threads == 2);
  CHECK(ok.engine.alpha == 0.01);
  CHECK(ok.engine.std_convention == StdConvention::population);
  CHECK(ok.engine.allow_unequal);
  CHECK(ok.thresholds.effect_threshold == 0.5);
  CHECK(ok.policy.on_missing == ResolvePolicy::OnMissing::lenient);
  CHECK(ok.policy.lowercase_fallback);
  CHECK(ok.output.format == ReportFormat::csv);
  CHECK(ok.output.destination == "out.csv");
  CHECK(ok.output.eatmap_dir == "maps");
}

TEST_CASE("vector-file groups run without any embedding") {
  std::mt19937_64 rng(104);
  auto write_rows = [&](const std::string& name, std::size_t n) {
    std::ostringstream out;
    for (std::size_t i = 0; i < n; ++i) {
      const oracle::Vec v = oracle::random_unit(rng, 5);
      for (std::size_t j = 0; j < v.size(); ++j) out << (j ? " " : "") << v[j];
      out << "\n";
    }
    return oracle::write_temp(name, out.str());
  };
  write_rows("vf_x.txt", 8);
  write_rows("vf_y.txt", 8);
  write_rows("vf_a.txt", 8);
  write_rows("vf_b.txt", 8);

  const std::string cfg = R"({
    "groups": {
      "gx": {"role": "target_X", "vector_file": "vf_x.txt"},
      "gy": {"role": "target_Y", "vector_file": "vf_y.txt"},
      "ga": {"role": "attribute_A", "vector_file": "vf_a.txt"},
      "gb": {"role": "attribute_B", "vector_file": "vf_b.txt"}
    },
    "tests": [{"name": "raw", "x": "gx", "y": "gy", "a": "ga", "b": "gb"}]
  })";
  const SuiteConfig config = parse_suite_config(cfg, oracle::temp_dir());
  const std::vector<ReportRow> rows = run_suite(config);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ok);
}

TEST_CASE("table report formats effects the way publications do") {
  const std::vector<ReportRow> rows{sample_ok_row(), sample_error_row()};
  const std::string table = render_report(rows, ReportFormat::table);
  CHECK(table.find("1.50*") != std::string::npos);
  CHECK(table.find(".60* +") != std::string::npos);
  CHECK(table.find("-.69* -") != std::string::npos);
  CHECK(table.find(".10 (.10)") != std::string::npos);
  CHECK(table.find(".00 (.07)") != std::string::npos);  // -0.004 normalizes, no "-.00"
  CHECK(table.find("-.00") == std::string::npos);
  CHECK(table.find("AB-Divergent") != std::string::npos);
  CHECK(table.find("anisotropic") != std::string::npos);
  CHECK(table.find("ERROR: group 'gx': token 'missing' not found") != std::string::npos);
}

TEST_CASE("csv report is flat and exact") {
  const std::vector<ReportRow> rows{sample_ok_row(), sample_error_row()};
  const std::string csv = render_report(rows, ReportFormat::csv);
  std::istringstream lines(csv);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header.find("test,error,d1,p1_greater") == 0);
  CHECK(row1.find("toy-test,,1.5,0.001,0.999,") == 0);
  CHECK(row1.find("AB-Divergent,Divergent,true") != std::string::npos);
  CHECK(row2.find("broken,group 'gx': token 'missing' not found,,") == 0);

  // every row has the same number of fields as the header
  auto commas = [](const std::string& s) {
    std::size_t n = 0;
    bool quoted = false;
    for (char c : s) {
      if (c == '"') quoted = !quoted;
      if (c == ',' && !quoted) ++n;
    }
    return n;
  };
  CHECK(commas(header) == commas(row1));
  CHECK(commas(header) == commas(row2));
}

TEST_CASE("json report round-trips exact doubles and nests the full readout") {
  const std::vector<ReportRow> rows{sample_ok_row(), sample_error_row()};
  const json j = json::parse(render_report(rows, ReportFormat::json));
  REQUIRE(j["rows"].size() == 2);
  const json& r = j["rows"][0];
  CHECK(r["test"] == "toy-test");
  CHECK(r["ok"] == true);
  CHECK(r["level1"]["d"].get<double>() == 1.5);
  CHECK(r["level1"]["p_greater"].get<double>() == 0.001);
  CHECK(r["level1"]["significant"] == true);
  CHECK(r["level2_y"]["d"].get<double>() == -0.69);
  CHECK(r["level3"]["xa"]["mean"].get<double>() == 0.10);
  CHECK(r["level3"]["xa"]["count"] == 64);
  CHECK(r["verdicts"]["x"]["toward"] == "A");
  CHECK(r["verdicts"]["y"]["toward"] == "B");
  CHECK(r["pattern"] == "AB-Divergent");
  CHECK(r["direction"] == "Divergent");
  CHECK(r["anisotropy"]["flagged"] == true);
  CHECK(r["groups"]["x"]["name"] == "Targets-X");
  CHECK(r["groups"]["x"]["size"] == 8);

  const json& e = j["rows"][1];
  CHECK(e["ok"] == false);
  CHECK(e["error"] == "group 'gx': token 'missing' not found");
  CHECK_FALSE(e.contains("level1"));
}

TEST_CASE("eatmap entries rehydrate from the json report") {
  const std::vector<ReportRow> rows{sample_ok_row(), sample_error_row()};
  const std::string report = render_report(rows, ReportFormat::json);
  const std::vector<EatMapEntry> entries = eatmap_entries_from_report(report);
  REQUIRE(entries.size() == 1);  // error rows are skipped
  CHECK(entries[0].name == "toy-test");
  CHECK(entries[0].shading.xa);
  CHECK_FALSE(entries[0].shading.xb);
  CHECK(entries[0].shading.yb);
  CHECK(entries[0].shading.x_label == "Targets-X");
  CHECK(entries[0].shading.a_label == "Attr-A");

  CHECK_THROWS_AS(eatmap_entries_from_report("{}"), ConfigError);
  CHECK_THROWS_AS(eatmap_entries_from_report("no"), ConfigError);
}

TEST_CASE("diachronic runs slices in order and serializes deterministically") {
  std::vector<std::string> slice_paths;
  for (int k = 0; k < 5; ++k) {
    const SuiteFixture f = make_fixture("slice_" + std::to_string(k) + ".txt", 200 + k);
    slice_paths.push_back(f.path.string());
  }

  std::string slices = "[";
  for (int k = 0; k < 5; ++k) {
    if (k) slices += ",";
    slices += R"({"label": "19)" + std::to_string(50 + 10 * k) + R"(", "path": ")" +
              slice_paths[k] + R"("})";
  }
  slices += "]";

  const std::string cfg = R"({
    "slices": )" + slices + R"(,
    "groups": {
      "gx": {"role": "target_X", "tokens": )" + tokens_json("x", 8) + R"(},
      "gy": {"role": "target_Y", "tokens": )" + tokens_json("y", 8) + R"(},
      "ga": {"role": "attribute_A", "tokens": )" + tokens_json("a", 8) + R"(},
      "gb": {"role": "attribute_B", "tokens": )" + tokens_json("b", 8) + R"(}
    },
    "test": {"name": "drift", "x": "gx", "y": "gy", "a": "ga", "b": "gb"}
  })";

  const DiachronicConfig config = parse_diachronic_config(cfg);
  REQUIRE(config.slices.size() == 5);
  const std::vector<DiachronicRecord> records = diachronic_run(config);
  REQUIRE(records.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(records[k].ok);
    CHECK(records[k].label == "19" + std::to_string(50 + 10 * k));
  }

  const std::string csv1 = diachronic_csv(records);
  const std::string csv2 = diachronic_csv(diachronic_run(config));
  CHECK(csv1 == csv2);
  CHECK(csv1.find("label,d1,p1,d2x,p2x,d2y,p2y,pattern") == 0);

  // per-slice failures are recorded, not fatal
  std::string broken_cfg = cfg;
  broken_cfg.replace(broken_cfg.find(slice_paths[2]), slice_paths[2].size(),
                     "/nonexistent/embedding.txt");
  const std::vector<DiachronicRecord> partial =
      diachronic_run(parse_diachronic_config(broken_cfg));
  REQUIRE(partial.size() == 5);
  CHECK(partial[1].ok);
  CHECK_FALSE(partial[2].ok);
  CHECK_FALSE(partial[2].error.empty());
  CHECK(partial[3].ok);
  const std::string csv3 = diachronic_csv(partial);
  CHECK(csv3.find("1970") == std::string::npos);

  // all slices failing is fatal
  std::string dead_cfg = cfg;
  for (const std::string& p : slice_paths) {
    const auto at = dead_cfg.find(p);
    if (at != std::string::npos) dead_cfg.replace(at, p.size(), "/nonexistent/e.txt");
  }
  CHECK_THROWS_AS(diachronic_run(parse_diachronic_config(dead_cfg)), Error);
}

TEST_CASE("diachronic configs accept builtin shorthand") {
  const std::string cfg = R"({
    "slices": [{"label": "1990", "path": "x.txt"}],
    "builtin": "math-arts-histwords"
  })";
  const DiachronicConfig config = parse_diachronic_config(cfg);
  CHECK(config.groups.size() == 4);
  CHECK(config.test.name == "math-arts-histwords");
  CHECK(config.test.x == "math-arts-histwords.x");

  CHECK_THROWS_AS(parse_diachronic_config(R"({"slices": []})"), ConfigError);
  CHECK_THROWS_AS(parse_diachronic_config(R"({"builtin": "x"})"), ConfigError);
}
