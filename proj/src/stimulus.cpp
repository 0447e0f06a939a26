#include "mleat/stimulus.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "mleat/errors.hpp"

namespace mleat {

std::string_view role_name(GroupRole role) {
  switch (role) {
    case GroupRole::target_X: return "target_X";
    case GroupRole::target_Y: return "target_Y";
    case GroupRole::attribute_A: return "attribute_A";
    case GroupRole::attribute_B: return "attribute_B";
  }
  return "?";
}

ResolvedGroup ResolvedGroup::from_vectors(std::string name,
                                          const std::vector<std::vector<float>>& rows) {
  ResolvedGroup g;
  g.name = std::move(name);
  if (rows.empty()) return g;
  g.dimension = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != g.dimension)
      throw DimensionMismatch("row " + std::to_string(i + 1) + " of group '" + g.name +
                              "' has " + std::to_string(rows[i].size()) + " components, not " +
                              std::to_string(g.dimension));
    g.data.insert(g.data.end(), rows[i].begin(), rows[i].end());
    g.provenance.push_back("row " + std::to_string(i + 1));
  }
  return g;
}

namespace {

bool is_zero_norm(std::span<const float> v) {
  for (float c : v)
    if (c != 0.0f) return false;
  return true;
}

std::string ascii_lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

ResolvedGroup resolve_tokens(const EmbeddingSpace& space, const StimulusGroupSpec& spec,
                             const ResolvePolicy& policy, std::vector<std::string>* warnings) {
  ResolvedGroup g;
  g.name = spec.name;
  g.dimension = space.dimension();
  std::vector<std::string> dropped;
  for (const auto& token : spec.tokens) {
    const float* vec = space.find(token);
    if (!vec && policy.lowercase_fallback) {
      const std::string lowered = ascii_lower(token);
      if (lowered != token) {
        vec = space.find(lowered);
        if (vec && warnings)
          warnings->push_back("group '" + spec.name + "': token '" + token +
                              "' resolved via lowercase fallback as '" + lowered + "'");
      }
    }
    if (!vec) {
      if (policy.on_missing == ResolvePolicy::OnMissing::strict) {
        MissingToken err(token);
        err.add_context("group '" + spec.name + "'");
        throw err;
      }
      dropped.push_back(token);
      continue;
    }
    g.data.insert(g.data.end(), vec, vec + space.dimension());
    g.provenance.push_back(token);
  }
  if (warnings)
    for (const auto& token : dropped)
      warnings->push_back("group '" + spec.name + "': token '" + token + "' not found, dropped");
  return g;
}

ResolvedGroup resolve_vector_file(const EmbeddingSpace* space, const StimulusGroupSpec& spec,
                                  const std::filesystem::path& base_dir) {
  std::filesystem::path path(spec.vector_file);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vector file '" + path.string() + "'");

  ResolvedGroup g;
  g.name = spec.name;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const char* p = line.data();
    const char* end = line.data() + line.size();
    std::vector<float> row;
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      const char* start = p;
      while (p < end && *p != ' ' && *p != '\t') ++p;
      float value = 0.0f;
      auto [ptr, ec] = std::from_chars(start, p, value);
      if (ec != std::errc() || ptr != p)
        throw MalformedFloat("line " + std::to_string(line_no) + " of '" + path.string() +
                                 "': '" + std::string(start, p) + "' is not a float",
                             line_no);
      row.push_back(value);
    }
    if (row.empty()) continue;
    if (g.dimension == 0) g.dimension = row.size();
    if (row.size() != g.dimension)
      throw DimensionMismatch("line " + std::to_string(line_no) + " of '" + path.string() +
                                  "': expected " + std::to_string(g.dimension) +
                                  " components, found " + std::to_string(row.size()),
                              line_no);
    g.data.insert(g.data.end(), row.begin(), row.end());
    g.provenance.push_back("row " + std::to_string(g.size()));
  }
  if (space && g.dimension != 0 && g.dimension != space->dimension())
    throw DimensionMismatch("vector file '" + path.string() + "' has dimension " +
                            std::to_string(g.dimension) + " but the embedding space has " +
                            std::to_string(space->dimension()));
  return g;
}

}  // namespace

ResolvedGroup resolve_group(const EmbeddingSpace* space, const StimulusGroupSpec& spec,
                            const ResolvePolicy& policy, std::vector<std::string>* warnings,
                            const std::filesystem::path& base_dir) {
  const bool has_tokens = !spec.tokens.empty();
  const bool has_file = !spec.vector_file.empty();
  if (has_tokens == has_file)
    throw ConfigError("group '" + spec.name +
                      "' must have exactly one source (token list or vector file)");

  ResolvedGroup g;
  if (has_tokens) {
    if (!space)
      throw ConfigError("group '" + spec.name +
                        "' is a token list but no embedding space was given");
    g = resolve_tokens(*space, spec, policy, warnings);
  } else {
    g = resolve_vector_file(space, spec, base_dir);
  }

  if (g.size() == 0)
    throw EmptyGroupAfterResolution("group '" + spec.name + "' resolved to no vectors");

  std::vector<std::string> zeros;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (is_zero_norm(g.item(i))) zeros.push_back(g.provenance[i]);
  if (!zeros.empty()) {
    ZeroNormVector err(std::move(zeros));
    err.add_context("group '" + spec.name + "'");
    throw err;
  }

  if (warnings && g.size() < kMinGroupSize)
    warnings->push_back("group '" + spec.name + "' has only " + std::to_string(g.size()) +
                        " members (fewer than " + std::to_string(kMinGroupSize) +
                        "); effect sizes will be noisy");
  if (!spec.display.empty()) g.name = spec.display;
  return g;
}

ValidationReport validate_query(const ResolvedGroup& x, const ResolvedGroup& y,
                                const ResolvedGroup& a, const ResolvedGroup& b) {
  ValidationReport report;
  if (x.size() != y.size())
    report.errors.push_back({ValidationIssue::Kind::unequal_targets,
                             "target groups '" + x.name + "' and '" + y.name +
                                 "' differ in size (" + std::to_string(x.size()) + " vs " +
                                 std::to_string(y.size()) + ")"});
  if (a.size() != b.size())
    report.errors.push_back({ValidationIssue::Kind::unequal_attributes,
                             "attribute groups '" + a.name + "' and '" + b.name +
                                 "' differ in size (" + std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()) + ")"});
  const std::size_t dim = x.dimension;
  for (const ResolvedGroup* g : {&y, &a, &b})
    if (g->dimension != dim) {
      report.errors.push_back({ValidationIssue::Kind::mixed_dimensions,
                               "group '" + g->name + "' has dimension " +
                                   std::to_string(g->dimension) + " but '" + x.name + "' has " +
                                   std::to_string(dim)});
      break;
    }
  for (const ResolvedGroup* g : {&x, &y, &a, &b})
    if (g->size() < kMinGroupSize)
      report.warnings.push_back({ValidationIssue::Kind::below_minimum,
                                 "group '" + g->name + "' has only " +
                                     std::to_string(g->size()) + " members (fewer than " +
                                     std::to_string(kMinGroupSize) + ")"});
  return report;
}

}  // namespace mleat
