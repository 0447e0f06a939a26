#ifndef MLEAT_STIMULUS_HPP
#define MLEAT_STIMULUS_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mleat/embedding_space.hpp"

namespace mleat {

enum class GroupRole { target_X, target_Y, attribute_A, attribute_B };

std::string_view role_name(GroupRole role);

// A stimulus group is either a token list resolved against an embedding space
// or a file of raw vectors (one row of floats per line). Exactly one source
// must be set.
struct StimulusGroupSpec {
  std::string name;
  GroupRole role = GroupRole::target_X;
  std::vector<std::string> tokens;
  std::string vector_file;
  // Optional label used in reports and map legends instead of name.
  std::string display;
};

struct ResolvedGroup {
  std::string name;
  std::size_t dimension = 0;
  std::vector<float> data;  // size() * dimension, row-major
  // Token each row came from, or "row N" for vector files. After a lenient
  // resolve this lists only the rows that survived.
  std::vector<std::string> provenance;

  std::size_t size() const { return dimension == 0 ? 0 : data.size() / dimension; }
  std::span<const float> item(std::size_t i) const {
    return {data.data() + i * dimension, dimension};
  }

  static ResolvedGroup from_vectors(std::string name,
                                    const std::vector<std::vector<float>>& rows);
};

struct ResolvePolicy {
  enum class OnMissing { strict, lenient };
  OnMissing on_missing = OnMissing::strict;
  // Retry a failed lookup with the ASCII-lowercased token (warns per use).
  bool lowercase_fallback = false;
};

// Minimum group size below which a warning (never an error) is emitted.
inline constexpr std::size_t kMinGroupSize = 8;

// Resolves a group spec. Token lists require a space; vector files do not,
// but are checked against the space's dimension when one is supplied.
// Zero-norm rows are always fatal. Warnings (lenient drops, lowercase
// fallbacks, below-minimum size) are appended to *warnings when non-null.
ResolvedGroup resolve_group(const EmbeddingSpace* space, const StimulusGroupSpec& spec,
                            const ResolvePolicy& policy = {},
                            std::vector<std::string>* warnings = nullptr,
                            const std::filesystem::path& base_dir = {});

struct ValidationIssue {
  enum class Kind { unequal_targets, unequal_attributes, mixed_dimensions, below_minimum };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;
  bool ok() const { return errors.empty(); }
};

// Shape checks for a four-group query: unequal |X|/|Y| or |A|/|B| and mixed
// dimensions are errors; groups below kMinGroupSize are warnings.
ValidationReport validate_query(const ResolvedGroup& x, const ResolvedGroup& y,
                                const ResolvedGroup& a, const ResolvedGroup& b);

}  // namespace mleat

#endif
