#ifndef MLEAT_EMBEDDING_SPACE_HPP
#define MLEAT_EMBEDDING_SPACE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mleat {

// Immutable token -> vector collection. Vectors are stored as float32 rows;
// all downstream math accumulates in double.
class EmbeddingSpace {
 public:
  EmbeddingSpace() = default;

  // Throws DimensionMismatch when data.size() != tokens.size() * dimension and
  // DuplicateToken when a token repeats.
  EmbeddingSpace(std::size_t dimension, std::string source_label,
                 std::vector<std::string> tokens, std::vector<float> data);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return tokens_.size(); }
  const std::string& source_label() const { return source_label_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::span<const float> row(std::size_t i) const;

  // Exact, case-sensitive. Throws MissingToken.
  std::span<const float> lookup(const std::string& token) const;
  // Exact, case-sensitive. Returns nullptr when absent.
  const float* find(const std::string& token) const;

 private:
  std::size_t dimension_ = 0;
  std::string source_label_;
  std::vector<std::string> tokens_;
  std::vector<float> data_;  // size() * dimension_, row-major
  std::unordered_map<std::string, std::size_t> index_;
};

struct LoadOptions {
  // Validated against the file when set; otherwise the dimension is inferred
  // from the first line (or from the binary header).
  std::optional<std::size_t> expected_dimension;
  // When non-null only these tokens are materialized; other lines are skipped
  // without float validation. Full loads validate every line.
  const std::unordered_set<std::string>* vocabulary = nullptr;
  std::string source_label;
};

// Text format: one entry per line, "token SP f1 SP ... SP fd". Throws
// EmptyFile, DimensionMismatch(line), MalformedFloat(line), DuplicateToken.
EmbeddingSpace load_embedding_space(std::istream& in, const LoadOptions& options = {});

// Emits "token f1 ... fd\n" with 9 significant digits per component, which
// round-trips float32 values exactly. Entry order is the space's token order.
void save_embedding_space(const EmbeddingSpace& space, std::ostream& out);

// Binary cache: magic "MLEA", u32 version, u32 dim, u64 count, then per entry
// a u32 byte length, the UTF-8 token, and dim little-endian float32 values.
void write_embedding_cache(const EmbeddingSpace& space, std::ostream& out);
EmbeddingSpace read_embedding_cache(std::istream& in, const LoadOptions& options = {});

// Opens path and dispatches on the magic bytes: cache files go through
// read_embedding_cache, anything else through the text loader.
EmbeddingSpace load_embedding_file(const std::filesystem::path& path,
                                   const LoadOptions& options = {});

}  // namespace mleat

#endif
