#include "mleat/embedding_space.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "mleat/errors.hpp"

namespace mleat {

EmbeddingSpace::EmbeddingSpace(std::size_t dimension, std::string source_label,
                               std::vector<std::string> tokens, std::vector<float> data)
    : dimension_(dimension),
      source_label_(std::move(source_label)),
      tokens_(std::move(tokens)),
      data_(std::move(data)) {
  if (data_.size() != tokens_.size() * dimension_)
    throw DimensionMismatch("data size " + std::to_string(data_.size()) +
                            " does not match " + std::to_string(tokens_.size()) + " rows of " +
                            std::to_string(dimension_) + " components");
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) throw DuplicateToken(tokens_[i]);
  }
}

std::span<const float> EmbeddingSpace::row(std::size_t i) const {
  return {data_.data() + i * dimension_, dimension_};
}

std::span<const float> EmbeddingSpace::lookup(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) throw MissingToken(token);
  return row(it->second);
}

const float* EmbeddingSpace::find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return nullptr;
  return data_.data() + it->second * dimension_;
}

namespace {

void split_fields(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < n && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
}

float parse_float_field(std::string_view field, std::size_t line_no) {
  float value = 0.0f;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw MalformedFloat(
        "line " + std::to_string(line_no) + ": '" + std::string(field) + "' is not a float",
        line_no);
  return value;
}

}  // namespace

EmbeddingSpace load_embedding_space(std::istream& in, const LoadOptions& options) {
  std::vector<std::string> tokens;
  std::vector<float> data;
  std::size_t dim = options.expected_dimension.value_or(0);
  bool have_dim = options.expected_dimension.has_value();

  std::string line;
  std::vector<std::string_view> fields;
  std::size_t line_no = 0;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    split_fields(line, fields);
    if (fields.empty()) continue;
    ++seen;
    if (!have_dim) {
      if (fields.size() < 2)
        throw DimensionMismatch("line " + std::to_string(line_no) +
                                    ": cannot infer dimension from a line with no components",
                                line_no);
      dim = fields.size() - 1;
      have_dim = true;
    }
    const std::string token(fields[0]);
    if (options.vocabulary && !options.vocabulary->count(token)) continue;
    if (fields.size() != dim + 1)
      throw DimensionMismatch("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(dim) + " components, found " +
                                  std::to_string(fields.size() - 1),
                              line_no);
    for (std::size_t k = 1; k < fields.size(); ++k)
      data.push_back(parse_float_field(fields[k], line_no));
    tokens.push_back(token);
  }
  if (seen == 0) throw EmptyFile("embedding source has no entries");
  return EmbeddingSpace(dim, options.source_label, std::move(tokens), std::move(data));
}

void save_embedding_space(const EmbeddingSpace& space, std::ostream& out) {
  char buf[64];
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << space.tokens()[i];
    for (float v : space.row(i)) {
      // 9 significant digits: lossless for float32.
      std::snprintf(buf, sizeof(buf), " %.9g", static_cast<double>(v));
      out << buf;
    }
    out << '\n';
  }
}

namespace {

constexpr char kMagic[4] = {'M', 'L', 'E', 'A'};
constexpr std::uint32_t kCacheVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw IoError("truncated embedding cache");
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t lo = get_u32(in);
  std::uint64_t hi = get_u32(in);
  return lo | hi << 32;
}

}  // namespace

void write_embedding_cache(const EmbeddingSpace& space, std::ostream& out) {
  out.write(kMagic, 4);
  put_u32(out, kCacheVersion);
  put_u32(out, static_cast<std::uint32_t>(space.dimension()));
  put_u64(out, space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const std::string& token = space.tokens()[i];
    put_u32(out, static_cast<std::uint32_t>(token.size()));
    out.write(token.data(), static_cast<std::streamsize>(token.size()));
    for (float v : space.row(i)) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
}

EmbeddingSpace read_embedding_cache(std::istream& in, const LoadOptions& options) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("not an embedding cache (bad magic)");
  const std::uint32_t version = get_u32(in);
  if (version != kCacheVersion)
    throw IoError("unsupported embedding cache version " + std::to_string(version));
  const std::size_t dim = get_u32(in);
  const std::uint64_t count = get_u64(in);
  if (options.expected_dimension && *options.expected_dimension != dim)
    throw DimensionMismatch("cache dimension " + std::to_string(dim) + " != expected " +
                            std::to_string(*options.expected_dimension));
  if (count == 0) throw EmptyFile("embedding cache has no entries");

  std::vector<std::string> tokens;
  std::vector<float> data;
  std::string token;
  std::vector<float> rowbuf(dim);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint32_t len = get_u32(in);
    token.resize(len);
    if (!in.read(token.data(), len)) throw IoError("truncated embedding cache");
    for (std::size_t k = 0; k < dim; ++k) rowbuf[k] = std::bit_cast<float>(get_u32(in));
    if (options.vocabulary && !options.vocabulary->count(token)) continue;
    tokens.push_back(token);
    data.insert(data.end(), rowbuf.begin(), rowbuf.end());
  }
  return EmbeddingSpace(dim, options.source_label, std::move(tokens), std::move(data));
}

EmbeddingSpace load_embedding_file(const std::filesystem::path& path,
                                   const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file '" + path.string() + "'");
  LoadOptions opts = options;
  if (opts.source_label.empty()) opts.source_label = path.filename().string();

  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  const bool is_cache = in.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0;
  in.clear();
  in.seekg(0);
  if (is_cache) return read_embedding_cache(in, opts);
  return load_embedding_space(in, opts);
}

}  // namespace mleat
