#include <doctest.h>

#include <cstring>
#include <random>
#include <sstream>
#include <unordered_set>

#include "mleat/embedding_space.hpp"
#include "mleat/errors.hpp"

#include "oracles.hpp"

using namespace mleat;

namespace {

EmbeddingSpace load_text(const std::string& text, const LoadOptions& options = {}) {
  std::istringstream in(text);
  return load_embedding_space(in, options);
}

EmbeddingSpace random_space(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
  std::uniform_real_distribution<float> dist(-3.0f, 3.0f);
  std::vector<std::string> tokens;
  std::vector<float> data;
  for (std::size_t i = 0; i < count; ++i) {
    tokens.push_back("tok" + std::to_string(i));
    for (std::size_t j = 0; j < dim; ++j) data.push_back(dist(rng));
  }
  return EmbeddingSpace(dim, "random", std::move(tokens), std::move(data));
}

}  // namespace

TEST_CASE("loads a small text embedding") {
  const EmbeddingSpace space = load_text(
      "dog 1 0 0\n"
      "cat 0 1 0\n"
      "ram -0.5 2.25 1e-3\n");
  CHECK(space.size() == 3);
  CHECK(space.dimension() == 3);
  CHECK(space.tokens()[0] == "dog");
  const auto ram = space.lookup("ram");
  CHECK(ram[0] == -0.5f);
  CHECK(ram[1] == 2.25f);
  CHECK(ram[2] == 0.001f);
}

TEST_CASE("lookup is case sensitive and find reports absence") {
  const EmbeddingSpace space = load_text("dog 1 0\n");
  CHECK(space.find("dog") != nullptr);
  CHECK(space.find("Dog") == nullptr);
  CHECK_THROWS_AS((void)space.lookup("Dog"), MissingToken);
}

TEST_CASE("tabs, CRLF and blank lines are tolerated") {
  const EmbeddingSpace space = load_text("dog\t1\t0\r\n\n  \ncat 0 1\r\n");
  CHECK(space.size() == 2);
  CHECK(space.lookup("cat")[1] == 1.0f);
}

TEST_CASE("dimension mismatch points at the offending line") {
  try {
    load_text("a 1 0\nb 0\n");
    FAIL("expected DimensionMismatch");
  } catch (const DimensionMismatch& e) {
    CHECK(e.line_no == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("malformed float points at the offending line and field") {
  try {
    load_text("a 1 0\nb 0 zebra\n");
    FAIL("expected MalformedFloat");
  } catch (const MalformedFloat& e) {
    CHECK(e.line_no == 2);
    CHECK(std::string(e.what()).find("zebra") != std::string::npos);
  }
}

TEST_CASE("duplicate tokens and empty files are rejected") {
  CHECK_THROWS_AS(load_text("a 1 0\na 0 1\n"), DuplicateToken);
  CHECK_THROWS_AS(load_text(""), EmptyFile);
  CHECK_THROWS_AS(load_text("\n   \n"), EmptyFile);
}

TEST_CASE("expected dimension is enforced") {
  LoadOptions options;
  options.expected_dimension = 3;
  CHECK_THROWS_AS(load_text("a 1 0\n", options), DimensionMismatch);
  CHECK(load_text("a 1 0 2\n", options).dimension() == 3);
}

TEST_CASE("vocabulary filter materializes only requested tokens") {
  const std::unordered_set<std::string> vocab{"dog", "cat"};
  LoadOptions options;
  options.vocabulary = &vocab;
  // the junk line is outside the vocabulary and must be skipped unparsed
  const EmbeddingSpace space = load_text(
      "dog 1 0\n"
      "junk not floats\n"
      "cat 0 1\n"
      "horse 1 1\n",
      options);
  CHECK(space.size() == 2);
  CHECK(space.find("horse") == nullptr);
  CHECK(space.find("cat") != nullptr);
}

TEST_CASE("text save/load round-trips float32 exactly") {
  std::mt19937_64 rng(21);
  const EmbeddingSpace space = random_space(rng, 17, 5);
  std::ostringstream out;
  save_embedding_space(space, out);
  const EmbeddingSpace back = load_text(out.str());
  REQUIRE(back.size() == space.size());
  REQUIRE(back.dimension() == space.dimension());
  for (std::size_t i = 0; i < space.size(); ++i) {
    CHECK(back.tokens()[i] == space.tokens()[i]);
    const auto a = space.row(i), b = back.row(i);
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0);
  }
}

TEST_CASE("binary cache round-trips and filters") {
  std::mt19937_64 rng(22);
  const EmbeddingSpace space = random_space(rng, 9, 4);
  std::ostringstream out(std::ios::binary);
  write_embedding_cache(space, out);
  const std::string bytes = out.str();
  CHECK(bytes.compare(0, 4, "MLEA") == 0);

  std::istringstream in(bytes, std::ios::binary);
  const EmbeddingSpace back = read_embedding_cache(in);
  REQUIRE(back.size() == space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto a = space.row(i), b = back.row(i);
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0);
  }

  const std::unordered_set<std::string> vocab{"tok3"};
  LoadOptions options;
  options.vocabulary = &vocab;
  std::istringstream in2(bytes, std::ios::binary);
  const EmbeddingSpace filtered = read_embedding_cache(in2, options);
  CHECK(filtered.size() == 1);
  CHECK(filtered.find("tok3") != nullptr);
}

TEST_CASE("cache rejects bad magic and truncation") {
  std::mt19937_64 rng(23);
  const EmbeddingSpace space = random_space(rng, 3, 2);
  std::ostringstream out(std::ios::binary);
  write_embedding_cache(space, out);
  std::string bytes = out.str();

  std::istringstream bad("XXXX" + bytes.substr(4), std::ios::binary);
  CHECK_THROWS_AS(read_embedding_cache(bad), IoError);

  std::istringstream cut(bytes.substr(0, bytes.size() - 3), std::ios::binary);
  CHECK_THROWS_AS(read_embedding_cache(cut), IoError);
}

TEST_CASE("load_embedding_file dispatches on magic bytes") {
  std::mt19937_64 rng(24);
  const EmbeddingSpace space = random_space(rng, 6, 3);

  std::ostringstream text;
  save_embedding_space(space, text);
  const auto text_path = oracle::write_temp("dispatch_text.txt", text.str());

  std::ostringstream cache(std::ios::binary);
  write_embedding_cache(space, cache);
  const auto cache_path = oracle::write_temp("dispatch_cache.bin", cache.str());

  const EmbeddingSpace from_text = load_embedding_file(text_path);
  const EmbeddingSpace from_cache = load_embedding_file(cache_path);
  CHECK(from_text.size() == space.size());
  CHECK(from_cache.size() == space.size());
  CHECK(from_text.source_label() == "dispatch_text.txt");

  CHECK_THROWS_AS(load_embedding_file(oracle::temp_file("missing_file.txt")), IoError);
}

TEST_CASE("constructor validates shape and duplicates") {
  CHECK_THROWS_AS(EmbeddingSpace(3, "x", {"a", "b"}, {1.0f, 2.0f, 3.0f}), DimensionMismatch);
  CHECK_THROWS_AS(EmbeddingSpace(1, "x", {"a", "a"}, {1.0f, 2.0f}), DuplicateToken);
}
