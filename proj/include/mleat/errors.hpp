#ifndef MLEAT_ERRORS_HPP
#define MLEAT_ERRORS_HPP

#include <cstddef>
#include <exception>
#include <string>
#include <string_view>
#include <vector>

namespace mleat {

// Base of every error the library throws. Callers that need to annotate an
// error with where it happened (e.g. "level2_y") can add_context() and rethrow
// the same object, preserving the concrete type.
class Error : public std::exception {
 public:
  explicit Error(std::string message) : message_(std::move(message)) { rebuild(); }

  const char* what() const noexcept override { return full_.c_str(); }
  const std::string& message() const { return message_; }
  const std::string& context() const { return context_; }

  void add_context(std::string_view ctx) {
    if (context_.empty())
      context_ = std::string(ctx);
    else
      context_ = std::string(ctx) + ": " + context_;
    rebuild();
  }

 private:
  void rebuild() { full_ = context_.empty() ? message_ : context_ + ": " + message_; }

  std::string message_;
  std::string context_;
  std::string full_;
};

// Parsing and shape errors. line_no is 1-based; 0 means not tied to a line.
class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(std::string message, std::size_t line = 0)
      : Error(std::move(message)), line_no(line) {}
  std::size_t line_no;
};

class MalformedFloat : public Error {
 public:
  explicit MalformedFloat(std::string message, std::size_t line = 0)
      : Error(std::move(message)), line_no(line) {}
  std::size_t line_no;
};

class DuplicateToken : public Error {
 public:
  explicit DuplicateToken(std::string tok)
      : Error("duplicate token '" + tok + "'"), token(std::move(tok)) {}
  std::string token;
};

class EmptyFile : public Error {
 public:
  explicit EmptyFile(std::string message = "no content") : Error(std::move(message)) {}
};

class MissingToken : public Error {
 public:
  explicit MissingToken(std::string tok)
      : Error("token '" + tok + "' not found"), token(std::move(tok)) {}
  std::string token;
};

// Raised for any group that contains one or more zero-norm vectors. 'items'
// names the offenders (tokens, or "row N" for vector files).
class ZeroNormVector : public Error {
 public:
  explicit ZeroNormVector(std::vector<std::string> offenders);
  std::vector<std::string> items;
};

class EmptyGroupAfterResolution : public Error {
 public:
  explicit EmptyGroupAfterResolution(std::string message) : Error(std::move(message)) {}
};

class UnequalTargetSizes : public Error {
 public:
  UnequalTargetSizes(std::size_t nx, std::size_t ny);
  std::size_t nx, ny;
};

class UnequalAttributeSizes : public Error {
 public:
  UnequalAttributeSizes(std::size_t na, std::size_t nb);
  std::size_t na, nb;
};

class PartitionOverflow : public Error {
 public:
  explicit PartitionOverflow(std::string message) : Error(std::move(message)) {}
};

class DegenerateDistribution : public Error {
 public:
  explicit DegenerateDistribution(std::string message) : Error(std::move(message)) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::string message) : Error(std::move(message)) {}
};

class IoError : public Error {
 public:
  explicit IoError(std::string message) : Error(std::move(message)) {}
};

}  // namespace mleat

#endif
