#include "mleat/errors.hpp"

namespace mleat {

ZeroNormVector::ZeroNormVector(std::vector<std::string> offenders)
    : Error([&offenders] {
        std::string msg = "zero-norm vector(s):";
        for (const auto& o : offenders) msg += " " + o;
        return msg;
      }()),
      items(std::move(offenders)) {}

UnequalTargetSizes::UnequalTargetSizes(std::size_t x, std::size_t y)
    : Error("target groups differ in size (" + std::to_string(x) + " vs " + std::to_string(y) +
            ")"),
      nx(x),
      ny(y) {}

UnequalAttributeSizes::UnequalAttributeSizes(std::size_t a, std::size_t b)
    : Error("attribute groups differ in size (" + std::to_string(a) + " vs " +
            std::to_string(b) + ")"),
      na(a),
      nb(b) {}

}  // namespace mleat
