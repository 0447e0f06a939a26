#ifndef MLEAT_BUILTIN_STIMULI_HPP
#define MLEAT_BUILTIN_STIMULI_HPP

#include <string>
#include <string_view>
#include <vector>

namespace mleat {

// A canned four-group query shipped with the toolkit.
struct BuiltinTest {
  std::string name;   // CLI/config identifier, e.g. "flower-insect-pu25"
  std::string title;  // display label, e.g. "Flower/Insect P/U25"
  std::string x_name, y_name, a_name, b_name;
  std::vector<std::string> x, y, a, b;
};

// All built-in tests: the ten classic word-embedding association queries plus
// the diachronic math/arts variant with historical-corpus substitutions.
const std::vector<BuiltinTest>& builtin_tests();

// nullptr when the name is unknown.
const BuiltinTest* find_builtin(std::string_view name);

// The ten test names, in canonical report order, that make up the standard
// word-embedding audit suite.
const std::vector<std::string>& builtin_suite_caliskan10();

}  // namespace mleat

#endif
