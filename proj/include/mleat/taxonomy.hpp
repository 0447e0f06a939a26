#ifndef MLEAT_TAXONOMY_HPP
#define MLEAT_TAXONOMY_HPP

#include <string>
#include <string_view>

#include "mleat/association.hpp"
#include "mleat/ml_eat.hpp"

namespace mleat {

enum class Toward { A, B, none };

std::string_view toward_name(Toward t);

// The call a single Level 2 result makes: pulled toward A, toward B, or
// neither. p_used is the direction-consistent one-sided p the call rests on.
struct Level2Verdict {
  Toward toward = Toward::none;
  double d = 0.0;
  double p_used = 1.0;
};

// Toward A when d >= +effect_threshold and p_greater < alpha; toward B when
// d <= -effect_threshold and p_less < alpha; none otherwise.
Level2Verdict verdict(const EffectSize& effect, double effect_threshold = 0.2,
                      double alpha = 0.05);

// The nine association patterns a (verdict X, verdict Y) pair can form.
enum class EatPattern {
  AB_Divergent,
  BA_Divergent,
  A_Uniform,
  B_Uniform,
  AX_Singular,
  AY_Singular,
  BX_Singular,
  BY_Singular,
  Non_Directional,
};

enum class PatternDirection { Divergent, Uniform, Singular, Non_Directional };

// Total over all nine verdict combinations.
EatPattern classify(const Level2Verdict& x_verdict, const Level2Verdict& y_verdict);

PatternDirection pattern_direction(EatPattern pattern);

// Serialized forms: "AB-Divergent", ..., "Non-Directional".
std::string_view pattern_name(EatPattern pattern);
std::string_view direction_name(PatternDirection direction);

// Round-trip of pattern_name; throws ConfigError on unknown names.
EatPattern pattern_from_name(std::string_view name);

// Flags the degenerate regime where every Level 3 cell shows near-identical,
// near-unit cosines, which hollows out Level 1/2 readings.
struct AnisotropyDiagnostic {
  bool flagged = false;
  double min_cell_mean = 0.0;
  double max_cell_mean = 0.0;
  double max_cell_std = 0.0;
  std::string rationale;
};

AnisotropyDiagnostic anisotropy_diagnostic(const CellStats& xa, const CellStats& xb,
                                           const CellStats& ya, const CellStats& yb,
                                           double mean_threshold = 0.95,
                                           double std_threshold = 0.05);

}  // namespace mleat

#endif
