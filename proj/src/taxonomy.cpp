#include "mleat/taxonomy.hpp"

#include <array>
#include <cstdio>

#include "mleat/errors.hpp"

namespace mleat {

std::string_view toward_name(Toward t) {
  switch (t) {
    case Toward::A: return "A";
    case Toward::B: return "B";
    case Toward::none: return "none";
  }
  return "?";
}

Level2Verdict verdict(const EffectSize& effect, double effect_threshold, double alpha) {
  Level2Verdict v;
  v.d = effect.d;
  v.p_used = effect.d >= 0.0 ? effect.p_greater : effect.p_less;
  if (effect.d >= effect_threshold && effect.p_greater < alpha)
    v.toward = Toward::A;
  else if (effect.d <= -effect_threshold && effect.p_less < alpha)
    v.toward = Toward::B;
  return v;
}

EatPattern classify(const Level2Verdict& x_verdict, const Level2Verdict& y_verdict) {
  const Toward x = x_verdict.toward;
  const Toward y = y_verdict.toward;
  if (x == Toward::A && y == Toward::B) return EatPattern::AB_Divergent;
  if (x == Toward::B && y == Toward::A) return EatPattern::BA_Divergent;
  if (x == Toward::A && y == Toward::A) return EatPattern::A_Uniform;
  if (x == Toward::B && y == Toward::B) return EatPattern::B_Uniform;
  if (x == Toward::A) return EatPattern::AX_Singular;
  if (y == Toward::A) return EatPattern::AY_Singular;
  if (x == Toward::B) return EatPattern::BX_Singular;
  if (y == Toward::B) return EatPattern::BY_Singular;
  return EatPattern::Non_Directional;
}

PatternDirection pattern_direction(EatPattern pattern) {
  switch (pattern) {
    case EatPattern::AB_Divergent:
    case EatPattern::BA_Divergent: return PatternDirection::Divergent;
    case EatPattern::A_Uniform:
    case EatPattern::B_Uniform: return PatternDirection::Uniform;
    case EatPattern::AX_Singular:
    case EatPattern::AY_Singular:
    case EatPattern::BX_Singular:
    case EatPattern::BY_Singular: return PatternDirection::Singular;
    case EatPattern::Non_Directional: return PatternDirection::Non_Directional;
  }
  return PatternDirection::Non_Directional;
}

std::string_view pattern_name(EatPattern pattern) {
  switch (pattern) {
    case EatPattern::AB_Divergent: return "AB-Divergent";
    case EatPattern::BA_Divergent: return "BA-Divergent";
    case EatPattern::A_Uniform: return "A-Uniform";
    case EatPattern::B_Uniform: return "B-Uniform";
    case EatPattern::AX_Singular: return "AX-Singular";
    case EatPattern::AY_Singular: return "AY-Singular";
    case EatPattern::BX_Singular: return "BX-Singular";
    case EatPattern::BY_Singular: return "BY-Singular";
    case EatPattern::Non_Directional: return "Non-Directional";
  }
  return "?";
}

std::string_view direction_name(PatternDirection direction) {
  switch (direction) {
    case PatternDirection::Divergent: return "Divergent";
    case PatternDirection::Uniform: return "Uniform";
    case PatternDirection::Singular: return "Singular";
    case PatternDirection::Non_Directional: return "Non-Directional";
  }
  return "?";
}

EatPattern pattern_from_name(std::string_view name) {
  static constexpr std::array<EatPattern, 9> all = {
      EatPattern::AB_Divergent, EatPattern::BA_Divergent, EatPattern::A_Uniform,
      EatPattern::B_Uniform,    EatPattern::AX_Singular,  EatPattern::AY_Singular,
      EatPattern::BX_Singular,  EatPattern::BY_Singular,  EatPattern::Non_Directional};
  for (EatPattern p : all)
    if (pattern_name(p) == name) return p;
  throw ConfigError("unknown pattern name '" + std::string(name) + "'");
}

AnisotropyDiagnostic anisotropy_diagnostic(const CellStats& xa, const CellStats& xb,
                                           const CellStats& ya, const CellStats& yb,
                                           double mean_threshold, double std_threshold) {
  struct Named {
    const char* label;
    const CellStats* cell;
  };
  const std::array<Named, 4> cells = {
      Named{"(X,A)", &xa}, Named{"(X,B)", &xb}, Named{"(Y,A)", &ya}, Named{"(Y,B)", &yb}};

  AnisotropyDiagnostic diag;
  diag.min_cell_mean = cells[0].cell->mean;
  diag.max_cell_mean = cells[0].cell->mean;
  diag.max_cell_std = cells[0].cell->std_dev;
  for (const Named& c : cells) {
    diag.min_cell_mean = std::min(diag.min_cell_mean, c.cell->mean);
    diag.max_cell_mean = std::max(diag.max_cell_mean, c.cell->mean);
    diag.max_cell_std = std::max(diag.max_cell_std, c.cell->std_dev);
  }
  diag.flagged = diag.min_cell_mean >= mean_threshold && diag.max_cell_std <= std_threshold;

  char buf[160];
  if (diag.flagged) {
    std::snprintf(buf, sizeof(buf),
                  "all cell means >= %.2f and stds <= %.2f (means %.3f..%.3f, max std %.3f); "
                  "cosine spread is too narrow to separate the groups",
                  mean_threshold, std_threshold, diag.min_cell_mean, diag.max_cell_mean,
                  diag.max_cell_std);
    diag.rationale = buf;
  } else {
    std::string witness;
    for (const Named& c : cells) {
      if (c.cell->mean < mean_threshold) {
        std::snprintf(buf, sizeof(buf), "cell %s mean %.3f below %.2f", c.label, c.cell->mean,
                      mean_threshold);
        witness = buf;
        break;
      }
      if (c.cell->std_dev > std_threshold) {
        std::snprintf(buf, sizeof(buf), "cell %s std %.3f above %.2f", c.label,
                      c.cell->std_dev, std_threshold);
        witness = buf;
        break;
      }
    }
    diag.rationale = "not flagged: " + witness;
  }
  return diag;
}

}  // namespace mleat
