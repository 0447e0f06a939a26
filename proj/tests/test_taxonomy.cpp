#include <doctest.h>

#include <set>
#include <vector>

#include "mleat/errors.hpp"
#include "mleat/taxonomy.hpp"

using namespace mleat;

namespace {

EffectSize effect(double d, double p_greater, double p_less) {
  EffectSize e;
  e.d = d;
  e.p_greater = p_greater;
  e.p_less = p_less;
  if (d > 0.0)
    e.significant = p_greater < 0.05;
  else if (d < 0.0)
    e.significant = p_less < 0.05;
  return e;
}

Level2Verdict vd(Toward t) {
  Level2Verdict v;
  v.toward = t;
  return v;
}

}  // namespace

TEST_CASE("verdict requires both the effect and the tail") {
  const Level2Verdict a = verdict(effect(0.25, 0.01, 0.99));
  CHECK(a.toward == Toward::A);
  CHECK(a.d == 0.25);
  CHECK(a.p_used == 0.01);

  const Level2Verdict b = verdict(effect(-0.25, 0.99, 0.01));
  CHECK(b.toward == Toward::B);
  CHECK(b.p_used == 0.01);

  // strong but not significant
  CHECK(verdict(effect(0.8, 0.06, 0.94)).toward == Toward::none);
  // significant but weak
  CHECK(verdict(effect(0.19, 0.01, 0.99)).toward == Toward::none);
  // boundary: the threshold itself qualifies
  CHECK(verdict(effect(0.2, 0.049, 0.951)).toward == Toward::A);
  CHECK(verdict(effect(-0.2, 0.951, 0.049)).toward == Toward::B);
  // alpha is strict
  CHECK(verdict(effect(0.5, 0.05, 0.95)).toward == Toward::none);
  // a zero effect reports the greater tail as its p
  const Level2Verdict z = verdict(effect(0.0, 0.5, 0.5));
  CHECK(z.toward == Toward::none);
  CHECK(z.p_used == 0.5);
}

TEST_CASE("verdict honors custom thresholds") {
  CHECK(verdict(effect(0.15, 0.01, 0.99), 0.1, 0.05).toward == Toward::A);
  CHECK(verdict(effect(0.25, 0.08, 0.92), 0.2, 0.1).toward == Toward::A);
  CHECK(verdict(effect(0.25, 0.08, 0.92), 0.3, 0.1).toward == Toward::none);
}

TEST_CASE("classification is total and the nine patterns are distinct") {
  const Toward all[] = {Toward::A, Toward::B, Toward::none};
  std::set<EatPattern> seen;
  std::set<std::string> names;
  int divergent = 0, uniform = 0, singular = 0, nondir = 0;
  for (Toward tx : all)
    for (Toward ty : all) {
      const EatPattern p = classify(vd(tx), vd(ty));
      seen.insert(p);
      names.insert(std::string(pattern_name(p)));
      switch (pattern_direction(p)) {
        case PatternDirection::Divergent: ++divergent; break;
        case PatternDirection::Uniform: ++uniform; break;
        case PatternDirection::Singular: ++singular; break;
        case PatternDirection::Non_Directional: ++nondir; break;
      }
    }
  CHECK(seen.size() == 9);
  CHECK(names.size() == 9);
  CHECK(divergent == 2);
  CHECK(uniform == 2);
  CHECK(singular == 4);
  CHECK(nondir == 1);
}

TEST_CASE("specific verdict pairs map to the published patterns") {
  CHECK(classify(vd(Toward::A), vd(Toward::B)) == EatPattern::AB_Divergent);
  CHECK(classify(vd(Toward::B), vd(Toward::A)) == EatPattern::BA_Divergent);
  CHECK(classify(vd(Toward::A), vd(Toward::A)) == EatPattern::A_Uniform);
  CHECK(classify(vd(Toward::B), vd(Toward::B)) == EatPattern::B_Uniform);
  CHECK(classify(vd(Toward::A), vd(Toward::none)) == EatPattern::AX_Singular);
  CHECK(classify(vd(Toward::none), vd(Toward::A)) == EatPattern::AY_Singular);
  CHECK(classify(vd(Toward::B), vd(Toward::none)) == EatPattern::BX_Singular);
  CHECK(classify(vd(Toward::none), vd(Toward::B)) == EatPattern::BY_Singular);
  CHECK(classify(vd(Toward::none), vd(Toward::none)) == EatPattern::Non_Directional);
}

TEST_CASE("pattern names round-trip") {
  const EatPattern all[] = {EatPattern::AB_Divergent, EatPattern::BA_Divergent,
                            EatPattern::A_Uniform,    EatPattern::B_Uniform,
                            EatPattern::AX_Singular,  EatPattern::AY_Singular,
                            EatPattern::BX_Singular,  EatPattern::BY_Singular,
                            EatPattern::Non_Directional};
  for (EatPattern p : all) CHECK(pattern_from_name(pattern_name(p)) == p);
  CHECK(pattern_name(EatPattern::AB_Divergent) == "AB-Divergent");
  CHECK(pattern_name(EatPattern::Non_Directional) == "Non-Directional");
  CHECK(direction_name(PatternDirection::Singular) == "Singular");
  CHECK_THROWS_AS((void)pattern_from_name("Sideways"), ConfigError);
}

TEST_CASE("anisotropy diagnostic") {
  auto cell = [](double mean, double std_dev) {
    CellStats c;
    c.mean = mean;
    c.std_dev = std_dev;
    c.count = 64;
    return c;
  };

  const AnisotropyDiagnostic hot =
      anisotropy_diagnostic(cell(0.97, 0.01), cell(0.96, 0.02), cell(0.98, 0.01),
                            cell(0.99, 0.03));
  CHECK(hot.flagged);
  CHECK(hot.min_cell_mean == 0.96);
  CHECK(hot.max_cell_std == 0.03);
  CHECK_FALSE(hot.rationale.empty());

  const AnisotropyDiagnostic low_mean =
      anisotropy_diagnostic(cell(0.97, 0.01), cell(0.94, 0.02), cell(0.98, 0.01),
                            cell(0.99, 0.03));
  CHECK_FALSE(low_mean.flagged);
  CHECK(low_mean.rationale.find("mean") != std::string::npos);

  const AnisotropyDiagnostic wide =
      anisotropy_diagnostic(cell(0.97, 0.01), cell(0.96, 0.06), cell(0.98, 0.01),
                            cell(0.99, 0.03));
  CHECK_FALSE(wide.flagged);

  // a healthy space is far from the gate
  const AnisotropyDiagnostic healthy =
      anisotropy_diagnostic(cell(0.12, 0.2), cell(0.08, 0.15), cell(0.11, 0.18),
                            cell(0.02, 0.22));
  CHECK_FALSE(healthy.flagged);

  // tighter thresholds are monotone: anything flagged at (0.95, 0.05) is
  // flagged at (0.9, 0.1)
  const AnisotropyDiagnostic loose =
      anisotropy_diagnostic(cell(0.97, 0.01), cell(0.96, 0.02), cell(0.98, 0.01),
                            cell(0.99, 0.03), 0.9, 0.1);
  CHECK(loose.flagged);
}
