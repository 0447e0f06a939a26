#ifndef MLEAT_EATMAP_HPP
#define MLEAT_EATMAP_HPP

#include <string>

#include "mleat/taxonomy.hpp"

namespace mleat {

// A 2x2 association map: targets X (left column) and Y (right column)
// against attributes A (top row) and B (bottom row). A cell is shaded when
// the column's target is significantly pulled toward the row's attribute, so
// at most one cell per column is shaded.
struct EatMapShading {
  bool xa = false, xb = false;
  bool ya = false, yb = false;
  std::string x_label = "X", y_label = "Y";
  std::string a_label = "A", b_label = "B";
};

EatMapShading shading_from_verdicts(const Level2Verdict& x_verdict,
                                    const Level2Verdict& y_verdict, std::string x_label = "X",
                                    std::string y_label = "Y", std::string a_label = "A",
                                    std::string b_label = "B");

enum class MapFormat { svg, ascii };

// Both renderings are byte-deterministic with LF line endings. Shaded cells
// are #d62728, unshaded #cccccc in SVG; [##] versus [  ] in ASCII.
std::string render_eatmap(const EatMapShading& shading, MapFormat format);
std::string render_eatmap_svg(const EatMapShading& shading);
std::string render_eatmap_ascii(const EatMapShading& shading);

}  // namespace mleat

#endif
