#include "mleat/eatmap.hpp"

#include <algorithm>

namespace mleat {

EatMapShading shading_from_verdicts(const Level2Verdict& x_verdict,
                                    const Level2Verdict& y_verdict, std::string x_label,
                                    std::string y_label, std::string a_label,
                                    std::string b_label) {
  EatMapShading s;
  s.xa = x_verdict.toward == Toward::A;
  s.xb = x_verdict.toward == Toward::B;
  s.ya = y_verdict.toward == Toward::A;
  s.yb = y_verdict.toward == Toward::B;
  s.x_label = std::move(x_label);
  s.y_label = std::move(y_label);
  s.a_label = std::move(a_label);
  s.b_label = std::move(b_label);
  return s;
}

namespace {

constexpr int kCell = 100;
constexpr int kLeft = 60;   // room for the attribute labels
constexpr int kTop = 36;    // room for the target labels
constexpr const char* kShadedFill = "#d62728";
constexpr const char* kUnshadedFill = "#cccccc";

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void append_rect(std::string& out, int x, int y, bool shaded) {
  out += "  <rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
         std::to_string(kCell) + "\" height=\"" + std::to_string(kCell) + "\" fill=\"" +
         (shaded ? kShadedFill : kUnshadedFill) + "\" stroke=\"#333333\"/>\n";
}

void append_text(std::string& out, int x, int y, const char* anchor, const std::string& text) {
  out += "  <text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
         "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"" + anchor + "\">" +
         escape_xml(text) + "</text>\n";
}

}  // namespace

std::string render_eatmap_svg(const EatMapShading& s) {
  const int width = kLeft + 2 * kCell + 12;
  const int height = kTop + 2 * kCell + 12;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n";
  // column headers: X left, Y right
  append_text(out, kLeft + kCell / 2, kTop - 12, "middle", s.x_label);
  append_text(out, kLeft + kCell + kCell / 2, kTop - 12, "middle", s.y_label);
  // row labels: A top, B bottom
  append_text(out, kLeft - 10, kTop + kCell / 2 + 5, "end", s.a_label);
  append_text(out, kLeft - 10, kTop + kCell + kCell / 2 + 5, "end", s.b_label);
  // row A, then row B
  append_rect(out, kLeft, kTop, s.xa);
  append_rect(out, kLeft + kCell, kTop, s.ya);
  append_rect(out, kLeft, kTop + kCell, s.xb);
  append_rect(out, kLeft + kCell, kTop + kCell, s.yb);
  out += "</svg>\n";
  return out;
}

std::string render_eatmap_ascii(const EatMapShading& s) {
  const std::size_t row_w = std::max(s.a_label.size(), s.b_label.size());
  const std::size_t col_w = std::max<std::size_t>({4, s.x_label.size(), s.y_label.size()});

  auto pad = [](const std::string& text, std::size_t width) {
    std::string out = text;
    out.resize(width, ' ');
    return out;
  };
  auto cell = [&](bool shaded) { return pad(shaded ? "[##]" : "[  ]", col_w); };
  auto rstrip = [](std::string line) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line;
  };

  std::string out;
  out += rstrip(std::string(row_w, ' ') + "  " + pad(s.x_label, col_w) + " " +
                pad(s.y_label, col_w)) +
         "\n";
  out += rstrip(pad(s.a_label, row_w) + "  " + cell(s.xa) + " " + cell(s.ya)) + "\n";
  out += rstrip(pad(s.b_label, row_w) + "  " + cell(s.xb) + " " + cell(s.yb)) + "\n";
  return out;
}

std::string render_eatmap(const EatMapShading& shading, MapFormat format) {
  return format == MapFormat::svg ? render_eatmap_svg(shading) : render_eatmap_ascii(shading);
}

}  // namespace mleat
