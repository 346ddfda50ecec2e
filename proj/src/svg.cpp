#include "schedyn/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace schedyn {

namespace {

constexpr double kScale = 10.0;  // px per unit

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  // normalize "-0.00" so coordinates have one spelling
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

struct Canvas {
  Box window;
  double px(double x) const { return (x - window.xmin) * kScale; }
  double py(double y) const { return (window.ymax - y) * kScale; }
  double width() const { return (window.xmax - window.xmin) * kScale; }
  double height() const { return (window.ymax - window.ymin) * kScale; }
};

const char* kAxisColor = "#c8c8c8";
const char* kPieceColor = "#444444";
const char* kFColor = "#1f6feb";
const char* kGColor = "#c03040";

void draw_piece(std::ostringstream& os, const Canvas& c, const Piece& piece) {
  switch (piece.shape) {
    case PieceShape::Disk:
    case PieceShape::DiskWithRays: {
      os << "<circle cx=\"" << num(c.px(piece.x)) << "\" cy=\""
         << num(c.py(piece.y)) << "\" r=\"" << num(piece.radius * kScale)
         << "\" fill=\"none\" stroke=\"" << kPieceColor
         << "\" stroke-width=\"1\"/>\n";
      if (piece.shape == PieceShape::DiskWithRays) {
        // rays {Re z = x, |Im z| >= radius} clipped to the window
        if (c.window.ymax > piece.radius)
          os << "<line x1=\"" << num(c.px(piece.x)) << "\" y1=\""
             << num(c.py(piece.radius)) << "\" x2=\"" << num(c.px(piece.x))
             << "\" y2=\"" << num(c.py(c.window.ymax)) << "\" stroke=\""
             << kPieceColor << "\" stroke-width=\"1\"/>\n";
        if (c.window.ymin < -piece.radius)
          os << "<line x1=\"" << num(c.px(piece.x)) << "\" y1=\""
             << num(c.py(-piece.radius)) << "\" x2=\"" << num(c.px(piece.x))
             << "\" y2=\"" << num(c.py(c.window.ymin)) << "\" stroke=\""
             << kPieceColor << "\" stroke-width=\"1\"/>\n";
      }
      os << "<text x=\"" << num(c.px(piece.x)) << "\" y=\""
         << num(c.py(piece.y) + 3.0)
         << "\" font-size=\"7\" font-family=\"monospace\" text-anchor=\"middle\" "
            "fill=\""
         << kPieceColor << "\">" << piece.label << "</text>\n";
      break;
    }
    case PieceShape::VLine:
      os << "<line x1=\"" << num(c.px(piece.x)) << "\" y1=\"0.00\" x2=\""
         << num(c.px(piece.x)) << "\" y2=\"" << num(c.height())
         << "\" stroke=\"" << kPieceColor
         << "\" stroke-width=\"0.6\" stroke-dasharray=\"1,2\"/>\n";
      os << "<text x=\"" << num(c.px(piece.x) + 2.0) << "\" y=\"10.00\" "
            "font-size=\"7\" font-family=\"monospace\" fill=\""
         << kPieceColor << "\">" << piece.label << "</text>\n";
      break;
    case PieceShape::HalfPlane: {
      const double top = std::max(piece.floor_im, c.window.ymin);
      os << "<rect x=\"0.00\" y=\"0.00\" width=\"" << num(c.width())
         << "\" height=\"" << num(c.py(top)) << "\" fill=\"" << kPieceColor
         << "\" fill-opacity=\"0.15\" stroke=\"" << kPieceColor
         << "\" stroke-width=\"1\"/>\n";
      break;
    }
  }
}

// The disk region a piece stands for: base disk or an indexed G/B disk.
std::optional<Region> piece_region(const Piece& piece) {
  if (piece.shape != PieceShape::Disk && piece.shape != PieceShape::DiskWithRays)
    return std::nullopt;
  if (piece.label == "G0") return Region::base();
  return parse_region(piece.label);
}

void draw_arrow(std::ostringstream& os, const Canvas& c, const Region& from,
                const Region& to, bool is_f) {
  const double x1 = double(centre_value(from));
  const double x2 = double(centre_value(to));
  const char* color = is_f ? kFColor : kGColor;
  const char* dash = is_f ? "" : " stroke-dasharray=\"4,3\"";
  const char* marker = is_f ? "url(#arrow-f)" : "url(#arrow-g)";
  if (from == to) {
    // self-map: a loop anchored on the disk rim, f above, g below
    const double y0 = is_f ? 1.0 : -1.0;
    const double lift = is_f ? 2.6 : -2.6;
    os << "<path d=\"M " << num(c.px(x1 - 0.5)) << " " << num(c.py(y0))
       << " C " << num(c.px(x1 - 1.4)) << " " << num(c.py(y0 + lift)) << " "
       << num(c.px(x1 + 1.4)) << " " << num(c.py(y0 + lift)) << " "
       << num(c.px(x1 + 0.5)) << " " << num(c.py(y0))
       << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\""
       << dash << " marker-end=\"" << marker << "\"/>\n";
    return;
  }
  // f arcs above the axis, g below; flatter for short hops
  const double span = x2 - x1;
  double lift = std::clamp(std::abs(span) * 0.22, 1.8, 9.0);
  if (!is_f) lift = -lift;
  const double sign = span >= 0 ? 1.0 : -1.0;
  const double y_edge = is_f ? 1.0 : -1.0;
  os << "<path d=\"M " << num(c.px(x1 + 0.35 * sign)) << " "
     << num(c.py(y_edge)) << " Q " << num(c.px(x1 + span / 2.0)) << " "
     << num(c.py(y_edge + lift)) << " " << num(c.px(x2 - 0.35 * sign)) << " "
     << num(c.py(y_edge)) << "\" fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"1\"" << dash << " marker-end=\"" << marker
     << "\"/>\n";
}

void draw_map_arrows(std::ostringstream& os, const Canvas& c,
                     const std::vector<Piece>& pieces, const ScheduleMap& map,
                     bool is_f) {
  for (const Piece& piece : pieces) {
    const std::optional<Region> region = piece_region(piece);
    if (!region) continue;
    const Region target = map.apply(*region);
    draw_arrow(os, c, *region, target, is_f);
  }
}

}  // namespace

std::string render_family_diagram(const CarlemanFamily& family,
                                  const Box& window, const ScheduleMap* f,
                                  const ScheduleMap* g) {
  if (window.empty())
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "width=\"0\" height=\"0\"/>\n";

  const Canvas c{window};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << num(c.width()) << "\" height=\"" << num(c.height()) << "\" viewBox=\"0 0 "
     << num(c.width()) << " " << num(c.height()) << "\">\n";
  os << "<defs>\n"
        "<marker id=\"arrow-f\" markerWidth=\"6\" markerHeight=\"6\" "
        "refX=\"5\" refY=\"3\" orient=\"auto\"><path d=\"M 0 0 L 6 3 L 0 6 z\" "
        "fill=\""
     << kFColor
     << "\"/></marker>\n"
        "<marker id=\"arrow-g\" markerWidth=\"6\" markerHeight=\"6\" "
        "refX=\"5\" refY=\"3\" orient=\"auto\"><path d=\"M 0 0 L 6 3 L 0 6 z\" "
        "fill=\""
     << kGColor << "\"/></marker>\n</defs>\n";
  os << "<rect x=\"0.00\" y=\"0.00\" width=\"" << num(c.width())
     << "\" height=\"" << num(c.height()) << "\" fill=\"#ffffff\"/>\n";

  // real axis
  if (window.ymin < 0 && window.ymax > 0)
    os << "<line x1=\"0.00\" y1=\"" << num(c.py(0)) << "\" x2=\""
       << num(c.width()) << "\" y2=\"" << num(c.py(0)) << "\" stroke=\""
       << kAxisColor << "\" stroke-width=\"0.8\"/>\n";

  const std::vector<Piece> pieces = family.pieces_in_window(window);
  for (const Piece& piece : pieces) draw_piece(os, c, piece);
  if (f) draw_map_arrows(os, c, pieces, *f, true);
  if (g) draw_map_arrows(os, c, pieces, *g, false);

  os << "</svg>\n";
  return os.str();
}

}  // namespace schedyn
