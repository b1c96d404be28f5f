#include "polymapf/render.hpp"

#include <algorithm>
#include <sstream>

#include "polymapf/reduced_graph.hpp"

namespace polymapf {
namespace {

constexpr char kSymbols[] =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

constexpr int kCell = 16;  // SVG pixels per grid cell

// y grows upward but SVG y grows downward.
int svg_y(const DiscretizedPolygon& poly, int y) {
  return (poly.height() - 1 - y) * kCell;
}

std::string color_of(int id) {
  return "hsl(" + std::to_string((id * 47) % 360) + ",70%,75%)";
}

std::string robot_color(int id) {
  return "hsl(" + std::to_string((id * 83 + 11) % 360) + ",80%,45%)";
}

void svg_open(std::ostringstream& out, const DiscretizedPolygon& poly) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << poly.width() * kCell << "\" height=\"" << poly.height() * kCell
      << "\" viewBox=\"0 0 " << poly.width() * kCell << ' '
      << poly.height() * kCell << "\">\n";
}

void svg_cell(std::ostringstream& out, const DiscretizedPolygon& poly,
              GridVertex v, const std::string& fill) {
  out << "  <rect x=\"" << v.x * kCell << "\" y=\"" << svg_y(poly, v.y)
      << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\""
      << fill << "\" stroke=\"#666\" stroke-width=\"1\"/>\n";
}

std::string bend_vector_str(const std::vector<int>& bv) {
  std::string out = "(";
  for (size_t i = 0; i < bv.size(); ++i) {
    if (i > 0) out += ",";
    out += bv[i] == kInfiniteBend ? "inf" : std::to_string(bv[i]);
  }
  return out + ")";
}

}  // namespace

char sector_symbol(int id) { return kSymbols[id % 62]; }

std::string render_sector_overlay_ascii(const SectorGraph& sg) {
  const DiscretizedPolygon& poly = sg.polygon();
  std::string out;
  out.reserve(static_cast<size_t>((poly.width() + 1) * poly.height()));
  for (int y = poly.height() - 1; y >= 0; --y) {
    for (int x = 0; x < poly.width(); ++x) {
      GridVertex v{x, y};
      out += poly.contains(v)
                 ? sector_symbol(sg.sector_of(poly.index_of(v)))
                 : '#';
    }
    out += '\n';
  }
  return out;
}

std::string render_sector_graph_dot(const SectorGraph& sg) {
  std::ostringstream out;
  out << "graph sectors {\n  node [shape=box];\n";
  for (const Sector& s : sg.sectors()) {
    out << "  s" << s.id << " [label=\"" << s.id << ": "
        << (s.kind.has_value() ? sector_kind_name(*s.kind) : "unclassified")
        << "\\n" << bend_vector_str(s.bend_vector) << "\"";
    if (s.clean) out << " style=dashed";
    out << "];\n";
  }
  for (int s = 0; s < sg.sector_count(); ++s) {
    for (int t : sg.neighbors(s)) {
      if (t > s) out << "  s" << s << " -- s" << t << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string render_sectors_svg(const SectorGraph& sg) {
  const DiscretizedPolygon& poly = sg.polygon();
  std::ostringstream out;
  svg_open(out, poly);
  for (GridVertex v : poly.vertices()) {
    svg_cell(out, poly, v, color_of(sg.sector_of(poly.index_of(v))));
  }
  for (const Port& p : sg.ports()) {
    out << "  <circle cx=\"" << p.anchor.x * kCell + kCell / 2 << "\" cy=\""
        << svg_y(poly, p.anchor.y) + kCell / 2 << "\" r=\"" << kCell / 4
        << "\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_map_svg(const DiscretizedPolygon& poly) {
  std::ostringstream out;
  svg_open(out, poly);
  for (GridVertex v : poly.vertices()) {
    svg_cell(out, poly, v, "#dddddd");
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_instance_ascii(const Instance& inst) {
  const ReducedGraph& g = *inst.graph;
  const DiscretizedPolygon& poly = g.base();
  std::vector<std::string> rows(static_cast<size_t>(poly.height()),
                                std::string(static_cast<size_t>(poly.width()),
                                            '#'));
  for (GridVertex v : poly.vertices()) {
    rows[static_cast<size_t>(v.y)][static_cast<size_t>(v.x)] =
        g.grid_alive(v) ? '.' : 'x';
  }
  auto mark = [&](GridVertex v, char c) {
    char& cell = rows[static_cast<size_t>(v.y)][static_cast<size_t>(v.x)];
    if ((cell == 'S' && c == 'T') || (cell == 'T' && c == 'S')) {
      cell = 'B';
    } else {
      cell = c;
    }
  };
  for (const Robot& r : inst.robots) {
    mark(r.start, 'S');
    mark(r.target, 'T');
  }
  std::string out;
  for (int y = poly.height() - 1; y >= 0; --y) {
    out += rows[static_cast<size_t>(y)];
    out += '\n';
  }
  for (const WeaveGadget& w : g.gadgets()) {
    out += "gadget " + std::to_string(w.id) + ": (" + std::to_string(w.a.x) +
           "," + std::to_string(w.a.y) + ")-(" + std::to_string(w.b.x) + "," +
           std::to_string(w.b.y) + ") interior=" +
           std::to_string(w.interior_length) + "\n";
  }
  return out;
}

std::string render_instance_svg(const Instance& inst) {
  const ReducedGraph& g = *inst.graph;
  const DiscretizedPolygon& poly = g.base();
  std::ostringstream out;
  svg_open(out, poly);
  for (GridVertex v : poly.vertices()) {
    svg_cell(out, poly, v, g.grid_alive(v) ? "#dddddd" : "#ffffff");
    if (!g.grid_alive(v)) {
      int x0 = v.x * kCell, y0 = svg_y(poly, v.y);
      out << "  <path d=\"M" << x0 << ' ' << y0 << " l" << kCell << ' '
          << kCell << " M" << x0 + kCell << ' ' << y0 << " l-" << kCell << ' '
          << kCell << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    }
  }
  for (const WeaveGadget& w : g.gadgets()) {
    out << "  <line x1=\"" << w.a.x * kCell + kCell / 2 << "\" y1=\""
        << svg_y(poly, w.a.y) + kCell / 2 << "\" x2=\""
        << w.b.x * kCell + kCell / 2 << "\" y2=\""
        << svg_y(poly, w.b.y) + kCell / 2
        << "\" stroke=\"#444\" stroke-dasharray=\"4 3\"/>\n";
    out << "  <text x=\""
        << (w.a.x + w.b.x) * kCell / 2 + kCell / 2 << "\" y=\""
        << (svg_y(poly, w.a.y) + svg_y(poly, w.b.y)) / 2 + kCell / 2
        << "\" font-size=\"" << kCell / 2 << "\">" << w.interior_length
        << "</text>\n";
  }
  for (const Robot& r : inst.robots) {
    const std::string color = robot_color(r.id);
    out << "  <circle cx=\"" << r.start.x * kCell + kCell / 2 << "\" cy=\""
        << svg_y(poly, r.start.y) + kCell / 2 << "\" r=\"" << kCell / 3
        << "\" fill=\"" << color << "\"/>\n";
    out << "  <circle cx=\"" << r.target.x * kCell + kCell / 2 << "\" cy=\""
        << svg_y(poly, r.target.y) + kCell / 2 << "\" r=\"" << kCell / 3
        << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace polymapf
