#include "pforest/svg.hpp"

#include <cstdio>
#include <string>

namespace pforest {

namespace {

std::string num(const Rat& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8g", rat_double(q));
  return buf;
}

const char* layer_class(LayerStyle s) {
  switch (s) {
    case LayerStyle::Primal: return "primal";
    case LayerStyle::Dual: return "dual";
    case LayerStyle::Contour: return "contour";
    case LayerStyle::Iso: return "iso";
  }
  return "primal";
}

const char* layer_attrs(LayerStyle s) {
  switch (s) {
    case LayerStyle::Primal:
      return "stroke=\"#000\" stroke-width=\"0.07\" stroke-linecap=\"round\"";
    case LayerStyle::Dual:
      return "stroke=\"#8a8a8a\" stroke-width=\"0.06\" stroke-dasharray=\"0.18 0.14\" "
             "stroke-linecap=\"butt\"";
    case LayerStyle::Contour:
      return "stroke=\"#c0392b\" stroke-width=\"0.045\" stroke-linecap=\"round\"";
    case LayerStyle::Iso:
      return "stroke=\"none\"";
  }
  return "";
}

void emit_line(std::string& out, const Segment& s) {
  out += "<line x1=\"" + num(s.a.x) + "\" y1=\"" + num(s.a.y) + "\" x2=\"" + num(s.b.x) +
         "\" y2=\"" + num(s.b.y) + "\"/>";
}

void emit_dot(std::string& out, const Point& p, const char* r, const char* fill) {
  out += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" + r + "\" fill=\"" +
         fill + "\"/>";
}

}  // namespace

std::string render_svg(const RenderDoc& doc) {
  const Box& vp = doc.viewport;
  Rat w = vp.x1 - vp.x0, h = vp.y1 - vp.y0;
  double px_per_unit = 24.0;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(vp.x0) + " " + num(vp.y0) +
         " " + num(w) + " " + num(h) + "\" width=\"";
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", rat_double(w) * px_per_unit);
    out += buf;
    out += "\" height=\"";
    std::snprintf(buf, sizeof buf, "%.0f", rat_double(h) * px_per_unit);
    out += buf;
  }
  out += "\">\n";
  out += "<defs><pattern id=\"hatch\" width=\"0.5\" height=\"0.5\" "
         "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"0.5\" stroke=\"#bbb\" stroke-width=\"0.12\"/>"
         "</pattern></defs>\n";
  // flip to y-up inside the stated viewBox
  out += "<g transform=\"matrix(1 0 0 -1 0 " + num(vp.y0 + vp.y1) + ")\">\n";

  if (!doc.doors.empty()) {
    // corridor band: common bounding box of the door segments, padded
    Rat x0 = doc.doors[0].door_segment.a.x, x1 = x0;
    Rat y0 = doc.doors[0].door_segment.a.y, y1 = y0;
    for (const Door& d : doc.doors)
      for (const Point& p : {d.door_segment.a, d.door_segment.b}) {
        if (p.x < x0) x0 = p.x;
        if (p.x > x1) x1 = p.x;
        if (p.y < y0) y0 = p.y;
        if (p.y > y1) y1 = p.y;
      }
    Rat pad = rat(1, 2);
    out += "<rect x=\"" + num(x0 - pad) + "\" y=\"" + num(y0 - pad) + "\" width=\"" +
           num(x1 - x0 + 2 * pad) + "\" height=\"" + num(y1 - y0 + 2 * pad) +
           "\" fill=\"url(#hatch)\" stroke=\"none\"/>\n";
  }

  for (const RenderLayer& layer : doc.layers) {
    const GeometricGraph& g = layer.graph;
    out += "<g class=\"";
    out += layer_class(layer.style);
    out += "\" ";
    out += layer_attrs(layer.style);
    out += ">";
    std::vector<int> degree(g.vertex_count(), 0);
    for (int e : canonical_edges(g)) {
      emit_line(out, g.edge_segment(e));
      degree[g.edges[e].tail]++;
      degree[g.edges[e].head]++;
    }
    const char* dot_fill = layer.style == LayerStyle::Dual ? "#8a8a8a" : "#000";
    for (int v = 0; v < g.vertex_count(); v++)
      if (degree[v] == 0) emit_dot(out, g.verts[v], "0.09", dot_fill);
    out += "</g>\n";
  }

  for (const Door& d : doc.doors) {
    out += "<g class=\"door\" stroke=\"#1f77b4\" stroke-width=\"0.12\">";
    emit_line(out, d.door_segment);
    emit_dot(out, d.door_segment.a, "0.14", "#1f77b4");
    emit_dot(out, d.door_segment.b, "0.14", "#1f77b4");
    out += "</g>\n";
  }

  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace pforest
