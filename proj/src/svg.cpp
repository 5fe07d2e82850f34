#include "rope/svg.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace rope {

namespace {

struct Mapper {
  double xmin, ymax, scale;
  double tx(double x) const { return (x - xmin) * scale; }
  double ty(double y) const { return (ymax - y) * scale; }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void emit_polyline(std::ostream& out, const Mapper& m, const Polyline& line,
                   const std::string& id, const std::string& style) {
  out << "<polyline id=\"" << id << "\" points=\"";
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (i) out << " ";
    out << num(m.tx(line.vertices[i].x)) << "," << num(m.ty(line.vertices[i].y));
  }
  out << "\" " << style << " />\n";
}

}  // namespace

void render_svg(std::ostream& out, const RopeDomain& d, const Partition& part,
                const SolveResult& result) {
  const Rectangle& r = d.rect;
  const double world_w = r.xmax - r.xmin;
  const double world_h = r.ymax - r.ymin;
  const double target = 960.0;
  Mapper m{r.xmin, r.ymax, target / std::max(world_w, world_h)};
  const double w = world_w * m.scale;
  const double h = world_h * m.scale;
  const double lw = 1.5;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 "
      << num(w) << " " << num(h) << "\">\n";

  out << "<rect id=\"frame\" x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" fill=\"white\" stroke=\"#999999\" stroke-width=\"" << num(lw) << "\" />\n";

  // Polygon boundary.
  {
    const std::vector<Point>& v = d.polygon.vertices();
    out << "<polygon id=\"domain\" points=\"";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << " ";
      out << num(m.tx(v[i].x)) << "," << num(m.ty(v[i].y));
    }
    out << "\" fill=\"#e8e8f0\" stroke=\"#333333\" stroke-width=\"" << num(lw) << "\" />\n";
  }

  // The cut from b to the rectangle.
  out << "<line id=\"cut-wall\" x1=\"" << num(m.tx(d.b().x)) << "\" y1=\"" << num(m.ty(d.b().y))
      << "\" x2=\"" << num(m.tx(d.c().x)) << "\" y2=\"" << num(m.ty(d.c().y))
      << "\" stroke=\"#888888\" stroke-width=\"" << num(lw)
      << "\" stroke-dasharray=\"6,4\" />\n";

  for (const CuttingSegment& cut : part.segments) {
    out << "<line id=\"cut-" << cut.index << "\" x1=\"" << num(m.tx(cut.u.x)) << "\" y1=\""
        << num(m.ty(cut.u.y)) << "\" x2=\"" << num(m.tx(cut.v.x)) << "\" y2=\""
        << num(m.ty(cut.v.y)) << "\" stroke=\"#77aadd\" stroke-width=\"" << num(lw * 0.7)
        << "\" />\n";
  }

  if (result.rope.size() >= 1) {
    emit_polyline(out, m, result.rope, "rope",
                  "fill=\"none\" stroke=\"#cc3333\" stroke-width=\"" + num(lw * 2.0) + "\"");
  }

  for (std::size_t i = 0; i + 1 < result.final_shooting_points.size(); ++i) {
    if (i == 0) continue;  // endpoints carry no marker
    const Point& p = result.final_shooting_points[i];
    out << "<circle id=\"shoot-" << i << "\" cx=\"" << num(m.tx(p.x)) << "\" cy=\""
        << num(m.ty(p.y)) << "\" r=\"" << num(lw * 2.0) << "\" fill=\"#222222\" />\n";
  }

  out << "</svg>\n";
}

void render_svg(const std::string& path, const RopeDomain& d, const Partition& part,
                const SolveResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg: " + path);
  render_svg(out, d, part, result);
}

}  // namespace rope
