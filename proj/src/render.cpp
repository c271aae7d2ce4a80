#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace qs {

namespace {

struct Pt {
  double x, y;
};

double value(const Assignment& w, const SpatialObject& o, const std::string& slot) {
  auto it = w.find(o.var(slot));
  if (it == w.end()) throw RenderError("witness does not ground " + o.var(slot));
  double v = it->second.get_d();
  if (!std::isfinite(v)) throw RenderError("non-finite value for " + o.var(slot));
  return v;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0 ? 0.0 : v);  // avoid "-0"
  return buf;
}

struct Canvas {
  std::ostringstream body;
  double lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
  bool seen = false;

  // SVG y grows downward; geometry is emitted with y negated so the picture
  // keeps the mathematical orientation.
  void touch(Pt p) {
    if (!seen) {
      lo_x = hi_x = p.x;
      lo_y = hi_y = -p.y;
      seen = true;
      return;
    }
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, -p.y);
    hi_y = std::max(hi_y, -p.y);
  }

  std::string at(Pt p, const char* xa, const char* ya) {
    return std::string(xa) + "=\"" + num(p.x) + "\" " + ya + "=\"" + num(-p.y) + "\"";
  }
};

}  // namespace

std::string render_svg(const ConstraintGraph& g, const Assignment& witness) {
  Canvas c;
  std::vector<std::pair<Pt, std::string>> labels;
  std::vector<Pt> dots;

  for (const auto& o : g.objects) {
    switch (o.kind) {
      case Kind::Point2:
      case Kind::Point3: {
        Pt p{value(witness, o, "x"), value(witness, o, "y")};
        c.touch(p);
        labels.push_back({p, o.id});
        dots.push_back(p);  // radius depends on the final extent; drawn below
        break;
      }
      case Kind::Circle2:
      case Kind::Sphere3: {
        Pt p{value(witness, o, "x"), value(witness, o, "y")};
        double r = value(witness, o, "r");
        c.touch({p.x - r, p.y - r});
        c.touch({p.x + r, p.y + r});
        labels.push_back({p, o.id});
        c.body << "  <circle " << c.at(p, "cx", "cy") << " r=\"" << num(r)
               << "\" class=\"shape\"/>\n";
        break;
      }
      case Kind::Segment2: {
        Pt a{value(witness, o, "xa"), value(witness, o, "ya")};
        Pt b{value(witness, o, "xb"), value(witness, o, "yb")};
        c.touch(a);
        c.touch(b);
        labels.push_back({{(a.x + b.x) / 2, (a.y + b.y) / 2}, o.id});
        c.body << "  <line " << c.at(a, "x1", "y1") << " " << c.at(b, "x2", "y2")
               << " class=\"shape\"/>\n";
        break;
      }
      case Kind::Rectangle2:
      case Kind::Box3: {
        Pt p{value(witness, o, "x"), value(witness, o, "y")};
        double w = value(witness, o, "w"), h = value(witness, o, "h");
        double vx = 1, vy = 0;
        if (o.kind == Kind::Rectangle2) {
          vx = value(witness, o, "vx");
          vy = value(witness, o, "vy");
        }
        Pt q[4] = {p,
                   {p.x + w * vx, p.y + w * vy},
                   {p.x + w * vx - h * vy, p.y + w * vy + h * vx},
                   {p.x - h * vy, p.y + h * vx}};
        c.body << "  <polygon points=\"";
        for (int i = 0; i < 4; ++i) {
          c.touch(q[i]);
          c.body << (i ? " " : "") << num(q[i].x) << "," << num(-q[i].y);
        }
        c.body << "\" class=\"shape\"/>\n";
        labels.push_back({{(q[0].x + q[2].x) / 2, (q[0].y + q[2].y) / 2}, o.id});
        break;
      }
    }
  }

  if (!c.seen) {
    c.lo_x = c.lo_y = -1;
    c.hi_x = c.hi_y = 1;
  }
  double span = std::max(c.hi_x - c.lo_x, c.hi_y - c.lo_y);
  if (span <= 0) span = 1.0;  // lone point or empty scene
  double margin = 0.1 * span;
  double dot = 0.012 * span, stroke = 0.006 * span, font = 0.05 * span;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
      << num(c.lo_x - margin) << " " << num(c.lo_y - margin) << " "
      << num(c.hi_x - c.lo_x + 2 * margin) << " " << num(c.hi_y - c.lo_y + 2 * margin)
      << "\">\n";
  svg << "  <style>.shape{fill:none;stroke:#000;stroke-width:" << num(stroke)
      << "}.pt{fill:#000}text{font:" << num(font)
      << "px sans-serif;fill:#444}</style>\n";
  svg << c.body.str();
  for (const Pt& p : dots)
    svg << "  <circle " << c.at(p, "cx", "cy") << " r=\"" << num(dot) << "\" class=\"pt\"/>\n";
  for (const auto& [p, id] : labels)
    svg << "  <text x=\"" << num(p.x + dot) << "\" y=\"" << num(-p.y - dot) << "\">" << id
        << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void render_svg_file(const ConstraintGraph& g, const Assignment& witness,
                     const std::string& path) {
  std::string svg = render_svg(g, witness);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw RenderError("cannot open " + path + " for writing");
  f << svg;
  if (!f.good()) throw RenderError("failed writing " + path);
}

}  // namespace qs
