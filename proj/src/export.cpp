#include "tgtsp/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tgtsp {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string export_csv(const Trajectory& traj) {
  traj.validate();
  std::string out;
  char row[256];
  for (int k = 0; k < traj.node_count(); ++k) {
    std::snprintf(row, sizeof(row),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.times[k],
                  traj.labels[k].x, traj.labels[k].y, traj.states[k][2],
                  traj.states[k][3], traj.controls[k][0], traj.controls[k][1]);
    out += row;
  }
  return out;
}

std::string export_svg(const Scenario& scenario, const Trajectory& traj) {
  traj.validate();
  // scene bounding box
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto grow = [&](Point2 p, double r) {
    xmin = std::min(xmin, p.x - r);
    xmax = std::max(xmax, p.x + r);
    ymin = std::min(ymin, p.y - r);
    ymax = std::max(ymax, p.y + r);
  };
  for (const City& c : scenario.cities)
    grow(c.centroid_at(0.0), bounding_radius(c.region.base));
  for (const Region& z : scenario.zones)
    grow(region_centroid(z), bounding_radius(z));
  for (const Point2& p : traj.labels) grow(p, 0.0);
  const double margin = 0.05 * std::max(xmax - xmin, ymax - ymin) + 0.5;
  xmin -= margin;
  xmax += margin;
  ymin -= margin;
  ymax += margin;

  // world -> SVG: fixed 800-unit width, y flipped
  const double scale = 800.0 / (xmax - xmin);
  const double height = (ymax - ymin) * scale;
  auto sx = [&](double x) { return (x - xmin) * scale; };
  auto sy = [&](double y) { return height - (y - ymin) * scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\""
      << num(height) << "\" viewBox=\"0 0 800 " << num(height) << "\">\n";
  svg << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
         "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#b33\" "
         "stroke-width=\"1.5\"/></pattern></defs>\n";
  svg << "<rect width=\"800\" height=\"" << num(height)
      << "\" fill=\"white\"/>\n";

  for (const Region& z : scenario.zones) {
    const Ellipse& e = std::get<Ellipse>(z);
    svg << "<ellipse cx=\"" << num(sx(e.center.x)) << "\" cy=\""
        << num(sy(e.center.y)) << "\" rx=\"" << num(e.a * scale) << "\" ry=\""
        << num(e.b * scale) << "\" fill=\"url(#hatch)\" stroke=\"#b33\" "
        << "stroke-width=\"1.5\"/>\n";
  }

  for (const City& c : scenario.cities) {
    const Point2 off = c.region.offset_at(0.0);
    if (const Disk* d = std::get_if<Disk>(&c.region.base)) {
      svg << "<circle cx=\"" << num(sx(d->center.x + off.x)) << "\" cy=\""
          << num(sy(d->center.y + off.y)) << "\" r=\"" << num(d->radius * scale)
          << "\" fill=\"none\" stroke=\"#226\" stroke-width=\"1.5\"/>\n";
    } else if (const Ellipse* e = std::get_if<Ellipse>(&c.region.base)) {
      svg << "<ellipse cx=\"" << num(sx(e->center.x + off.x)) << "\" cy=\""
          << num(sy(e->center.y + off.y)) << "\" rx=\"" << num(e->a * scale)
          << "\" ry=\"" << num(e->b * scale)
          << "\" fill=\"none\" stroke=\"#226\" stroke-width=\"1.5\"/>\n";
    } else {
      const Polygon& poly = std::get<Polygon>(c.region.base);
      svg << "<polygon points=\"";
      for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        if (i) svg << ' ';
        svg << num(sx(poly.vertices[i].x + off.x)) << ','
            << num(sy(poly.vertices[i].y + off.y));
      }
      svg << "\" fill=\"none\" stroke=\"#226\" stroke-width=\"1.5\"/>\n";
    }
    const Point2 cc = c.centroid_at(0.0);
    svg << "<text x=\"" << num(sx(cc.x)) << "\" y=\"" << num(sy(cc.y))
        << "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#226\">" << c.id
        << "</text>\n";
  }

  svg << "<polyline points=\"";
  for (std::size_t k = 0; k < traj.labels.size(); ++k) {
    if (k) svg << ' ';
    svg << num(sx(traj.labels[k].x)) << ',' << num(sy(traj.labels[k].y));
  }
  svg << "\" fill=\"none\" stroke=\"#2a2\" stroke-width=\"2\"/>\n";

  svg << "<circle cx=\"" << num(sx(traj.labels.front().x)) << "\" cy=\""
      << num(sy(traj.labels.front().y))
      << "\" r=\"5\" fill=\"#2a2\" stroke=\"black\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tgtsp
