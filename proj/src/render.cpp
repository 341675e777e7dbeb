#include "fk/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace fk {

namespace {

constexpr long kMaxGridLines = 20000;

struct Box {
  double minx, maxx, miny, maxy;
};

Box bounds_of(std::span<const Polyline> polys) {
  Box b{polys[0].vertices[0].x, polys[0].vertices[0].x, polys[0].vertices[0].y, polys[0].vertices[0].y};
  for (const auto& p : polys) {
    for (const Vec2 v : p.vertices) {
      b.minx = std::min(b.minx, v.x);
      b.maxx = std::max(b.maxx, v.x);
      b.miny = std::min(b.miny, v.y);
      b.maxy = std::max(b.maxy, v.y);
    }
  }
  return b;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}

// Maps data coordinates into one panel; y is flipped so +y points up.
struct Viewport {
  double scale;
  double cx, cy;      // panel centre in pixels
  double midx, midy;  // data centre
  double left, width, height;

  double px(double x) const { return cx + (x - midx) * scale; }
  double py(double y) const { return cy - (y - midy) * scale; }
  double data_x(double p) const { return midx + (p - cx) / scale; }
  double data_y(double p) const { return midy - (p - cy) / scale; }
};

Viewport fit(const Box& b, const RenderOptions& opts, double left) {
  const double ex = b.maxx - b.minx;
  const double ey = b.maxy - b.miny;
  if (!(ex > 0.0) && !(ey > 0.0)) {
    throw std::invalid_argument("cannot render a polyline with a degenerate bounding box");
  }
  const double inner_w = opts.width * (1.0 - 2.0 * opts.margin);
  const double inner_h = opts.height * (1.0 - 2.0 * opts.margin);
  double scale = std::numeric_limits<double>::infinity();
  if (ex > 0.0) scale = std::min(scale, inner_w / ex);
  if (ey > 0.0) scale = std::min(scale, inner_h / ey);
  return {scale,
          left + opts.width / 2.0,
          opts.height / 2.0,
          (b.minx + b.maxx) / 2.0,
          (b.miny + b.maxy) / 2.0,
          left,
          static_cast<double>(opts.width),
          static_cast<double>(opts.height)};
}

void append_grid(std::string& out, const Viewport& vp, double spacing) {
  const double x0 = vp.data_x(vp.left);
  const double x1 = vp.data_x(vp.left + vp.width);
  const double y0 = vp.data_y(vp.height);
  const double y1 = vp.data_y(0.0);
  const auto ix0 = static_cast<long>(std::ceil(x0 / spacing));
  const auto ix1 = static_cast<long>(std::floor(x1 / spacing));
  const auto iy0 = static_cast<long>(std::ceil(y0 / spacing));
  const auto iy1 = static_cast<long>(std::floor(y1 / spacing));
  if ((ix1 - ix0 + 1) + (iy1 - iy0 + 1) > kMaxGridLines) {
    throw std::invalid_argument("grid overlay would need more than 20000 lines");
  }
  out += "  <g class=\"grid\" stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n";
  for (long i = ix0; i <= ix1; ++i) {
    const std::string x = fmt(vp.px(static_cast<double>(i) * spacing));
    out += "    <line x1=\"" + x + "\" y1=\"0.000\" x2=\"" + x + "\" y2=\"" + fmt(vp.height) + "\"/>\n";
  }
  for (long j = iy0; j <= iy1; ++j) {
    const std::string y = fmt(vp.py(static_cast<double>(j) * spacing));
    out += "    <line x1=\"" + fmt(vp.left) + "\" y1=\"" + y + "\" x2=\"" + fmt(vp.left + vp.width) +
           "\" y2=\"" + y + "\"/>\n";
  }
  out += "  </g>\n";
}

void append_path(std::string& out, const Polyline& poly, const Viewport& vp, double stroke) {
  out += "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" + fmt(stroke) + "\" d=\"";
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    const Vec2 v = poly.vertices[i];
    out += i == 0 ? "M " : " L ";
    out += fmt(vp.px(v.x)) + " " + fmt(vp.py(v.y));
  }
  out += "\"/>\n";
}

std::string header(double width, double height) {
  const std::string w = fmt(width);
  const std::string h = fmt(height);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h +
         "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
}

}  // namespace

double GridOverlay::spacing() const { return dx0 / std::pow(rho, k); }

void validate(const RenderOptions& opts) {
  if (opts.width <= 0 || opts.height <= 0) throw std::invalid_argument("canvas size must be positive");
  if (!(opts.stroke_width > 0.0)) throw std::invalid_argument("stroke width must be positive");
  if (!(opts.margin >= 0.0 && opts.margin < 0.4)) throw std::invalid_argument("margin must lie in [0, 0.4)");
  if (opts.grid) {
    const auto& g = *opts.grid;
    if (g.k < 0 || !(g.dx0 > 0.0) || !(g.rho > 1.0)) {
      throw std::invalid_argument("grid overlay needs k >= 0, dx0 > 0, rho > 1");
    }
  }
}

std::string render_svg(const Polyline& poly, const RenderOptions& opts) {
  validate(poly);
  validate(opts);
  const std::span<const Polyline> one(&poly, 1);
  const Viewport vp = fit(bounds_of(one), opts, 0.0);
  std::string out = header(opts.width, opts.height);
  if (opts.grid) append_grid(out, vp, opts.grid->spacing());
  append_path(out, poly, vp, opts.stroke_width);
  out += "</svg>\n";
  return out;
}

std::string render_panels(std::span<const Polyline> polys, const RenderOptions& opts) {
  if (polys.empty()) throw std::invalid_argument("no polylines to render");
  for (const auto& p : polys) validate(p);
  validate(opts);

  const Box box = bounds_of(polys);
  std::string out = header(static_cast<double>(opts.width) * static_cast<double>(polys.size()), opts.height);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const double left = static_cast<double>(opts.width) * static_cast<double>(i);
    const Viewport vp = fit(box, opts, left);
    const int level = polys[i].level.value_or(static_cast<int>(i));
    out += "  <g class=\"panel\">\n";
    out += "  <rect x=\"" + fmt(left) + "\" y=\"0.000\" width=\"" + fmt(opts.width) + "\" height=\"" +
           fmt(opts.height) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    if (opts.grid) {
      GridOverlay g = *opts.grid;
      g.k = level;
      append_grid(out, vp, g.spacing());
    }
    append_path(out, polys[i], vp, opts.stroke_width);
    out += "  <text x=\"" + fmt(left + 8.0) + "\" y=\"20.000\" font-family=\"sans-serif\" font-size=\"14\">C_" +
           std::to_string(level) + "</text>\n";
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fk
