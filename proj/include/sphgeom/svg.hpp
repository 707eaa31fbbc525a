#ifndef SPHGEOM_SVG_HPP
#define SPHGEOM_SVG_HPP

// Minimal SVG 1.1 figures of projected spherical paths, graticules and
// planar circles. Elements are collected in plane coordinates and mapped to
// the canvas when rendered; output is deterministic.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphgeom/core.hpp"
#include "sphgeom/planar.hpp"
#include "sphgeom/projections.hpp"

namespace sphgeom {

struct SvgStyle {
  std::string stroke = "#000000";
  double width = 1.0;  ///< pixels
  std::string fill = "none";
};

struct SvgBounds {
  double xmin = -1, ymin = -1, xmax = 1, ymax = 1;
};

class SvgFigure {
 public:
  explicit SvgFigure(int size = 600) : size_(size) {
    if (size < 16) fail(ErrorCode::OutOfRange, "figure size must be at least 16 pixels");
  }

  void set_bounds(const SvgBounds& b) { bounds_ = b; }

  void polyline(const std::vector<Vec2>& pts, const SvgStyle& st = {}) {
    if (pts.size() >= 2) items_.push_back({Item::Line, pts, 0, {}, st});
  }
  void polylines(const std::vector<std::vector<Vec2>>& pieces, const SvgStyle& st = {}) {
    for (const auto& p : pieces) polyline(p, st);
  }
  /// Circle with radius in plane units.
  void circle(const PlanarCircle& c, const SvgStyle& st = {}) { items_.push_back({Item::Circle, {c.center}, c.radius, {}, st}); }
  /// Marker with radius in pixels.
  void dot(const Vec2& p, double px, const SvgStyle& st = {}) { items_.push_back({Item::Dot, {p}, px, {}, st}); }
  void label(const Vec2& p, const std::string& text, const SvgStyle& st = {}) {
    items_.push_back({Item::Text, {p}, 12.0, text, st});
  }

  std::string str() const {
    const SvgBounds b = bounds_ ? *bounds_ : fitted_bounds();
    const double span = std::max(b.xmax - b.xmin, b.ymax - b.ymin);
    const double scale = span > 0 ? (size_ - 20) / span : 1.0;
    const double cx = 0.5 * (b.xmin + b.xmax), cy = 0.5 * (b.ymin + b.ymax);
    auto X = [&](double x) { return 0.5 * size_ + (x - cx) * scale; };
    auto Y = [&](double y) { return 0.5 * size_ - (y - cy) * scale; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(size_) + "\" height=\"" + num(size_) +
           "\" viewBox=\"0 0 " + num(size_) + " " + num(size_) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + num(size_) + "\" height=\"" + num(size_) + "\" fill=\"#ffffff\"/>\n";
    for (const Item& it : items_) {
      const std::string paint = "stroke=\"" + escape(it.style.stroke) + "\" stroke-width=\"" + num(it.style.width) +
                                "\" fill=\"" + escape(it.style.fill) + "\"";
      switch (it.kind) {
        case Item::Line: {
          out += "<polyline " + paint + " points=\"";
          for (std::size_t i = 0; i < it.pts.size(); ++i) {
            if (i) out += ' ';
            out += num(X(it.pts[i].x())) + "," + num(Y(it.pts[i].y()));
          }
          out += "\"/>\n";
          break;
        }
        case Item::Circle:
          out += "<circle " + paint + " cx=\"" + num(X(it.pts[0].x())) + "\" cy=\"" + num(Y(it.pts[0].y())) + "\" r=\"" +
                 num(it.radius * scale) + "\"/>\n";
          break;
        case Item::Dot:
          out += "<circle " + paint + " cx=\"" + num(X(it.pts[0].x())) + "\" cy=\"" + num(Y(it.pts[0].y())) + "\" r=\"" +
                 num(it.radius) + "\"/>\n";
          break;
        case Item::Text:
          out += "<text x=\"" + num(X(it.pts[0].x())) + "\" y=\"" + num(Y(it.pts[0].y())) + "\" font-size=\"" +
                 num(it.radius) + "\" font-family=\"sans-serif\" fill=\"" + escape(it.style.stroke) + "\">" +
                 escape(it.text) + "</text>\n";
          break;
      }
    }
    out += "</svg>\n";
    return out;
  }

  void save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << str();
    if (!f) throw std::runtime_error("failed writing " + path);
  }

 private:
  struct Item {
    enum Kind { Line, Circle, Dot, Text } kind;
    std::vector<Vec2> pts;
    double radius = 0;
    std::string text;
    SvgStyle style;
  };

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 5e-7 ? 0.0 : v);
    return buf;
  }

  static std::string escape(const std::string& s) {
    std::string out;
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

  SvgBounds fitted_bounds() const {
    SvgBounds b{1e300, 1e300, -1e300, -1e300};
    auto grow = [&](const Vec2& p, double r) {
      b.xmin = std::min(b.xmin, p.x() - r);
      b.xmax = std::max(b.xmax, p.x() + r);
      b.ymin = std::min(b.ymin, p.y() - r);
      b.ymax = std::max(b.ymax, p.y() + r);
    };
    for (const Item& it : items_) {
      if (it.kind == Item::Circle) grow(it.pts[0], it.radius);
      else for (const Vec2& p : it.pts) grow(p, 0.0);
    }
    if (b.xmin > b.xmax) return SvgBounds{};
    const double pad = 0.02 * std::max({b.xmax - b.xmin, b.ymax - b.ymin, 1e-9});
    return {b.xmin - pad, b.ymin - pad, b.xmax + pad, b.ymax + pad};
  }

  int size_;
  std::optional<SvgBounds> bounds_;
  std::vector<Item> items_;
};

/// Projects a sampled spherical path, dropping points outside the domain or
/// beyond `limit` from the origin and splitting at the gaps and at
/// longitude wraps of cylindrical kinds.
inline std::vector<std::vector<Vec2>> project_path(const Projection& pr, const std::vector<SPoint>& pts, double limit = 10.0) {
  std::vector<std::vector<Vec2>> out(1);
  for (const SPoint& p : pts) {
    std::optional<Vec2> q;
    try {
      const Vec2 v = project(pr, p);
      if (v.norm() <= limit) q = v;
    } catch (const Error&) {
    }
    const bool jump = q && !out.back().empty() && pr.cylindrical() && std::abs(q->x() - out.back().back().x()) > kPi;
    if ((!q || jump) && !out.back().empty()) out.emplace_back();
    if (q) out.back().push_back(*q);
  }
  std::erase_if(out, [](const auto& piece) { return piece.size() < 2; });
  return out;
}

/// Meridians and parallels every `step` radians, projected.
inline std::vector<std::vector<Vec2>> graticule(const Projection& pr, double step, double limit = 10.0) {
  if (!(step > 1e-3 && step <= kHalfPi)) fail(ErrorCode::OutOfRange, "graticule step must lie in (0.001, pi/2]");
  const double fine = std::min(step / 8, 0.02);
  std::vector<std::vector<Vec2>> out;
  const int nm = static_cast<int>(std::round(kTwoPi / step));
  for (int i = 0; i < nm; ++i) {
    const double lon = -kPi + kTwoPi * i / nm;
    std::vector<SPoint> pts;
    for (double lat = -kHalfPi + 1e-3; lat <= kHalfPi - 1e-3; lat += fine) pts.push_back(from_geo(GeoCoord::make(lat, lon)));
    for (auto& piece : project_path(pr, pts, limit)) out.push_back(std::move(piece));
  }
  for (double lat = -std::floor(kHalfPi / step) * step; lat < kHalfPi - 1e-9; lat += step) {
    if (std::abs(lat) > kHalfPi - 1e-3) continue;
    std::vector<SPoint> pts;
    const int n = static_cast<int>(std::ceil(kTwoPi / fine));
    for (int k = 0; k <= n; ++k) pts.push_back(from_geo(GeoCoord::make(lat, -kPi + kTwoPi * k / n)));
    for (auto& piece : project_path(pr, pts, limit)) out.push_back(std::move(piece));
  }
  return out;
}

/// n + 1 samples of a small circle.
inline std::vector<SPoint> sample_circle(const SmallCircle& c, int n) {
  std::vector<SPoint> out;
  for (int k = 0; k <= n; ++k) out.push_back(c.point_at(kTwoPi * k / n));
  return out;
}

}  // namespace sphgeom

#endif  // SPHGEOM_SVG_HPP
