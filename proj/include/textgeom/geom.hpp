#pragma once

// Core 2-D geometry for text detection post-processing: points, boxes,
// quadrilaterals, dense binary instance masks, and the conversions between
// them. Image coordinates throughout: x grows right, y grows down, pixel
// (px, py) owns the unit square [px, px+1) x [py, py+1) and its center sits
// at (px + 0.5, py + 0.5). All types are immutable value types and all
// operations are pure.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "textgeom/errors.hpp"

namespace textgeom {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
  }
};

inline bool is_finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

struct AABox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  AABox() = default;
  AABox(double x0, double y0, double x1, double y1)
      : x_min(x0), y_min(y0), x_max(x1), y_max(y1) {
    if (!(x_min <= x_max) || !(y_min <= y_max)) {
      throw InvalidBoxError("AABox with inverted bounds");
    }
  }

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }

  friend bool operator==(const AABox& a, const AABox& b) {
    return a.x_min == b.x_min && a.y_min == b.y_min && a.x_max == b.x_max &&
           a.y_max == b.y_max;
  }
};

inline double box_iou(const AABox& a, const AABox& b) {
  const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

// Ordered 4-vertex polygon. Construction normalizes the vertex order to
// clockwise in image coordinates (positive shoelace sum with y down),
// starting from the vertex minimizing (y, then x). Simplicity is not
// enforced here; rasterize_quad rejects self-intersecting input.
class Quad {
public:
  Quad() = default;

  Quad(const Point& a, const Point& b, const Point& c, const Point& d)
      : v_{a, b, c, d} {
    for (const Point& p : v_) {
      if (!is_finite(p)) throw InvalidGeometryError("non-finite quad vertex");
    }
    normalize();
  }

  explicit Quad(const std::array<Point, 4>& pts)
      : Quad(pts[0], pts[1], pts[2], pts[3]) {}

  const std::array<Point, 4>& vertices() const { return v_; }
  const Point& operator[](std::size_t i) const { return v_[i]; }

  // Shoelace sum; positive for clockwise order in image coordinates.
  double signed_area() const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      const Point& p = v_[i];
      const Point& q = v_[(i + 1) % 4];
      s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
  }

  double area() const { return std::abs(signed_area()); }

  AABox bounding_box() const {
    double x0 = v_[0].x, x1 = v_[0].x, y0 = v_[0].y, y1 = v_[0].y;
    for (int i = 1; i < 4; ++i) {
      x0 = std::min(x0, v_[i].x);
      x1 = std::max(x1, v_[i].x);
      y0 = std::min(y0, v_[i].y);
      y1 = std::max(y1, v_[i].y);
    }
    return AABox(x0, y0, x1, y1);
  }

  // True when no pair of opposite edges properly crosses. Degenerate
  // (zero-area, collinear, repeated-vertex) quads count as simple.
  bool is_simple() const {
    return !properly_intersects(v_[0], v_[1], v_[2], v_[3]) &&
           !properly_intersects(v_[1], v_[2], v_[3], v_[0]);
  }

  friend bool operator==(const Quad& a, const Quad& b) { return a.v_ == b.v_; }

private:
  static double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  }

  static bool properly_intersects(const Point& a, const Point& b,
                                  const Point& c, const Point& d) {
    const double d1 = cross(a, b, c);
    const double d2 = cross(a, b, d);
    const double d3 = cross(c, d, a);
    const double d4 = cross(c, d, b);
    return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
           ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
  }

  void normalize() {
    if (signed_area() < 0.0) std::reverse(v_.begin(), v_.end());
    int start = 0;
    for (int i = 1; i < 4; ++i) {
      if (v_[i].y < v_[start].y ||
          (v_[i].y == v_[start].y && v_[i].x < v_[start].x)) {
        start = i;
      }
    }
    std::rotate(v_.begin(), v_.begin() + start, v_.end());
  }

  std::array<Point, 4> v_{};
};

// Rectangle rotated about its center; positive angle turns clockwise in
// image coordinates. Angle is normalized to (-pi/2, pi/2].
struct RotatedRect {
  Point center;
  double width = 0.0;
  double height = 0.0;
  double angle = 0.0;

  RotatedRect() = default;
  RotatedRect(const Point& c, double w, double h, double a)
      : center(c), width(w), height(h), angle(a) {
    if (!(width >= 0.0) || !(height >= 0.0)) {
      throw InvalidGeometryError("RotatedRect with negative extent");
    }
    while (angle > kPi / 2.0) angle -= kPi;
    while (angle <= -kPi / 2.0) angle += kPi;
  }
};

inline Quad rotated_rect_to_quad(const RotatedRect& r) {
  const double c = std::cos(r.angle);
  const double s = std::sin(r.angle);
  const double hw = r.width / 2.0;
  const double hh = r.height / 2.0;
  auto corner = [&](double dx, double dy) {
    return Point{r.center.x + dx * c - dy * s, r.center.y + dx * s + dy * c};
  };
  return Quad(corner(-hw, -hh), corner(hw, -hh), corner(hw, hh),
              corner(-hw, hh));
}

// Dense binary raster of one text instance anchored at an integer offset in
// image coordinates. Extents are always positive; an all-zero raster
// represents the empty mask.
class BitMask {
public:
  BitMask() : BitMask(0, 0, 1, 1) {}

  BitMask(int x0, int y0, int width, int height)
      : x0_(x0), y0_(y0), w_(width), h_(height) {
    if (width <= 0 || height <= 0) {
      throw InvalidGeometryError("BitMask extents must be positive");
    }
    bits_.assign(static_cast<std::size_t>(width) * height, 0);
  }

  BitMask(int x0, int y0, int width, int height, std::vector<std::uint8_t> bits)
      : x0_(x0), y0_(y0), w_(width), h_(height), bits_(std::move(bits)) {
    if (width <= 0 || height <= 0) {
      throw InvalidGeometryError("BitMask extents must be positive");
    }
    if (bits_.size() != static_cast<std::size_t>(width) * height) {
      throw InvalidGeometryError("BitMask bit count does not match extents");
    }
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  int x0() const { return x0_; }
  int y0() const { return y0_; }
  int width() const { return w_; }
  int height() const { return h_; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  // Local (mask-relative) access; no bounds check.
  std::uint8_t at(int lx, int ly) const {
    return bits_[static_cast<std::size_t>(ly) * w_ + lx];
  }
  void set(int lx, int ly, bool on = true) {
    bits_[static_cast<std::size_t>(ly) * w_ + lx] = on ? 1 : 0;
  }

  // Image-coordinate query; pixels outside the extent are zero.
  bool test_pixel(int px, int py) const {
    const int lx = px - x0_;
    const int ly = py - y0_;
    if (lx < 0 || ly < 0 || lx >= w_ || ly >= h_) return false;
    return at(lx, ly) != 0;
  }

  const std::uint8_t* row(int ly) const {
    return bits_.data() + static_cast<std::size_t>(ly) * w_;
  }

  friend bool operator==(const BitMask& a, const BitMask& b) {
    return a.x0_ == b.x0_ && a.y0_ == b.y0_ && a.w_ == b.w_ && a.h_ == b.h_ &&
           a.bits_ == b.bits_;
  }

private:
  int x0_, y0_, w_, h_;
  std::vector<std::uint8_t> bits_;
};

inline std::int64_t mask_area(const BitMask& m) {
  std::int64_t n = 0;
  for (std::uint8_t b : m.bits()) n += b;
  return n;
}

inline std::int64_t mask_intersection_area(const BitMask& a, const BitMask& b) {
  const int x0 = std::max(a.x0(), b.x0());
  const int y0 = std::max(a.y0(), b.y0());
  const int x1 = std::min(a.x0() + a.width(), b.x0() + b.width());
  const int y1 = std::min(a.y0() + a.height(), b.y0() + b.height());
  if (x0 >= x1 || y0 >= y1) return 0;
  std::int64_t n = 0;
  for (int py = y0; py < y1; ++py) {
    const std::uint8_t* ra = a.row(py - a.y0()) + (x0 - a.x0());
    const std::uint8_t* rb = b.row(py - b.y0()) + (x0 - b.x0());
    const int len = x1 - x0;
    for (int i = 0; i < len; ++i) n += ra[i] & rb[i];
  }
  return n;
}

inline double mask_iou(const BitMask& a, const BitMask& b) {
  const std::int64_t area_a = mask_area(a);
  const std::int64_t area_b = mask_area(b);
  if (area_a == 0 && area_b == 0) return 0.0;
  const std::int64_t inter = mask_intersection_area(a, b);
  return static_cast<double>(inter) /
         static_cast<double>(area_a + area_b - inter);
}

// Tightest axis-aligned box covering all set pixels, in pixel-extent
// coordinates (pixel (px, py) occupies [px, px+1) x [py, py+1)).
inline AABox mask_bounding_box(const BitMask& m) {
  int x0 = m.width(), y0 = m.height(), x1 = -1, y1 = -1;
  for (int ly = 0; ly < m.height(); ++ly) {
    const std::uint8_t* r = m.row(ly);
    for (int lx = 0; lx < m.width(); ++lx) {
      if (!r[lx]) continue;
      x0 = std::min(x0, lx);
      x1 = std::max(x1, lx);
      y0 = std::min(y0, ly);
      y1 = std::max(y1, ly);
    }
  }
  if (x1 < 0) throw EmptyMaskError("mask_bounding_box on empty mask");
  return AABox(m.x0() + x0, m.y0() + y0, m.x0() + x1 + 1, m.y0() + y1 + 1);
}

namespace detail {

// Inclusive pixel index range whose centers fall inside [lo, hi].
inline std::pair<int, int> center_range(double lo, double hi) {
  const int first = static_cast<int>(std::ceil(lo - 0.5));
  const int last = static_cast<int>(std::floor(hi - 0.5));
  return {first, last};
}

struct RowSpan {
  int py;
  int px_first;
  int px_last;
};

// Scanline sweep of a simple polygon under the boundary-inclusive
// pixel-center rule. Crossing parity uses the half-open rule (an edge counts
21 // when yc lies in [min(ay,by), max(ay,by))); horizontal edges and vertices
// exactly on the scanline are added as degenerate boundary intervals so that
// on-boundary centers are kept.
inline std::vector<RowSpan> scan_polygon(const std::array<Point, 4>& poly,
                                         int py_first, int py_last,
                                         int px_lo, int px_hi) {
  std::vector<RowSpan> spans;
  std::vector<double> xs;
  std::vector<std::pair<double, double>> boundary;
  for (int py = py_first; py <= py_last; ++py) {
    const double yc = py + 0.5;
    xs.clear();
    boundary.clear();
    for (int i = 0; i < 4; ++i) {
      const Point& a = poly[i];
      const Point& b = poly[(i + 1) % 4];
      if (a.y == b.y) {
        if (a.y == yc) boundary.emplace_back(std::min(a.x, b.x), std::max(a.x, b.x));
        continue;
      }
      const double y_lo = std::min(a.y, b.y);
      const double y_hi = std::max(a.y, b.y);
      if (yc >= y_lo && yc < y_hi) {
        xs.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
      }
    }
    for (const Point& p : poly) {
      if (p.y == yc) boundary.emplace_back(p.x, p.x);
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
      boundary.emplace_back(xs[i], xs[i + 1]);
    }
    for (const auto& [xl, xr] : boundary) {
      auto [first, last] = center_range(xl, xr);
      first = std::max(first, px_lo);
      last = std::min(last, px_hi);
      if (first <= last) spans.push_back({py, first, last});
    }
  }
  return spans;
}

}  // namespace detail

// Rasterizes a simple quad: pixel (px, py) is set iff its center lies inside
// the quad, boundary included. The result tightly bounds the set pixels; a
// quad thinner than a pixel everywhere may rasterize empty (returned as a
// 1x1 zero mask).
inline BitMask rasterize_quad(const Quad& q,
                              std::optional<AABox> clip = std::nullopt) {
  if (!q.is_simple()) {
    throw InvalidGeometryError("rasterize_quad: self-intersecting quad");
  }
  const auto empty_at = [&]() {
    return BitMask(static_cast<int>(std::floor(q[0].x)),
                   static_cast<int>(std::floor(q[0].y)), 1, 1);
  };
  if (clip && (clip->width() <= 0.0 || clip->height() <= 0.0)) {
    throw InvalidBoxError("rasterize_quad: degenerate clip box");
  }
  if (q.area() == 0.0) return empty_at();

  const AABox bb = q.bounding_box();
  double y_lo = bb.y_min, y_hi = bb.y_max;
  double x_lo = bb.x_min, x_hi = bb.x_max;
  if (clip) {
    y_lo = std::max(y_lo, clip->y_min);
    y_hi = std::min(y_hi, clip->y_max);
    x_lo = std::max(x_lo, clip->x_min);
    x_hi = std::min(x_hi, clip->x_max);
    if (y_lo > y_hi || x_lo > x_hi) return empty_at();
  }
  const auto [py_first, py_last] = detail::center_range(y_lo, y_hi);
  const auto [px_lo, px_hi] = detail::center_range(x_lo, x_hi);
  if (py_first > py_last || px_lo > px_hi) return empty_at();

  const auto spans =
      detail::scan_polygon(q.vertices(), py_first, py_last, px_lo, px_hi);
  if (spans.empty()) return empty_at();

  int mx0 = spans.front().px_first, mx1 = spans.front().px_last;
  int my0 = spans.front().py, my1 = spans.front().py;
  for (const auto& s : spans) {
    mx0 = std::min(mx0, s.px_first);
    mx1 = std::max(mx1, s.px_last);
    my0 = std::min(my0, s.py);
    my1 = std::max(my1, s.py);
  }
  BitMask m(mx0, my0, mx1 - mx0 + 1, my1 - my0 + 1);
  for (const auto& s : spans) {
    for (int px = s.px_first; px <= s.px_last; ++px) {
      m.set(px - mx0, s.py - my0);
    }
  }
  return m;
}

namespace detail {

// Convex hull (monotone chain) of a point set; returns vertices in order,
// collinear points dropped. Handles sizes 0..2 trivially.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace detail

// Minimum-area enclosing rotated rectangle of the set-pixel centers, found
// by convex hull + caliper scan over hull edge directions (the axis-aligned
// direction is always a candidate, so the result never exceeds the
// axis-aligned bounding box). The center rectangle is grown by half a pixel
// on each side so an axis-aligned filled w x h rectangle maps back to itself
// and a single pixel maps to its unit square.
inline Quad min_area_quad(const BitMask& m) {
  std::vector<Point> pts;
  for (int ly = 0; ly < m.height(); ++ly) {
    const std::uint8_t* r = m.row(ly);
    int first = -1, last = -1;
    for (int lx = 0; lx < m.width(); ++lx) {
      if (!r[lx]) continue;
      if (first < 0) first = lx;
      last = lx;
    }
    if (first < 0) continue;
    const double yc = m.y0() + ly + 0.5;
    pts.push_back({m.x0() + first + 0.5, yc});
    if (last != first) pts.push_back({m.x0() + last + 0.5, yc});
  }
  if (pts.empty()) throw EmptyMaskError("min_area_quad on empty mask");

  const std::vector<Point> hull = detail::convex_hull(std::move(pts));

  std::vector<std::pair<double, double>> dirs;
  dirs.emplace_back(1.0, 0.0);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& p = hull[i];
    const Point& q = hull[(i + 1) % hull.size()];
    const double ex = q.x - p.x;
    const double ey = q.y - p.y;
    const double len = std::hypot(ex, ey);
    if (len > 0.0) dirs.emplace_back(ex / len, ey / len);
  }

  double best_area = std::numeric_limits<double>::infinity();
  double bu0 = 0, bu1 = 0, bv0 = 0, bv1 = 0, bdx = 1, bdy = 0;
  for (const auto& [dx, dy] : dirs) {
    double u0 = std::numeric_limits<double>::infinity(), u1 = -u0;
    double v0 = u0, v1 = -u0;
    for (const Point& p : hull) {
      const double u = p.x * dx + p.y * dy;
      const double v = -p.x * dy + p.y * dx;
      u0 = std::min(u0, u);
      u1 = std::max(u1, u);
      v0 = std::min(v0, v);
      v1 = std::max(v1, v);
    }
    const double area = (u1 - u0 + 1.0) * (v1 - v0 + 1.0);
    if (area < best_area) {
      best_area = area;
      bu0 = u0; bu1 = u1; bv0 = v0; bv1 = v1; bdx = dx; bdy = dy;
    }
  }

  bu0 -= 0.5; bu1 += 0.5; bv0 -= 0.5; bv1 += 0.5;
  auto to_image = [&](double u, double v) {
    return Point{u * bdx - v * bdy, u * bdy + v * bdx};
  };
  return Quad(to_image(bu0, bv0), to_image(bu1, bv0), to_image(bu1, bv1),
              to_image(bu0, bv1));
}

}  // namespace textgeom
