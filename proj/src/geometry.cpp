#include "slicelab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slicelab {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const std::vector<Vec2>& v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return s / 2;
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

AffineMap2 AffineMap2::inverse() const {
  if (is_singular(linear)) throw Error(ErrorCode::SingularMatrix, "affine map is not invertible");
  const Mat2 inv = linear.inverse();
  return {inv, -(inv * translation)};
}

Vec2 AffineMap2::fixed_point() const {
  const Mat2 m = Mat2::Identity() - linear;
  if (is_singular(m)) throw Error(ErrorCode::SingularMatrix, "map has no unique fixed point");
  return m.inverse() * translation;
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorCode::DegenerateHull, "polygon has no vertices");
  for (const auto& v : vertices_) {
    if (!v.allFinite()) throw Error(ErrorCode::DegenerateHull, "polygon vertex is not finite");
  }
  if (vertices_.size() < 3) return;
  if (signed_area(vertices_) < 0) std::reverse(vertices_.begin(), vertices_.end());
  const std::size_t n = vertices_.size();
  const double scale = diameter();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % n];
    const Vec2& c = vertices_[(i + 2) % n];
    if (cross(b - a, c - b) < -1e-12 * scale * scale) {
      throw Error(ErrorCode::DegenerateHull, "polygon is not convex");
    }
  }
}

ConvexPolygon ConvexPolygon::box(double x0, double x1, double y0, double y1) {
  return ConvexPolygon({Vec2(x0, y0), Vec2(x1, y0), Vec2(x1, y1), Vec2(x0, y1)});
}

double ConvexPolygon::area() const {
  return vertices_.size() < 3 ? 0.0 : std::abs(signed_area(vertices_));
}

double ConvexPolygon::diameter() const {
  double d = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      d = std::max(d, (vertices_[i] - vertices_[j]).norm());
    }
  }
  return d;
}

Vec2 ConvexPolygon::centroid() const {
  Vec2 c = Vec2::Zero();
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

double ConvexPolygon::clearance(const Vec2& p) const {
  if (vertices_.size() < 3) return -distance(p);
  double inside = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = vertices_[(i + 1) % n] - vertices_[i];
    const double len = e.norm();
    if (len == 0) continue;
    inside = std::min(inside, cross(e, p - vertices_[i]) / len);
  }
  return inside >= 0 ? inside : -distance(p);
}

double ConvexPolygon::distance(const Vec2& p) const {
  const std::size_t n = vertices_.size();
  if (n == 1) return (p - vertices_[0]).norm();
  if (n >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i) {
      inside = cross(vertices_[(i + 1) % n] - vertices_[i], p - vertices_[i]) >= 0;
    }
    if (inside) return 0;
  }
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    d = std::min(d, segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
  }
  return d;
}

ConvexPolygon ConvexPolygon::image(const AffineMap2& map) const {
  ConvexPolygon out;
  out.vertices_.reserve(vertices_.size());
  for (const auto& v : vertices_) out.vertices_.push_back(map(v));
  if (map.linear.determinant() < 0) std::reverse(out.vertices_.begin(), out.vertices_.end());
  return out;
}

ConvexPolygon ConvexPolygon::clip(const Vec2& normal, double offset) const {
  std::vector<Vec2> out;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % n];
    const double fa = normal.dot(a) - offset;
    const double fb = normal.dot(b) - offset;
    if (fa <= 0) out.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) out.push_back(a + (fa / (fa - fb)) * (b - a));
  }
  if (out.empty()) throw Error(ErrorCode::DegenerateHull, "clipping removed the whole polygon");
  return ConvexPolygon(std::move(out));
}

}  // namespace slicelab
