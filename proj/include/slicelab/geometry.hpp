#ifndef SLICELAB_GEOMETRY_HPP
#define SLICELAB_GEOMETRY_HPP

#include <vector>

#include "slicelab/linalg2.hpp"

namespace slicelab {

/// x -> linear * x + translation.
struct AffineMap2 {
  Mat2 linear = Mat2::Identity();
  Vec2 translation = Vec2::Zero();

  static AffineMap2 identity() { return {}; }

  Vec2 operator()(const Vec2& x) const { return linear * x + translation; }
  AffineMap2 inverse() const;
  /// Fixed point of the map; requires I - linear invertible.
  Vec2 fixed_point() const;
};

/// outer o inner.
inline AffineMap2 compose(const AffineMap2& outer, const AffineMap2& inner) {
  return {outer.linear * inner.linear, outer.linear * inner.translation + outer.translation};
}

/// Convex polygon with counterclockwise vertices. A two-vertex polygon is a
/// segment and a one-vertex polygon is a point; both are allowed for images
/// under degenerate maps but rejected as enclosures.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  /// Validates convexity and orientation; clockwise input is reversed.
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  static ConvexPolygon box(double x0, double x1, double y0, double y1);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double area() const;
  double diameter() const;
  Vec2 centroid() const;

  /// Signed clearance of p from the boundary: positive inside.
  double clearance(const Vec2& p) const;
  bool contains(const Vec2& p, double margin = 0) const { return clearance(p) >= margin; }
  /// Euclidean distance from p to the polygon (0 when inside).
  double distance(const Vec2& p) const;

  /// Image under an affine map, kept counterclockwise.
  ConvexPolygon image(const AffineMap2& map) const;

  /// Intersection with the half-plane {p : normal . p <= offset}.
  ConvexPolygon clip(const Vec2& normal, double offset) const;

 private:
  std::vector<Vec2> vertices_;
};

}  // namespace slicelab

#endif  // SLICELAB_GEOMETRY_HPP
