#ifndef SLICELAB_TANGENT_HPP
#define SLICELAB_TANGENT_HPP

#include <cstdint>
#include <vector>

#include "slicelab/affine_ifs.hpp"

namespace slicelab {

/// Finite planar point set with a covering-radius guarantee.
struct PointCloud {
  std::vector<Vec2> points;
  double resolution = 0;
};

/// Blow-up y -> (y - x) / r of the attractor near x. Cylinders whose hull
/// meets B(x, r (1 + eps)) are refined until their hull diameter is at most
/// eps r; each contributes the image of the fixed point of phi_1, kept when it
/// lands in B(0, 1 + eps). Points come out in lexicographic word order.
PointCloud blowup_cloud(const AffineIFS& ifs, const Vec2& x, double r, double eps,
                        std::uint64_t node_budget = 20'000'000);

/// max over a of the distance from a to b.
double directed_distance(const PointCloud& a, const PointCloud& b, unsigned threads = 1);
double hausdorff_distance(const PointCloud& a, const PointCloud& b, unsigned threads = 1);

/// Polar net of the quarter disc {|p| <= 1, p >= 0}: rings every `spacing`
/// in radius, arc spacing at most `spacing` along each ring, boundary
/// included. Every point of the quarter disc is within `spacing` of the net.
PointCloud quadrant_net(double spacing);

struct TangentCheck {
  int n = 0;
  double distance = 0;
  double bound = 0;  // arcsin((3/4)^n) + 2 eps + net slack
  std::size_t cloud_size = 0;
  bool pass() const { return distance <= bound; }
};

inline constexpr double kTangentEps = 0.02;
inline constexpr double kTangentNetSpacing = 0.02;

/// Blow-up of the three-map carpet at the origin with r = 3^-n against the
/// closed first quadrant. 2 <= n <= 7.
TangentCheck example3_tangent_check(int n, unsigned threads = 1);

}  // namespace slicelab

#endif  // SLICELAB_TANGENT_HPP
