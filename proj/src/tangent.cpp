#include "slicelab/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "slicelab/example3.hpp"
#include "slicelab/parallel.hpp"

namespace slicelab {

namespace {

struct BlowupWalk {
  const AffineIFS& ifs;
  Vec2 x;
  double r;
  double eps;
  Vec2 base;
  std::uint64_t budget;
  std::uint64_t visited = 0;
  std::vector<Vec2> points;

  void walk(const AffineMap2& acc) {
    if (++visited > budget) throw Error(ErrorCode::ResolutionTooFine, "blow-up exceeded its node budget");
    const ConvexPolygon hull = ifs.enclosure.image(acc);
    if (hull.distance(x) > r * (1 + eps)) return;
    if (hull.diameter() <= eps * r) {
      const Vec2 p = (acc(base) - x) / r;
      if (p.norm() <= 1 + eps) points.push_back(p);
      return;
    }
    for (const auto& m : ifs.maps) walk(compose(acc, m));
  }
};

}  // namespace

PointCloud blowup_cloud(const AffineIFS& ifs, const Vec2& x, double r, double eps,
                        std::uint64_t node_budget) {
  ifs.validate();
  if (!(r > 0) || !(eps > 0)) throw Error(ErrorCode::InvalidArgument, "radius and resolution must be positive");
  if (!x.allFinite()) throw Error(ErrorCode::InvalidArgument, "centre must be finite");
  BlowupWalk w{ifs, x, r, eps, ifs.maps.front().fixed_point(), node_budget, 0, {}};
  w.walk(AffineMap2::identity());
  return {std::move(w.points), eps};
}

double directed_distance(const PointCloud& a, const PointCloud& b, unsigned threads) {
  if (a.points.empty() || b.points.empty()) throw Error(ErrorCode::EmptyCloud, "point cloud is empty");
  std::vector<double> nearest(a.points.size());
  parallel_for(a.points.size(), threads, [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b.points) best = std::min(best, (a.points[i] - q).squaredNorm());
    nearest[i] = best;
  });
  return std::sqrt(*std::max_element(nearest.begin(), nearest.end()));
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b, unsigned threads) {
  return std::max(directed_distance(a, b, threads), directed_distance(b, a, threads));
}

PointCloud quadrant_net(double spacing) {
  if (!(spacing > 0)) throw Error(ErrorCode::InvalidArgument, "net spacing must be positive");
  PointCloud net;
  net.resolution = spacing;
  const int rings = static_cast<int>(std::ceil(1 / spacing));
  net.points.emplace_back(0, 0);
  for (int i = 1; i <= rings; ++i) {
    const double rho = std::min(1.0, i * spacing);
    const double arc = std::numbers::pi / 2 * rho;
    const int steps = std::max(1, static_cast<int>(std::ceil(arc / spacing)));
    for (int j = 0; j <= steps; ++j) {
      const double theta = std::numbers::pi / 2 * j / steps;
      net.points.emplace_back(rho * std::cos(theta), rho * std::sin(theta));
    }
  }
  return net;
}

TangentCheck example3_tangent_check(int n, unsigned threads) {
  if (n < 2 || n > 7) throw Error(ErrorCode::OutOfRange, "tangent check supports 2 <= n <= 7");
  const AffineIFS ifs = example3_ifs();
  const double r = std::pow(3.0, -n);
  const PointCloud cloud = blowup_cloud(ifs, Vec2::Zero(), r, kTangentEps);
  const PointCloud net = quadrant_net(kTangentNetSpacing);
  TangentCheck out;
  out.n = n;
  out.cloud_size = cloud.points.size();
  out.distance = hausdorff_distance(cloud, net, threads);
  out.bound = std::asin(std::pow(0.75, n)) + 2 * kTangentEps + kTangentNetSpacing;
  return out;
}

}  // namespace slicelab
