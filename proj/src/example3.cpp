#include "slicelab/example3.hpp"

#include <algorithm>
#include <cmath>

namespace slicelab {

AffineIFS example3_ifs(double cone_eps) {
  AffineIFS ifs;
  AffineMap2 m1, m2, m3;
  m1.linear << 1.0 / 3, 1.0 / 4, 0, 1.0 / 4;
  m2.linear << 1.0 / 4, 0, 1.0 / 4, 1.0 / 3;
  m3.linear << 1.0 / 3, 1.0 / 12, 1.0 / 4, 1.0 / 2;
  m3.translation = Vec2(7.0 / 12, 1.0 / 4);
  ifs.maps = {m1, m2, m3};
  ifs.enclosure = ConvexPolygon::box(0, 1, 0, 1);
  ifs.certificate = EnclosureCertificate::VerifiedInvariant;
  ifs.forward_cone = example3_cone(cone_eps);
  ifs.path_endpoints = std::array<Vec2, 2>{Vec2(0, 0), Vec2(1, 1)};
  ifs.validate();
  return ifs;
}

MultiCone example3_cone(double eps) {
  if (!(eps >= 0 && eps < 1)) throw Error(ErrorCode::InvalidArgument, "cone slack must lie in [0, 1)");
  return MultiCone({ProjInterval(ProjLine(Vec2(1, -eps)), ProjLine(Vec2(-eps, 1)))});
}

ProjInterval example3_quadrant() { return ProjInterval(ProjLine(Vec2(1, 0)), ProjLine(Vec2(0, 1))); }

ProjInterval example3_dual_cone() {
  return ProjInterval(ProjLine(Vec2(1, -3)), ProjLine(Vec2(3, -1)));
}

namespace {

// Unit vectors spanning an arc at `samples` evenly spaced angles.
std::vector<Vec2> arc_samples(const ProjInterval& arc, int samples) {
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double t = arc.start() + arc.length() * k / (samples - 1);
    out.emplace_back(std::cos(t), std::sin(t));
  }
  return out;
}

}  // namespace

Example3Checks example3_checks(int samples, double eps, double margin) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  const AffineIFS ifs = example3_ifs();
  Example3Checks out;
  out.min_quadrant_image = std::numeric_limits<double>::infinity();
  const auto quadrant = arc_samples(example3_quadrant(), samples);
  const auto dual = arc_samples(example3_dual_cone(), samples);
  const MultiCone cone = example3_cone(eps);
  out.cone_invariant = true;
  out.cone_margin = std::numeric_limits<double>::infinity();
  for (const auto& m : ifs.maps) {
    out.max_norm = std::max(out.max_norm, svd2(m.linear).alpha1);
    for (const auto& v : quadrant) out.min_quadrant_image = std::min(out.min_quadrant_image, (m.linear * v).norm());
    const Mat2 inv = m.linear.inverse();
    for (const auto& v : dual) out.max_dual_conorm = std::max(out.max_dual_conorm, 1.0 / (inv * v).norm());
    out.cone_invariant = out.cone_invariant && cone_strictly_maps_into(m.linear, cone, cone, margin);
    // Clearance of the image arc inside the cone, for reporting.
    const auto img = cone.intervals().front().image(m.linear);
    const auto& c = cone.intervals().front();
    const double off = wrap_pi(img.start() - c.start());
    out.cone_margin = std::min({out.cone_margin, off, c.length() - off - img.length()});
  }
  out.square_invariant = verify_invariant_enclosure(ifs, ConvexPolygon::box(0, 1, 0, 1), 0);
  return out;
}

}  // namespace slicelab
