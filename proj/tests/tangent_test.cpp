#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "slicelab/example3.hpp"
#include "slicelab/tangent.hpp"

using namespace slicelab;

namespace {

PointCloud cloud(std::vector<Vec2> pts) { return PointCloud{std::move(pts), 0}; }

bool lex_less(const Vec2& a, const Vec2& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

}  // namespace

TEST_CASE("Hausdorff distance examples") {
  const auto a = cloud({Vec2(0, 0)});
  const auto b = cloud({Vec2(1, 0)});
  CHECK(hausdorff_distance(a, a) == 0);
  CHECK(hausdorff_distance(a, b) == 1);

  const auto grid = cloud({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)});
  auto shifted = grid;
  for (auto& p : shifted.points) p.x() += 0.1;
  CHECK(hausdorff_distance(grid, shifted) == doctest::Approx(0.1));
  CHECK(directed_distance(a, grid) == 0);
  CHECK(directed_distance(grid, a) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(hausdorff_distance(a, cloud({})), Error);
}

TEST_CASE("Hausdorff distance is a metric") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(-1, 1);
  auto random_cloud = [&] {
    std::vector<Vec2> pts(1 + rng() % 30);
    for (auto& p : pts) p = Vec2(u(rng), u(rng));
    return cloud(pts);
  };
  for (int i = 0; i < 200; ++i) {
    const auto a = random_cloud(), b = random_cloud(), c = random_cloud();
    CHECK(hausdorff_distance(a, b) == hausdorff_distance(b, a, 3));
    CHECK(hausdorff_distance(a, c) <= hausdorff_distance(a, b) + hausdorff_distance(b, c) + 1e-12);
  }
}

TEST_CASE("quadrant net covers the quarter disc") {
  const auto net = quadrant_net(0.05);
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto& p : net.points) {
    CHECK(p.x() >= -1e-15);
    CHECK(p.y() >= -1e-15);
    CHECK(p.norm() <= 1 + 1e-12);
  }
  for (int i = 0; i < 2000; ++i) {
    const Vec2 q(u(rng), u(rng));
    if (q.norm() > 1) continue;
    CHECK(directed_distance(cloud({q}), net) <= 0.05);
  }
}

TEST_CASE("blow-up of the whole attractor") {
  const AffineIFS ifs = example3_ifs();
  const auto whole = blowup_cloud(ifs, Vec2(0.5, 0.5), 1.0, 0.05);
  CHECK(whole.points.size() > 100);
  for (const auto& p : whole.points) CHECK(p.norm() <= 1.05 + 1e-12);
  CHECK(std::any_of(whole.points.begin(), whole.points.end(),
                    [](const Vec2& p) { return (p - Vec2(-0.5, -0.5)).norm() < 0.05; }));
  CHECK_THROWS_AS(blowup_cloud(ifs, Vec2(0, 0), 1e-9, 1e-3, 1000), Error);
  CHECK_THROWS_AS(blowup_cloud(ifs, Vec2(0, 0), 0, 0.1), Error);
}

TEST_CASE("blow-ups do not depend on branch order") {
  const AffineIFS ifs = example3_ifs();
  AffineIFS swapped = ifs;
  std::swap(swapped.maps[1], swapped.maps[2]);
  for (const Vec2 x : {Vec2(0, 0), Vec2(0.3, 0.2), Vec2(1, 1)}) {
    auto a = blowup_cloud(ifs, x, 0.1, 0.05).points;
    auto b = blowup_cloud(swapped, x, 0.1, 0.05).points;
    REQUIRE(a.size() == b.size());
    std::sort(a.begin(), a.end(), lex_less);
    std::sort(b.begin(), b.end(), lex_less);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() <= 1e-12);
  }
}

TEST_CASE("blow-up resolution is self-consistent") {
  const AffineIFS ifs = example3_ifs();
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(0, 1), rr(0.05, 0.3);
  const double eps = 0.05;
  for (int i = 0; i < 10; ++i) {
    const Vec2 x(u(rng), u(rng));
    const double r = rr(rng);
    auto coarse = blowup_cloud(ifs, x, r, eps);
    // Points near the rim may lose their fine partner to the clipping radius.
    std::erase_if(coarse.points, [](const Vec2& p) { return p.norm() > 1; });
    const auto fine = blowup_cloud(ifs, x, r, eps / 4);
    if (coarse.points.empty()) continue;
    CHECK(directed_distance(coarse, fine) <= 2 * eps);
  }
}

TEST_CASE("tangent at the origin approaches the quadrant") {
  for (int n : {3, 5}) {
    const auto t = example3_tangent_check(n);
    CHECK(t.bound == doctest::Approx(std::asin(std::pow(0.75, n)) + 2 * kTangentEps + kTangentNetSpacing));
    CHECK(t.pass());
    CHECK(t.cloud_size > 0);
  }
  CHECK_THROWS_AS(example3_tangent_check(1), Error);
}
