#include <doctest.h>

#include <random>

#include "slicelab/error.hpp"
#include "slicelab/geometry.hpp"

using namespace slicelab;

TEST_CASE("convex polygon basics") {
  const auto sq = ConvexPolygon::box(0, 1, 0, 1);
  CHECK(sq.area() == doctest::Approx(1));
  CHECK(sq.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(sq.centroid().isApprox(Vec2(0.5, 0.5)));
  CHECK(sq.contains(Vec2(0.5, 0.5), 0.49));
  CHECK_FALSE(sq.contains(Vec2(0.5, 0.5), 0.51));
  CHECK(sq.distance(Vec2(2, 0.5)) == doctest::Approx(1));
  CHECK(sq.distance(Vec2(0.3, 0.3)) == 0);

  const ConvexPolygon cw({Vec2(0, 0), Vec2(0, 1), Vec2(1, 0)});
  CHECK(cw.area() == doctest::Approx(0.5));
  CHECK_THROWS_AS(ConvexPolygon({Vec2(0, 0), Vec2(1, 1), Vec2(1, 0), Vec2(0, 1)}), Error);
}

TEST_CASE("clipping and images") {
  const auto sq = ConvexPolygon::box(0, 1, 0, 1);
  const auto half = sq.clip(Vec2(1, 0), 0.5);
  CHECK(half.area() == doctest::Approx(0.5));
  const auto tri = sq.clip(Vec2(1, 1), 1);
  CHECK(tri.area() == doctest::Approx(0.5));

  AffineMap2 flip;
  flip.linear << -1, 0, 0, 1;
  const auto img = sq.image(flip);
  CHECK(img.area() == doctest::Approx(1));
  CHECK(img.contains(Vec2(-0.5, 0.5), 0.1));

  AffineMap2 squash;
  squash.linear << 1, 0, 0, 0;
  CHECK(sq.image(squash).area() == doctest::Approx(0));
}

TEST_CASE("affine map inverse and fixed point") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 200; ++i) {
    AffineMap2 m;
    m.linear << u(rng), u(rng), u(rng), u(rng);
    m.translation = Vec2(u(rng), u(rng));
    if (std::abs(m.linear.determinant()) < 0.05) continue;
    const Vec2 p(u(rng), u(rng));
    CHECK((m.inverse()(m(p)) - p).norm() < 1e-10);
    const Vec2 f = m.fixed_point();
    CHECK((m(f) - f).norm() < 1e-10);
    const auto id = compose(m, m.inverse());
    CHECK((id(p) - p).norm() < 1e-10);
  }
}
