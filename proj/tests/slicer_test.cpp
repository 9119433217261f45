#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "slicelab/example3.hpp"
#include "slicelab/slicer.hpp"
#include "slicelab/takagi.hpp"

using namespace slicelab;

namespace {

constexpr double kL = 2.0 / 3;

Line random_graph_line(std::mt19937_64& rng, double lambda) {
  std::uniform_real_distribution<double> u(0, 1), t(-3, 3);
  const double x = u(rng);
  return Line::sloped(t(rng), Vec2(x, eval(lambda, x).value));
}

bool same_census(const SliceCensus& a, const SliceCensus& b) {
  return a.definite == b.definite && a.possible == b.possible && a.inside == b.inside;
}

}  // namespace

TEST_CASE("lines") {
  const Line l = Line::sloped(2, Vec2(1, 1));
  CHECK(l.intercept() == -1);
  CHECK(l.signed_distance(Vec2(0, 0)) == doctest::Approx(1 / std::sqrt(5.0)));
  CHECK(Line::vertical(0.25).signed_distance(Vec2(1, 7)) == doctest::Approx(0.75));
  CHECK(Line::horizontal(0.3).signed_distance(Vec2(0.5, 0.5)) == doctest::Approx(0.2));
  CHECK_THROWS_AS(Line::sloped(INFINITY, Vec2(0, 0)), Error);
  CHECK_THROWS_AS(SliceTarget(Strip{Line::horizontal(0), 0}), Error);
}

TEST_CASE("cylinder classification examples") {
  const AffineIFS ifs = takagi_ifs(kL);
  const Word w = Word::from_string("1");
  const auto hull = cylinder_hull(ifs, w);
  const auto map = cylinder_map(ifs, w);
  const std::array<Vec2, 2> ends{map(Vec2(0, 0)), map(Vec2(1, 0))};
  CHECK(classify_cylinder(hull, ends, Line::horizontal(0.3), 1e-9) == CylinderClass::Definite);
  CHECK(classify_cylinder(hull, ends, Line::horizontal(0.5), 1e-9) == CylinderClass::Possible);
  CHECK(classify_cylinder(hull, ends, Line::horizontal(1.5), 1e-9) == CylinderClass::Empty);
  CHECK(classify_cylinder(hull, ends, Strip{Line::horizontal(0.6), 0.2}, 1e-9) == CylinderClass::Definite);
  const std::array<Vec2, 2> far{Vec2(5, 5), Vec2(0, 0)};
  CHECK_THROWS_AS(classify_cylinder(hull, far, Line::horizontal(0.3), 1e-9), Error);
  CHECK(hull_inside_strip(hull, Strip{Line::horizontal(0.5), 0.75}, 1e-9));
  CHECK_FALSE(hull_inside_strip(hull, Strip{Line::horizontal(0.5), 0.6}, 1e-9));
}

TEST_CASE("census examples") {
  for (int n = 1; n <= 10; ++n) {
    const auto c = takagi_census(kL, Line::horizontal(1.5), n);
    CHECK(c.definite == 0);
    CHECK(c.possible == 0);
  }
  const auto c1 = takagi_census(kL, Line::horizontal(0.3), 1);
  CHECK(c1.definite == 2);
  CHECK(c1.possible == 2);
  const auto c12 = takagi_census(kL, Line::sloped(0, Vec2(0.5, 0.3)), 12);
  CHECK(c12.definite >= 2);
  CHECK_THROWS_AS(takagi_census(kL, Line::horizontal(0.3), 27), Error);
  CHECK_THROWS_AS(takagi_census(kL, Line::horizontal(0.3), 0), Error);
}

TEST_CASE("census word lists are sorted and consistent") {
  CensusOptions opts;
  opts.collect_words = true;
  opts.threads = 3;
  const auto c = takagi_census(kL, Line::sloped(1, Vec2(0.2, eval(kL, 0.2).value)), 12, HullKind::Box, opts);
  REQUIRE(c.definite_words);
  REQUIRE(c.possible_words);
  CHECK(c.definite_words->size() == c.definite);
  CHECK(c.possible_words->size() == c.possible);
  CHECK(std::is_sorted(c.possible_words->begin(), c.possible_words->end()));
  CHECK(std::includes(c.possible_words->begin(), c.possible_words->end(), c.definite_words->begin(),
                      c.definite_words->end()));
}

TEST_CASE("pruned census equals the exhaustive classifier") {
  std::mt19937_64 rng(31);
  const AffineIFS tk = takagi_ifs(kL, HullKind::Pentagon);
  const AffineIFS e3 = example3_ifs();
  for (int i = 0; i < 40; ++i) {
    const bool takagi = i % 2 == 0;
    const AffineIFS& ifs = takagi ? tk : e3;
    const int n = 1 + static_cast<int>(rng() % (takagi ? 8 : 6));
    SliceTarget target = random_graph_line(rng, kL);
    if (!takagi) target = Line::sloped(std::uniform_real_distribution<double>(-2, 2)(rng),
                                       Vec2(std::uniform_real_distribution<double>(0, 1)(rng), 0.5));
    if (i % 4 == 1) target.radius = std::ldexp(1.0, -static_cast<int>(rng() % 8));
    CHECK(same_census(slice_census(ifs, target, n), exhaustive_census(ifs, target, n)));
  }
}

TEST_CASE("profiles match single-depth censuses and thread counts") {
  const SliceTarget target = Line::sloped(-1.5, Vec2(0.4, eval(kL, 0.4).value));
  CensusOptions many;
  many.threads = 4;
  const auto prof = takagi_profile(kL, target, 12);
  const auto prof4 = takagi_profile(kL, target, 12, HullKind::Box, many);
  REQUIRE(prof.size() == 12);
  for (int n = 1; n <= 12; ++n) {
    CHECK(same_census(prof[n - 1], takagi_census(kL, target, n)));
    CHECK(same_census(prof[n - 1], prof4[n - 1]));
    CHECK(prof[n - 1].depth == n);
  }
  CHECK(prof.back().visited == prof4.back().visited);
}

TEST_CASE("soundness sandwich and target nesting") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 30; ++i) {
    const Line line = random_graph_line(rng, kL);
    const int n = 10;
    const auto l = takagi_census(kL, line, n);
    CHECK(l.definite <= l.possible);
    CHECK(l.possible <= (1u << n));
    CHECK(l.definite >= 1);  // the line passes through a graph point
    std::uint64_t prev = l.possible;
    for (double r : {1e-4, 1e-3, 1e-2, 1e-1}) {
      const auto s = takagi_census(kL, Strip{line, r}, n);
      CHECK(s.inside <= s.definite);
      CHECK(s.definite <= s.possible);
      CHECK(l.definite <= s.possible);
      CHECK(s.possible >= prev);
      prev = s.possible;
    }
  }
}

TEST_CASE("slack monotonicity") {
  std::mt19937_64 rng(41);
  const AffineIFS ifs = takagi_ifs(kL);
  for (int i = 0; i < 100; ++i) {
    const Line line = random_graph_line(rng, kL);
    Word w(2);
    const auto len = 1 + rng() % 10;
    for (std::size_t k = 0; k < len; ++k) w.push_back(static_cast<std::uint8_t>(rng() & 1));
    const auto hull = cylinder_hull(ifs, w);
    const auto map = cylinder_map(ifs, w);
    const std::array<Vec2, 2> ends{map(Vec2(0, 0)), map(Vec2(1, 0))};
    CylinderClass prev = classify_cylinder(hull, ends, line, 0);
    for (double eps : {1e-9, 1e-6, 1e-4, 1e-2, 1e-1}) {
      const auto cur = classify_cylinder(hull, ends, line, eps);
      if (cur == CylinderClass::Definite) CHECK(prev == CylinderClass::Definite);
      if (cur == CylinderClass::Empty) CHECK(prev == CylinderClass::Empty);
      prev = cur;
    }
    CensusOptions tight, loose;
    tight.slack = 1e-12;
    loose.slack = 1e-3;
    const auto a = takagi_census(kL, line, 8, HullKind::Box, tight);
    const auto b = takagi_census(kL, line, 8, HullKind::Box, loose);
    CHECK(b.definite <= a.definite);
    CHECK(b.possible >= a.possible);
  }
}

TEST_CASE("pentagon hull never loosens the census") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const Line line = random_graph_line(rng, kL);
    const auto box = takagi_census(kL, line, 10, HullKind::Box);
    const auto pent = takagi_census(kL, line, 10, HullKind::Pentagon);
    CHECK(pent.possible <= box.possible);
    CHECK(pent.definite == box.definite);
  }
}

TEST_CASE("vertical lines use the dyadic closed form") {
  const AffineIFS ifs = takagi_ifs(kL);
  for (double x0 : {0.3, 0.5, 0.71875, 1.0 / 3}) {
    for (int n = 1; n <= 10; ++n) {
      const auto exact = takagi_census(kL, Line::vertical(x0), n);
      const auto geo = exhaustive_census(ifs, Line::vertical(x0), n);
      CHECK(exact.definite >= 1);
      CHECK(exact.possible <= 2);
      CHECK(geo.definite <= exact.definite);
      CHECK(exact.possible <= geo.possible);
    }
  }
  const auto strip = takagi_census(kL, Strip{Line::vertical(0.5), 0.25}, 6);
  CHECK(strip.possible >= 32);
}

TEST_CASE("Minkowski slope fits") {
  std::vector<SliceCensus> ones, quads;
  for (int n = 8; n <= 16; ++n) {
    SliceCensus c;
    c.depth = n;
    c.definite = c.possible = 1;
    ones.push_back(c);
    c.definite = std::uint64_t{1} << n;
    c.possible = std::uint64_t{1} << (2 * n);
    quads.push_back(c);
  }
  const auto z = minkowski_slope(ones);
  CHECK(z.lower == 0);
  CHECK(z.upper == 0);
  const auto q = minkowski_slope(quads);
  CHECK(q.lower == doctest::Approx(1).epsilon(1e-12));
  CHECK(q.upper == doctest::Approx(2).epsilon(1e-12));
  CHECK(q.upper_residual < 1e-9);

  std::vector<int> depths;
  std::vector<std::uint64_t> counts;
  for (int n = 8; n <= 16; n += 2) {
    depths.push_back(n);
    counts.push_back(std::uint64_t{1} << (n / 2));
  }
  CHECK(std::abs(log2_count_slope(depths, counts).first - 0.5) <= 1e-9);

  CHECK_THROWS_AS(minkowski_slope({ones[0], ones[1]}), Error);
  CHECK_THROWS_AS(minkowski_slope({ones[0], ones[2], ones[3]}), Error);
}

TEST_CASE("bad-word tallies") {
  const auto below = bad_word_tally(kL, Line::horizontal(-0.1), 2);
  CHECK(below.radius == doctest::Approx(4 * std::sqrt(2.0) * 4 / 9));
  CHECK(below.bad == std::vector<std::uint64_t>{4, 0});
  CHECK(below.line_possible == std::vector<std::uint64_t>{0, 0});

  const auto above = bad_word_tally(kL, Line::horizontal(1.5), 6, 0.0, HullKind::Box, {});
  CHECK(std::accumulate(above.bad.begin(), above.bad.end(), std::uint64_t{0}) == 0);
  CHECK(above.strip_possible == 0);

  std::mt19937_64 rng(47);
  for (int i = 0; i < 10; ++i) {
    const Line line = random_graph_line(rng, kL);
    const int n = 10;
    const auto t = bad_word_tally(kL, line, n);
    const std::uint64_t sum = std::accumulate(t.bad.begin(), t.bad.end(), std::uint64_t{0});
    CHECK(sum == t.strip_possible - t.line_possible.back());
    CensusOptions o;
    o.slack = default_slack(takagi_ifs(kL), line);
    CHECK(t.line_possible.back() == takagi_census(kL, line, n, HullKind::Box, o).possible);
    CHECK(t.strip_possible == takagi_census(kL, Strip{line, t.radius}, n, HullKind::Box, o).possible);
  }

  const auto mid = bad_word_tally(kL, Line::horizontal(0.3), 12);
  for (const auto& r : mid.ratios())
    if (r) CHECK(std::isfinite(*r));
  CHECK_THROWS_AS(bad_word_tally(kL, Line::horizontal(0.3), 23), Error);
}

TEST_CASE("induction count bound") {
  const auto rows = count_bound_check(kL, Line::horizontal(0.3), 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].bound == 63);
  CHECK(rows[1].bound == 3969);
  CHECK(rows[2].depth == 18);
  for (const auto& r : rows) CHECK(r.pass());
  for (const auto& r : count_bound_check(kL, Line::horizontal(1.5), 2)) CHECK(r.definite == 0);
  CHECK_THROWS_AS(count_bound_check(kL, Line::horizontal(0.3), 5), Error);
}

TEST_CASE("scans") {
  const auto empty = scan_max_slice(kL, {0}, {1.5}, 12);
  CHECK(empty.max_possible_dim == 0);
  CHECK(empty.max_definite_dim == 0);
  CHECK_THROWS_AS(scan_max_slice(kL, {INFINITY}, {0.3}, 12), Error);

  const auto grid = scan_max_slice(kL, {-1, 0, 1}, {0.2, 0.5}, 12);
  REQUIRE(grid.rows.size() == 6);
  CHECK(grid.rows[1].slope == -1);
  CHECK(grid.rows[1].offset == 0.5);
  for (const auto& r : grid.rows) {
    CHECK(r.definite_n <= r.possible_n);
    CHECK(r.possible_dim <= grid.max_possible_dim);
  }
  CensusOptions o;
  o.threads = 4;
  const auto g4 = scan_max_slice(kL, {-1, 0, 1}, {0.2, 0.5}, 12, HullKind::Box, o);
  for (std::size_t i = 0; i < grid.rows.size(); ++i) {
    CHECK(grid.rows[i].possible_dim == g4.rows[i].possible_dim);
    CHECK(grid.rows[i].definite_n == g4.rows[i].definite_n);
  }
}
