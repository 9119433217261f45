// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is 0 only when all criteria pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "slicelab/affine_ifs.hpp"
#include "slicelab/example3.hpp"
#include "slicelab/measure.hpp"
#include "slicelab/pressure.hpp"
#include "slicelab/slicer.hpp"
#include "slicelab/takagi.hpp"
#include "slicelab/tangent.hpp"

using namespace slicelab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const double kTwoThirds = cli::parse_real("2/3");

Outcome constants_check() {
  double worst = 0;
  for (double l : {0.55, kTwoThirds, 0.75, 0.9}) {
    const auto p = constants(l);
    worst = std::max(worst, std::abs(p.k_lambda - 1 / (2 * l - 1)));
    worst = std::max(worst, std::abs(p.m_lambda - 1 / (3 * (1 - l))));
  }
  const auto p = constants(kTwoThirds);
  const double au = std::abs(p.assouad_upper - (1 + std::log(63.0) / std::log(64.0)));
  return {worst <= 1e-12 && p.n_lambda == 6 && au <= 1e-12,
          fmt("max |K,M error| %.2e, n_lambda %d, |assouad error| %.2e", worst, p.n_lambda, au)};
}

Outcome evaluation_check() {
  std::mt19937_64 rng(2024);
  double max_third = 0, max_fe = 0;
  bool halves = true;
  for (double l : {0.55, kTwoThirds, 0.75, 0.9}) {
    max_third = std::max(max_third, std::abs(eval_rational(l, 1, 3).value - 1 / (3 * (1 - l))));
    halves = halves && eval(l, 0.5).value == 0.5;
    for (int i = 0; i < 1000; ++i) {
      // x = k 2^-52 keeps x/2 and x/2 + 1/2 exact in double precision.
      const double x = std::ldexp(static_cast<double>(rng() >> 12), -52);
      const double tx = eval(l, x).value;
      max_fe = std::max(max_fe, std::abs(eval(l, x / 2).value - (x / 2 + l * tx)));
      max_fe = std::max(max_fe, std::abs(eval(l, x / 2 + 0.5).value - (0.5 - x / 2 + l * tx)));
    }
  }
  return {max_third <= 1e-9 && halves && max_fe <= 3e-9,
          fmt("|T(1/3) - M| %.2e, T(1/2) exact %s, functional-equation residual %.2e", max_third,
              halves ? "yes" : "no", max_fe)};
}

Outcome matrix_check() {
  std::mt19937_64 rng(7);
  const AffineIFS ifs = takagi_ifs(kTwoThirds);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    Word w(2);
    const auto n = rng() % 31;
    for (std::size_t k = 0; k < n; ++k) w.push_back(static_cast<std::uint8_t>(rng() & 1));
    const Mat2 product = cylinder_map(ifs, w).linear;
    worst = std::max(worst, (word_matrix(kTwoThirds, w) - product).norm() / product.norm());
  }
  return {worst <= 1e-12, fmt("max relative deviation %.2e over 1000 words", worst)};
}

Outcome domination_check() {
  std::uint64_t violations = 0, words = 0;
  for (double l : {0.6, 0.75}) {
    const double c = constants(l).dom_constant_c;
    enumerate_level(2, 12, [&](const Word& w) {
      const int n = static_cast<int>(w.size());
      const auto s = svd2(word_matrix(l, w));
      const double ln = std::pow(l, n), hn = std::ldexp(1.0, -n), tol = 1e-12;
      if (s.alpha1 < ln * (1 - tol) || s.alpha1 > c * ln * (1 + tol)) ++violations;
      if (s.alpha2 < hn / c * (1 - tol) || s.alpha2 > hn * (1 + tol)) ++violations;
      ++words;
      return Visit::Descend;
    });
  }
  return {violations == 0, fmt("%llu words, %llu violations", (unsigned long long)words,
                               (unsigned long long)violations)};
}

Outcome furstenberg_check() {
  const auto cone = furstenberg_enclosure(takagi_ifs(kTwoThirds), takagi_backward_seed(kTwoThirds), 14,
                                          ConeDirection::Backward);
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& arc : cone.intervals()) {
    const auto [a, b] = slope_range(arc);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  const double tol = 3 * std::pow(2 * kTwoThirds, -14) + 1e-9;
  const double dev = std::max(std::abs(lo + 3), std::abs(hi - 3));
  return {dev <= tol, fmt("slopes [%.6f, %.6f], deviation %.4f <= %.4f", lo, hi, dev, tol)};
}

// 5 slopes through 20 graph points, plus 9 horizontal lines.
std::vector<Line> census_grid() {
  std::vector<Line> lines;
  for (double t : {-3.0, -1.5, 0.0, 1.5, 3.0}) {
    for (int i = 1; i <= 20; ++i) {
      const double x = i / 21.0;
      lines.push_back(Line::sloped(t, Vec2(x, eval(kTwoThirds, x).value)));
    }
  }
  for (int i = 1; i <= 9; ++i) lines.push_back(Line::horizontal(i / 10.0));
  return lines;
}

Outcome bound_check() {
  std::uint64_t violations = 0, possible_over = 0;
  const auto grid = census_grid();
  for (const auto& line : grid) {
    for (const auto& row : count_bound_check(kTwoThirds, line, 3)) {
      if (!row.pass()) ++violations;
      if (row.possible_exceeds()) ++possible_over;
    }
  }
  return {violations == 0, fmt("%zu slices, k = 1..3: %llu definite violations (%llu possible-count diagnostics)",
                               grid.size(), (unsigned long long)violations, (unsigned long long)possible_over)};
}

Outcome slice_dimension_check() {
  const auto scan = scan_lines(kTwoThirds, census_grid(), 18);
  const double limit = std::log(63.0) / std::log(64.0) + 0.1;
  return {scan.max_possible_dim <= limit,
          fmt("max possible slope %.4f <= %.4f at n = 18", scan.max_possible_dim, limit)};
}

Outcome sandwich_check() {
  std::mt19937_64 rng(99);
  int failures = 0, total = 0;
  for (double l : {kTwoThirds, 0.8}) {
    std::uniform_real_distribution<double> u(0, 1), t(-3, 3);
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng);
      const Line line = Line::sloped(t(rng), Vec2(x, eval(l, x).value));
      if (!conservation_sandwich_check(l, line, 12).pass()) ++failures;
      ++total;
    }
  }
  return {failures == 0, fmt("%d slices, %d failures", total, failures)};
}

Outcome conservation_check() {
  double worst = 0;
  for (int i = 1; i <= 10; ++i) {
    const double x = i / 11.0;
    const auto rep = pointwise_dim_estimate(kTwoThirds, Line::horizontal(eval(kTwoThirds, x).value), 8, 16);
    worst = std::max(worst, rep.residual);
  }
  return {worst <= 0.15, fmt("horizontal slices through (i/11, T(i/11)): max residual %.3f", worst)};
}

Outcome affinity_check() {
  const auto tk = affinity_dimension(takagi_ifs(kTwoThirds), 16);
  const auto e3 = affinity_dimension(example3_ifs(), 12);
  const bool ok = tk.lo <= 1.41504 && 1.41504 <= tk.hi && e3.lo > 1 && e3.hi < 2;
  return {ok, fmt("Takagi [%.6f, %.6f], carpet [%.6f, %.6f]", tk.lo, tk.hi, e3.lo, e3.hi)};
}

Outcome example3_check() {
  const auto c = example3_checks();
  const AffineIFS ifs = example3_ifs();
  bool wbnc = true;
  std::string counts;
  std::uint64_t prev = 0;
  for (int m = 2; m <= 6; ++m) {
    const auto p = wbnc_probe(ifs, Vec2(0, 0), std::pow(4.0, -m));
    wbnc = wbnc && p.witness_count > prev;
    prev = p.witness_count;
    counts += std::to_string(p.witness_count) + (m < 6 ? "," : "");
  }
  bool tangent = true;
  double worst_gap = INFINITY;
  for (int n = 3; n <= 6; ++n) {
    const auto t = example3_tangent_check(n);
    tangent = tangent && t.pass();
    worst_gap = std::min(worst_gap, t.bound - t.distance);
  }
  return {c.all() && wbnc && tangent,
          fmt("norm %.4f, quadrant %.4f, dual %.4f, cone %s, square %s, wbnc %s, tangent margin %.3f",
              c.max_norm, c.min_quadrant_image, c.max_dual_conorm, c.cone_invariant ? "ok" : "fail",
              c.square_invariant ? "ok" : "fail", counts.c_str(), worst_gap)};
}

Outcome oracle_check() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1), t(-3, 3);
  const AffineIFS tk_box = takagi_ifs(kTwoThirds, HullKind::Box);
  const AffineIFS tk_pent = takagi_ifs(0.75, HullKind::Pentagon);
  const AffineIFS e3 = example3_ifs();
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const AffineIFS& ifs = i % 3 == 0 ? tk_box : i % 3 == 1 ? tk_pent : e3;
    const int n = 1 + static_cast<int>(rng() % 8);
    const double x = u(rng);
    const double y = &ifs == &e3 ? u(rng) : eval(&ifs == &tk_box ? kTwoThirds : 0.75, x).value;
    SliceTarget target = Line::sloped(t(rng), Vec2(x, y));
    if (i % 5 == 3) target = Line::vertical(x);
    if (i % 4 == 1) target.radius = std::ldexp(u(rng), -static_cast<int>(rng() % 8));
    if (target.radius < 0) target.radius = 0;
    const auto a = slice_census(ifs, target, n);
    const auto b = exhaustive_census(ifs, target, n);
    if (a.definite != b.definite || a.possible != b.possible || a.inside != b.inside) ++mismatches;
  }
  return {mismatches == 0, fmt("200 targets, %d mismatches", mismatches)};
}

const std::vector<std::vector<std::string>> kManifest = {
    {"takagi", "constants", "--lambda", "2/3"},
    {"takagi", "eval", "--lambda", "0.75", "--x", "1/3"},
    {"takagi", "graph", "--lambda", "2/3", "--depth", "10", "--format", "csv"},
    {"slice", "census", "--lambda", "2/3", "--slope", "0", "--through", "0.5,0.3", "--depth", "16"},
    {"slice", "census", "--lambda", "0.8", "--slope", "1.5", "--on-graph", "0.3", "--depth", "14", "--words"},
    {"slice", "census", "--lambda", "2/3", "--slope", "-1", "--on-graph", "0.6", "--radius", "0.01", "--depth", "12"},
    {"slice", "census", "--lambda", "2/3", "--vertical", "--through", "0.3,0", "--depth", "20"},
    {"slice", "scan", "--lambda", "2/3", "--slopes", "-3:3:1.5", "--graph-points", "10", "--depth", "14"},
    {"slice", "scan", "--lambda", "0.75", "--slopes", "0,1", "--offsets", "0.2,0.6", "--depth", "12", "--format", "csv"},
    {"slice", "bad-words", "--lambda", "2/3", "--slope", "0", "--through", "0,0.3", "--depth", "12"},
    {"slice", "bound-check", "--lambda", "2/3", "--slope", "1.5", "--on-graph", "0.4", "--kmax", "3"},
    {"measure", "strip-mass", "--lambda", "2/3", "--slope", "0", "--through", "0,0.3", "--radius", "0.05", "--depth", "14"},
    {"measure", "conservation", "--lambda", "2/3", "--slope", "0", "--on-graph", "0.5", "--n0", "8", "--n1", "14"},
    {"ifs", "example3", "--check", "all"},
    {"ifs", "domination", "--system", "example3", "--depth", "10"},
    {"ifs", "furstenberg", "--system", "takagi", "--lambda", "2/3", "--depth", "12"},
    {"ifs", "wbnc", "--system", "example3", "--x", "0,0", "--radii", "0.0625,0.015625,0.00390625"},
    {"ifs", "affinity", "--system", "takagi", "--lambda", "2/3", "--depth", "14", "--curve", "1,1.2,1.4,1.6"},
    {"tangent", "blowup", "--system", "example3", "--x", "0,0", "--radius", "0.04", "--eps", "0.05", "--format", "csv"},
    {"tangent", "example3", "--n", "2,3,4"},
};

Outcome determinism_check() {
  int differing = 0, failed = 0;
  for (const auto& cmd : kManifest) {
    std::string outs[2];
    int k = 0;
    for (const char* threads : {"1", "8"}) {
      auto args = cmd;
      args.insert(args.end(), {"--threads", threads});
      std::ostringstream out, err;
      if (cli::dispatch(args, out, err) != cli::kExitOk) ++failed;
      outs[k++] = out.str();
    }
    if (outs[0] != outs[1] || outs[0].empty()) ++differing;
  }
  return {differing == 0 && failed == 0,
          fmt("%zu commands, %d differing, %d nonzero exits", kManifest.size(), differing, failed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"constants", constants_check},
      {"evaluation", evaluation_check},
      {"closed-form matrices", matrix_check},
      {"domination sandwich", domination_check},
      {"Furstenberg interval", furstenberg_check},
      {"census induction bound", bound_check},
      {"slice dimension bound", slice_dimension_check},
      {"conservation sandwich", sandwich_check},
      {"conservation identity", conservation_check},
      {"affinity dimension", affinity_check},
      {"three-map carpet suite", example3_check},
      {"oracle equivalence", oracle_check},
      {"determinism", determinism_check},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2zu %-24s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
