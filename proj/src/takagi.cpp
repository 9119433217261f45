#include "slicelab/takagi.hpp"

#include <cmath>

namespace slicelab {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.5 && lambda < 1)) {
    throw Error(ErrorCode::OutOfDomain, "lambda must lie strictly between 1/2 and 1");
  }
}

void check_binary(const Word& w) {
  if (w.alphabet() != 2) throw Error(ErrorCode::OutOfRange, "Takagi words use the digits 1, 2");
}

// Smallest N with lambda^(N+1) / (2 (1 - lambda)) <= tol.
int truncation_index(double lambda, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const double target = tol * 2 * (1 - lambda);
  if (target >= 1) return 0;
  int n = static_cast<int>(std::floor(std::log(target) / std::log(lambda))) - 1;
  n = std::max(n, 0);
  while (std::pow(lambda, n + 1) > target) ++n;
  while (n > 0 && std::pow(lambda, n) <= target) --n;
  return n;
}

}  // namespace

double TakagiParams::diameter_constant() const { return std::sqrt(2.0) * (k_lambda + m_lambda); }

TakagiParams constants(double lambda) {
  check_lambda(lambda);
  TakagiParams p;
  p.lambda = lambda;
  p.k_lambda = 1 / (2 * lambda - 1);
  p.m_lambda = 1 / (3 * (1 - lambda));
  const double arg = std::log(2 * (p.k_lambda + p.m_lambda)) / -std::log(lambda);
  // Near-integer arguments round up: a larger n_lambda only weakens the bound.
  const double nearest = std::round(arg);
  p.n_lambda = std::abs(arg - nearest) <= 1e-12 ? static_cast<int>(nearest) + 1
                                                : static_cast<int>(std::ceil(arg));
  p.n_lambda = std::max(p.n_lambda, 2);
  p.dim_hausdorff = 2 + std::log2(lambda);
  const double pow2 = std::ldexp(1.0, p.n_lambda);
  p.assouad_upper = 1 + std::log(pow2 - 1) / std::log(pow2);
  p.dom_constant_c = std::sqrt((p.k_lambda + 1) * (p.k_lambda + 1) + 1);
  return p;
}

TakagiValue eval(double lambda, double x, double tol) {
  check_lambda(lambda);
  if (!(x >= 0 && x <= 1)) throw Error(ErrorCode::OutOfDomain, "x must lie in [0, 1]");
  const int last = truncation_index(lambda, tol);
  double frac = x == 1 ? 0 : x;
  double weight = 1;
  double sum = 0;
  for (int n = 0; n <= last; ++n) {
    if (frac == 0) return {sum, 0};
    sum += weight * std::min(frac, 1 - frac);
    weight *= lambda;
    frac *= 2;
    if (frac >= 1) frac -= 1;
  }
  if (frac == 0) return {sum, 0};
  return {sum, weight / (2 * (1 - lambda))};
}

TakagiValue eval_rational(double lambda, std::uint64_t p, std::uint64_t q, double tol) {
  check_lambda(lambda);
  if (q == 0 || p > q) throw Error(ErrorCode::OutOfDomain, "x = p/q must lie in [0, 1]");
  if (q >= (std::uint64_t{1} << 62)) throw Error(ErrorCode::OutOfRange, "denominator too large");
  const int last = truncation_index(lambda, tol);
  std::uint64_t num = p % q;
  const double dq = static_cast<double>(q);
  double weight = 1;
  double sum = 0;
  for (int n = 0; n <= last; ++n) {
    if (num == 0) return {sum, 0};
    sum += weight * static_cast<double>(std::min(num, q - num)) / dq;
    weight *= lambda;
    num = 2 * num;
    if (num >= q) num -= q;
  }
  if (num == 0) return {sum, 0};
  return {sum, weight / (2 * (1 - lambda))};
}

ConvexPolygon graph_hull(double lambda, HullKind kind) {
  const TakagiParams p = constants(lambda);
  ConvexPolygon box = ConvexPolygon::box(0, 1, 0, p.m_lambda);
  if (kind == HullKind::Box) return box;
  const double lift = lambda * p.m_lambda;
  return box.clip(Vec2(-1, 1), lift).clip(Vec2(1, 1), 1 + lift);
}

AffineIFS takagi_ifs(double lambda, HullKind kind) {
  check_lambda(lambda);
  AffineIFS ifs;
  AffineMap2 m1, m2;
  m1.linear << 0.5, 0, 0.5, lambda;
  m2.linear << 0.5, 0, -0.5, lambda;
  m2.translation = Vec2(0.5, 0.5);
  ifs.maps = {m1, m2};
  ifs.enclosure = graph_hull(lambda, kind);
  ifs.certificate = EnclosureCertificate::AssertedExternal;
  ifs.forward_cone = takagi_forward_cone(lambda);
  ifs.path_endpoints = std::array<Vec2, 2>{Vec2(0, 0), Vec2(1, 0)};
  return ifs;
}

MultiCone takagi_backward_seed(double lambda) {
  const double k = constants(lambda).k_lambda;
  return MultiCone({ProjInterval::slopes(-k - 1, k + 1)});
}

MultiCone takagi_forward_cone(double lambda) {
  const double k = constants(lambda).k_lambda;
  return MultiCone({ProjInterval(ProjLine::from_slope(k + 1), ProjLine::from_slope(-k - 1))});
}

Mat2 word_matrix(double lambda, const Word& w) {
  check_lambda(lambda);
  check_binary(w);
  const std::size_t n = w.size();
  // Entry (2,1) is sum_{k=1..n} s(w_{n-k+1}) 2^{-k} lambda^{n-k} with s(1) = +1, s(2) = -1.
  double off = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double sign = w[n - k] == 0 ? 1.0 : -1.0;
    off += sign * std::ldexp(std::pow(lambda, static_cast<double>(n - k)), -static_cast<int>(k));
  }
  Mat2 m;
  m << std::ldexp(1.0, -static_cast<int>(n)), 0, off, std::pow(lambda, static_cast<double>(n));
  return m;
}

Mat2 inverse_reversed_matrix(double lambda, const Word& w) {
  check_lambda(lambda);
  check_binary(w);
  const std::size_t n = w.size();
  double off = 0;
  double scale = 1;  // (2 lambda)^{-k}
  for (std::size_t k = 0; k < n; ++k) {
    scale /= 2 * lambda;
    off += (w[k] == 0 ? -1.0 : 1.0) * scale;
  }
  Mat2 m;
  m << std::ldexp(1.0, static_cast<int>(n)), 0, std::ldexp(off, static_cast<int>(n)),
      std::pow(lambda, -static_cast<double>(n));
  return m;
}

double pullback_slope(double lambda, const Word& w, double t) {
  check_lambda(lambda);
  check_binary(w);
  double off = 0;
  double scale = 1;
  for (std::size_t k = 0; k < w.size(); ++k) {
    scale /= 2 * lambda;
    off += (w[k] == 0 ? -1.0 : 1.0) * scale;
  }
  return off + scale * t;
}

std::vector<Vec2> graph_samples(double lambda, int n) {
  check_lambda(lambda);
  if (n < 0 || n > 24) throw Error(ErrorCode::DepthTooLarge, "graph samples support depth <= 24");
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Vec2> out;
  out.reserve(count + 1);
  for (std::uint64_t k = 0; k <= count; ++k) {
    const double x = std::ldexp(static_cast<double>(k), -n);
    out.emplace_back(x, eval(lambda, x).value);
  }
  return out;
}

}  // namespace slicelab
