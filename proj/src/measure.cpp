#include "slicelab/measure.hpp"

#include <algorithm>
#include <cmath>

namespace slicelab {

StripMassBounds strip_mass(double lambda, const Strip& strip, int depth, HullKind hull,
                           const CensusOptions& options) {
  if (depth > 24) throw Error(ErrorCode::DepthTooLarge, "strip mass depth must be <= 24");
  const auto c = takagi_census(lambda, strip, depth, hull, options);
  StripMassBounds out;
  out.depth = depth;
  out.lower = std::ldexp(static_cast<double>(c.inside), -depth);
  out.upper = std::ldexp(static_cast<double>(c.possible), -depth);
  return out;
}

double conservation_constant(double lambda) {
  constants(lambda);
  return std::log(2.0) / -std::log(lambda);
}

ConservationReport conservation_report(double d, std::vector<int> depths, std::vector<double> radii,
                                       std::vector<double> mass_lower, std::vector<double> mass_upper,
                                       double slope_sigma) {
  const std::size_t n = radii.size();
  if (n < 3 || depths.size() != n || mass_lower.size() != n || mass_upper.size() != n) {
    throw Error(ErrorCode::InsufficientData, "need masses at three or more radii");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    const double mid = 0.5 * (mass_lower[i] + mass_upper[i]);
    if (mid <= 0) continue;
    xs.push_back(std::log(radii[i]));
    ys.push_back(std::log(mid));
  }
  // A zero upper mass at the finest radius certifies that the projected point
  // lies off the support, where the local dimension is undefined.
  const auto finest = std::min_element(radii.begin(), radii.end()) - radii.begin();
  if (xs.empty() || mass_upper[static_cast<std::size_t>(finest)] <= 0) {
    throw Error(ErrorCode::MassVanishes, "the finest strip carries no mass; the line misses the graph");
  }
  if (xs.size() < 2) throw Error(ErrorCode::InsufficientData, "fewer than two radii carry mass");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  ConservationReport out;
  out.depths = std::move(depths);
  out.radii = std::move(radii);
  out.mass_lower = std::move(mass_lower);
  out.mass_upper = std::move(mass_upper);
  out.slope_nu = sxy / sxx;
  out.slope_sigma = slope_sigma;
  out.residual = std::abs(out.slope_nu + d * slope_sigma - d);
  return out;
}

ConservationReport pointwise_dim_estimate(double lambda, const Line& line, int n0, int n1, HullKind hull,
                                          const CensusOptions& options) {
  const TakagiParams p = constants(lambda);
  if (n0 < 1 || n1 - n0 < 2) throw Error(ErrorCode::InsufficientData, "need at least three depths");
  if (n1 + kMassDepthOffset > 24) throw Error(ErrorCode::DepthTooLarge, "n1 + 4 must be <= 24");
  std::vector<int> depths;
  std::vector<double> radii, lower, upper;
  for (int n = n0; n <= n1; ++n) {
    const double r = p.diameter_constant() * std::pow(lambda, n);
    const auto m = strip_mass(lambda, Strip{line, r}, n + kMassDepthOffset, hull, options);
    depths.push_back(n);
    radii.push_back(r);
    lower.push_back(m.lower);
    upper.push_back(m.upper);
  }
  const auto profile = takagi_profile(lambda, line, n1, hull, options);
  std::vector<int> ns;
  std::vector<double> logs;
  for (int n = n0; n <= n1; ++n) {
    const auto& c = profile[static_cast<std::size_t>(n - 1)];
    const double mid = 0.5 * static_cast<double>(c.definite + c.possible);
    if (mid > 0) {
      ns.push_back(n);
      logs.push_back(std::log2(mid));
    }
  }
  double slope_sigma = 0;
  if (ns.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      mx += ns[i];
      my += logs[i];
    }
    mx /= static_cast<double>(ns.size());
    my /= static_cast<double>(ns.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      sxx += (ns[i] - mx) * (ns[i] - mx);
      sxy += (ns[i] - mx) * (logs[i] - my);
    }
    slope_sigma = sxy / sxx;
  }
  return conservation_report(conservation_constant(lambda), std::move(depths), std::move(radii),
                             std::move(lower), std::move(upper), slope_sigma);
}

SandwichCheck conservation_sandwich_check(double lambda, const Line& line, int depth, HullKind hull,
                                          const CensusOptions& options) {
  if (depth > 20) throw Error(ErrorCode::DepthTooLarge, "sandwich depth must be <= 20");
  const TakagiParams p = constants(lambda);
  const double r = p.diameter_constant() * std::pow(lambda, depth);
  // One slack for both targets keeps the line's survivors among the strip's.
  CensusOptions opts = options;
  if (!opts.slack) opts.slack = default_slack(takagi_ifs(lambda, hull), line);
  const auto strip = takagi_census(lambda, Strip{line, r}, depth, hull, opts);
  const auto on_line = takagi_census(lambda, line, depth, hull, opts);
  SandwichCheck out;
  out.depth = depth;
  out.strip_upper = std::ldexp(static_cast<double>(strip.possible), -depth);
  out.line_definite = std::ldexp(static_cast<double>(on_line.definite), -depth);
  return out;
}

}  // namespace slicelab
