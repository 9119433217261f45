#ifndef SLICELAB_MEASURE_HPP
#define SLICELAB_MEASURE_HPP

#include <vector>

#include "slicelab/slicer.hpp"

namespace slicelab {

// nu is the uniform Bernoulli measure pushed onto the graph: every depth-m
// cylinder carries mass 2^-m (it is Lebesgue measure on [0,1] lifted).

/// Bounds on nu(strip): cylinders inside the strip give the lower bound,
/// cylinders not excluded give the upper bound.
struct StripMassBounds {
  int depth = 0;
  double lower = 0;
  double upper = 0;
};
StripMassBounds strip_mass(double lambda, const Strip& strip, int depth,
                           HullKind hull = HullKind::Box, const CensusOptions& options = {});

/// Extra cylinder depth used for the masses of the strips of radius
/// c lambda^n: masses are computed at depth n + 4.
inline constexpr int kMassDepthOffset = 4;

/// log 2 / log(1 / lambda).
double conservation_constant(double lambda);

struct ConservationReport {
  std::vector<int> depths;
  std::vector<double> radii;  // c lambda^n
  std::vector<double> mass_lower;
  std::vector<double> mass_upper;
  double slope_nu = 0;     // fit of log((lower + upper) / 2) against log radius
  double slope_sigma = 0;  // census slope of the line
  double residual = 0;     // |slope_nu + D slope_sigma - D|
};

/// Finishes a report from masses and a census slope; D is
/// conservation_constant(lambda). Throws MassVanishes when the upper mass at
/// the smallest radius is 0 and InsufficientData when fewer than two radii
/// carry mass.
ConservationReport conservation_report(double d, std::vector<int> depths, std::vector<double> radii,
                                       std::vector<double> mass_lower, std::vector<double> mass_upper,
                                       double slope_sigma);

/// Strip masses for n in [n0, n1] and the line census slope over the same
/// depths. slope_sigma is the least-squares slope of log2 of the census
/// midpoint (definite + possible) / 2.
ConservationReport pointwise_dim_estimate(double lambda, const Line& line, int n0, int n1,
                                          HullKind hull = HullKind::Box,
                                          const CensusOptions& options = {});

struct SandwichCheck {
  int depth = 0;
  double strip_upper = 0;     // upper mass of the strip of radius c lambda^n
  double line_definite = 0;   // 2^-n definite(line, n)
  bool pass() const { return strip_upper >= line_definite; }
};
SandwichCheck conservation_sandwich_check(double lambda, const Line& line, int depth,
                                          HullKind hull = HullKind::Box,
                                          const CensusOptions& options = {});

}  // namespace slicelab

#endif  // SLICELAB_MEASURE_HPP
