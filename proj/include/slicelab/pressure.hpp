#ifndef SLICELAB_PRESSURE_HPP
#define SLICELAB_PRESSURE_HPP

#include <vector>

#include "slicelab/affine_ifs.hpp"

namespace slicelab {

/// Singular value function: alpha1^s on [0,1], alpha1 alpha2^(s-1) on (1,2],
/// (alpha1 alpha2)^(s/2) beyond.
double singular_value_function(double alpha1, double alpha2, double s);

/// Two-sided enclosure of the singular value pressure P(s) from words of one
/// length. lower[i] <= P(s_grid[i]) <= upper[i]; both are nonincreasing in s.
struct PressureCurve {
  std::vector<double> s_grid;
  std::vector<double> lower;
  std::vector<double> upper;
  int depth = 0;
};

/// Per-word data shared by every s evaluation at one depth.
class PressureTable {
 public:
  static constexpr std::uint64_t kMaxWords = std::uint64_t{1} << 22;

  PressureTable(const AffineIFS& ifs, int depth, unsigned threads = 1);

  int depth() const { return depth_; }
  double lower(double s) const;
  double upper(double s) const;
  /// Column-balance constant of the depth-n cone-basis products; 0 without a cone.
  double cone_balance() const { return delta_; }

 private:
  double log_sum(double s, bool cone_norm) const;
  double log_sum_super(double s) const;

  int depth_;
  bool has_cone_;
  double delta_ = 0;
  std::vector<double> log_a1_;
  std::vector<double> log_a2_;
  std::vector<double> log_det_;
  std::vector<double> log_cone_;
};

PressureCurve pressure_curve(const AffineIFS& ifs, const std::vector<double>& s_grid, int depth,
                             unsigned threads = 1);

struct AffinityBracket {
  double lo = 0;
  double hi = 2;
};
/// [lo, hi] containing the root of P, clamped to [0, 2]. Each end is
/// certified by the sign of the matching bound, located to 1e-7 by bisection.
AffinityBracket affinity_dimension(const AffineIFS& ifs, int depth, unsigned threads = 1);

}  // namespace slicelab

#endif  // SLICELAB_PRESSURE_HPP
