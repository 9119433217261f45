#ifndef SLICELAB_EXAMPLE3_HPP
#define SLICELAB_EXAMPLE3_HPP

#include "slicelab/affine_ifs.hpp"

namespace slicelab {

// Three-map self-affine carpet on the unit square whose maps all fix a
// corner direction: phi_1 and phi_2 fix the origin, phi_3 fixes (1, 1).
// The origin has unboundedly many cylinders of comparable size nearby, and
// its blow-ups converge to the closed first quadrant.

/// Slack of the forward cone attached to the fixture. C_eps is strictly
/// invariant exactly for 0 < eps < 1/3 (A_1 sends <(1, -eps)> to slope
/// -eps / (4/3 - eps)).
inline constexpr double kExample3ConeEps = 0.05;

/// The fixture; the unit square enclosure is verified invariant.
AffineIFS example3_ifs(double cone_eps = kExample3ConeEps);

/// C_eps: the arc from <(1, -eps)> counterclockwise through the first
/// quadrant to <(-eps, 1)>.
MultiCone example3_cone(double eps);
/// C_0, the closed first quadrant.
ProjInterval example3_quadrant();
/// D_0, slopes in [-3, -1/3].
ProjInterval example3_dual_cone();

struct Example3Checks {
  double max_norm = 0;            // max_i alpha1(A_i)
  double min_quadrant_image = 0;  // min over sampled unit v in C_0 of |A_i v|
  double max_dual_conorm = 0;     // max over sampled V in D_0 of 1 / |A_i^{-1}|_V|
  bool cone_invariant = false;    // A_i C_eps strictly inside C_eps
  double cone_margin = 0;
  bool square_invariant = false;

  bool norm_ok() const { return max_norm < 0.62; }
  bool quadrant_ok() const { return min_quadrant_image >= 1.0 / 3.0 - 1e-12; }
  bool dual_ok() const { return max_dual_conorm <= 0.32; }
  bool all() const {
    return norm_ok() && quadrant_ok() && dual_ok() && cone_invariant && square_invariant;
  }
};

/// Evaluates the norm bounds on `samples` evenly spaced unit vectors per cone
/// (endpoints included) and the strict invariance of C_eps with angular
/// clearance `margin`.
Example3Checks example3_checks(int samples = 10'000, double eps = 0.05, double margin = 1e-6);

}  // namespace slicelab

#endif  // SLICELAB_EXAMPLE3_HPP
