#ifndef SLICELAB_TAKAGI_HPP
#define SLICELAB_TAKAGI_HPP

#include <cstdint>
#include <vector>

#include "slicelab/affine_ifs.hpp"

namespace slicelab {

// T(x) = sum_{n>=0} lambda^n dist(2^n x, Z) for 1/2 < lambda < 1. Its graph
// over [0, 1] is the attractor of
//   phi_1(x, y) = (x/2, x/2 + lambda y),
//   phi_2(x, y) = (x/2 + 1/2, 1/2 - x/2 + lambda y).

struct TakagiParams {
  double lambda = 0;
  double k_lambda = 0;        // 1 / (2 lambda - 1)
  double m_lambda = 0;        // 1 / (3 (1 - lambda)), the maximum of T
  int n_lambda = 0;
  double dim_hausdorff = 0;   // 2 + log2(lambda)
  double assouad_upper = 0;   // 1 + log(2^n_lambda - 1) / log(2^n_lambda)
  double dom_constant_c = 0;  // sqrt((K + 1)^2 + 1)

  /// sqrt(2) (K + M); every depth-n cylinder has diameter <= this * lambda^n.
  double diameter_constant() const;
};

/// Throws OutOfDomain unless 1/2 < lambda < 1.
TakagiParams constants(double lambda);

struct TakagiValue {
  double value = 0;
  double error = 0;  // bound on the truncated tail; 0 when the series ended
};

/// Series evaluation for x in [0, 1]. Doubling the binary fraction of a
/// double is exact, so every double input is dyadic and the series stops once
/// the fraction reaches 0; otherwise it stops when the tail bound
/// lambda^(N+1) / (2 (1 - lambda)) drops to tol.
TakagiValue eval(double lambda, double x, double tol = 1e-15);
/// The same series at the rational x = p / q, with exact integer doubling.
TakagiValue eval_rational(double lambda, std::uint64_t p, std::uint64_t q, double tol = 1e-15);

enum class HullKind { Box, Pentagon };

/// Box [0,1] x [0,M], or the box cut by y <= x + lambda M and
/// y <= 1 - x + lambda M. Both contain the graph.
ConvexPolygon graph_hull(double lambda, HullKind kind);

/// The two-map IFS with the chosen graph hull as (non-invariant) enclosure,
/// the graph endpoints (0,0), (1,0) as path endpoints and the forward cone of
/// slopes |t| >= K + 1.
AffineIFS takagi_ifs(double lambda, HullKind kind = HullKind::Box);

/// Slope arc [-K-1, K+1]; every inverse map sends it strictly inside itself.
MultiCone takagi_backward_seed(double lambda);
/// Arc of slopes |t| >= K + 1 through the vertical; strictly forward invariant.
MultiCone takagi_forward_cone(double lambda);

/// A_w = A_{w1} ... A_{wn} in closed form (lower triangular, diagonal
/// 2^-n, lambda^n).
Mat2 word_matrix(double lambda, const Word& w);
/// (A_{wn} ... A_{w1})^{-1} in closed form (diagonal 2^n, lambda^-n).
Mat2 inverse_reversed_matrix(double lambda, const Word& w);
/// Slope of the image of <(1, t)> under inverse_reversed_matrix(w):
/// sum_k (-1)^{w_k} (2 lambda)^{-k} + (2 lambda)^{-n} t.
double pullback_slope(double lambda, const Word& w, double t);

/// (k / 2^n, T(k / 2^n)) for k = 0..2^n; n <= 24.
std::vector<Vec2> graph_samples(double lambda, int n);

}  // namespace slicelab

#endif  // SLICELAB_TAKAGI_HPP
