#ifndef SLICELAB_AFFINE_IFS_HPP
#define SLICELAB_AFFINE_IFS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicelab/geometry.hpp"
#include "slicelab/linalg2.hpp"
#include "slicelab/word.hpp"

namespace slicelab {

enum class EnclosureCertificate {
  VerifiedInvariant,  // phi_i(enclosure) inside enclosure was checked
  AssertedExternal,   // attractor containment justified outside this library
};

/// Planar affine IFS (phi_i(x) = A_i x + b_i) together with a convex polygon
/// known to contain the attractor.
struct AffineIFS {
  std::vector<AffineMap2> maps;
  ConvexPolygon enclosure;
  EnclosureCertificate certificate = EnclosureCertificate::AssertedExternal;
  // Strongly invariant forward cone (A_i C inside C). Used by the pressure
  // lower bound.
  std::optional<MultiCone> forward_cone;
  // Two attractor points joined by a continuous path inside the attractor.
  // Their images bound each cylinder's connected piece in the slice tests.
  std::optional<std::array<Vec2, 2>> path_endpoints;

  int size() const { return static_cast<int>(maps.size()); }
  /// Throws unless N >= 2, every linear part is invertible and the enclosure
  /// has positive area.
  void validate() const;
};

AffineIFS ifs_from_json(std::string_view text);
std::string ifs_to_json(const AffineIFS& ifs);

/// phi_{i1} o ... o phi_{in}; identity for the empty word.
AffineMap2 cylinder_map(const AffineIFS& ifs, const Word& w);
/// Image of the enclosure under the cylinder map. Contains phi_w(X).
ConvexPolygon cylinder_hull(const AffineIFS& ifs, const Word& w);

/// True iff every phi_i maps every vertex of p into p with clearance >= margin;
/// a true answer certifies that the attractor lies in p.
bool verify_invariant_enclosure(const AffineIFS& ifs, const ConvexPolygon& p, double margin);

/// max over words of each length k = 1..depth of alpha2(A_w) / alpha1(A_w).
struct DominationReport {
  std::vector<double> max_ratio;  // index k - 1
  std::vector<double> min_ratio;
  /// Least-squares slope of log(max_ratio) against k, an estimate of log tau.
  double decay_rate() const;
};
DominationReport domination_report(const AffineIFS& ifs, int depth, unsigned threads = 1);

enum class ConeDirection { Backward, Forward };

/// Depth-n Furstenberg enclosure: backward gives the union over |w| = n of
/// A_{w1}^{-1} ... A_{wn}^{-1} seed, forward the union of A_w seed. Levels are
/// merged as they are built so the interval count stays bounded.
MultiCone furstenberg_enclosure(const AffineIFS& ifs, const MultiCone& seed, int depth,
                                ConeDirection direction);

/// Slope extremes [lo, hi] of an arc that avoids the vertical direction.
std::pair<double, double> slope_range(const ProjInterval& arc);

struct WbncProbe {
  std::uint64_t hull_count = 0;     // window words whose hull meets B(x, r)
  std::uint64_t witness_count = 0;  // window words with phi_w(base) in B(x, r)
  std::uint64_t visited = 0;
};
/// Counts words with alpha2(A_w) <= r < alpha2(A_{w-}) whose cylinder meets
/// the closed ball B(x, r). hull_count over-counts and witness_count
/// under-counts the true number; base is the fixed point of phi_1.
WbncProbe wbnc_probe(const AffineIFS& ifs, const Vec2& x, double r,
                     std::uint64_t node_budget = 50'000'000);

}  // namespace slicelab

#endif  // SLICELAB_AFFINE_IFS_HPP
