#ifndef SLICELAB_SLICER_HPP
#define SLICELAB_SLICER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "slicelab/affine_ifs.hpp"
#include "slicelab/takagi.hpp"

namespace slicelab {

/// The affine line V + point, with V = <(1, slope)> or the vertical <(0, 1)>.
struct Line {
  enum class Kind { Sloped, Vertical };
  Kind kind = Kind::Sloped;
  double slope = 0;
  Vec2 point = Vec2::Zero();

  static Line sloped(double slope, const Vec2& point);
  static Line horizontal(double y) { return sloped(0, Vec2(0, y)); }
  static Line vertical(double x0);

  bool is_vertical() const { return kind == Kind::Vertical; }
  /// c in y = slope x + c; x0 for a vertical line.
  double intercept() const;
  /// Signed Euclidean distance: positive above a sloped line, right of a
  /// vertical one.
  double signed_distance(const Vec2& p) const;
};

/// Closed r-neighbourhood of a line.
struct Strip {
  Line line;
  double radius = 0;
};

/// A line (radius 0) or a strip (radius > 0); every census routine takes one.
struct SliceTarget {
  Line line;
  double radius = 0;

  SliceTarget(const Line& l) : line(l) {}  // NOLINT(google-explicit-constructor)
  SliceTarget(const Strip& s);             // NOLINT(google-explicit-constructor)
};

enum class CylinderClass { Empty, Possible, Definite };

/// Empty: every hull vertex lies beyond r + slack on one side. Definite: the
/// path endpoints sit strictly on opposite sides (beyond slack), or, for a
/// strip, one endpoint lies deeper than r - slack inside. Otherwise Possible.
/// Throws DegenerateHull when the hull misses an endpoint.
CylinderClass classify_cylinder(const ConvexPolygon& hull, const std::array<Vec2, 2>& endpoints,
                                const SliceTarget& target, double slack);
/// True iff every hull vertex lies within r - slack of the strip's centre line.
bool hull_inside_strip(const ConvexPolygon& hull, const Strip& strip, double slack);

/// 1e-9 (1 + |intercept| + enclosure diameter).
double default_slack(const AffineIFS& ifs, const SliceTarget& target);

struct CensusOptions {
  std::optional<double> slack;
  unsigned threads = 1;
  bool collect_words = false;
};

/// Two-sided count of depth-n cylinders meeting a target.
///
/// A word is pruned as soon as one of its prefix hulls (the enclosure
/// included) is Empty. For strips, a prefix hull lying inside the strip makes
/// every extension definite. Otherwise a word is definite when its own
/// endpoint test is Definite, and possible when it survives. Hence
/// inside <= definite <= true count <= possible.
struct SliceCensus {
  int depth = 0;
  std::uint64_t definite = 0;
  std::uint64_t possible = 0;
  std::uint64_t inside = 0;
  std::uint64_t visited = 0;
  std::optional<std::vector<Word>> definite_words;
  std::optional<std::vector<Word>> possible_words;
};

inline constexpr int kMaxCensusDepth = 26;

/// Censuses for levels 1..depth from one pruned traversal; element k-1 holds
/// level k. visited is reported on the last element and counts every node.
std::vector<SliceCensus> slice_profile(const AffineIFS& ifs, const SliceTarget& target, int depth,
                                       const CensusOptions& options = {});
SliceCensus slice_census(const AffineIFS& ifs, const SliceTarget& target, int depth,
                         const CensusOptions& options = {});
/// Same classification with no pruning: every word and every prefix is
/// evaluated. Used as an oracle for the pruned traversal.
SliceCensus exhaustive_census(const AffineIFS& ifs, const SliceTarget& target, int depth,
                              std::optional<double> slack = std::nullopt);

/// Takagi graph censuses. Vertical targets are answered exactly from the
/// dyadic intervals over [x0 - r, x0 + r]; the rest go through the IFS engine.
std::vector<SliceCensus> takagi_profile(double lambda, const SliceTarget& target, int depth,
                                        HullKind hull = HullKind::Box, const CensusOptions& options = {});
SliceCensus takagi_census(double lambda, const SliceTarget& target, int depth,
                          HullKind hull = HullKind::Box, const CensusOptions& options = {});

struct MinkowskiEstimate {
  double lower = 0;  // slope of log2(definite) against n
  double upper = 0;  // slope of log2(possible) against n
  double lower_residual = 0;  // rms of the fit
  double upper_residual = 0;
};
/// Least squares over consecutive depths, zero counts omitted; a fit with
/// fewer than two nonzero points has slope 0. Needs at least three censuses.
MinkowskiEstimate minkowski_slope(const std::vector<SliceCensus>& censuses);
/// The least-squares fit on (n, log2 count), zeros dropped.
std::pair<double, double> log2_count_slope(const std::vector<int>& depths,
                                           const std::vector<std::uint64_t>& counts);

/// Words meeting the strip of radius c lambda^n about a line but not the
/// line itself, sorted by the level at which the line census first drops
/// them (level 1 when the enclosure already misses the line).
struct BadTally {
  int depth = 0;
  double c = 0;
  double radius = 0;
  std::vector<std::uint64_t> bad;            // index k-1
  std::vector<std::uint64_t> line_possible;  // possible line census per level
  std::vector<std::uint64_t> line_definite;
  std::uint64_t strip_possible = 0;
  std::uint64_t visited = 0;
  /// bad[k-1] / line_possible[k-1]; empty where the denominator is 0.
  std::vector<std::optional<double>> ratios() const;
};
BadTally bad_word_tally(double lambda, const Line& line, int depth, HullKind hull = HullKind::Box,
                        const CensusOptions& options = {});
/// Same tally with an explicit strip constant c (radius c lambda^n).
BadTally bad_word_tally(double lambda, const Line& line, int depth, double c, HullKind hull,
                        const CensusOptions& options);

struct CountBoundRow {
  int k = 0;
  int depth = 0;  // k n_lambda
  std::uint64_t definite = 0;
  std::uint64_t possible = 0;
  double bound = 0;  // (2^n_lambda - 1)^k
  bool pass() const { return static_cast<double>(definite) <= bound; }
  bool possible_exceeds() const { return static_cast<double>(possible) > bound; }
};
std::vector<CountBoundRow> count_bound_check(double lambda, const Line& line, int k_max,
                                             HullKind hull = HullKind::Box,
                                             const CensusOptions& options = {});

struct ScanRow {
  double slope = 0;
  double offset = 0;  // intercept c of y = slope x + c
  double definite_dim = 0;
  double possible_dim = 0;
  std::uint64_t definite_n = 0;
  std::uint64_t possible_n = 0;
};
struct ScanResult {
  int depth = 0;
  std::vector<ScanRow> rows;
  double max_definite_dim = 0;
  double max_possible_dim = 0;
};
/// Number of trailing depths used by scan regressions: levels n-8..n.
inline constexpr int kScanWindow = 8;
/// Fits over levels max(1, n - 8)..n for each line, rows in input order.
ScanResult scan_lines(double lambda, const std::vector<Line>& lines, int depth,
                      HullKind hull = HullKind::Box, const CensusOptions& options = {});
/// Grid scan over y = t x + c, slope-major row order. Rejects non-finite slopes.
ScanResult scan_max_slice(double lambda, const std::vector<double>& slopes,
                          const std::vector<double>& offsets, int depth,
                          HullKind hull = HullKind::Box, const CensusOptions& options = {});

}  // namespace slicelab

#endif  // SLICELAB_SLICER_HPP
