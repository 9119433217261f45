#ifndef SLICELAB_LINALG2_HPP
#define SLICELAB_LINALG2_HPP

// Planar linear algebra: closed-form 2x2 singular values, the real
// projective line with its angle metric, projective intervals and
// multicones, and strict cone-containment predicates.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "slicelab/error.hpp"

namespace slicelab {

template <typename Scalar>
using Vec2T = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Mat2T = Eigen::Matrix<Scalar, 2, 2>;

using Vec2 = Vec2T<double>;
using Mat2 = Mat2T<double>;

/// Relative determinant threshold below which a 2x2 matrix is treated as singular.
inline constexpr double kSingularSlack = 1e-14;

template <typename Derived>
bool is_singular(const Eigen::MatrixBase<Derived>& m) {
  using std::abs;
  const auto scale = m.squaredNorm();
  return !(abs(m.determinant()) > kSingularSlack * scale) || scale == 0;
}

template <typename Scalar>
struct Svd2 {
  Scalar alpha1{0};
  Scalar alpha2{0};
  // Principal right-singular direction; empty when alpha1 == alpha2.
  std::optional<Vec2T<Scalar>> eta1;

  bool isotropic() const { return !eta1.has_value(); }
};

/// Singular values of a 2x2 matrix from the eigenvalues of A^T A (quadratic
/// formula, no iteration). alpha2 is recovered as |det A| / alpha1 so the
/// product identity holds to rounding.
template <typename Derived>
Svd2<typename Derived::Scalar> svd2(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::hypot;
  using std::sqrt;
  const Scalar a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const Scalar p = a * a + c * c;
  const Scalar r = b * b + d * d;
  const Scalar q = a * b + c * d;
  const Scalar half_trace = (p + r) / 2;
  const Scalar half_diff = (p - r) / 2;
  const Scalar disc = hypot(half_diff, q);

  Svd2<Scalar> out;
  const Scalar top = half_trace + disc;
  if (!(top > 0)) return out;
  out.alpha1 = sqrt(top);
  out.alpha2 = std::min(out.alpha1, abs(a * d - b * c) / out.alpha1);
  if (disc <= Scalar(1e-14) * half_trace) return out;
  Vec2T<Scalar> v = half_diff >= 0 ? Vec2T<Scalar>(half_diff + disc, q)
                                   : Vec2T<Scalar>(q, disc - half_diff);
  out.eta1 = v.normalized();
  return out;
}

/// Angle coordinate in [0, pi) of the line spanned by v.
template <typename Scalar>
Scalar line_angle(const Vec2T<Scalar>& v) {
  using std::atan2;
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar t = atan2(v.y(), v.x());
  if (t < 0) t += pi;
  if (t >= pi) t -= pi;
  return t;
}

/// Reduces an angle to [0, pi).
template <typename Scalar>
Scalar wrap_pi(Scalar t) {
  using std::fmod;
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  t = fmod(t, pi);
  if (t < 0) t += pi;
  if (t >= pi) t -= pi;
  return t;
}

/// A point of RP^1, stored as a unit representative whose first nonzero
/// component is positive.
template <typename Scalar>
class ProjLineT {
 public:
  ProjLineT() : dir_(1, 0) {}

  explicit ProjLineT(const Vec2T<Scalar>& v) {
    const Scalar n = v.norm();
    if (!(n > 0) || !std::isfinite(static_cast<double>(n))) {
      throw Error(ErrorCode::InvalidArgument, "projective line needs a finite nonzero vector");
    }
    dir_ = v / n;
    if (dir_.x() < 0 || (dir_.x() == 0 && dir_.y() < 0)) dir_ = -dir_;
  }

  static ProjLineT from_slope(Scalar t) { return ProjLineT(Vec2T<Scalar>(1, t)); }
  static ProjLineT vertical() { return ProjLineT(Vec2T<Scalar>(0, 1)); }
  static ProjLineT from_angle(Scalar theta) {
    using std::cos;
    using std::sin;
    return ProjLineT(Vec2T<Scalar>(cos(theta), sin(theta)));
  }

  const Vec2T<Scalar>& direction() const { return dir_; }
  Scalar angle() const { return line_angle(dir_); }
  bool is_vertical() const { return dir_.x() == 0; }
  /// Slope y/x; infinite for the vertical line.
  Scalar slope() const {
    return dir_.x() == 0 ? std::numeric_limits<Scalar>::infinity() : dir_.y() / dir_.x();
  }

  friend bool operator==(const ProjLineT&, const ProjLineT&) = default;

 private:
  Vec2T<Scalar> dir_;
};

using ProjLine = ProjLineT<double>;

/// The angle metric on RP^1, in [0, pi/2]. atan2 of (|wedge|, |dot|) agrees
/// with both the arccos and arcsin forms and stays conditioned at 0 and pi/2.
template <typename Scalar>
Scalar proj_angle(const ProjLineT<Scalar>& v, const ProjLineT<Scalar>& w) {
  using std::abs;
  using std::atan2;
  const auto& a = v.direction();
  const auto& b = w.direction();
  return atan2(abs(a.x() * b.y() - a.y() * b.x()), abs(a.dot(b)));
}

template <typename Derived>
ProjLineT<typename Derived::Scalar> act(const Eigen::MatrixBase<Derived>& m,
                                        const ProjLineT<typename Derived::Scalar>& v) {
  if (is_singular(m)) throw Error(ErrorCode::SingularMatrix, "act: matrix is not invertible");
  return ProjLineT<typename Derived::Scalar>(m * v.direction());
}

/// Closed arc of RP^1 running counterclockwise (in angle coordinate) from lo
/// to hi. Arc length is below pi.
template <typename Scalar>
class ProjIntervalT {
 public:
  ProjIntervalT() = default;
  ProjIntervalT(const ProjLineT<Scalar>& lo, const ProjLineT<Scalar>& hi)
      : lo_(lo), hi_(hi), start_(lo.angle()), length_(wrap_pi(hi.angle() - lo.angle())) {}

  /// Arc of slopes [t_lo, t_hi] through the horizontal direction.
  static ProjIntervalT slopes(Scalar t_lo, Scalar t_hi) {
    if (!(t_lo <= t_hi)) throw Error(ErrorCode::InvalidArgument, "slope arc needs lo <= hi");
    return ProjIntervalT(ProjLineT<Scalar>::from_slope(t_lo), ProjLineT<Scalar>::from_slope(t_hi));
  }

  const ProjLineT<Scalar>& lo() const { return lo_; }
  const ProjLineT<Scalar>& hi() const { return hi_; }
  Scalar start() const { return start_; }
  Scalar length() const { return length_; }

  bool contains(const ProjLineT<Scalar>& v, Scalar margin = 0) const {
    // Shifting by the margin before wrapping keeps negative margins meaningful.
    const Scalar off = wrap_pi(v.angle() - start_ - margin) + margin;
    return off >= margin && off <= length_ - margin;
  }

  /// True iff `inner` sits inside this arc with clearance >= margin at both ends.
  bool contains(const ProjIntervalT& inner, Scalar margin) const {
    const Scalar off = wrap_pi(inner.start_ - start_ - margin) + margin;
    return off >= margin && off + inner.length_ <= length_ - margin;
  }

  bool contains_vertical() const { return contains(ProjLineT<Scalar>::vertical()); }

  /// Image under an invertible matrix. Orientation flips with the sign of det.
  template <typename Derived>
  ProjIntervalT image(const Eigen::MatrixBase<Derived>& m) const {
    const auto a = act(m, lo_);
    const auto b = act(m, hi_);
    return m.determinant() > 0 ? ProjIntervalT(a, b) : ProjIntervalT(b, a);
  }

  /// Representatives spanning the arc by nonnegative combinations.
  std::pair<Vec2T<Scalar>, Vec2T<Scalar>> spanning_vectors() const {
    Vec2T<Scalar> a = lo_.direction();
    Vec2T<Scalar> b = hi_.direction();
    if (a.x() * b.y() - a.y() * b.x() < 0) b = -b;
    return {a, b};
  }

 private:
  ProjLineT<Scalar> lo_;
  ProjLineT<Scalar> hi_;
  Scalar start_{0};
  Scalar length_{0};
};

using ProjInterval = ProjIntervalT<double>;

/// Finite union of pairwise-disjoint closed projective intervals, kept sorted
/// by start angle.
template <typename Scalar>
class MultiConeT {
 public:
  MultiConeT() = default;
  explicit MultiConeT(std::vector<ProjIntervalT<Scalar>> intervals, Scalar merge_slack = 0)
      : intervals_(merge(std::move(intervals), merge_slack)) {}

  const std::vector<ProjIntervalT<Scalar>>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

  bool contains(const ProjLineT<Scalar>& v, Scalar margin = 0) const {
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [&](const auto& i) { return i.contains(v, margin); });
  }

  /// True iff every interval of `inner` sits inside one interval here.
  bool contains(const MultiConeT& inner, Scalar margin) const {
    return std::all_of(inner.intervals_.begin(), inner.intervals_.end(), [&](const auto& j) {
      return std::any_of(intervals_.begin(), intervals_.end(),
                         [&](const auto& k) { return k.contains(j, margin); });
    });
  }

  template <typename Derived>
  std::vector<ProjIntervalT<Scalar>> images(const Eigen::MatrixBase<Derived>& m) const {
    std::vector<ProjIntervalT<Scalar>> out;
    out.reserve(intervals_.size());
    for (const auto& i : intervals_) out.push_back(i.image(m));
    return out;
  }

 private:
  static std::vector<ProjIntervalT<Scalar>> merge(std::vector<ProjIntervalT<Scalar>> in,
                                                  Scalar slack) {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    if (in.empty()) return in;
    std::sort(in.begin(), in.end(),
              [](const auto& a, const auto& b) { return a.start() < b.start(); });
    struct Arc {
      Scalar start, end;  // end may exceed pi
    };
    std::vector<Arc> arcs;
    for (const auto& i : in) {
      const Scalar s = i.start(), e = i.start() + i.length();
      if (!arcs.empty() && s <= arcs.back().end + slack) {
        arcs.back().end = std::max(arcs.back().end, e);
      } else {
        arcs.push_back({s, e});
      }
    }
    // An arc crossing angle pi may swallow arcs at the start of the circle.
    while (arcs.size() > 1 && arcs.back().end - pi + slack >= arcs.front().start) {
      arcs.back().end = std::max(arcs.back().end, arcs.front().end + pi);
      arcs.erase(arcs.begin());
    }
    std::vector<ProjIntervalT<Scalar>> out;
    for (const auto& a : arcs) {
      if (a.end - a.start >= pi) {
        throw Error(ErrorCode::InvalidArgument, "multicone covers the whole projective line");
      }
      out.emplace_back(ProjLineT<Scalar>::from_angle(a.start), ProjLineT<Scalar>::from_angle(a.end));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.start() < b.start(); });
    return out;
  }

  std::vector<ProjIntervalT<Scalar>> intervals_;
};

using MultiCone = MultiConeT<double>;

/// Certifies m C strictly inside `target`: every image arc must sit inside a
/// single target interval with angular clearance >= margin. Images of arcs
/// under invertible maps are arcs, so endpoint tests decide the whole arc.
template <typename Derived>
bool cone_strictly_maps_into(const Eigen::MatrixBase<Derived>& m,
                             const MultiConeT<typename Derived::Scalar>& c,
                             const MultiConeT<typename Derived::Scalar>& target,
                             typename Derived::Scalar margin) {
  if (!(margin > 0)) throw Error(ErrorCode::InvalidArgument, "cone margin must be positive");
  if (is_singular(m)) throw Error(ErrorCode::SingularMatrix, "cone image of a singular matrix");
  for (const auto& j : c.images(m)) {
    const bool inside = std::any_of(target.intervals().begin(), target.intervals().end(),
                                    [&](const auto& k) { return k.contains(j, margin); });
    if (!inside) return false;
  }
  return true;
}

}  // namespace slicelab

#endif  // SLICELAB_LINALG2_HPP
