#include "slicelab/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slicelab/parallel.hpp"

namespace slicelab {

double singular_value_function(double alpha1, double alpha2, double s) {
  if (s <= 1) return std::pow(alpha1, s);
  if (s <= 2) return alpha1 * std::pow(alpha2, s - 1);
  return std::pow(alpha1 * alpha2, s / 2);
}

namespace {

// log phi^s written through log alpha1 and log|det|; alpha2 = |det| / alpha1.
double log_phi(double log_a1, double log_det, double s) {
  if (s <= 1) return s * log_a1;
  if (s <= 2) return (2 - s) * log_a1 + (s - 1) * log_det;
  return s / 2 * log_det;
}

// Exponent of the column-balance loss for the cone norm at s.
double balance_exponent(double s) {
  if (s <= 1) return s;
  if (s <= 2) return 2 - s;
  return 0;
}

double log_sum_exp(const std::vector<double>& terms) {
  double top = -std::numeric_limits<double>::infinity();
  for (double t : terms) top = std::max(top, t);
  if (!std::isfinite(top)) return top;
  double acc = 0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

}  // namespace

PressureTable::PressureTable(const AffineIFS& ifs, int depth, unsigned threads)
    : depth_(depth), has_cone_(ifs.forward_cone.has_value()) {
  ifs.validate();
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "pressure depth must be >= 1");
  const std::size_t nmaps = ifs.maps.size();
  const std::uint64_t words = ipow(nmaps, static_cast<std::size_t>(depth));
  if (depth > 40 || words > kMaxWords) {
    throw Error(ErrorCode::DepthTooLarge, "pressure enumeration limited to 2^22 words");
  }

  Mat2 basis = Mat2::Identity();
  if (has_cone_) {
    const auto& arcs = ifs.forward_cone->intervals();
    if (arcs.size() != 1) throw Error(ErrorCode::InvalidArgument, "pressure needs a single-arc cone");
    for (const auto& m : ifs.maps) {
      if (!cone_strictly_maps_into(m.linear, *ifs.forward_cone, *ifs.forward_cone, 1e-12)) {
        throw Error(ErrorCode::ConeNotInvariant, "forward cone is not strictly invariant");
      }
    }
    const auto [a, b] = arcs.front().spanning_vectors();
    basis.col(0) = a;
    basis.col(1) = b;
  }
  const Mat2 basis_inv = basis.inverse();
  std::vector<Mat2> cone_gens;
  for (const auto& m : ifs.maps) cone_gens.push_back(basis_inv * m.linear * basis);

  log_a1_.resize(words);
  log_a2_.resize(words);
  log_det_.resize(words);
  if (has_cone_) log_cone_.resize(words);

  // Words are indexed in lexicographic order; each first digit owns a
  // contiguous block, filled by one task.
  const std::uint64_t block = words / nmaps;
  std::vector<double> block_delta(nmaps, 1.0);
  parallel_for(nmaps, threads, [&](std::size_t first) {
    std::vector<Mat2> lin(static_cast<std::size_t>(depth) + 1);
    std::vector<Mat2> cone(static_cast<std::size_t>(depth) + 1);
    std::vector<std::uint8_t> digit(static_cast<std::size_t>(depth), 0);
    digit[0] = static_cast<std::uint8_t>(first);
    lin[0] = Mat2::Identity();
    cone[0] = Mat2::Identity();
    int built = 0;  // lin[k] is valid for k <= built
    double local_delta = 1.0;
    for (std::uint64_t idx = 0; idx < block; ++idx) {
      for (int k = built; k < depth; ++k) {
        lin[k + 1] = lin[k] * ifs.maps[digit[k]].linear;
        cone[k + 1] = cone[k] * cone_gens[digit[k]];
      }
      const Mat2& a = lin[depth];
      const auto sv = svd2(a);
      const std::uint64_t out = first * block + idx;
      log_a1_[out] = std::log(sv.alpha1);
      log_a2_[out] = std::log(sv.alpha2);
      log_det_[out] = std::log(std::abs(a.determinant()));
      if (has_cone_) {
        const Mat2& c = cone[depth];
        const double c0 = c.col(0).sum();
        const double c1 = c.col(1).sum();
        log_cone_[out] = std::log(c0 + c1);
        local_delta = std::min(local_delta, std::min(c0, c1) / (c0 + c1));
      }
      // Odometer increment on digits 1..depth-1.
      int k = depth - 1;
      while (k >= 1 && digit[k] + 1u == nmaps) {
        digit[k] = 0;
        --k;
      }
      if (k >= 1) ++digit[k];
      built = std::max(k, 0);
    }
    block_delta[first] = local_delta;
  });
  if (has_cone_) delta_ = *std::min_element(block_delta.begin(), block_delta.end());
}

double PressureTable::log_sum(double s, bool cone_norm) const {
  std::vector<double> terms(log_a1_.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double la1 = cone_norm ? log_cone_[i] : log_a1_[i];
    terms[i] = log_phi(la1, log_det_[i], s);
  }
  return log_sum_exp(terms);
}

// Sum of a super-multiplicative minorant of phi^s: alpha2^s on [0,1] and
// |det| alpha1^(s-2) on (1,2]; phi^s itself is multiplicative past 2.
double PressureTable::log_sum_super(double s) const {
  std::vector<double> terms(log_a1_.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (s <= 1) {
      terms[i] = s * log_a2_[i];
    } else if (s <= 2) {
      terms[i] = log_det_[i] + (s - 2) * log_a1_[i];
    } else {
      terms[i] = s / 2 * log_det_[i];
    }
  }
  return log_sum_exp(terms);
}

double PressureTable::lower(double s) const {
  const double n = depth_;
  double best = log_sum_super(s) / n;
  if (has_cone_ && delta_ > 0) {
    best = std::max(best, (log_sum(s, true) + balance_exponent(s) * std::log(delta_)) / n);
  }
  return best;
}

double PressureTable::upper(double s) const {
  const double n = depth_;
  double best = log_sum(s, false) / n;
  if (has_cone_) best = std::min(best, log_sum(s, true) / n);
  return best;
}

PressureCurve pressure_curve(const AffineIFS& ifs, const std::vector<double>& s_grid, int depth,
                             unsigned threads) {
  if (s_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty s grid");
  if (!std::is_sorted(s_grid.begin(), s_grid.end())) {
    throw Error(ErrorCode::InvalidArgument, "s grid must be increasing");
  }
  for (double s : s_grid) {
    if (!(s >= 0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "s must be >= 0");
  }
  const PressureTable table(ifs, depth, threads);
  PressureCurve out;
  out.depth = depth;
  out.s_grid = s_grid;
  for (double s : s_grid) {
    out.lower.push_back(table.lower(s));
    out.upper.push_back(table.upper(s));
  }
  // P is nonincreasing, so bounds propagate: a lower bound at a larger s and
  // an upper bound at a smaller s both remain valid.
  for (std::size_t i = out.lower.size(); i-- > 1;) {
    out.lower[i - 1] = std::max(out.lower[i - 1], out.lower[i]);
  }
  for (std::size_t i = 1; i < out.upper.size(); ++i) {
    out.upper[i] = std::min(out.upper[i], out.upper[i - 1]);
  }
  return out;
}

namespace {

struct Crossing {
  double last_nonnegative;  // f >= 0 here
  double first_negative;    // f < 0 here, or 2 when f(2) >= 0
};

// Bisection on [0, 2] with f(0) >= 0. Each returned end carries the sign
// certificate named in Crossing, whatever the shape of f.
template <typename F>
Crossing crossing(F f) {
  if (f(2.0) >= 0) return {2.0, 2.0};
  double a = 0, b = 2;
  while (b - a > 1e-7) {
    const double m = 0.5 * (a + b);
    (f(m) >= 0 ? a : b) = m;
  }
  return {a, b};
}

}  // namespace

AffinityBracket affinity_dimension(const AffineIFS& ifs, int depth, unsigned threads) {
  const PressureTable table(ifs, depth, threads);
  AffinityBracket out;
  out.lo = crossing([&](double s) { return table.lower(s); }).last_nonnegative;
  out.hi = crossing([&](double s) { return table.upper(s); }).first_negative;
  // lower <= upper pointwise, so this only guards rounding at a shared root.
  out.hi = std::max(out.hi, out.lo);
  return out;
}

}  // namespace slicelab
