#include "slicelab/slicer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slicelab/parallel.hpp"

namespace slicelab {

Line Line::sloped(double slope, const Vec2& point) {
  if (!std::isfinite(slope)) {
    throw Error(ErrorCode::InvalidArgument,
                "slope must be finite; the vertical direction is requested with Line::vertical");
  }
  if (!point.allFinite()) throw Error(ErrorCode::InvalidArgument, "line point must be finite");
  Line l;
  l.kind = Kind::Sloped;
  l.slope = slope;
  l.point = point;
  return l;
}

Line Line::vertical(double x0) {
  if (!std::isfinite(x0)) throw Error(ErrorCode::InvalidArgument, "vertical line needs a finite x0");
  Line l;
  l.kind = Kind::Vertical;
  l.slope = std::numeric_limits<double>::infinity();
  l.point = Vec2(x0, 0);
  return l;
}

double Line::intercept() const {
  return is_vertical() ? point.x() : point.y() - slope * point.x();
}

namespace {

// The one formula for signed distances; the census, the oracle and the
// public classifier all go through it so their arithmetic agrees bit for bit.
struct DistanceForm {
  bool vertical;
  double t, c, inv_norm;

  explicit DistanceForm(const Line& l)
      : vertical(l.is_vertical()),
        t(vertical ? 0 : l.slope),
        c(l.intercept()),
        inv_norm(vertical ? 1 : 1 / std::sqrt(1 + l.slope * l.slope)) {}

  double operator()(const Vec2& p) const {
    return vertical ? p.x() - c : (p.y() - t * p.x() - c) * inv_norm;
  }
};

}  // namespace

double Line::signed_distance(const Vec2& p) const { return DistanceForm(*this)(p); }

SliceTarget::SliceTarget(const Strip& s) : line(s.line), radius(s.radius) {
  if (!(radius > 0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "strip radius must be finite and positive");
  }
}

namespace {

enum class NodeClass { Empty, Inside, Definite, Possible };

struct Classifier {
  DistanceForm g;
  double r;
  double eps;

  Classifier(const SliceTarget& target, double slack) : g(target.line), r(target.radius), eps(slack) {}

  NodeClass classify(const std::vector<Vec2>& verts, const Vec2& e0, const Vec2& e1) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : verts) {
      const double gv = g(v);
      lo = std::min(lo, gv);
      hi = std::max(hi, gv);
    }
    if (lo > r + eps || hi < -(r + eps)) return NodeClass::Empty;
    if (r > eps && hi <= r - eps && lo >= -(r - eps)) return NodeClass::Inside;
    const double g0 = g(e0), g1 = g(e1);
    const bool crossing = (g0 > eps && g1 < -eps) || (g0 < -eps && g1 > eps);
    const bool deep = std::abs(g0) < r - eps || std::abs(g1) < r - eps;
    return crossing || deep ? NodeClass::Definite : NodeClass::Possible;
  }

  // Classification of the cylinder hull acc(enclosure), with path endpoints.
  NodeClass classify(const AffineIFS& ifs, const AffineMap2& acc, std::vector<Vec2>& scratch) const {
    const auto& base = ifs.enclosure.vertices();
    scratch.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) scratch[i] = acc(base[i]);
    const auto& ends = *ifs.path_endpoints;
    return classify(scratch, acc(ends[0]), acc(ends[1]));
  }
};

double resolve_slack(const AffineIFS& ifs, const SliceTarget& target, const std::optional<double>& slack) {
  if (!slack) return default_slack(ifs, target);
  if (!(*slack >= 0) || !std::isfinite(*slack)) {
    throw Error(ErrorCode::InvalidArgument, "slack must be finite and nonnegative");
  }
  return *slack;
}

void check_census_input(const AffineIFS& ifs, int depth) {
  ifs.validate();
  if (!ifs.path_endpoints) {
    throw Error(ErrorCode::InvalidArgument, "census needs path endpoints for the IFS");
  }
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "census depth must be >= 1");
  if (depth > kMaxCensusDepth) throw Error(ErrorCode::DepthTooLarge, "census depth must be <= 26");
}

// Appends every length-n extension of w in lexicographic order.
void extend_all(Word& w, std::size_t n, int alphabet, std::vector<Word>& out) {
  if (w.size() == n) {
    out.push_back(w);
    return;
  }
  for (int j = 0; j < alphabet; ++j) {
    w.push_back(static_cast<std::uint8_t>(j));
    extend_all(w, n, alphabet, out);
    w.pop_back();
  }
}

struct Tally {
  std::vector<std::uint64_t> definite, possible, inside;
  std::uint64_t visited = 0;
  std::vector<Word> definite_words, possible_words;

  explicit Tally(int depth)
      : definite(static_cast<std::size_t>(depth) + 1),
        possible(static_cast<std::size_t>(depth) + 1),
        inside(static_cast<std::size_t>(depth) + 1) {}

  void absorb(Tally& other) {
    for (std::size_t k = 0; k < definite.size(); ++k) {
      definite[k] += other.definite[k];
      possible[k] += other.possible[k];
      inside[k] += other.inside[k];
    }
    visited += other.visited;
    std::move(other.definite_words.begin(), other.definite_words.end(), std::back_inserter(definite_words));
    std::move(other.possible_words.begin(), other.possible_words.end(), std::back_inserter(possible_words));
  }
};

struct FrontierNode {
  AffineMap2 acc;
  Word word;
};

class CensusWalk {
 public:
  CensusWalk(const AffineIFS& ifs, const Classifier& cls, int depth, bool collect)
      : ifs_(ifs), cls_(cls), depth_(depth), collect_(collect), n_(ifs.maps.size()) {}

  // Classifies node w (level k, map acc) and either counts, prunes, expands
  // or parks it on the frontier when k == split.
  void visit(const AffineMap2& acc, Word& w, int k, Tally& t, int split,
             std::vector<FrontierNode>* frontier) {
    ++t.visited;
    const NodeClass c = cls_.classify(ifs_, acc, scratch_);
    if (c == NodeClass::Empty) return;
    if (c == NodeClass::Inside) {
      add_inside(w, k, t);
      return;
    }
    if (k > 0) {
      ++t.possible[k];
      if (c == NodeClass::Definite) ++t.definite[k];
      if (k == depth_ && collect_) {
        t.possible_words.push_back(w);
        if (c == NodeClass::Definite) t.definite_words.push_back(w);
      }
    }
    if (k == depth_) return;
    if (frontier && k == split) {
      frontier->push_back({acc, w});
      return;
    }
    expand(acc, w, k, t, split, frontier);
  }

  void expand(const AffineMap2& acc, Word& w, int k, Tally& t, int split,
              std::vector<FrontierNode>* frontier) {
    for (std::size_t j = 0; j < n_; ++j) {
      w.push_back(static_cast<std::uint8_t>(j));
      visit(compose(acc, ifs_.maps[j]), w, k + 1, t, split, frontier);
      w.pop_back();
    }
  }

 private:
  void add_inside(Word& w, int k, Tally& t) const {
    std::uint64_t weight = 1;
    for (int j = k; j <= depth_; ++j) {
      if (j > 0) {
        t.definite[j] += weight;
        t.possible[j] += weight;
        t.inside[j] += weight;
      }
      weight *= n_;
    }
    if (collect_) {
      std::vector<Word> words;
      extend_all(w, static_cast<std::size_t>(depth_), static_cast<int>(n_), words);
      t.definite_words.insert(t.definite_words.end(), words.begin(), words.end());
      t.possible_words.insert(t.possible_words.end(), words.begin(), words.end());
    }
  }

  const AffineIFS& ifs_;
  const Classifier& cls_;
  int depth_;
  bool collect_;
  std::size_t n_;
  std::vector<Vec2> scratch_;
};

// Subtrees below this level are distributed over workers. Fixed, so the set
// of evaluated nodes never depends on the thread count.
constexpr int kSplitLevel = 6;

std::vector<SliceCensus> to_profile(Tally& t, int depth, bool collect) {
  std::vector<SliceCensus> out(static_cast<std::size_t>(depth));
  for (int k = 1; k <= depth; ++k) {
    auto& c = out[static_cast<std::size_t>(k - 1)];
    c.depth = k;
    c.definite = t.definite[static_cast<std::size_t>(k)];
    c.possible = t.possible[static_cast<std::size_t>(k)];
    c.inside = t.inside[static_cast<std::size_t>(k)];
    c.visited = t.visited;
  }
  if (collect) {
    std::sort(t.definite_words.begin(), t.definite_words.end());
    std::sort(t.possible_words.begin(), t.possible_words.end());
    out.back().definite_words = std::move(t.definite_words);
    out.back().possible_words = std::move(t.possible_words);
  }
  return out;
}

}  // namespace

CylinderClass classify_cylinder(const ConvexPolygon& hull, const std::array<Vec2, 2>& endpoints,
                                const SliceTarget& target, double slack) {
  if (hull.size() == 0) throw Error(ErrorCode::DegenerateHull, "empty hull");
  const double tol = 1e-9 * (1 + hull.diameter());
  for (const auto& e : endpoints) {
    if (hull.distance(e) > tol) throw Error(ErrorCode::DegenerateHull, "hull misses a path endpoint");
  }
  const Classifier cls(target, slack);
  switch (cls.classify(hull.vertices(), endpoints[0], endpoints[1])) {
    case NodeClass::Empty:
      return CylinderClass::Empty;
    case NodeClass::Possible:
      return CylinderClass::Possible;
    default:
      return CylinderClass::Definite;
  }
}

bool hull_inside_strip(const ConvexPolygon& hull, const Strip& strip, double slack) {
  const DistanceForm g(strip.line);
  const double lim = strip.radius - slack;
  return std::all_of(hull.vertices().begin(), hull.vertices().end(),
                     [&](const Vec2& v) { return std::abs(g(v)) <= lim; });
}

double default_slack(const AffineIFS& ifs, const SliceTarget& target) {
  return 1e-9 * (1 + std::abs(target.line.intercept()) + ifs.enclosure.diameter());
}

std::vector<SliceCensus> slice_profile(const AffineIFS& ifs, const SliceTarget& target, int depth,
                                       const CensusOptions& options) {
  check_census_input(ifs, depth);
  const Classifier cls(target, resolve_slack(ifs, target, options.slack));
  Tally total(depth);
  std::vector<FrontierNode> frontier;
  Word root(ifs.size());
  {
    CensusWalk walk(ifs, cls, depth, options.collect_words);
    walk.visit(AffineMap2::identity(), root, 0, total, kSplitLevel, &frontier);
  }
  std::vector<Tally> parts(frontier.size(), Tally(depth));
  parallel_for(frontier.size(), options.threads, [&](std::size_t i) {
    CensusWalk walk(ifs, cls, depth, options.collect_words);
    Word w = frontier[i].word;
    walk.expand(frontier[i].acc, w, kSplitLevel, parts[i], kSplitLevel, nullptr);
  });
  for (auto& p : parts) total.absorb(p);
  return to_profile(total, depth, options.collect_words);
}

SliceCensus slice_census(const AffineIFS& ifs, const SliceTarget& target, int depth,
                         const CensusOptions& options) {
  auto profile = slice_profile(ifs, target, depth, options);
  return std::move(profile.back());
}

SliceCensus exhaustive_census(const AffineIFS& ifs, const SliceTarget& target, int depth,
                              std::optional<double> slack) {
  check_census_input(ifs, depth);
  const Classifier cls(target, resolve_slack(ifs, target, slack));
  const std::size_t n = ifs.maps.size();
  const std::uint64_t words = ipow(n, static_cast<std::size_t>(depth));
  SliceCensus out;
  out.depth = depth;
  std::vector<Vec2> scratch;
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(depth), 0);
  for (std::uint64_t idx = 0; idx < words; ++idx) {
    std::uint64_t rest = idx;
    for (int k = depth - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(rest % n);
      rest /= n;
    }
    AffineMap2 acc = AffineMap2::identity();
    NodeClass verdict = NodeClass::Possible;
    for (int k = 0; k <= depth; ++k) {
      if (k > 0) acc = compose(acc, ifs.maps[digits[static_cast<std::size_t>(k - 1)]]);
      ++out.visited;
      const NodeClass c = cls.classify(ifs, acc, scratch);
      if (c == NodeClass::Empty || c == NodeClass::Inside || k == depth) {
        verdict = c;
        break;
      }
    }
    if (verdict == NodeClass::Empty) continue;
    ++out.possible;
    if (verdict != NodeClass::Possible) ++out.definite;
    if (verdict == NodeClass::Inside) ++out.inside;
  }
  return out;
}

namespace {

// Exact census of the graph pieces over dyadic intervals against a vertical
// line or strip: the piece over I meets {|x - x0| <= r} iff I does.
std::vector<SliceCensus> vertical_profile(const SliceTarget& target, int depth, bool collect) {
  const double x0 = target.line.intercept();
  const double r = target.radius;
  std::vector<SliceCensus> out(static_cast<std::size_t>(depth));
  for (int j = 1; j <= depth; ++j) {
    const double cells = std::ldexp(1.0, j);
    const double a = std::ldexp(x0 - r, j);
    const double b = std::ldexp(x0 + r, j);
    const double meet_lo = std::max(0.0, std::ceil(a) - 1);
    const double meet_hi = std::min(cells - 1, std::floor(b));
    const double in_lo = std::max(0.0, std::ceil(a));
    const double in_hi = std::min(cells - 1, std::floor(b) - 1);
    auto& c = out[static_cast<std::size_t>(j - 1)];
    c.depth = j;
    c.possible = meet_hi >= meet_lo ? static_cast<std::uint64_t>(meet_hi - meet_lo + 1) : 0;
    c.definite = c.possible;
    c.inside = r > 0 && in_hi >= in_lo ? static_cast<std::uint64_t>(in_hi - in_lo + 1) : 0;
    if (collect && j == depth && c.possible > 0) {
      std::vector<Word> words;
      for (auto k = static_cast<std::uint64_t>(meet_lo); k <= static_cast<std::uint64_t>(meet_hi); ++k) {
        std::vector<std::uint8_t> digits(static_cast<std::size_t>(j));
        for (int bit = 0; bit < j; ++bit) digits[static_cast<std::size_t>(bit)] = (k >> (j - 1 - bit)) & 1u;
        words.emplace_back(std::move(digits), 2);
      }
      c.definite_words = words;
      c.possible_words = std::move(words);
    }
  }
  return out;
}

}  // namespace

std::vector<SliceCensus> takagi_profile(double lambda, const SliceTarget& target, int depth,
                                        HullKind hull, const CensusOptions& options) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "census depth must be >= 1");
  if (depth > kMaxCensusDepth) throw Error(ErrorCode::DepthTooLarge, "census depth must be <= 26");
  constants(lambda);
  if (target.line.is_vertical()) return vertical_profile(target, depth, options.collect_words);
  return slice_profile(takagi_ifs(lambda, hull), target, depth, options);
}

SliceCensus takagi_census(double lambda, const SliceTarget& target, int depth, HullKind hull,
                          const CensusOptions& options) {
  auto profile = takagi_profile(lambda, target, depth, hull, options);
  return std::move(profile.back());
}

std::pair<double, double> log2_count_slope(const std::vector<int>& depths,
                                           const std::vector<std::uint64_t>& counts) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (counts[i] == 0) continue;
    xs.push_back(depths[i]);
    ys.push_back(std::log2(static_cast<double>(counts[i])));
  }
  if (xs.size() < 2) return {0.0, 0.0};
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (my + slope * (xs[i] - mx));
    rss += e * e;
  }
  return {slope, std::sqrt(rss / m)};
}

MinkowskiEstimate minkowski_slope(const std::vector<SliceCensus>& censuses) {
  if (censuses.size() < 3) throw Error(ErrorCode::InsufficientData, "need censuses at three or more depths");
  std::vector<int> depths;
  std::vector<std::uint64_t> def, pos;
  for (std::size_t i = 0; i < censuses.size(); ++i) {
    if (i > 0 && censuses[i].depth != censuses[i - 1].depth + 1) {
      throw Error(ErrorCode::InsufficientData, "census depths must be consecutive");
    }
    depths.push_back(censuses[i].depth);
    def.push_back(censuses[i].definite);
    pos.push_back(censuses[i].possible);
  }
  MinkowskiEstimate out;
  std::tie(out.lower, out.lower_residual) = log2_count_slope(depths, def);
  std::tie(out.upper, out.upper_residual) = log2_count_slope(depths, pos);
  return out;
}

std::vector<std::optional<double>> BadTally::ratios() const {
  std::vector<std::optional<double>> out;
  for (std::size_t k = 0; k < bad.size(); ++k) {
    if (line_possible[k] == 0) {
      out.emplace_back();
    } else {
      out.emplace_back(static_cast<double>(bad[k]) / static_cast<double>(line_possible[k]));
    }
  }
  return out;
}

namespace {

struct BadNode {
  AffineMap2 acc;
  int line_gone;  // first level where the line census drops the word, 0 if none
  bool strip_inside;
};

struct BadCounts {
  std::vector<std::uint64_t> bad, line_possible, line_definite;
  std::uint64_t strip_possible = 0, visited = 0;

  explicit BadCounts(int depth)
      : bad(static_cast<std::size_t>(depth)),
        line_possible(static_cast<std::size_t>(depth)),
        line_definite(static_cast<std::size_t>(depth)) {}
};

class BadWalk {
 public:
  BadWalk(const AffineIFS& ifs, const Classifier& line, const Classifier& strip, int depth)
      : ifs_(ifs), line_(line), strip_(strip), depth_(depth) {}

  void visit(BadNode node, int k, BadCounts& t, std::vector<BadNode>* frontier) {
    ++t.visited;
    if (!node.strip_inside) {
      const NodeClass s = strip_.classify(ifs_, node.acc, scratch_);
      if (s == NodeClass::Empty) return;
      node.strip_inside = s == NodeClass::Inside;
    }
    if (node.line_gone == 0) {
      const NodeClass l = line_.classify(ifs_, node.acc, scratch_);
      if (l == NodeClass::Empty) {
        node.line_gone = std::max(k, 1);
      } else if (k > 0) {
        ++t.line_possible[static_cast<std::size_t>(k - 1)];
        if (l == NodeClass::Definite) ++t.line_definite[static_cast<std::size_t>(k - 1)];
      }
    }
    if (node.line_gone > 0 && node.strip_inside) {
      const std::uint64_t leaves = ipow(ifs_.maps.size(), static_cast<std::size_t>(depth_ - k));
      t.bad[static_cast<std::size_t>(node.line_gone - 1)] += leaves;
      t.strip_possible += leaves;
      return;
    }
    if (k == depth_) {
      ++t.strip_possible;
      if (node.line_gone > 0) ++t.bad[static_cast<std::size_t>(node.line_gone - 1)];
      return;
    }
    if (frontier && k == kSplitLevel) {
      frontier->push_back(node);
      return;
    }
    expand(node, k, t, frontier);
  }

  void expand(const BadNode& node, int k, BadCounts& t, std::vector<BadNode>* frontier) {
    for (const auto& m : ifs_.maps) {
      visit({compose(node.acc, m), node.line_gone, node.strip_inside}, k + 1, t, frontier);
    }
  }

 private:
  const AffineIFS& ifs_;
  const Classifier& line_;
  const Classifier& strip_;
  int depth_;
  std::vector<Vec2> scratch_;
};

}  // namespace

BadTally bad_word_tally(double lambda, const Line& line, int depth, HullKind hull,
                        const CensusOptions& options) {
  return bad_word_tally(lambda, line, depth, constants(lambda).diameter_constant(), hull, options);
}

BadTally bad_word_tally(double lambda, const Line& line, int depth, double c, HullKind hull,
                        const CensusOptions& options) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "tally depth must be >= 1");
  if (depth > 22) throw Error(ErrorCode::DepthTooLarge, "bad-word tally supports depth <= 22");
  if (!(c >= 0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "strip constant must be >= 0");
  const AffineIFS ifs = takagi_ifs(lambda, hull);
  const double eps = resolve_slack(ifs, SliceTarget(line), options.slack);
  const double radius = c * std::pow(lambda, depth);
  SliceTarget strip_target(line);
  strip_target.radius = radius;
  const Classifier line_cls(SliceTarget(line), eps);
  const Classifier strip_cls(strip_target, eps);

  BadCounts total(depth);
  std::vector<BadNode> frontier;
  {
    BadWalk walk(ifs, line_cls, strip_cls, depth);
    walk.visit({AffineMap2::identity(), 0, false}, 0, total, &frontier);
  }
  std::vector<BadCounts> parts(frontier.size(), BadCounts(depth));
  parallel_for(frontier.size(), options.threads, [&](std::size_t i) {
    BadWalk walk(ifs, line_cls, strip_cls, depth);
    walk.expand(frontier[i], kSplitLevel, parts[i], nullptr);
  });
  for (const auto& p : parts) {
    for (std::size_t k = 0; k < total.bad.size(); ++k) {
      total.bad[k] += p.bad[k];
      total.line_possible[k] += p.line_possible[k];
      total.line_definite[k] += p.line_definite[k];
    }
    total.strip_possible += p.strip_possible;
    total.visited += p.visited;
  }
  BadTally out;
  out.depth = depth;
  out.c = c;
  out.radius = radius;
  out.bad = std::move(total.bad);
  out.line_possible = std::move(total.line_possible);
  out.line_definite = std::move(total.line_definite);
  out.strip_possible = total.strip_possible;
  out.visited = total.visited;
  return out;
}

std::vector<CountBoundRow> count_bound_check(double lambda, const Line& line, int k_max, HullKind hull,
                                             const CensusOptions& options) {
  const TakagiParams p = constants(lambda);
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 1");
  if (k_max * p.n_lambda > 24) throw Error(ErrorCode::DepthTooLarge, "k_max * n_lambda must be <= 24");
  const auto profile = takagi_profile(lambda, line, k_max * p.n_lambda, hull, options);
  const double base = std::ldexp(1.0, p.n_lambda) - 1;
  std::vector<CountBoundRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    const auto& c = profile[static_cast<std::size_t>(k * p.n_lambda - 1)];
    rows.push_back({k, k * p.n_lambda, c.definite, c.possible, std::pow(base, k)});
  }
  return rows;
}

ScanResult scan_lines(double lambda, const std::vector<Line>& lines, int depth, HullKind hull,
                      const CensusOptions& options) {
  if (depth < 3) throw Error(ErrorCode::InsufficientData, "scan depth must be >= 3");
  if (depth > kMaxCensusDepth) throw Error(ErrorCode::DepthTooLarge, "census depth must be <= 26");
  constants(lambda);
  ScanResult out;
  out.depth = depth;
  out.rows.resize(lines.size());
  CensusOptions inner = options;
  inner.threads = 1;
  inner.collect_words = false;
  const int first = std::max(1, depth - kScanWindow);
  parallel_for(lines.size(), options.threads, [&](std::size_t i) {
    const auto profile = takagi_profile(lambda, lines[i], depth, hull, inner);
    const std::vector<SliceCensus> window(profile.begin() + (first - 1), profile.end());
    const auto est = minkowski_slope(window);
    auto& row = out.rows[i];
    row.slope = lines[i].slope;
    row.offset = lines[i].intercept();
    row.definite_dim = est.lower;
    row.possible_dim = est.upper;
    row.definite_n = profile.back().definite;
    row.possible_n = profile.back().possible;
  });
  for (const auto& r : out.rows) {
    out.max_definite_dim = std::max(out.max_definite_dim, r.definite_dim);
    out.max_possible_dim = std::max(out.max_possible_dim, r.possible_dim);
  }
  return out;
}

ScanResult scan_max_slice(double lambda, const std::vector<double>& slopes,
                          const std::vector<double>& offsets, int depth, HullKind hull,
                          const CensusOptions& options) {
  std::vector<Line> lines;
  for (double t : slopes) {
    if (!std::isfinite(t)) {
      throw Error(ErrorCode::InvalidArgument,
                  "vertical slices are excluded from scans; a graph meets each vertical line once "
                  "(use slice census --vertical)");
    }
    for (double c : offsets) lines.push_back(Line::sloped(t, Vec2(0, c)));
  }
  return scan_lines(lambda, lines, depth, hull, options);
}

}  // namespace slicelab
