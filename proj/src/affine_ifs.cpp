#include "slicelab/affine_ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "slicelab/parallel.hpp"

namespace slicelab {

using nlohmann::json;

void AffineIFS::validate() const {
  if (maps.size() < 2) throw Error(ErrorCode::InvalidArgument, "an IFS needs at least two maps");
  if (maps.size() > static_cast<std::size_t>(Word::kMaxAlphabet)) {
    throw Error(ErrorCode::InvalidArgument, "at most nine maps are supported");
  }
  for (const auto& m : maps) {
    if (!m.linear.allFinite() || !m.translation.allFinite()) {
      throw Error(ErrorCode::InvalidArgument, "map coefficients must be finite");
    }
    if (is_singular(m.linear)) throw Error(ErrorCode::SingularMatrix, "IFS linear part is singular");
  }
  if (enclosure.size() < 3 || !(enclosure.area() > 0)) {
    throw Error(ErrorCode::DegenerateHull, "enclosure must have positive area");
  }
}

AffineIFS ifs_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("IFS JSON: ") + e.what());
  }
  AffineIFS ifs;
  try {
    for (const auto& m : j.at("maps")) {
      AffineMap2 map;
      const auto& a = m.at("A");
      map.linear << a.at(0).at(0).get<double>(), a.at(0).at(1).get<double>(),
          a.at(1).at(0).get<double>(), a.at(1).at(1).get<double>();
      map.translation = Vec2(m.at("b").at(0).get<double>(), m.at("b").at(1).get<double>());
      ifs.maps.push_back(map);
    }
    std::vector<Vec2> verts;
    for (const auto& v : j.at("enclosure")) verts.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    ifs.enclosure = ConvexPolygon(std::move(verts));
    if (j.contains("certificate")) {
      const auto c = j["certificate"].get<std::string>();
      if (c == "verified-invariant") {
        ifs.certificate = EnclosureCertificate::VerifiedInvariant;
      } else if (c != "asserted-external") {
        throw Error(ErrorCode::InvalidArgument, "unknown enclosure certificate " + c);
      }
    }
    if (j.contains("path")) {
      const auto& p = j["path"];
      ifs.path_endpoints = std::array<Vec2, 2>{Vec2(p.at(0).at(0).get<double>(), p.at(0).at(1).get<double>()),
                                               Vec2(p.at(1).at(0).get<double>(), p.at(1).at(1).get<double>())};
    }
    if (j.contains("cone")) {
      std::vector<ProjInterval> arcs;
      for (const auto& arc : j["cone"]) {
        const auto& lo = arc.at("lo");
        const auto& hi = arc.at("hi");
        arcs.emplace_back(ProjLine(Vec2(lo.at(0).get<double>(), lo.at(1).get<double>())),
                          ProjLine(Vec2(hi.at(0).get<double>(), hi.at(1).get<double>())));
      }
      ifs.forward_cone = MultiCone(std::move(arcs));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("IFS JSON: ") + e.what());
  }
  ifs.validate();
  if (ifs.certificate == EnclosureCertificate::VerifiedInvariant &&
      !verify_invariant_enclosure(ifs, ifs.enclosure, 0)) {
    throw Error(ErrorCode::InvalidArgument, "enclosure claimed invariant but is not");
  }
  return ifs;
}

std::string ifs_to_json(const AffineIFS& ifs) {
  json j;
  j["maps"] = json::array();
  for (const auto& m : ifs.maps) {
    j["maps"].push_back({{"A", {{m.linear(0, 0), m.linear(0, 1)}, {m.linear(1, 0), m.linear(1, 1)}}},
                         {"b", {m.translation.x(), m.translation.y()}}});
  }
  j["enclosure"] = json::array();
  for (const auto& v : ifs.enclosure.vertices()) j["enclosure"].push_back({v.x(), v.y()});
  j["certificate"] = ifs.certificate == EnclosureCertificate::VerifiedInvariant ? "verified-invariant"
                                                                                : "asserted-external";
  if (ifs.path_endpoints) {
    const auto& p = *ifs.path_endpoints;
    j["path"] = {{p[0].x(), p[0].y()}, {p[1].x(), p[1].y()}};
  }
  if (ifs.forward_cone) {
    j["cone"] = json::array();
    for (const auto& arc : ifs.forward_cone->intervals()) {
      const auto [a, b] = arc.spanning_vectors();
      j["cone"].push_back({{"lo", {a.x(), a.y()}}, {"hi", {b.x(), b.y()}}});
    }
  }
  return j.dump();
}

AffineMap2 cylinder_map(const AffineIFS& ifs, const Word& w) {
  AffineMap2 acc;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] >= ifs.maps.size()) throw Error(ErrorCode::OutOfRange, "word digit exceeds IFS size");
    acc = compose(acc, ifs.maps[w[k]]);
  }
  return acc;
}

ConvexPolygon cylinder_hull(const AffineIFS& ifs, const Word& w) {
  return ifs.enclosure.image(cylinder_map(ifs, w));
}

bool verify_invariant_enclosure(const AffineIFS& ifs, const ConvexPolygon& p, double margin) {
  for (const auto& m : ifs.maps) {
    for (const auto& v : p.vertices()) {
      if (!p.contains(m(v), margin)) return false;
    }
  }
  return true;
}

double DominationReport::decay_rate() const {
  const std::size_t n = max_ratio.size();
  if (n < 2) throw Error(ErrorCode::InsufficientData, "decay rate needs two levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1);
    const double y = std::log(max_ratio[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

namespace {

void domination_walk(const AffineIFS& ifs, const Mat2& a, int level, int depth,
                     std::vector<double>& max_ratio, std::vector<double>& min_ratio) {
  for (const auto& m : ifs.maps) {
    const Mat2 child = a * m.linear;
    const auto s = svd2(child);
    const double ratio = s.alpha1 > 0 ? s.alpha2 / s.alpha1 : 1.0;
    max_ratio[level] = std::max(max_ratio[level], ratio);
    min_ratio[level] = std::min(min_ratio[level], ratio);
    if (level + 1 < depth) domination_walk(ifs, child, level + 1, depth, max_ratio, min_ratio);
  }
}

}  // namespace

DominationReport domination_report(const AffineIFS& ifs, int depth, unsigned threads) {
  ifs.validate();
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "domination depth must be >= 1");
  if (depth > 22) throw Error(ErrorCode::DepthTooLarge, "domination report supports depth <= 22");
  const std::size_t n = static_cast<std::size_t>(depth);
  const std::size_t roots = ifs.maps.size();
  std::vector<std::vector<double>> maxes(roots, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> mins(roots, std::vector<double>(n, std::numeric_limits<double>::infinity()));
  parallel_for(roots, threads, [&](std::size_t i) {
    const Mat2& a = ifs.maps[i].linear;
    const auto s = svd2(a);
    maxes[i][0] = mins[i][0] = s.alpha2 / s.alpha1;
    if (depth > 1) domination_walk(ifs, a, 1, depth, maxes[i], mins[i]);
  });
  DominationReport out;
  out.max_ratio.assign(n, 0.0);
  out.min_ratio.assign(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < roots; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      out.max_ratio[k] = std::max(out.max_ratio[k], maxes[i][k]);
      out.min_ratio[k] = std::min(out.min_ratio[k], mins[i][k]);
    }
  }
  return out;
}

MultiCone furstenberg_enclosure(const AffineIFS& ifs, const MultiCone& seed, int depth,
                                ConeDirection direction) {
  ifs.validate();
  if (seed.empty()) throw Error(ErrorCode::InvalidArgument, "empty seed cone");
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "negative depth");
  std::vector<Mat2> gens;
  for (const auto& m : ifs.maps) {
    gens.push_back(direction == ConeDirection::Backward ? Mat2(m.linear.inverse()) : m.linear);
  }
  // Invariance of the seed makes the levels nested.
  for (const auto& g : gens) {
    if (!seed.contains(MultiCone(seed.images(g)), -1e-12)) {
      throw Error(ErrorCode::ConeNotInvariant, "seed image escapes the seed");
    }
  }
  MultiCone level = seed;
  for (int k = 0; k < depth; ++k) {
    std::vector<ProjInterval> arcs;
    for (const auto& g : gens) {
      auto imgs = level.images(g);
      arcs.insert(arcs.end(), imgs.begin(), imgs.end());
    }
    level = MultiCone(std::move(arcs));
  }
  return level;
}

std::pair<double, double> slope_range(const ProjInterval& arc) {
  if (arc.contains_vertical()) throw Error(ErrorCode::InvalidArgument, "arc contains the vertical line");
  return {arc.lo().slope(), arc.hi().slope()};
}

namespace {

struct WbncWalk {
  const AffineIFS& ifs;
  Vec2 x;
  double r;
  Vec2 base;
  std::uint64_t budget;
  WbncProbe out;

  void walk(const AffineMap2& map) {
    for (const auto& m : ifs.maps) {
      const AffineMap2 child = compose(map, m);
      if (++out.visited > budget) {
        throw Error(ErrorCode::ResolutionTooFine, "WBNC probe exceeded its node budget");
      }
      const bool meets = ifs.enclosure.image(child).distance(x) <= r;
      if (svd2(child.linear).alpha2 <= r) {
        if (meets) ++out.hull_count;
        if ((child(base) - x).norm() <= r) ++out.witness_count;
      } else if (meets) {
        walk(child);
      }
    }
  }
};

}  // namespace

WbncProbe wbnc_probe(const AffineIFS& ifs, const Vec2& x, double r, std::uint64_t node_budget) {
  ifs.validate();
  if (!(r > 0)) throw Error(ErrorCode::InvalidArgument, "probe radius must be positive");
  // alpha2 of the identity is 1, so no word has r < alpha2(parent) at the root.
  if (r >= 1) return {};
  WbncWalk w{ifs, x, r, ifs.maps.front().fixed_point(), node_budget, {}};
  w.walk(AffineMap2::identity());
  return w.out;
}

}  // namespace slicelab
