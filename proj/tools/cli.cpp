#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slicelab/example3.hpp"
#include "slicelab/measure.hpp"
#include "slicelab/pressure.hpp"
#include "slicelab/slicer.hpp"
#include "slicelab/takagi.hpp"
#include "slicelab/tangent.hpp"

namespace slicelab::cli {

namespace {

using json = nlohmann::ordered_json;

struct Flags {
  std::string config;
  std::string lambda;
  int depth = 0;
  double slack = 0;
  std::string hull = "box";
  std::string output;
  std::string format = "json";
  unsigned threads = 0;

  std::string through;
  std::string on_graph;
  std::string slope = "0";
  bool vertical = false;
  double radius = 0;
  bool words = false;

  std::string x = "1/3";
  double tol = 1e-15;
  std::string slopes = "0";
  std::string offsets;
  int graph_points = 0;
  bool check = false;
  int k_max = 1;
  int n0 = 8;
  int n1 = 16;
  std::string system = "takagi";
  std::string ifs_path;
  std::string direction = "backward";
  std::string seed;
  std::string point = "0,0";
  std::string radii;
  std::string checks = "all";
  std::string curve;
  double eps = kTangentEps;
  std::string ns = "3,4,5,6";
  bool emit_ifs = false;
};

// Merged view of flags, config file and environment.
struct RunConfig {
  std::optional<double> lambda;
  std::optional<int> depth;
  std::optional<double> slack;
  HullKind hull = HullKind::Box;
  std::string output;
  std::string format = "json";
  unsigned threads = 0;

  double need_lambda() const {
    if (!lambda) throw Error(ErrorCode::InvalidArgument, "--lambda is required");
    return *lambda;
  }
  int depth_or(int fallback) const { return depth.value_or(fallback); }
  CensusOptions census() const {
    CensusOptions o;
    o.slack = slack;
    o.threads = threads;
    return o;
  }
};

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

HullKind parse_hull(const std::string& s) {
  if (s == "box") return HullKind::Box;
  if (s == "pentagon") return HullKind::Pentagon;
  throw Error(ErrorCode::InvalidArgument, "hull must be box or pentagon");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  // a:b:step expands to an inclusive range.
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string a, b, c;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, c, ':');
    const double lo = parse_real(a), hi = parse_real(b), step = parse_real(c);
    if (!(step > 0) || !(hi >= lo)) throw Error(ErrorCode::InvalidArgument, "range needs lo <= hi and step > 0");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    if (count > 1'000'000) throw Error(ErrorCode::InvalidArgument, "range too long");
    for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  return out;
}

Vec2 parse_point(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, "a point is written x,y");
  return Vec2(v[0], v[1]);
}

RunConfig resolve(const CLI::App& leaf, const Flags& f) {
  RunConfig rc;
  std::optional<unsigned> threads;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config " + f.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
      if (j.contains("lambda")) {
        rc.lambda = j["lambda"].is_string() ? parse_real(j["lambda"].get<std::string>()) : j["lambda"].get<double>();
      }
      if (j.contains("depth")) rc.depth = j["depth"].get<int>();
      if (j.contains("slack")) rc.slack = j["slack"].get<double>();
      if (j.contains("hull")) rc.hull = parse_hull(j["hull"].get<std::string>());
      if (j.contains("output")) rc.output = j["output"].get<std::string>();
      if (j.contains("format")) rc.format = j["format"].get<std::string>();
      if (j.contains("threads")) threads = j["threads"].get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, std::string("config: ") + e.what());
    }
  }
  if (leaf.count("--lambda")) rc.lambda = parse_real(f.lambda);
  if (leaf.count("--depth")) rc.depth = f.depth;
  if (leaf.count("--slack")) rc.slack = f.slack;
  if (leaf.count("--hull")) rc.hull = parse_hull(f.hull);
  if (leaf.count("--output")) rc.output = f.output;
  if (leaf.count("--format")) rc.format = f.format;
  if (leaf.count("--threads")) {
    threads = f.threads;
  } else if (!threads) {
    if (const char* env = std::getenv("SLICE_LAB_THREADS")) {
      try {
        threads = static_cast<unsigned>(std::stoul(env));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "SLICE_LAB_THREADS must be a nonnegative integer");
      }
    }
  }
  rc.threads = threads.value_or(0);
  if (rc.format != "json" && rc.format != "csv") throw Error(ErrorCode::InvalidArgument, "format must be json or csv");
  if (rc.depth && (*rc.depth < 0 || *rc.depth > kMaxCensusDepth)) {
    throw Error(ErrorCode::DepthTooLarge, "depth must lie in [0, 26]");
  }
  return rc;
}

Line make_line(const Flags& f, const RunConfig& rc) {
  std::optional<Vec2> point;
  if (!f.through.empty()) point = parse_point(f.through);
  if (!f.on_graph.empty()) {
    const double x = parse_real(f.on_graph);
    point = Vec2(x, eval(rc.need_lambda(), x).value);
  }
  if (!point) throw Error(ErrorCode::InvalidArgument, "give the line with --through x,y or --on-graph x");
  if (f.vertical) return Line::vertical(point->x());
  return Line::sloped(parse_real(f.slope), *point);
}

SliceTarget make_target(const Flags& f, const RunConfig& rc) {
  const Line line = make_line(f, rc);
  if (f.radius > 0) return Strip{line, f.radius};
  if (f.radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be >= 0");
  return line;
}

AffineIFS make_system(const Flags& f, const RunConfig& rc) {
  if (!f.ifs_path.empty()) {
    std::ifstream in(f.ifs_path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read IFS file " + f.ifs_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ifs_from_json(ss.str());
  }
  if (f.system == "takagi") return takagi_ifs(rc.need_lambda(), rc.hull);
  if (f.system == "example3") return example3_ifs();
  throw Error(ErrorCode::InvalidArgument, "system must be takagi or example3");
}

json census_json(const SliceCensus& c) {
  json j;
  j["n"] = c.depth;
  j["definite"] = c.definite;
  j["possible"] = c.possible;
  j["visited"] = c.visited;
  j["inside"] = c.inside;
  if (c.possible_words) {
    j["definite_words"] = json::array();
    for (const auto& w : *c.definite_words) j["definite_words"].push_back(w.to_string());
    j["possible_words"] = json::array();
    for (const auto& w : *c.possible_words) j["possible_words"].push_back(w.to_string());
  }
  return j;
}

json line_json(const Line& l) {
  json j;
  if (l.is_vertical()) {
    j["vertical"] = true;
    j["x0"] = l.intercept();
  } else {
    j["slope"] = l.slope;
    j["intercept"] = l.intercept();
  }
  return j;
}

json cone_json(const MultiCone& c) {
  json arr = json::array();
  for (const auto& arc : c.intervals()) {
    json a;
    a["lo_angle"] = arc.start();
    a["hi_angle"] = wrap_pi(arc.start() + arc.length());
    a["length"] = arc.length();
    if (!arc.contains_vertical()) {
      const auto [lo, hi] = slope_range(arc);
      a["lo_slope"] = lo;
      a["hi_slope"] = hi;
    } else {
      a["contains_vertical"] = true;
    }
    arr.push_back(a);
  }
  return arr;
}

std::string dump(const json& j) { return j.dump() + "\n"; }

// Each command returns its report text and whether its check passed.
struct Report {
  std::string text;
  bool ok = true;
};

using Handler = std::function<Report(const Flags&, const RunConfig&)>;

Report cmd_takagi_eval(const Flags& f, const RunConfig& rc) {
  const double lambda = rc.need_lambda();
  TakagiValue v;
  const auto slash = f.x.find('/');
  if (slash != std::string::npos) {
    std::uint64_t p = 0, q = 0;
    try {
      p = std::stoull(f.x.substr(0, slash));
      q = std::stoull(f.x.substr(slash + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "rational x must be p/q with nonnegative integers");
    }
    v = eval_rational(lambda, p, q, f.tol);
  } else {
    v = eval(lambda, parse_real(f.x), f.tol);
  }
  if (rc.format == "csv") return {"x,value,error\n" + f.x + "," + format_real(v.value) + "," + format_real(v.error) + "\n"};
  json j;
  j["lambda"] = lambda;
  j["x"] = f.x;
  j["value"] = v.value;
  j["error"] = v.error;
  return {dump(j)};
}

Report cmd_takagi_constants(const Flags&, const RunConfig& rc) {
  const TakagiParams p = constants(rc.need_lambda());
  json j;
  j["lambda"] = p.lambda;
  j["k_lambda"] = p.k_lambda;
  j["m_lambda"] = p.m_lambda;
  j["n_lambda"] = p.n_lambda;
  j["dim_hausdorff"] = p.dim_hausdorff;
  j["assouad_upper"] = p.assouad_upper;
  j["dom_constant_c"] = p.dom_constant_c;
  j["diameter_constant"] = p.diameter_constant();
  if (rc.format == "csv") {
    std::string s = "name,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
      s += it.key() + "," + (it->is_number_integer() ? std::to_string(it->get<int>()) : format_real(it->get<double>())) + "\n";
    }
    return {s};
  }
  return {dump(j)};
}

Report cmd_takagi_graph(const Flags&, const RunConfig& rc) {
  const auto pts = graph_samples(rc.need_lambda(), rc.depth_or(10));
  if (rc.format == "json") {
    json j;
    j["x"] = json::array();
    j["y"] = json::array();
    for (const auto& p : pts) {
      j["x"].push_back(p.x());
      j["y"].push_back(p.y());
    }
    return {dump(j)};
  }
  std::string s = "x,y\n";
  for (const auto& p : pts) s += format_real(p.x()) + "," + format_real(p.y()) + "\n";
  return {s};
}

Report cmd_slice_census(const Flags& f, const RunConfig& rc) {
  const double lambda = rc.need_lambda();
  const SliceTarget target = make_target(f, rc);
  CensusOptions opts = rc.census();
  opts.collect_words = f.words;
  const auto c = takagi_census(lambda, target, rc.depth_or(12), rc.hull, opts);
  if (rc.format == "csv") {
    return {"n,definite,possible,visited,inside\n" + std::to_string(c.depth) + "," + std::to_string(c.definite) +
            "," + std::to_string(c.possible) + "," + std::to_string(c.visited) + "," + std::to_string(c.inside) + "\n"};
  }
  json j = census_json(c);
  j["line"] = line_json(target.line);
  j["radius"] = target.radius;
  return {dump(j)};
}

Report cmd_slice_scan(const Flags& f, const RunConfig& rc) {
  const double lambda = rc.need_lambda();
  const auto slopes = parse_list(f.slopes);
  const auto offsets = parse_list(f.offsets);
  std::vector<Line> lines;
  for (double t : slopes) {
    if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "vertical slices are excluded from scans");
    for (double c : offsets) lines.push_back(Line::sloped(t, Vec2(0, c)));
    for (int i = 1; i <= f.graph_points; ++i) {
      const double x = static_cast<double>(i) / (f.graph_points + 1);
      lines.push_back(Line::sloped(t, Vec2(x, eval(lambda, x).value)));
    }
  }
  if (lines.empty()) throw Error(ErrorCode::InvalidArgument, "scan grid is empty; give --offsets or --graph-points");
  const auto res = scan_lines(lambda, lines, rc.depth_or(18), rc.hull, rc.census());
  const double bound = constants(lambda).assouad_upper - 1 + 0.1;
  const bool ok = !f.check || res.max_possible_dim <= bound;
  if (rc.format == "csv") {
    std::string s = "slope,offset,definite_dim,possible_dim,definite_n,possible_n\n";
    for (const auto& r : res.rows) {
      s += format_real(r.slope) + "," + format_real(r.offset) + "," + format_real(r.definite_dim) + "," +
           format_real(r.possible_dim) + "," + std::to_string(r.definite_n) + "," + std::to_string(r.possible_n) + "\n";
    }
    return {s, ok};
  }
  json j;
  j["n"] = res.depth;
  j["rows"] = json::array();
  for (const auto& r : res.rows) {
    j["rows"].push_back({{"slope", r.slope}, {"offset", r.offset}, {"definite_dim", r.definite_dim},
                         {"possible_dim", r.possible_dim}, {"definite_n", r.definite_n}, {"possible_n", r.possible_n}});
  }
  j["max_definite_dim"] = res.max_definite_dim;
  j["max_possible_dim"] = res.max_possible_dim;
  j["bound"] = bound;
  return {dump(j), ok};
}

Report cmd_slice_bad_words(const Flags& f, const RunConfig& rc) {
  const double lambda = rc.need_lambda();
  const Line line = make_line(f, rc);
  const auto t = bad_word_tally(lambda, line, rc.depth_or(12), rc.hull, rc.census());
  const auto ratios = t.ratios();
  if (rc.format == "csv") {
    std::string s = "k,bad,line_possible,line_definite,ratio\n";
    for (std::size_t k = 0; k < t.bad.size(); ++k) {
      s += std::to_string(k + 1) + "," + std::to_string(t.bad[k]) + "," + std::to_string(t.line_possible[k]) + "," +
           std::to_string(t.line_definite[k]) + "," + (ratios[k] ? format_real(*ratios[k]) : "") + "\n";
    }
    return {s};
  }
  json j;
  j["n"] = t.depth;
  j["c"] = t.c;
  j["radius"] = t.radius;
  j["line"] = line_json(line);
  j["bad"] = t.bad;
  j["line_possible"] = t.line_possible;
  j["line_definite"] = t.line_definite;
  j["ratios"] = json::array();
  for (const auto& r : ratios) j["ratios"].push_back(r ? json(*r) : json(nullptr));
  j["strip_possible"] = t.strip_possible;
  j["visited"] = t.visited;
  j["diagnostic"] = true;
  return {dump(j)};
}

Report cmd_slice_bound_check(const Flags& f, const RunConfig& rc) {
  const double lambda = rc.need_lambda();
  const Line line = make_line(f, rc);
  const auto rows = count_bound_check(lambda, line, f.k_max, rc.hull, rc.census());
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass();
  if (rc.format == "csv") {
    std::string s = "k,depth,definite,possible,bound,pass,possible_exceeds\n";
    for (const auto& r : rows) {
      s += std::to_string(r.k) + "," + std::to_string(r.depth) + "," + std::to_string(r.definite) + "," +
           std::to_string(r.possible) + "," + format_real(r.bound) + "," + (r.pass() ? "1" : "0") + "," +
           (r.possible_exceeds() ? "1" : "0") + "\n";
    }
    return {s, ok};
  }
  json j;
  j["line"] = line_json(line);
  j["n_lambda"] = constants(lambda).n_lambda;
  j["rows"] = json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"k", r.k}, {"depth", r.depth}, {"definite", r.definite}, {"possible", r.possible},
                         {"bound", r.bound}, {"pass", r.pass()}, {"possible_exceeds", r.possible_exceeds()}});
  }
  j["pass"] = ok;
  return {dump(j), ok};
}

Report cmd_measure_strip_mass(const Flags& f, const RunConfig& rc) {
  const double lambda = rc.need_lambda();
  if (!(f.radius > 0)) throw Error(ErrorCode::InvalidArgument, "--radius must be positive");
  const Strip strip{make_line(f, rc), f.radius};
  const auto m = strip_mass(lambda, strip, rc.depth_or(14), rc.hull, rc.census());
  if (rc.format == "csv") return {"m,lower,upper\n" + std::to_string(m.depth) + "," + format_real(m.lower) + "," + format_real(m.upper) + "\n"};
  json j;
  j["m"] = m.depth;
  j["radius"] = f.radius;
  j["lower"] = m.lower;
  j["upper"] = m.upper;
  return {dump(j)};
}

Report cmd_measure_conservation(const Flags& f, const RunConfig& rc) {
  const double lambda = rc.need_lambda();
  const Line line = make_line(f, rc);
  const auto sandwich = conservation_sandwich_check(lambda, line, std::min(f.n1, 20), rc.hull, rc.census());
  json j;
  j["line"] = line_json(line);
  try {
    const auto r = pointwise_dim_estimate(lambda, line, f.n0, f.n1, rc.hull, rc.census());
    j["depths"] = r.depths;
    j["radii"] = r.radii;
    j["mass_lower"] = r.mass_lower;
    j["mass_upper"] = r.mass_upper;
    j["slope_nu"] = r.slope_nu;
    j["slope_sigma"] = r.slope_sigma;
    j["residual"] = r.residual;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MassVanishes) throw;
    j["status"] = "mass-vanishes";
    j["slope_nu"] = nullptr;
  }
  j["sandwich"] = {{"n", sandwich.depth}, {"strip_upper", sandwich.strip_upper},
                   {"line_definite", sandwich.line_definite}, {"pass", sandwich.pass()}};
  j["diagnostic"] = true;
  return {dump(j), sandwich.pass()};
}

Report cmd_ifs_example3(const Flags& f, const RunConfig&) {
  const auto c = example3_checks();
  json j;
  if (f.emit_ifs) j["ifs"] = json::parse(ifs_to_json(example3_ifs()));
  j["max_norm"] = c.max_norm;
  j["min_quadrant_image"] = c.min_quadrant_image;
  j["max_dual_conorm"] = c.max_dual_conorm;
  j["cone_margin"] = c.cone_margin;
  json checks;
  checks["norm"] = c.norm_ok();
  checks["quadrant"] = c.quadrant_ok();
  checks["dual"] = c.dual_ok();
  checks["cone"] = c.cone_invariant;
  checks["square"] = c.square_invariant;
  j["checks"] = checks;
  bool ok = true;
  if (f.checks == "all") {
    ok = c.all();
  } else if (checks.contains(f.checks)) {
    ok = checks[f.checks].get<bool>();
  } else {
    throw Error(ErrorCode::InvalidArgument, "--check must be all, norm, quadrant, dual, cone or square");
  }
  j["pass"] = ok;
  return {dump(j), ok};
}

Report cmd_ifs_domination(const Flags& f, const RunConfig& rc) {
  const auto ifs = make_system(f, rc);
  const auto d = domination_report(ifs, rc.depth_or(10), rc.threads);
  if (rc.format == "csv") {
    std::string s = "k,max_ratio,min_ratio\n";
    for (std::size_t k = 0; k < d.max_ratio.size(); ++k) {
      s += std::to_string(k + 1) + "," + format_real(d.max_ratio[k]) + "," + format_real(d.min_ratio[k]) + "\n";
    }
    return {s};
  }
  json j;
  j["max_ratio"] = d.max_ratio;
  j["min_ratio"] = d.min_ratio;
  j["decay_rate"] = d.max_ratio.size() >= 2 ? json(d.decay_rate()) : json(nullptr);
  return {dump(j)};
}

Report cmd_ifs_furstenberg(const Flags& f, const RunConfig& rc) {
  const auto ifs = make_system(f, rc);
  ConeDirection dir;
  if (f.direction == "backward") {
    dir = ConeDirection::Backward;
  } else if (f.direction == "forward") {
    dir = ConeDirection::Forward;
  } else {
    throw Error(ErrorCode::InvalidArgument, "direction must be backward or forward");
  }
  MultiCone seed;
  if (!f.seed.empty()) {
    const auto v = parse_list(f.seed);
    if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, "--seed takes lo_slope,hi_slope");
    seed = MultiCone({ProjInterval::slopes(v[0], v[1])});
  } else if (f.ifs_path.empty() && f.system == "takagi") {
    seed = dir == ConeDirection::Backward ? takagi_backward_seed(rc.need_lambda()) : takagi_forward_cone(rc.need_lambda());
  } else if (f.ifs_path.empty() && f.system == "example3") {
    const auto c = example3_cone(kExample3ConeEps).intervals().front();
    seed = dir == ConeDirection::Forward ? MultiCone({c}) : MultiCone({ProjInterval(c.hi(), c.lo())});
  } else {
    throw Error(ErrorCode::InvalidArgument, "--seed is required for an IFS file");
  }
  const auto cone = furstenberg_enclosure(ifs, seed, rc.depth_or(14), dir);
  json j;
  j["direction"] = f.direction;
  j["depth"] = rc.depth_or(14);
  j["intervals"] = cone_json(cone);
  return {dump(j)};
}

Report cmd_ifs_wbnc(const Flags& f, const RunConfig& rc) {
  const auto ifs = make_system(f, rc);
  const Vec2 x = parse_point(f.point);
  const auto radii = parse_list(f.radii.empty() ? "1/16,1/64,1/256,1/1024,1/4096" : f.radii);
  json rows = json::array();
  bool increasing = true;
  std::optional<std::uint64_t> prev;
  for (double r : radii) {
    const auto p = wbnc_probe(ifs, x, r);
    rows.push_back({{"r", r}, {"hull_count", p.hull_count}, {"witness_count", p.witness_count}, {"visited", p.visited}});
    if (prev && p.witness_count <= *prev) increasing = false;
    prev = p.witness_count;
  }
  json j;
  j["x"] = {x.x(), x.y()};
  j["rows"] = rows;
  j["witness_strictly_increasing"] = increasing;
  return {dump(j), !f.check || increasing};
}

Report cmd_ifs_affinity(const Flags& f, const RunConfig& rc) {
  const auto ifs = make_system(f, rc);
  const int depth = rc.depth_or(12);
  const auto b = affinity_dimension(ifs, depth, rc.threads);
  json j;
  j["depth"] = depth;
  j["lo"] = b.lo;
  j["hi"] = b.hi;
  if (!f.curve.empty()) {
    const auto pc = pressure_curve(ifs, parse_list(f.curve), depth, rc.threads);
    j["s"] = pc.s_grid;
    j["pressure_lower"] = pc.lower;
    j["pressure_upper"] = pc.upper;
  }
  return {dump(j)};
}

Report cmd_tangent_blowup(const Flags& f, const RunConfig& rc) {
  const auto ifs = make_system(f, rc);
  if (!(f.radius > 0)) throw Error(ErrorCode::InvalidArgument, "--radius must be positive");
  const auto cloud = blowup_cloud(ifs, parse_point(f.point), f.radius, f.eps);
  if (rc.format == "json") {
    json j;
    j["resolution"] = cloud.resolution;
    j["points"] = json::array();
    for (const auto& p : cloud.points) j["points"].push_back({p.x(), p.y()});
    return {dump(j)};
  }
  std::string s = "x,y\n";
  for (const auto& p : cloud.points) s += format_real(p.x()) + "," + format_real(p.y()) + "\n";
  return {s};
}

Report cmd_tangent_example3(const Flags& f, const RunConfig& rc) {
  json rows = json::array();
  bool ok = true;
  for (double nd : parse_list(f.ns)) {
    const auto t = example3_tangent_check(static_cast<int>(nd), rc.threads);
    ok = ok && t.pass();
    rows.push_back({{"n", t.n}, {"distance", t.distance}, {"bound", t.bound}, {"cloud_size", t.cloud_size}, {"pass", t.pass()}});
  }
  json j;
  j["rows"] = rows;
  j["pass"] = ok;
  return {dump(j), ok};
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON file with lambda, depth, slack, hull, output, format, threads");
  app->add_option("--lambda", f.lambda, "lambda in (1/2, 1), decimal or p/q");
  app->add_option("--depth", f.depth, "word length");
  app->add_option("--slack", f.slack, "classification slack");
  app->add_option("--hull", f.hull, "box or pentagon");
  app->add_option("--output", f.output, "write the report to this file");
  app->add_option("--format", f.format, "json or csv");
  app->add_option("--threads", f.threads, "worker threads, 0 = all cores");
}

void add_line(CLI::App* app, Flags& f) {
  app->add_option("--through", f.through, "point x,y on the line");
  app->add_option("--on-graph", f.on_graph, "line through (x, T(x))");
  app->add_option("--slope", f.slope, "slope of the line");
  app->add_flag("--vertical", f.vertical, "vertical line");
}

void add_system(CLI::App* app, Flags& f) {
  app->add_option("--system", f.system, "takagi or example3");
  app->add_option("--ifs", f.ifs_path, "IFS JSON file");
}

}  // namespace

double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long double v = std::stold(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return static_cast<double>(v);
    }
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    const long double p = std::stold(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const long double q = std::stold(b, &used);
    if (used != b.size() || q == 0) throw std::invalid_argument(text);
    return static_cast<double>(p / q);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + text + "'");
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slice censuses, strip masses and dimension bounds for the Takagi graph and planar self-affine sets",
               "slicelab"};
  app.require_subcommand(1);
  Flags f;
  std::vector<std::pair<CLI::App*, Handler>> leaves;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = group->add_subcommand(name, help);
    add_common(sub, f);
    leaves.emplace_back(sub, std::move(h));
    return sub;
  };

  auto* takagi = app.add_subcommand("takagi", "evaluate T and its constants")->require_subcommand(1);
  auto* ev = leaf(takagi, "eval", "T(x) with a certified tail bound", cmd_takagi_eval);
  ev->add_option("--x", f.x, "x in [0,1]; p/q evaluates exactly in integer arithmetic");
  ev->add_option("--tol", f.tol, "tail tolerance");
  leaf(takagi, "constants", "K, M, n_lambda and dimension bounds", cmd_takagi_constants);
  leaf(takagi, "graph", "samples at k / 2^depth", cmd_takagi_graph);

  auto* slice = app.add_subcommand("slice", "slice censuses")->require_subcommand(1);
  auto* census = leaf(slice, "census", "definite and possible counts of cylinders meeting a line or strip", cmd_slice_census);
  add_line(census, f);
  census->add_option("--radius", f.radius, "strip radius, 0 for the line");
  census->add_flag("--words", f.words, "list the counted words");
  auto* scan = leaf(slice, "scan", "Minkowski slopes over a grid of lines", cmd_slice_scan);
  scan->add_option("--slopes", f.slopes, "list a,b,c or range lo:hi:step");
  scan->add_option("--offsets", f.offsets, "intercepts, list or range");
  scan->add_option("--graph-points", f.graph_points, "also lines through (i/(k+1), T(i/(k+1))), i = 1..k");
  scan->add_flag("--check", f.check, "exit 3 if a possible slope exceeds assouad_upper - 1 + 0.1");
  auto* bad = leaf(slice, "bad-words", "strip-but-not-line words by the level they leave the line census", cmd_slice_bad_words);
  add_line(bad, f);
  auto* bound = leaf(slice, "bound-check", "definite census at k n_lambda against (2^n_lambda - 1)^k", cmd_slice_bound_check);
  add_line(bound, f);
  bound->add_option("--kmax", f.k_max, "largest k");

  auto* measure = app.add_subcommand("measure", "strip masses")->require_subcommand(1);
  auto* mass = leaf(measure, "strip-mass", "bounds on the mass of a strip", cmd_measure_strip_mass);
  add_line(mass, f);
  mass->add_option("--radius", f.radius, "strip radius");
  auto* cons = leaf(measure, "conservation", "mass and census slopes with the exact sandwich check", cmd_measure_conservation);
  add_line(cons, f);
  cons->add_option("--n0", f.n0, "first depth");
  cons->add_option("--n1", f.n1, "last depth");

  auto* ifs = app.add_subcommand("ifs", "generic affine IFS tools")->require_subcommand(1);
  auto* ex3 = leaf(ifs, "example3", "norm, cone and invariance checks of the three-map carpet", cmd_ifs_example3);
  ex3->add_option("--check", f.checks, "all, norm, quadrant, dual, cone or square");
  ex3->add_flag("--emit-ifs", f.emit_ifs, "include the IFS JSON");
  add_system(leaf(ifs, "domination", "max and min alpha2/alpha1 per level", cmd_ifs_domination), f);
  auto* furst = leaf(ifs, "furstenberg", "depth-n direction enclosure", cmd_ifs_furstenberg);
  add_system(furst, f);
  furst->add_option("--direction", f.direction, "backward or forward");
  furst->add_option("--seed", f.seed, "seed arc lo_slope,hi_slope");
  auto* wbnc = leaf(ifs, "wbnc", "cylinder counts in the singular value window at x", cmd_ifs_wbnc);
  add_system(wbnc, f);
  wbnc->add_option("--x", f.point, "centre x,y");
  wbnc->add_option("--radii", f.radii, "radii list");
  wbnc->add_flag("--check", f.check, "exit 3 unless witness counts strictly increase");
  auto* aff = leaf(ifs, "affinity", "bracket for the affinity dimension", cmd_ifs_affinity);
  add_system(aff, f);
  aff->add_option("--curve", f.curve, "also report pressure bounds on this s grid");

  auto* tangent = app.add_subcommand("tangent", "blow-ups")->require_subcommand(1);
  auto* blow = leaf(tangent, "blowup", "points of (X - x) / r near the unit ball", cmd_tangent_blowup);
  add_system(blow, f);
  blow->add_option("--x", f.point, "centre x,y");
  blow->add_option("--radius", f.radius, "blow-up radius");
  blow->add_option("--eps", f.eps, "resolution");
  auto* t3 = leaf(tangent, "example3", "blow-ups at the origin against the first quadrant", cmd_tangent_example3);
  t3->add_option("--n", f.ns, "list of n in [2, 7]");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  for (auto& [sub, handler] : leaves) {
    if (!sub->parsed()) continue;
    try {
      const RunConfig rc = resolve(*sub, f);
      const Report report = handler(f, rc);
      if (rc.output.empty()) {
        out << report.text;
      } else {
        std::ofstream file(rc.output, std::ios::binary);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + rc.output);
        file << report.text;
      }
      if (!report.ok) {
        err << "check failed\n";
        return kExitCheckFailed;
      }
      return kExitOk;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitInvalid;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitInvalid;
    }
  }
  err << "error: no command given\n";
  return kExitInvalid;
}

}  // namespace slicelab::cli
