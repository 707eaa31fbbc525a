// Command-line front end for the sphgeom library.
//
// Exit codes: 0 success, 1 failed verification or I/O failure, 2 domain
// error (reported on stderr as "error: <ErrorName>: <message>"), 64 usage
// error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sphgeom/sphgeom.hpp"

namespace {

using namespace sphgeom;
using Json = nlohmann::ordered_json;

constexpr int kExitFailure = 1;
constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  double tolerance = kTolerance;
  std::string units = "rad";
  unsigned long long seed = 0;
  std::string output = "text";

  bool degrees() const { return units == "deg"; }
  double angle_in(double v) const { return degrees() ? v * kPi / 180.0 : v; }
  double angle_out(double v) const { return degrees() ? v * 180.0 / kPi : v; }
};

double clean(double v) { return v == 0.0 ? 0.0 : v; }

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", clean(v));
  return buf;
}

Json json_number(double v) {
  if (!std::isfinite(v)) return format_number(v);
  return std::strtod(format_number(v).c_str(), nullptr);
}

/// One result: named inputs, outputs and residuals, in insertion order.
class Record {
 public:
  explicit Record(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  void input(const std::string& key, Json value) { inputs_.push_back({key, std::move(value)}); }
  void out(const std::string& key, std::vector<double> nums) { outputs_.push_back({key, std::move(nums), {}, {}}); }
  void out(const std::string& key, double v) { out(key, std::vector<double>{v}); }
  void note(const std::string& key, const std::string& text) { outputs_.push_back({key, {}, text, {}}); }
  void out_rows(const std::string& key, std::vector<std::vector<double>> rows) { outputs_.push_back({key, {}, {}, std::move(rows)}); }
  void residual(const std::string& key, double v) { residuals_.push_back({key, {v}, {}, {}}); }
  /// Text mode prints the output values without keys.
  void bare() { bare_ = true; }

  std::string text() const {
    std::string s;
    auto line = [&](const std::string& key, const std::vector<double>& nums) {
      std::string l = bare_ ? "" : key;
      for (double v : nums) l += (l.empty() ? "" : " ") + format_number(v);
      s += l + "\n";
    };
    for (const Field& f : outputs_) {
      if (!f.rows.empty()) {
        for (const auto& r : f.rows) line(f.key, r);
      } else if (f.nums.empty()) {
        s += (bare_ ? "" : f.key + " ") + f.text + "\n";
      } else {
        line(f.key, f.nums);
      }
    }
    if (!bare_) {
      for (const Field& f : residuals_) line(f.key, f.nums);
    }
    return s;
  }

  Json json() const {
    Json j;
    j["subcommand"] = subcommand_;
    j["inputs"] = Json::object();
    for (const auto& [k, v] : inputs_) j["inputs"][k] = v;
    j["outputs"] = Json::object();
    for (const Field& f : outputs_) j["outputs"][f.key] = value(f);
    j["residuals"] = Json::object();
    for (const Field& f : residuals_) j["residuals"][f.key] = value(f);
    return j;
  }

 private:
  struct Field {
    std::string key;
    std::vector<double> nums;
    std::string text;
    std::vector<std::vector<double>> rows;
  };

  static Json value(const Field& f) {
    auto array = [](const std::vector<double>& v) {
      Json a = Json::array();
      for (double x : v) a.push_back(json_number(x));
      return a;
    };
    if (!f.rows.empty()) {
      Json a = Json::array();
      for (const auto& r : f.rows) a.push_back(array(r));
      return a;
    }
    if (f.nums.empty()) return f.text;
    if (f.nums.size() == 1) return json_number(f.nums[0]);
    return array(f.nums);
  }

  std::string subcommand_;
  std::vector<std::pair<std::string, Json>> inputs_;
  std::vector<Field> outputs_;
  std::vector<Field> residuals_;
  bool bare_ = false;
};

/// Shared state of one invocation.
class Session {
 public:
  Session(const Config& cfg, CLI::App* sub) : cfg_(cfg), sub_(sub) {}

  const Config& cfg() const { return cfg_; }

  Record record() const {
    Record r(sub_->get_name());
    for (const CLI::Option* o : sub_->get_options()) {
      if (o->count() == 0 || o->get_lnames().empty()) continue;
      const auto& res = o->results();
      if (res.size() == 1) {
        r.input(o->get_lnames()[0], res[0]);
      } else {
        r.input(o->get_lnames()[0], Json(res));
      }
    }
    r.input("units", cfg_.units);
    return r;
  }

  void emit(const Record& r) const {
    if (cfg_.output == "json-lines") {
      std::cout << r.json().dump() << '\n';
    } else {
      std::cout << r.text();
    }
  }

  Vec2 geo_out(const SPoint& p) const {
    const GeoCoord g = to_geo(p);
    return {cfg_.angle_out(g.lat), cfg_.angle_out(g.lon)};
  }
  std::vector<double> point_out(const SPoint& p) const {
    const Vec2 v = geo_out(p);
    return {v.x(), v.y()};
  }

 private:
  Config cfg_;
  CLI::App* sub_;
};

std::pair<double, double> parse_pair(const std::string& s, const std::string& what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError(what + ": expected two comma-separated numbers, got '" + s + "'");
  auto number = [&](const std::string& part) {
    const char* b = part.c_str();
    char* e = nullptr;
    const double v = std::strtod(b, &e);
    while (e && *e == ' ') ++e;
    if (e == b || *e != '\0') throw UsageError(what + ": not a number: '" + part + "'");
    return v;
  };
  return {number(s.substr(0, comma)), number(s.substr(comma + 1))};
}

SPoint parse_geo(const Session& ss, const std::string& s, const std::string& what) {
  const auto [lat, lon] = parse_pair(s, what);
  return from_geo(GeoCoord::make(ss.cfg().angle_in(lat), ss.cfg().angle_in(lon)));
}

Vec2 parse_plane(const std::string& s, const std::string& what) {
  const auto [x, y] = parse_pair(s, what);
  return {x, y};
}

std::vector<Vec2> arc_image(const Projection& pr, const SPoint& a, const SPoint& b, int n = 64) {
  std::vector<SPoint> pts;
  const Arc arc{a, b};
  for (int k = 0; k <= n; ++k) pts.push_back(arc.point_at(static_cast<double>(k) / n));
  std::vector<Vec2> out;
  for (const auto& piece : project_path(pr, pts)) out.insert(out.end(), piece.begin(), piece.end());
  return out;
}

/// Writes the figure and records where it went.
void write_svg(const SvgFigure& fig, const std::string& path, Record& rec) {
  fig.save(path);
  rec.note("svg", path);
}

struct FigureOptions {
  std::string emit = "text";
  std::string path;
  int size = 600;

  void attach(CLI::App* sub) {
    sub->add_option("--emit", emit, "text or svg")->check(CLI::IsMember({"text", "svg"}));
    sub->add_option("--svg-out", path, "SVG file path (default: <subcommand>.svg)");
    sub->add_option("--size", size, "SVG canvas size in pixels")->check(CLI::Range(16, 10000));
  }
  bool wanted(const Config& cfg) const { return emit == "svg" || cfg.output == "svg"; }
  std::string file(const std::string& sub) const { return path.empty() ? sub + ".svg" : path; }
};

const SvgStyle kBlue{"#1f4e9c", 1.5, "none"};
const SvgStyle kRed{"#c0392b", 1.5, "none"};
const SvgStyle kGray{"#b0b0b0", 0.6, "none"};
const SvgStyle kDark{"#222222", 1.0, "#222222"};

// solve

struct SolveArgs {
  std::string kind;
  double a = 0, b = 0, c = 0, A = 0, B = 0, C = 0;
  CLI::Option *oa = nullptr, *ob = nullptr, *oc = nullptr, *oA = nullptr, *oB = nullptr, *oC = nullptr;

  void attach(CLI::App* sub) {
    sub->add_option("--case", kind, "sss, sas, asa, saa, ssa or aaa")
        ->required()
        ->transform(CLI::IsMember({"sss", "sas", "asa", "saa", "ssa", "aaa"}, CLI::ignore_case));
    oa = sub->add_option("--a", a, "side a");
    ob = sub->add_option("--b", b, "side b");
    oc = sub->add_option("--c", c, "side c");
    oA = sub->add_option("--A", A, "angle A");
    oB = sub->add_option("--B", B, "angle B");
    oC = sub->add_option("--C", C, "angle C");
  }

  int run(const Session& ss) const {
    struct Layout {
      const char* name;
      SolveCase kind;
      std::array<const char*, 3> keys;
    };
    static const std::array<Layout, 6> layouts{{{"sss", SolveCase::SSS, {"a", "b", "c"}},
                                                {"sas", SolveCase::SAS, {"a", "b", "C"}},
                                                {"asa", SolveCase::ASA, {"A", "c", "B"}},
                                                {"ssa", SolveCase::SSA, {"a", "b", "A"}},
                                                {"saa", SolveCase::SAA, {"a", "A", "B"}},
                                                {"aaa", SolveCase::AAA, {"A", "B", "C"}}}};
    const Layout* lay = nullptr;
    for (const auto& l : layouts) {
      if (kind == l.name) lay = &l;
    }
    auto lookup = [&](const std::string& key) -> std::pair<const CLI::Option*, double> {
      if (key == "a") return {oa, a};
      if (key == "b") return {ob, b};
      if (key == "c") return {oc, c};
      if (key == "A") return {oA, A};
      if (key == "B") return {oB, B};
      return {oC, C};
    };
    std::array<double, 3> data{};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto [opt, v] = lookup(lay->keys[i]);
      if (opt->count() == 0) {
        throw UsageError(std::string("--case ") + kind + " requires --" + lay->keys[0] + " --" + lay->keys[1] + " --" +
                         lay->keys[2]);
      }
      data[i] = ss.cfg().angle_in(v);
    }
    const auto sols = solve(lay->kind, std::span<const double, 3>(data));
    if (sols.empty()) fail(ErrorCode::NoSolution, "no triangle has these elements");
    const auto& cfg = ss.cfg();
    for (std::size_t i = 0; i < sols.size(); ++i) {
      const TriangleElements& e = sols[i];
      Record r = ss.record();
      if (sols.size() > 1) r.out("solution", static_cast<double>(i + 1));
      r.out("a", cfg.angle_out(e.a));
      r.out("b", cfg.angle_out(e.b));
      r.out("c", cfg.angle_out(e.c));
      r.out("A", cfg.angle_out(e.A));
      r.out("B", cfg.angle_out(e.B));
      r.out("C", cfg.angle_out(e.C));
      r.out("area", area(e, AreaMethod::Excess));
      r.residual("basic_formula_residual", basic_formula_residual(e));
      ss.emit(r);
    }
    return 0;
  }
};

// area

struct AreaArgs {
  std::string A, B, C;

  void attach(CLI::App* sub) {
    sub->add_option("--A", A, "vertex A as lat,lon")->required();
    sub->add_option("--B", B, "vertex B as lat,lon")->required();
    sub->add_option("--C", C, "vertex C as lat,lon")->required();
  }

  int run(const Session& ss) const {
    const SPoint pa = parse_geo(ss, A, "--A"), pb = parse_geo(ss, B, "--B"), pc = parse_geo(ss, C, "--C");
    const SphTriangle t = SphTriangle::from_vertices(pa, pb, pc);
    const TriangleElements& e = t.elements();
    const auto& cfg = ss.cfg();
    Record r = ss.record();
    r.out("sides", {cfg.angle_out(e.a), cfg.angle_out(e.b), cfg.angle_out(e.c)});
    r.out("angles", {cfg.angle_out(e.A), cfg.angle_out(e.B), cfg.angle_out(e.C)});
    double lo = 1e300, hi = -1e300;
    for (AreaMethod m : kAllAreaMethods) {
      const double v = area(e, m);
      r.out(std::string(name(m)), v);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double lx = area_lexell_xy(lexell_xy_of(pa, pb, pc));
    r.out("lexell_coordinates", lx);
    lo = std::min(lo, lx);
    hi = std::max(hi, lx);
    r.residual("method_spread", hi - lo);
    ss.emit(r);
    return 0;
  }
};

// lexell

struct LexellArgs {
  std::string A, B;
  double area_value = 0;
  int samples = 12;
  FigureOptions fig;

  void attach(CLI::App* sub) {
    sub->add_option("--A", A, "base endpoint A as lat,lon")->required();
    sub->add_option("--B", B, "base endpoint B as lat,lon")->required();
    sub->add_option("--area", area_value, "triangle area in steradians")->required();
    sub->add_option("--samples", samples, "number of sampled apexes")->check(CLI::Range(1, 100000));
    fig.attach(sub);
  }

  int run(const Session& ss) const {
    const SPoint pa = parse_geo(ss, A, "--A"), pb = parse_geo(ss, B, "--B");
    const LexellConstruction k = lexell_circle_euler(pa, pb, area_value);
    const LexellConstruction kl = lexell_circle_lexell(pa, pb, area_value);
    const auto& cfg = ss.cfg();
    const double base = dist(pa, pb);
    Record r = ss.record();
    r.out("pole", ss.point_out(k.pole));
    r.out("radius", cfg.angle_out(k.radius));
    r.out("radius_printed_form", cfg.angle_out(lexell_radius_printed(base, area_value)));
    const auto apexes = k.sample_apexes(samples);
    std::vector<std::vector<double>> rows;
    double area_miss = 0;
    for (const SPoint& v : apexes) {
      rows.push_back(ss.point_out(v));
      area_miss = std::max(area_miss, std::abs(area(SphTriangle::from_vertices(pa, pb, v)) - area_value));
    }
    r.out_rows("apex", rows);
    r.residual("construction_agreement", std::max(dist(k.pole, kl.pole), std::abs(k.radius - kl.radius)));
    r.residual("antipode_on_circle", std::max(k.circle().distance_from(-pa), k.circle().distance_from(-pb)));
    r.residual("radius_formula", std::abs(k.radius - lexell_radius(base, area_value)));
    r.residual("apex_area", area_miss);
    if (fig.wanted(cfg)) {
      const Projection pr = Projection::stereographic(-k.pole);
      SvgFigure f(fig.size);
      f.polylines(project_path(pr, sample_circle(k.circle(), 256)), kBlue);
      f.polyline(arc_image(pr, pa, pb), kRed);
      for (const SPoint& v : apexes) {
        f.polyline(arc_image(pr, pa, v), kGray);
        f.polyline(arc_image(pr, pb, v), kGray);
        f.dot(project(pr, v), 2.5, kDark);
      }
      f.label(project(pr, pa), "A", kDark);
      f.label(project(pr, pb), "B", kDark);
      write_svg(f, fig.file("lexell"), r);
    }
    ss.emit(r);
    return 0;
  }
};

// cevians

struct CevianArgs {
  std::string geometry = "spherical";
  std::string A, B, C, O, a, b, c;

  void attach(CLI::App* sub) {
    sub->add_option("--geometry", geometry, "spherical or euclidean")->check(CLI::IsMember({"spherical", "euclidean"}));
    sub->add_option("--A", A, "vertex A (lat,lon or x,y)")->required();
    sub->add_option("--B", B, "vertex B")->required();
    sub->add_option("--C", C, "vertex C")->required();
    sub->add_option("--O", O, "common point of the cevians");
    sub->add_option("--a", a, "foot on BC");
    sub->add_option("--b", b, "foot on CA");
    sub->add_option("--c", c, "foot on AB");
  }

  template <class Point, class Parse, class Out>
  CevianConfig<Point> build(Parse parse, Out point_out, Record& r) const {
    const bool feet = !a.empty() && !b.empty() && !c.empty();
    if (O.empty() == !feet || (!feet && (!a.empty() || !b.empty() || !c.empty()))) {
      throw UsageError("give either --O or all of --a --b --c");
    }
    const Point pA = parse(A, "--A"), pB = parse(B, "--B"), pC = parse(C, "--C");
    if (feet) return CevianConfig<Point>{pA, pB, pC, parse(a, "--a"), parse(b, "--b"), parse(c, "--c")};
    const auto k = cevians_through(pA, pB, pC, parse(O, "--O"));
    r.out("feet", {point_out(k.a)[0], point_out(k.a)[1], point_out(k.b)[0], point_out(k.b)[1], point_out(k.c)[0],
                   point_out(k.c)[1]});
    return k;
  }

  int run(const Session& ss) const {
    const double tol = ss.cfg().tolerance;
    Record r = ss.record();
    if (geometry == "euclidean") {
      auto parse = [](const std::string& s, const char* what) { return parse_plane(s, what); };
      auto out = [](const Vec2& p) { return std::vector<double>{p.x(), p.y()}; };
      const auto k = build<Vec2>(parse, out, r);
      const double spread = concurrency_spread(k);
      if (spread <= kConcurrencySpread) r.out("point", out(cevian_point(k, tol)));
      r.note("concurrent", spread <= kConcurrencySpread ? "yes" : "no");
      r.residual("concurrency_spread", spread);
      r.residual("product_sum_relation", euler_relation_residual_euclidean(k, tol));
      r.residual("segment_ratio_identity", euler_identity_residual_euclidean(k, tol));
      r.residual("ceva", ceva_residual(k, tol));
    } else {
      auto parse = [&](const std::string& s, const char* what) { return parse_geo(ss, s, what); };
      auto out = [&](const SPoint& p) { return ss.point_out(p); };
      const auto k = build<SPoint>(parse, out, r);
      const double spread = concurrency_spread(k);
      if (spread <= kConcurrencySpread) r.out("point", out(cevian_point(k, tol)));
      r.note("concurrent", spread <= kConcurrencySpread ? "yes" : "no");
      const SphericalIdentityReport rep = spherical_identity_probe(k, tol);
      r.out("printed_sum", rep.printed_sum);
      r.out("inverse_sum", rep.inverse_sum);
      r.out("foot_ratio_sum", rep.foot_ratio_sum);
      r.out("weight_sum", rep.weight_sum);
      r.note("printed_form_holds", rep.printed_holds ? "yes" : "no");
      r.residual("concurrency_spread", spread);
      r.residual("tangent_relation", euler_relation_residual_spherical(k, tol));
      r.residual("ceva", ceva_residual(k, tol));
      r.residual("printed_form", rep.printed_residual);
      r.residual("weight_form", rep.weight_residual);
    }
    ss.emit(r);
    return 0;
  }
};

// pappus

struct PappusArgs {
  std::string geometry = "euclidean";
  std::string center, P1, P2, P3;
  double radius = 1.0;
  FigureOptions fig;

  void attach(CLI::App* sub) {
    sub->add_option("--geometry", geometry, "euclidean or spherical")->check(CLI::IsMember({"spherical", "euclidean"}));
    sub->add_option("--center", center, "circle center (x,y) or small-circle pole (lat,lon)")->required();
    sub->add_option("--radius", radius, "circle radius (angle on the sphere)")->required();
    sub->add_option("--P1", P1, "first target")->required();
    sub->add_option("--P2", P2, "second target")->required();
    sub->add_option("--P3", P3, "third target")->required();
    fig.attach(sub);
  }

  template <class Point, class Out>
  void report(const Session& ss, const std::vector<PappusSolution<Point>>& sols, Out point_out) const {
    for (std::size_t i = 0; i < sols.size(); ++i) {
      const auto& s = sols[i];
      Record r = ss.record();
      r.out("solution", static_cast<double>(i + 1));
      r.out("order", {s.order[0] + 1.0, s.order[1] + 1.0, s.order[2] + 1.0});
      std::vector<std::vector<double>> rows;
      for (const Point& v : s.vertices) rows.push_back(point_out(v));
      r.out_rows("vertex", rows);
      r.residual("circle", s.circle_residual);
      r.residual("incidence", s.incidence_residual);
      ss.emit(r);
    }
  }

  int run(const Session& ss) const {
    const auto& cfg = ss.cfg();
    if (geometry == "euclidean") {
      const PlanarPappus inst{PlanarCircle{parse_plane(center, "--center"), radius},
                              {parse_plane(P1, "--P1"), parse_plane(P2, "--P2"), parse_plane(P3, "--P3")}};
      if (!(radius > 0)) fail(ErrorCode::OutOfRange, "radius must be positive");
      const auto sols = solve_pappus(inst);
      report(ss, sols, [](const Vec2& p) { return std::vector<double>{p.x(), p.y()}; });
      if (fig.wanted(cfg)) {
        SvgFigure f(fig.size);
        f.circle(inst.circle, kBlue);
        for (const auto& s : sols) f.polyline({s.vertices[0], s.vertices[1], s.vertices[2], s.vertices[0]}, kRed);
        for (const Vec2& t : inst.targets) f.dot(t, 3, kDark);
        Record r = ss.record();
        write_svg(f, fig.file("pappus"), r);
        ss.emit(r);
      }
    } else {
      const SmallCircle circle = SmallCircle::make(parse_geo(ss, center, "--center"), cfg.angle_in(radius));
      const SphericalPappus inst{circle,
                                 {parse_geo(ss, P1, "--P1"), parse_geo(ss, P2, "--P2"), parse_geo(ss, P3, "--P3")}};
      const auto sols = solve_pappus(inst);
      report(ss, sols, [&](const SPoint& p) { return ss.point_out(p); });
      if (fig.wanted(cfg)) {
        const Projection pr = Projection::stereographic(-circle.pole);
        SvgFigure f(fig.size);
        f.polylines(project_path(pr, sample_circle(circle, 256)), kBlue);
        for (const auto& s : sols) {
          for (std::size_t k = 0; k < 3; ++k) f.polyline(arc_image(pr, s.vertices[k], s.vertices[(k + 1) % 3]), kRed);
        }
        for (const SPoint& t : inst.targets) {
          const Vec2 q = project(pr, t);
          if (q.norm() < 10) f.dot(q, 3, kDark);
        }
        Record r = ss.record();
        write_svg(f, fig.file("pappus"), r);
        ss.emit(r);
      }
    }
    return 0;
  }
};

// fuss

struct FussArgs {
  std::string A, B, pole;
  std::string objective = "all";
  int grid = kFussGrid;

  void attach(CLI::App* sub) {
    sub->add_option("--A", A, "base endpoint A as lat,lon")->required();
    sub->add_option("--B", B, "base endpoint B as lat,lon")->required();
    sub->add_option("--pole", pole, "pole of the great circle carrying the vertex (default: the north pole)");
    sub->add_option("--objective", objective, "max_angle, min_side_sum, max_area or all")
        ->check(CLI::IsMember({"all", "max_angle", "min_side_sum", "max_area"}));
    sub->add_option("--grid", grid, "coarse scan resolution")->check(CLI::Range(16, 10000000));
  }

  int run(const Session& ss) const {
    const auto& cfg = ss.cfg();
    FussInstance in{parse_geo(ss, A, "--A"), parse_geo(ss, B, "--B"), GreatCircle(SPoint(0, 0, 1))};
    if (!pole.empty()) in.constraint = GreatCircle(parse_geo(ss, pole, "--pole"));
    for (FussObjective o : {FussObjective::MaxAngle, FussObjective::MinSideSum, FussObjective::MaxArea}) {
      if (objective != "all" && objective != name(o)) continue;
      const FussResult res = fuss_solve(in, o, grid);
      Record r = ss.record();
      r.note("objective", std::string(name(o)));
      r.out("vertex", ss.point_out(res.optimum.vertex));
      r.out("value", o == FussObjective::MaxArea ? res.optimum.value : cfg.angle_out(res.optimum.value));
      r.note("at_boundary", res.optimum_at_boundary ? "yes" : "no");
      r.out("critical_points", static_cast<double>(res.critical.size()));
      r.residual("on_constraint", in.constraint.distance_from(res.optimum.vertex));
      ss.emit(r);
    }
    return 0;
  }
};

// ellipse

struct EllipseArgs {
  std::string F1, F2;
  double sum = 0;
  int samples = 24;
  FigureOptions fig;

  void attach(CLI::App* sub) {
    sub->add_option("--F1", F1, "first focus as lat,lon")->required();
    sub->add_option("--F2", F2, "second focus as lat,lon")->required();
    sub->add_option("--sum", sum, "sum of focal distances (angle)")->required();
    sub->add_option("--samples", samples, "number of traced points")->check(CLI::Range(6, 100000));
    fig.attach(sub);
  }

  int run(const Session& ss) const {
    const auto& cfg = ss.cfg();
    const SphericalEllipse e = SphericalEllipse::make(parse_geo(ss, F1, "--F1"), parse_geo(ss, F2, "--F2"), cfg.angle_in(sum));
    const auto pts = ellipse_trace(e, samples);
    Record r = ss.record();
    r.out("focal_distance", cfg.angle_out(dist(e.f1, e.f2)));
    std::vector<std::vector<double>> rows;
    double miss = 0;
    for (const SPoint& p : pts) {
      rows.push_back(ss.point_out(p));
      miss = std::max(miss, std::abs(ellipse_residual(e, p)));
    }
    const ConeFit cone = ellipse_cone_check(e);
    r.note("cone_planar", cone.planar ? "yes" : "no");
    const bool degenerate = std::abs(e.sum - kPi) <= cfg.tolerance;
    if (degenerate) r.out("great_circle_pole", ss.point_out(ellipse_degenerate(e.f1, e.f2).pole()));
    r.out_rows("point", rows);
    r.residual("focal_sum", miss);
    r.residual("cone", cone.residual);
    if (degenerate) {
      const GreatCircle g = ellipse_degenerate(e.f1, e.f2);
      double off = 0;
      for (const SPoint& p : pts) off = std::max(off, g.distance_from(p));
      r.residual("great_circle", off);
    }
    if (fig.wanted(cfg)) {
      const Projection pr = Projection::stereographic(-midpoint(e.f1, e.f2));
      std::vector<SPoint> loop = ellipse_trace(e, std::max(samples, 256));
      loop.push_back(loop.front());
      SvgFigure f(fig.size);
      f.polylines(project_path(pr, loop), kBlue);
      f.dot(project(pr, e.f1), 3, kDark);
      f.dot(project(pr, e.f2), 3, kDark);
      write_svg(f, fig.file("ellipse"), r);
    }
    ss.emit(r);
    return 0;
  }
};

// geodesic

struct GeodesicArgs {
  std::string from, to;
  double heading = 0, length = 0, step = kGeodesicStep;
  int samples = 0;
  CLI::Option *oh = nullptr, *ol = nullptr;

  void attach(CLI::App* sub) {
    sub->add_option("--from", from, "start point as lat,lon")->required();
    sub->add_option("--to", to, "end point as lat,lon (connect mode)");
    oh = sub->add_option("--heading", heading, "initial heading from north toward east (shoot mode)");
    ol = sub->add_option("--length", length, "arc length (shoot mode)");
    sub->add_option("--step", step, "integration step in radians of arc length");
    sub->add_option("--samples", samples, "number of path samples to print")->check(CLI::Range(0, 1000000));
  }

  int run(const Session& ss) const {
    const auto& cfg = ss.cfg();
    const SPoint p = parse_geo(ss, from, "--from");
    const bool connect = !to.empty();
    if (connect == (oh->count() + ol->count() > 0) || (!connect && (oh->count() == 0 || ol->count() == 0))) {
      throw UsageError("give either --to or both --heading and --length");
    }
    Record r = ss.record();
    GeodesicSolution sol;
    SPoint target = p;
    if (connect) {
      target = parse_geo(ss, to, "--to");
      sol = geodesic_connect(p, target, step);
    } else {
      const double h = cfg.angle_in(heading), L = cfg.angle_in(length);
      const GeoCoord g = to_geo(p);
      ShootOptions opt;
      opt.step = step;
      sol = geodesic_shoot({kHalfPi - g.lat, g.lon}, h, L, opt);
      const auto [east, north] = east_north(p);
      target = travel(p, std::cos(h) * north + std::sin(h) * east, L);
    }
    const SPoint end = sol.end();
    r.out("end", ss.point_out(end));
    r.out("length", cfg.angle_out(sol.length));
    if (sol.path.xy.size() > 1) {
      const auto [east, north] = east_north(p);
      const Vec3 t = tangent_toward(p, sol.point(1));
      r.out("heading", cfg.angle_out(std::atan2(t.dot(east), t.dot(north))));
    }
    r.out("first_integral", sol.first_integral);
    if (samples > 0) {
      std::vector<std::vector<double>> rows;
      const std::size_t last = sol.path.xy.size() - 1;
      for (int k = 0; k < samples; ++k) {
        const auto i = samples == 1 ? last : static_cast<std::size_t>(std::llround(static_cast<double>(k) * last / (samples - 1)));
        rows.push_back(ss.point_out(sol.point(i)));
      }
      r.out_rows("sample", rows);
    }
    r.residual("first_integral_drift", sol.drift);
    r.residual("endpoint", dist(end, target));
    if (connect) r.residual("length_vs_arccos", std::abs(sol.length - dist(p, target)));
    ss.emit(r);
    return 0;
  }
};

// project

struct ProjectArgs {
  std::string kind = "stereographic", center;
  double lat = 0, lon = 0, u = 0, v = 0, graticule_step = 0;
  bool inverse = false, stdin_rows = false;
  std::vector<std::string> paths;
  FigureOptions fig;
  CLI::Option *olat = nullptr, *olon = nullptr, *ou = nullptr, *ov = nullptr, *ostep = nullptr;

  void attach(CLI::App* sub) {
    sub->add_option("--kind", kind,
                    "stereographic, gnomonic, mercator, lambert_azimuthal_equal_area or lambert_cylindrical_equal_area");
    sub->add_option("--center", center, "center of an azimuthal projection as lat,lon");
    olat = sub->add_option("--lat", lat, "latitude of the point to project");
    olon = sub->add_option("--lon", lon, "longitude of the point to project");
    sub->add_flag("--inverse", inverse, "map plane coordinates back to the sphere");
    ou = sub->add_option("--u", u, "plane abscissa (with --inverse)");
    ov = sub->add_option("--v", v, "plane ordinate (with --inverse)");
    sub->add_flag("--stdin", stdin_rows, "read whitespace-separated rows from standard input");
    ostep = sub->add_option("--graticule-step", graticule_step, "graticule spacing in the SVG figure");
    sub->add_option("--path", paths, "spherical polyline for the SVG figure: lat,lon;lat,lon;...");
    fig.attach(sub);
  }

  Projection projection(const Session& ss) const {
    const auto k = parse_projection_kind(kind);
    if (!k) throw UsageError("unknown projection kind '" + kind + "'");
    std::optional<SPoint> c;
    if (!center.empty()) c = parse_geo(ss, center, "--center");
    switch (*k) {
      case ProjectionKind::Stereographic: return c ? Projection::stereographic(-*c) : Projection::stereographic();
      case ProjectionKind::Gnomonic: return c ? Projection::gnomonic(*c) : Projection::gnomonic();
      case ProjectionKind::LambertAzimuthal: return c ? Projection::lambert_azimuthal(*c) : Projection::lambert_azimuthal();
      case ProjectionKind::Mercator:
      case ProjectionKind::LambertCylindrical:
        if (c) throw UsageError("--center applies to azimuthal projections only");
        return *k == ProjectionKind::Mercator ? Projection::mercator() : Projection::lambert_cylindrical();
    }
    return Projection::stereographic();
  }

  void row(const Session& ss, const Projection& pr, double x, double y) const {
    Record r = ss.record();
    r.bare();
    if (inverse) {
      const SPoint p = unproject(pr, {x, y});
      r.out("point", ss.point_out(p));
      r.residual("round_trip", (project(pr, p) - Vec2(x, y)).norm());
    } else {
      const SPoint p = from_geo(GeoCoord::make(ss.cfg().angle_in(x), ss.cfg().angle_in(y)));
      const Vec2 q = project(pr, p);
      r.out("image", {q.x(), q.y()});
      r.residual("round_trip", dist(unproject(pr, q), p));
    }
    ss.emit(r);
  }

  int run(const Session& ss) const {
    const Projection pr = projection(ss);
    auto* x = inverse ? ou : olat;
    auto* y = inverse ? ov : olon;
    const bool single = x->count() + y->count() > 0;
    if (single && (x->count() == 0 || y->count() == 0)) {
      throw UsageError(inverse ? "--inverse needs both --u and --v" : "give both --lat and --lon");
    }
    if (single) row(ss, pr, inverse ? u : lat, inverse ? v : lon);
    if (stdin_rows) {
      std::string line;
      while (std::getline(std::cin, line)) {
        std::istringstream in(line);
        double a = 0, b = 0;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!(in >> a >> b)) throw UsageError("malformed input row: '" + line + "'");
        row(ss, pr, a, b);
      }
    }
    if (fig.wanted(ss.cfg())) {
      const double stepv = ostep->count() ? ss.cfg().angle_in(graticule_step) : kPi / 12;
      SvgFigure f(fig.size);
      f.polylines(graticule(pr, stepv), kGray);
      for (const std::string& polyline : paths) {
        std::vector<SPoint> corners;
        std::stringstream in(polyline);
        for (std::string item; std::getline(in, item, ';');) corners.push_back(parse_geo(ss, item, "--path"));
        if (corners.size() < 2) throw UsageError("--path needs at least two points");
        std::vector<SPoint> pts;
        for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
          const Arc arc = Arc::make(corners[i], corners[i + 1]);
          for (int k = 0; k < 64; ++k) pts.push_back(arc.point_at(k / 64.0));
        }
        pts.push_back(corners.back());
        f.polylines(project_path(pr, pts), kRed);
      }
      if (single && !inverse) f.dot(project(pr, from_geo(GeoCoord::make(ss.cfg().angle_in(lat), ss.cfg().angle_in(lon)))), 3, kDark);
      Record r = ss.record();
      write_svg(f, fig.file("project"), r);
      ss.emit(r);
    } else if (!single && !stdin_rows) {
      throw UsageError("nothing to project: give a point, --stdin or --emit svg");
    }
    return 0;
  }
};

// verify

struct VerifyArgs {
  int criterion = 0;

  void attach(CLI::App* sub) {
    sub->add_option("--criterion", criterion, "run one criterion (1-9); all by default")->check(CLI::Range(0, kCriteriaCount));
  }

  int run(const Session& ss) const {
    bool ok = true;
    for (int id = 1; id <= kCriteriaCount; ++id) {
      if (criterion != 0 && id != criterion) continue;
      const CriterionReport rep = run_criterion(id, ss.cfg().seed);
      ok = ok && rep.passed();
      if (ss.cfg().output == "json-lines") {
        Record r = ss.record();
        r.out("criterion", static_cast<double>(id));
        r.note("title", rep.title);
        r.note("status", rep.passed() ? "PASS" : "FAIL");
        for (const Check& c : rep.checks) {
          if (!c.timing) r.residual(c.name, c.value);
        }
        ss.emit(r);
      } else {
        std::cout << format_report(rep);
      }
      std::cout.flush();
      std::fprintf(stderr, "criterion %d: %.2f s\n", id, rep.seconds);
    }
    return ok ? 0 : kExitFailure;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical geometry solvers and checks"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  if (const char* env = std::getenv("SPHGEOM_TOLERANCE"); env && *env) {
    char* end = nullptr;
    cfg.tolerance = std::strtod(env, &end);
    if (*end != '\0' || !(cfg.tolerance > 1e-14 && cfg.tolerance < 1e-2)) {
      std::cerr << "usage error: SPHGEOM_TOLERANCE must be a number in (1e-14, 1e-2)\n";
      return kExitUsage;
    }
  }
  app.add_option("--tolerance", cfg.tolerance, "numerical tolerance (default 1e-9, or SPHGEOM_TOLERANCE)")
      ->check(CLI::Range(1e-14, 1e-2));
  app.add_option("--units", cfg.units, "angle units: deg or rad")->check(CLI::IsMember({"deg", "rad"}));
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--output", cfg.output, "text, json-lines or svg")->check(CLI::IsMember({"text", "json-lines", "svg"}));

  SolveArgs solve_args;
  AreaArgs area_args;
  LexellArgs lexell_args;
  CevianArgs cevian_args;
  PappusArgs pappus_args;
  FussArgs fuss_args;
  EllipseArgs ellipse_args;
  GeodesicArgs geodesic_args;
  ProjectArgs project_args;
  VerifyArgs verify_args;

  std::vector<std::pair<CLI::App*, std::function<int(const Session&)>>> commands;
  auto add = [&](const char* nm, const char* help, auto& args) {
    CLI::App* sub = app.add_subcommand(nm, help);
    args.attach(sub);
    commands.emplace_back(sub, [&args](const Session& ss) { return args.run(ss); });
  };
  add("solve", "solve a triangle from three elements", solve_args);
  add("area", "area of a triangle by every formula", area_args);
  add("lexell", "locus of apexes over a fixed base with fixed area", lexell_args);
  add("cevians", "concurrency relations of three cevians", cevian_args);
  add("pappus", "triangles inscribed in a circle with sides through three points", pappus_args);
  add("fuss", "extremal vertex on a great circle", fuss_args);
  add("ellipse", "trace a spherical ellipse and fit its cone", ellipse_args);
  add("geodesic", "connect two points or shoot a geodesic", geodesic_args);
  add("project", "map projections and SVG figures", project_args);
  add("verify", "run the end-to-end property checks", verify_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  for (auto& [sub, run] : commands) {
    if (!sub->parsed()) continue;
    try {
      return run(Session(cfg, sub));
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitDomain;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitFailure;
    }
  }
  return kExitUsage;
}
