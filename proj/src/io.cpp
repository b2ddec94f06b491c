#include "chipletfp/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "chipletfp/core_model.hpp"
#include "chipletfp/costrel.hpp"
#include "json.hpp"

namespace chipletfp {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InputError("failed writing '" + path + "'");
}

namespace {

// Strict view of one JSON object: typed accessors plus a final unknown-key check.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw InputError(path_ + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& at(const std::string& key) {
    if (!has(key)) throw InputError(path_ + ": missing '" + key + "'");
    return j_.at(key);
  }

  double number(const std::string& key) { return as_number(at(key), sub(key)); }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::int64_t integer(const std::string& key) { return as_integer(at(key), sub(key)); }
  std::int64_t integer(const std::string& key, std::int64_t fallback) { return has(key) ? integer(key) : fallback; }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw InputError(sub(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) throw InputError(sub(key) + ": expected a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) { return has(key) ? string(key) : fallback; }

  const json& array(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array()) throw InputError(sub(key) + ": expected an array");
    return v;
  }

  std::string sub(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) throw InputError(path_ + ": unknown key '" + key + "'");
    }
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw InputError(path + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError(path + ": expected a finite number");
    return d;
  }

  static std::int64_t as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw InputError(path + ": expected an integer");
    return v.get<std::int64_t>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json parse_json(std::string_view document, const std::string& what) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

void check_version(Fields& f) {
  if (f.integer("version") != kDocumentVersion) throw InputError(f.sub("version") + ": must be 1");
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

std::vector<double> number_list(const json& arr, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(Fields::as_number(arr[i], index_path(path, i)));
  return out;
}

ojson bumps_json(const BumpField& b) {
  ojson hs = ojson::array();
  for (const Point& p : b.hotspots) hs.push_back({{"x_um", p.x}, {"y_um", p.y}});
  return {{"hotspots", hs}, {"margin_radius_um", b.margin_radius}};
}

BumpField parse_bumps(const json& j, const std::string& path) {
  Fields f(j, path);
  BumpField b;
  if (f.has("hotspots")) {
    const json& hs = f.array("hotspots");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      Fields h(hs[i], index_path(f.sub("hotspots"), i));
      b.hotspots.push_back({h.number("x_um"), h.number("y_um")});
      h.finish();
    }
  }
  b.margin_radius = f.number("margin_radius_um", 0.0);
  if (b.margin_radius < 0.0) throw InputError(f.sub("margin_radius_um") + ": must be >= 0");
  f.finish();
  return b;
}

const char* relation_name(PairRelation r) {
  switch (r) {
    case PairRelation::LeftOf:
      return "left_of";
    case PairRelation::Below:
      return "below";
    case PairRelation::RightOf:
      return "right_of";
    case PairRelation::Above:
      return "above";
  }
  return "left_of";
}

PairRelation parse_relation(const std::string& s, const std::string& path) {
  if (s == "left_of") return PairRelation::LeftOf;
  if (s == "below") return PairRelation::Below;
  if (s == "right_of") return PairRelation::RightOf;
  if (s == "above") return PairRelation::Above;
  throw InputError(path + ": unknown relation '" + s + "'");
}

Violation::Kind parse_violation_kind(const std::string& s, const std::string& path) {
  for (auto k : {Violation::Kind::Overlap, Violation::Kind::OutOfBoard, Violation::Kind::BumpClearance,
                 Violation::Kind::Warpage}) {
    if (s == to_string(k)) return k;
  }
  throw InputError(path + ": unknown violation kind '" + s + "'");
}

}  // namespace

FloorplanInstance parse_instance(std::string_view document) {
  const json j = parse_json(document, "instance document");
  Fields top(j, "instance");
  check_version(top);
  FloorplanInstance in;

  {
    Fields b(top.at("board"), "instance.board");
    in.board_w = b.number("W_um");
    in.board_h = b.number("H_um");
    b.finish();
  }

  const json& chips = top.array("chiplets");
  for (std::size_t i = 0; i < chips.size(); ++i) {
    Fields c(chips[i], index_path("instance.chiplets", i));
    ChipletDef d;
    d.id = static_cast<int>(c.integer("id"));
    d.name = c.string("name", "c" + std::to_string(d.id));
    d.width_o = c.number("width_um");
    d.height_o = c.number("height_um");
    d.function = c.string("function", "");
    c.finish();
    in.chiplets.push_back(std::move(d));
  }

  if (top.has("nets")) {
    const json& nets = top.array("nets");
    for (std::size_t i = 0; i < nets.size(); ++i) {
      const std::string path = index_path("instance.nets", i);
      Fields f(nets[i], path);
      Net net;
      net.id = static_cast<int>(f.integer("id", static_cast<std::int64_t>(i)));
      const json& eps = f.array("endpoints");
      for (std::size_t e = 0; e < eps.size(); ++e) {
        net.endpoints.push_back(static_cast<int>(Fields::as_integer(eps[e], index_path(path + ".endpoints", e))));
      }
      net.weight = f.number("weight", 1.0);
      f.finish();
      in.nets.push_back(std::move(net));
    }
  }

  if (top.has("bumps")) in.bumps = parse_bumps(top.at("bumps"), "instance.bumps");

  in.materials = default_materials(in.board_w > 0.0 ? in.board_w : 1.0, in.board_h > 0.0 ? in.board_h : 1.0);
  if (top.has("materials")) {
    Fields m(top.at("materials"), "instance.materials");
    MaterialParams& p = in.materials;
    p.t = m.number("t", p.t);
    p.delta_alpha = m.number("delta_alpha_per_K", p.delta_alpha);
    p.delta_T = m.number("delta_T_K", p.delta_T);
    p.lambda = m.number("lambda", p.lambda);
    p.D = m.number("D", p.D);
    p.k = m.number("k_per_um", p.k);
    p.l_x = m.number("l_x_um", p.l_x);
    p.l_y = m.number("l_y_um", p.l_y);
    const bool explicit_wpgt = m.has("wpgt_um");
    if (explicit_wpgt) {
      p.wpgt = m.number("wpgt_um");
    } else {
      p.wpgt = default_warpage_threshold(p);
    }
    m.finish();
  }

  if (top.has("costs")) {
    Fields c(top.at("costs"), "instance.costs");
    CostParams& p = in.costs;
    p.P0 = c.number("P0_per_cm2", p.P0);
    p.d0 = c.number("d0_per_cm2", p.d0);
    p.alpha_cluster = c.number("alpha", p.alpha_cluster);
    p.C_pack = c.number("C_pack", p.C_pack);
    p.C_sub = c.number("C_sub", p.C_sub);
    p.c_inter_per_area = c.number("c_inter_per_cm2", p.c_inter_per_area);
    p.C_bond = c.number("C_bond", p.C_bond);
    if (c.has("C_bond_per_chiplet")) p.C_bond_per_chiplet = number_list(c.array("C_bond_per_chiplet"), c.sub("C_bond_per_chiplet"));
    p.y1 = c.number("y1", p.y1);
    p.y2 = c.number("y2", p.y2);
    p.y3 = c.number("y3", p.y3);
    p.Y_pack = c.number("Y_pack", p.Y_pack);
    p.Y_bond = c.number("Y_bond", p.Y_bond);
    if (c.has("Y_chip")) {
      const json& ys = c.array("Y_chip");
      for (std::size_t i = 0; i < ys.size(); ++i) {
        if (ys[i].is_null()) {
          p.Y_chip.push_back(std::nullopt);
        } else {
          p.Y_chip.push_back(Fields::as_number(ys[i], index_path(c.sub("Y_chip"), i)));
        }
      }
    }
    c.finish();
  }

  if (top.has("weights")) {
    Fields w(top.at("weights"), "instance.weights");
    ObjectiveWeights& p = in.weights;
    p.beta1 = w.number("beta1", p.beta1);
    p.beta2 = w.number("beta2", p.beta2);
    p.beta3 = w.number("beta3", p.beta3);
    p.beta4 = w.number("beta4", p.beta4);
    p.gamma1 = w.number("gamma1", p.gamma1);
    w.finish();
    for (double v : {p.beta1, p.beta2, p.beta3, p.beta4, p.gamma1}) {
      if (v < 0.0) throw InputError("instance.weights: weights must be >= 0");
    }
  }

  in.latency = default_latency_table();
  if (top.has("latency_table")) {
    Fields t(top.at("latency_table"), "instance.latency_table");
    in.latency.breakpoints_mm = number_list(t.array("breakpoints_mm"), t.sub("breakpoints_mm"));
    in.latency.weights = number_list(t.array("weights_cycles"), t.sub("weights_cycles"));
    in.latency.base_cycles = t.number("base_cycles", in.latency.base_cycles);
    t.finish();
  }
  top.finish();

  check_latency_table(in.latency);
  check_instance(in);
  return in;
}

std::string write_instance(const FloorplanInstance& in) {
  ojson j;
  j["version"] = kDocumentVersion;
  j["board"] = {{"W_um", in.board_w}, {"H_um", in.board_h}};
  ojson chips = ojson::array();
  for (const ChipletDef& c : in.chiplets) {
    chips.push_back({{"id", c.id}, {"name", c.name}, {"width_um", c.width_o}, {"height_um", c.height_o},
                     {"function", c.function}});
  }
  j["chiplets"] = chips;
  ojson nets = ojson::array();
  for (const Net& n : in.nets) nets.push_back({{"id", n.id}, {"endpoints", n.endpoints}, {"weight", n.weight}});
  j["nets"] = nets;
  j["bumps"] = bumps_json(in.bumps);
  const MaterialParams& m = in.materials;
  j["materials"] = {{"t", m.t},        {"delta_alpha_per_K", m.delta_alpha}, {"delta_T_K", m.delta_T},
                    {"lambda", m.lambda}, {"D", m.D},                       {"k_per_um", m.k},
                    {"l_x_um", m.l_x},  {"l_y_um", m.l_y},                  {"wpgt_um", m.wpgt}};
  const CostParams& c = in.costs;
  ojson costs = {{"P0_per_cm2", c.P0}, {"d0_per_cm2", c.d0},   {"alpha", c.alpha_cluster},
                 {"C_pack", c.C_pack}, {"C_sub", c.C_sub},     {"c_inter_per_cm2", c.c_inter_per_area},
                 {"C_bond", c.C_bond}, {"y1", c.y1},           {"y2", c.y2},
                 {"y3", c.y3},         {"Y_pack", c.Y_pack},   {"Y_bond", c.Y_bond}};
  if (!c.C_bond_per_chiplet.empty()) costs["C_bond_per_chiplet"] = c.C_bond_per_chiplet;
  if (!c.Y_chip.empty()) {
    ojson ys = ojson::array();
    for (const auto& y : c.Y_chip) ys.push_back(y ? ojson(*y) : ojson(nullptr));
    costs["Y_chip"] = ys;
  }
  j["costs"] = costs;
  const ObjectiveWeights& w = in.weights;
  j["weights"] = {{"beta1", w.beta1}, {"beta2", w.beta2}, {"beta3", w.beta3}, {"beta4", w.beta4}, {"gamma1", w.gamma1}};
  j["latency_table"] = {{"breakpoints_mm", in.latency.breakpoints_mm},
                        {"weights_cycles", in.latency.weights},
                        {"base_cycles", in.latency.base_cycles}};
  return dump(j);
}

Workload parse_workload(std::string_view document, std::uint64_t seed) {
  const json j = parse_json(document, "workload document");
  Fields top(j, "workload");
  check_version(top);
  Workload w;
  if (top.has("flows")) {
    const json& flows = top.array("flows");
    for (std::size_t i = 0; i < flows.size(); ++i) {
      Fields f(flows[i], index_path("workload.flows", i));
      Flow fl;
      fl.src = static_cast<int>(f.integer("src"));
      fl.dst = static_cast<int>(f.integer("dst"));
      fl.packets = f.integer("packets");
      f.finish();
      w.flows.push_back(fl);
    }
  }
  if (top.has("generator")) {
    Fields g(top.at("generator"), "workload.generator");
    WorkloadGenerator gen;
    const std::string kind = g.string("kind");
    if (kind == "uniform") {
      gen.kind = WorkloadGenerator::Kind::Uniform;
    } else if (kind == "hotspot") {
      gen.kind = WorkloadGenerator::Kind::Hotspot;
    } else if (kind == "net_proportional") {
      gen.kind = WorkloadGenerator::Kind::NetProportional;
    } else {
      throw InputError("workload.generator.kind: unknown generator '" + kind + "'");
    }
    gen.total_packets = g.integer("total_packets");
    if (gen.total_packets < 0) throw InputError("workload.generator.total_packets: must be >= 0");
    gen.hot_chiplet = static_cast<int>(g.integer("hot_chiplet", gen.hot_chiplet));
    gen.hot_fraction = g.number("hot_fraction", gen.hot_fraction);
    gen.seed = seed;
    g.finish();
    w.generator = gen;
  }
  top.finish();
  return w;
}

SolverConfig parse_solver_config(std::string_view document) {
  const json j = parse_json(document, "solver config");
  Fields f(j, "config");
  check_version(f);
  SolverConfig cfg;
  if (f.has("seed")) {
    const json& s = f.at("seed");
    if (!s.is_number_unsigned()) throw InputError("config.seed: expected a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  cfg.initial_temperature = f.number("initial_temperature", cfg.initial_temperature);
  cfg.perf_initial_temperature = f.number("perf_initial_temperature", cfg.perf_initial_temperature);
  cfg.cooling_rate = f.number("cooling_rate", cfg.cooling_rate);
  cfg.temperature_steps = static_cast<int>(f.integer("temperature_steps", cfg.temperature_steps));
  cfg.iterations_per_temperature = static_cast<int>(f.integer("iterations_per_temperature", cfg.iterations_per_temperature));
  cfg.restarts = static_cast<int>(f.integer("restarts", cfg.restarts));
  cfg.threads = static_cast<int>(f.integer("threads", cfg.threads));
  if (f.has("moves")) {
    Fields m(f.at("moves"), "config.moves");
    cfg.moves.relation_flip = m.number("relation_flip", cfg.moves.relation_flip);
    cfg.moves.rotate = m.number("rotate", cfg.moves.rotate);
    cfg.moves.pair_swap = m.number("pair_swap", cfg.moves.pair_swap);
    m.finish();
  }
  if (f.has("penalties")) {
    Fields p(f.at("penalties"), "config.penalties");
    cfg.penalty_out_of_bounds = p.number("out_of_bounds", cfg.penalty_out_of_bounds);
    cfg.penalty_warpage = p.number("warpage", cfg.penalty_warpage);
    cfg.penalty_bump = p.number("bump", cfg.penalty_bump);
    p.finish();
  }
  cfg.exact_max_n = static_cast<int>(f.integer("exact_max_n", cfg.exact_max_n));
  if (f.has("enforce")) {
    Fields e(f.at("enforce"), "config.enforce");
    cfg.enforce.bumps = e.boolean("bumps", cfg.enforce.bumps);
    cfg.enforce.warpage = e.boolean("warpage", cfg.enforce.warpage);
    e.finish();
  }
  f.finish();
  check_solver_config(cfg);
  return cfg;
}

SolutionDocument make_solution(const FloorplanInstance& instance, const SolveReport& report) {
  SolutionDocument s;
  s.stage = report.stage;
  s.seed = report.seed;
  s.iterations = report.iterations;
  s.board_w = instance.board_w;
  s.board_h = instance.board_h;
  s.bumps = instance.bumps;
  for (const ChipletDef& c : instance.chiplets) s.names.push_back(c.name);
  s.placement = report.placement;
  if (report.order.size() == static_cast<int>(report.placement.size())) s.order = report.order;
  s.objective = report.objective;
  s.violations = report.violations;
  return s;
}

std::string write_solution(const SolutionDocument& s) {
  ojson j;
  j["version"] = kDocumentVersion;
  j["stage"] = s.stage;
  j["seed"] = s.seed;
  j["iterations"] = s.iterations;
  j["board"] = {{"W_um", s.board_w}, {"H_um", s.board_h}};
  j["bumps"] = bumps_json(s.bumps);
  ojson chips = ojson::array();
  for (std::size_t k = 0; k < s.placement.size(); ++k) {
    const PlacedChiplet& p = s.placement[k];
    chips.push_back({{"id", k},
                     {"name", k < s.names.size() ? s.names[k] : ""},
                     {"x_um", p.x},
                     {"y_um", p.y},
                     {"width_um", p.width},
                     {"height_um", p.height},
                     {"rotated", p.rotated}});
  }
  j["chiplets"] = chips;
  if (s.order) {
    ojson rel = ojson::array();
    const int n = s.order->size();
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) rel.push_back({{"i", a}, {"j", b}, {"relation", relation_name(s.order->relation(a, b))}});
    }
    j["relations"] = rel;
  }
  const ObjectiveBreakdown& o = s.objective;
  j["objective"] = {{"total", o.total},
                    {"hpwl_um", o.hpwl},
                    {"hpwl_unweighted_um", o.hpwl_unweighted},
                    {"package_area_um2", o.package_area},
                    {"warpage_x_um", o.warpage_x},
                    {"warpage_y_um", o.warpage_y},
                    {"cost_2_5d", o.cost_2_5d},
                    {"com_cost", o.com_cost},
                    {"includes_com_cost", o.perf}};
  ojson viol = ojson::array();
  for (const Violation& v : s.violations) {
    viol.push_back({{"kind", to_string(v.kind)},
                    {"first", v.first},
                    {"second", v.second},
                    {"magnitude", v.magnitude},
                    {"detail", v.detail}});
  }
  j["violations"] = viol;
  return dump(j);
}

SolutionDocument parse_solution(std::string_view document) {
  const json j = parse_json(document, "solution document");
  Fields top(j, "solution");
  check_version(top);
  SolutionDocument s;
  s.stage = top.string("stage");
  if (top.has("seed")) {
    const json& v = top.at("seed");
    if (!v.is_number_unsigned()) throw InputError("solution.seed: expected a nonnegative integer");
    s.seed = v.get<std::uint64_t>();
  }
  s.iterations = top.integer("iterations", 0);
  {
    Fields b(top.at("board"), "solution.board");
    s.board_w = b.number("W_um");
    s.board_h = b.number("H_um");
    b.finish();
  }
  if (top.has("bumps")) s.bumps = parse_bumps(top.at("bumps"), "solution.bumps");

  const json& chips = top.array("chiplets");
  for (std::size_t i = 0; i < chips.size(); ++i) {
    Fields c(chips[i], index_path("solution.chiplets", i));
    if (c.integer("id") != static_cast<std::int64_t>(i)) {
      throw InputError(c.sub("id") + ": chiplets must be listed in id order starting at 0");
    }
    s.names.push_back(c.string("name", ""));
    PlacedChiplet p;
    p.x = c.number("x_um");
    p.y = c.number("y_um");
    p.width = c.number("width_um");
    p.height = c.number("height_um");
    p.rotated = c.boolean("rotated", false);
    if (!(p.width > 0.0) || !(p.height > 0.0)) throw InputError(c.sub("width_um") + ": extents must be positive");
    c.finish();
    s.placement.push_back(p);
  }

  if (top.has("relations")) {
    const int n = static_cast<int>(s.placement.size());
    RelativeOrder order(n);
    for (int k = 0; k < n; ++k) order.set_rotated(k, s.placement[k].rotated);
    std::vector<char> set(order.pair_count(), 0);
    const json& rel = top.array("relations");
    for (std::size_t r = 0; r < rel.size(); ++r) {
      const std::string path = index_path("solution.relations", r);
      Fields f(rel[r], path);
      const auto a = f.integer("i");
      const auto b = f.integer("j");
      if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw InputError(path + ": invalid chiplet pair");
      const PairRelation pr = parse_relation(f.string("relation"), f.sub("relation"));
      f.finish();
      const auto lo = std::min(a, b);
      const auto hi = std::max(a, b);
      const std::size_t idx = static_cast<std::size_t>(lo * (2 * n - lo - 1) / 2 + (hi - lo - 1));
      if (set[idx]) throw InputError(path + ": pair listed twice");
      set[idx] = 1;
      order.set_relation(static_cast<int>(a), static_cast<int>(b), pr);
    }
    for (char c : set) {
      if (!c) throw InputError("solution.relations: every chiplet pair needs a relation");
    }
    s.order = order;
  }

  if (top.has("objective")) {
    Fields o(top.at("objective"), "solution.objective");
    ObjectiveBreakdown& b = s.objective;
    b.total = o.number("total", 0.0);
    b.hpwl = o.number("hpwl_um", 0.0);
    b.hpwl_unweighted = o.number("hpwl_unweighted_um", 0.0);
    b.package_area = o.number("package_area_um2", 0.0);
    b.warpage_x = o.number("warpage_x_um", 0.0);
    b.warpage_y = o.number("warpage_y_um", 0.0);
    b.cost_2_5d = o.number("cost_2_5d", 0.0);
    b.com_cost = o.number("com_cost", 0.0);
    b.perf = o.boolean("includes_com_cost", false);
    o.finish();
  }
  if (top.has("violations")) {
    const json& vs = top.array("violations");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Fields f(vs[i], index_path("solution.violations", i));
      Violation v;
      v.kind = parse_violation_kind(f.string("kind"), f.sub("kind"));
      v.first = static_cast<int>(f.integer("first", -1));
      v.second = static_cast<int>(f.integer("second", -1));
      v.magnitude = f.number("magnitude", 0.0);
      v.detail = f.string("detail", "");
      f.finish();
      s.violations.push_back(std::move(v));
    }
  }
  top.finish();
  return s;
}

void check_solution_matches(const FloorplanInstance& instance, const SolutionDocument& s) {
  if (s.placement.size() != instance.size()) {
    throw InputError("solution has " + std::to_string(s.placement.size()) + " chiplets but the instance has " +
                     std::to_string(instance.size()));
  }
  for (std::size_t k = 0; k < s.placement.size(); ++k) {
    const ChipletDef& d = instance.chiplets[k];
    const PlacedChiplet& p = s.placement[k];
    const bool ok = p.rotated ? (p.width == d.height_o && p.height == d.width_o)
                              : (p.width == d.width_o && p.height == d.height_o);
    if (!ok) throw InputError("solution extents of chiplet " + std::to_string(k) + " do not match the instance");
  }
}

PoolDocument parse_pool(std::string_view document) {
  const json j = parse_json(document, "pool document");
  Fields top(j, "pool");
  check_version(top);
  PoolDocument p;
  p.a_soc = top.number("a_soc_um2");
  p.bounds.a_min = top.number("a_min_um2");
  p.bounds.a_max = top.number("a_max_um2");
  const json& entries = top.array("entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = index_path("pool.entries", i);
    Fields f(entries[i], path);
    PoolEntry e;
    e.name = f.string("name");
    e.area = f.number("area_um2");
    e.function = f.string("function", "");
    e.combined = f.boolean("combined", false);
    e.undersized = f.boolean("undersized", false);
    if (f.has("provenance")) {
      const json& prov = f.array("provenance");
      for (std::size_t k = 0; k < prov.size(); ++k) {
        if (!prov[k].is_string()) throw InputError(index_path(path + ".provenance", k) + ": expected a string");
        e.provenance.push_back(prov[k].get<std::string>());
      }
    }
    ChipletDef d;
    d.id = static_cast<int>(i);
    d.name = e.name;
    d.function = e.function;
    d.width_o = f.number("width_um");
    d.height_o = f.number("height_um");
    f.finish();
    p.entries.push_back(std::move(e));
    p.chiplets.push_back(std::move(d));
  }
  top.finish();
  return p;
}

std::string write_pool(const PoolDocument& p) {
  ojson j;
  j["version"] = kDocumentVersion;
  j["a_soc_um2"] = p.a_soc;
  j["a_min_um2"] = p.bounds.a_min;
  j["a_max_um2"] = p.bounds.a_max;
  ojson entries = ojson::array();
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    const PoolEntry& e = p.entries[i];
    ojson item = {{"name", e.name},
                  {"area_um2", e.area},
                  {"function", e.function},
                  {"combined", e.combined},
                  {"undersized", e.undersized},
                  {"provenance", e.provenance}};
    if (i < p.chiplets.size()) {
      item["width_um"] = p.chiplets[i].width_o;
      item["height_um"] = p.chiplets[i].height_o;
    }
    entries.push_back(item);
  }
  j["entries"] = entries;
  return dump(j);
}

std::string write_frequency_csv(const FrequencyMatrix& freq) {
  std::ostringstream out;
  out << "id";
  for (int j = 0; j < freq.size(); ++j) out << ',' << j;
  out << '\n';
  for (int i = 0; i < freq.size(); ++i) {
    out << i;
    for (int j = 0; j < freq.size(); ++j) out << ',' << freq.at(i, j);
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::int64_t parse_cell(const std::string& cell, int row, int col) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size()) {
    throw InputError("frequency csv row " + std::to_string(row) + " column " + std::to_string(col) +
                     ": expected an integer, got '" + cell + "'");
  }
  return v;
}

}  // namespace

FrequencyMatrix parse_frequency_csv(std::string_view document) {
  std::istringstream in{std::string(document)};
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty() || rows[0].empty() || rows[0][0] != "id") throw InputError("frequency csv: header must start with 'id'");
  const int n = static_cast<int>(rows[0].size()) - 1;
  for (int j = 0; j < n; ++j) {
    if (rows[0][j + 1] != std::to_string(j)) throw InputError("frequency csv: header columns must be 0..n-1");
  }
  if (static_cast<int>(rows.size()) != n + 1) {
    throw InputError("frequency csv: expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size() - 1));
  }
  std::vector<std::int64_t> cells(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const auto& r = rows[i + 1];
    if (static_cast<int>(r.size()) != n + 1) throw InputError("frequency csv row " + std::to_string(i) + ": wrong column count");
    if (r[0] != std::to_string(i)) throw InputError("frequency csv row " + std::to_string(i) + ": id out of order");
    for (int j = 0; j < n; ++j) {
      const std::int64_t v = parse_cell(r[j + 1], i, j);
      if (v < 0) throw InputError("frequency csv: negative count at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      cells[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  FrequencyMatrix f(n);
  for (int i = 0; i < n; ++i) {
    if (cells[static_cast<std::size_t>(i) * n + i] != 0) throw InputError("frequency csv: diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      const std::int64_t a = cells[static_cast<std::size_t>(i) * n + j];
      if (a != cells[static_cast<std::size_t>(j) * n + i]) {
        throw InputError("frequency csv: matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (a) f.add(i, j, a);
    }
  }
  return f;
}

namespace {

StageMetrics metrics_of(const SolveReport& r, double com, double cycles) {
  return {r.objective.hpwl, r.objective.package_area, r.objective.warpage_x + r.objective.warpage_y, com, cycles};
}

std::optional<double> ratio(double base, double ours) {
  if (base == 0.0) return std::nullopt;
  return (ours - base) / base;
}

void fill_ratios(Comparison& c) {
  c.ratio_hpwl = ratio(c.primary.hpwl, c.perf.hpwl);
  c.ratio_package_area = ratio(c.primary.package_area, c.perf.package_area);
  c.ratio_wpg = ratio(c.primary.wpg, c.perf.wpg);
  c.ratio_com_cost = ratio(c.primary.com_cost, c.perf.com_cost);
  c.ratio_cycles = ratio(c.primary.cycles, c.perf.cycles);
}

ojson metrics_json(const StageMetrics& m) {
  return {{"hpwl_um", m.hpwl},
          {"package_area_um2", m.package_area},
          {"wpg_um", m.wpg},
          {"com_cost", m.com_cost},
          {"model_cycles", m.cycles}};
}

ojson opt_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

StageMetrics parse_metrics(const json& j, const std::string& path) {
  Fields f(j, path);
  StageMetrics m{f.number("hpwl_um"), f.number("package_area_um2"), f.number("wpg_um"), f.number("com_cost"),
                 f.number("model_cycles")};
  f.finish();
  return m;
}

}  // namespace

Comparison make_comparison(const FlowResult& flow) {
  Comparison c;
  c.primary = metrics_of(flow.primary, flow.primary_com_cost, flow.primary_cycles);
  c.perf = metrics_of(flow.perf, flow.perf.objective.com_cost, flow.perf_cycles);
  fill_ratios(c);
  return c;
}

std::string write_comparison(const Comparison& c) {
  ojson j;
  j["version"] = kDocumentVersion;
  j["primary"] = metrics_json(c.primary);
  j["perf"] = metrics_json(c.perf);
  j["ratio"] = {{"hpwl_um", opt_json(c.ratio_hpwl)},
                {"package_area_um2", opt_json(c.ratio_package_area)},
                {"wpg_um", opt_json(c.ratio_wpg)},
                {"com_cost", opt_json(c.ratio_com_cost)},
                {"model_cycles", opt_json(c.ratio_cycles)}};
  return dump(j);
}

Comparison parse_comparison(std::string_view document) {
  const json j = parse_json(document, "comparison document");
  Fields top(j, "comparison");
  check_version(top);
  Comparison c;
  c.primary = parse_metrics(top.at("primary"), "comparison.primary");
  c.perf = parse_metrics(top.at("perf"), "comparison.perf");
  Fields r(top.at("ratio"), "comparison.ratio");
  auto opt = [&](const std::string& key) -> std::optional<double> {
    const json& v = r.at(key);
    if (v.is_null()) return std::nullopt;
    return Fields::as_number(v, r.sub(key));
  };
  c.ratio_hpwl = opt("hpwl_um");
  c.ratio_package_area = opt("package_area_um2");
  c.ratio_wpg = opt("wpg_um");
  c.ratio_com_cost = opt("com_cost");
  c.ratio_cycles = opt("model_cycles");
  r.finish();
  top.finish();
  return c;
}

std::string comparison_table(const Comparison& c) {
  std::ostringstream out;
  auto header = [&] {
    out << std::left << std::setw(8) << "" << std::right << std::setw(16) << "HPWL(um)" << std::setw(18) << "PA(um^2)"
        << std::setw(14) << "WPG(um)" << std::setw(16) << "ComCost" << std::setw(16) << "Cycles" << '\n';
  };
  auto row = [&](const char* name, const StageMetrics& m) {
    out << std::left << std::setw(8) << name << std::right << std::fixed << std::setprecision(2) << std::setw(16)
        << m.hpwl << std::setw(18) << m.package_area << std::setprecision(6) << std::setw(14) << m.wpg
        << std::setprecision(2) << std::setw(16) << m.com_cost << std::setprecision(0) << std::setw(16) << m.cycles
        << '\n';
  };
  auto cell = [&](const std::optional<double>& v, int width) {
    std::ostringstream s;
    if (v) {
      s << std::showpos << std::fixed << std::setprecision(2) << 100.0 * *v << '%';
    } else {
      s << "n/a";
    }
    out << std::setw(width) << s.str();
  };
  header();
  row("primary", c.primary);
  row("perf", c.perf);
  out << std::left << std::setw(8) << "ratio" << std::right;
  cell(c.ratio_hpwl, 16);
  cell(c.ratio_package_area, 18);
  cell(c.ratio_wpg, 14);
  cell(c.ratio_com_cost, 16);
  cell(c.ratio_cycles, 16);
  out << '\n';
  return out.str();
}

}  // namespace chipletfp
