#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acp/acp.hpp"

namespace acp::cli {

namespace {

using json = nlohmann::ordered_json;

struct Config {
  std::string command;
  std::string root = "-6,11,14,15";
  std::string quadruple;
  i64 X = 10000;
  std::vector<i64> grid;
  i64 lo = 0, hi = 0;
  i64 m = 7, ell = 0;
  i64 seed = 0;
  i64 bmax = 0;
  std::vector<i64> moduli;
  i64 residue_root_max = 40;
  int workers = 1;
  std::string format = "json";
  std::string output;
  std::string csv;
  std::string coloring = "prime";
  double c2 = 0;
  bool census = false;
  bool shortcut = true;
  bool list = false;
  bool admissible_only = false;
  i64 cap = 1000000;
};

json config_json(const Config& c) {
  json j;
  j["command"] = c.command;
  j["root"] = c.root;
  if (!c.quadruple.empty()) j["quadruple"] = c.quadruple;
  j["X"] = c.X;
  j["grid"] = c.grid;
  j["lo"] = c.lo;
  j["hi"] = c.hi;
  j["m"] = c.m;
  j["ell"] = c.ell;
  j["seed_curvature"] = c.seed;
  j["bmax"] = c.bmax;
  j["moduli"] = c.moduli;
  j["residue_root_max"] = c.residue_root_max;
  j["workers"] = c.workers;
  j["format"] = c.format;
  j["memory_budget_mb"] = memory_budget_bytes() >> 20;
  j["cap"] = c.cap;
  return j;
}

json quad_json(const Quadruple& q) { return json::array({q[0], q[1], q[2], q[3]}); }

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// A result is either a JSON object or CSV rows; both carry the resolved config.
struct Output {
  json result = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write(const Config& c, const Output& o, std::ostream& out) {
  std::ofstream file;
  std::ostream* dst = &out;
  if (!c.output.empty()) {
    file.open(c.output, std::ios::binary);
    if (!file) fail(ErrorKind::IOError, "cannot open " + c.output);
    dst = &file;
  }
  if (c.format == "json" || o.header.empty()) {
    json j;
    j["config"] = config_json(c);
    j["result"] = o.result;
    *dst << j.dump(2) << "\n";
  } else {
    *dst << "# " << config_json(c).dump() << "\n";
    for (size_t k = 0; k < o.header.size(); ++k) *dst << (k ? "," : "") << o.header[k];
    *dst << "\n";
    for (const auto& r : o.rows) {
      for (size_t k = 0; k < r.size(); ++k) *dst << (k ? "," : "") << r[k];
      *dst << "\n";
    }
  }
  if (!*dst) fail(ErrorKind::IOError, "write failed");
}

std::vector<i64> grid_or_X(const Config& c) { return c.grid.empty() ? std::vector<i64>{c.X} : c.grid; }

Output cmd_reduce(const Config& c) {
  Reduction r = reduce_to_root(parse_quadruple(c.quadruple));
  Output o;
  o.result["root"] = format_quadruple(r.root);
  o.result["word"] = format_word(r.word);
  o.header = {"root", "word"};
  o.rows.push_back({quoted(format_quadruple(r.root)), quoted(format_word(r.word))});
  return o;
}

Output cmd_enumerate(const Config& c, const Quadruple& root) {
  Output o;
  if (c.list) {
    o.header = {"id", "curvature", "parent1", "parent2", "parent3", "depth"};
    json arr = json::array();
    enumerate_orbit(root, c.X, [&](const CircleRecord& r, const Quadruple&) {
      std::vector<std::string> row{std::to_string(r.id), std::to_string(r.curvature)};
      for (int k = 0; k < 3; ++k)
        row.push_back(k < r.nparents ? std::to_string(r.parents[static_cast<size_t>(k)]) : "");
      row.push_back(std::to_string(r.depth));
      o.rows.push_back(row);
      arr.push_back({{"id", r.id}, {"curvature", r.curvature}, {"depth", r.depth}});
    });
    o.result["circles"] = arr;
    return o;
  }
  o.header = {"X", "circles", "quadruples"};
  json arr = json::array();
  for (i64 X : grid_or_X(c)) {
    EnumerationReport r = count_circles(root, X, c.workers);
    o.rows.push_back({std::to_string(X), std::to_string(r.circles), std::to_string(r.quadruples)});
    arr.push_back({{"X", X}, {"circles", r.circles}, {"quadruples", r.quadruples}});
  }
  if (c.grid.size() >= 3) {
    std::vector<std::pair<double, double>> s;
    for (const auto& e : arr) s.push_back({e["X"].get<double>(), e["circles"].get<double>()});
    o.result["exponent"] = fit_exponent(s);
  }
  o.result["counts"] = arr;
  return o;
}

Output cmd_distinct(const Config& c, const Quadruple& root) {
  Output o;
  o.header = {"X", "distinct", "circles"};
  json arr = json::array();
  for (i64 X : grid_or_X(c)) {
    EnumerationReport r = count_distinct(root, X, c.workers);
    o.rows.push_back({std::to_string(X), std::to_string(r.distinct), std::to_string(r.circles)});
    arr.push_back({{"X", X}, {"distinct", r.distinct}, {"circles", r.circles}});
  }
  o.result["counts"] = arr;
  return o;
}

Output histogram_output(const MultiplicityWindow& w, const std::optional<ResidueClassSet>& classes) {
  Output o;
  auto h = histogram(w, classes);
  o.header = {"multiplicity", "frequency"};
  json hj = json::array();
  for (auto [k, f] : h) {
    o.rows.push_back({std::to_string(k), std::to_string(f)});
    hj.push_back({{"multiplicity", k}, {"frequency", f}});
  }
  o.result["lo"] = w.lo;
  o.result["hi"] = w.hi;
  o.result["histogram"] = hj;
  o.result["mode"] = histogram_mode(h);
  return o;
}

Output cmd_window(const Config& c, const Quadruple& root) {
  if (c.hi <= c.lo) fail(ErrorKind::ConstraintViolation, "--hi must exceed --lo");
  std::optional<ResidueClassSet> classes;
  if (c.admissible_only) classes = admissible_residues(root, 24);
  return histogram_output(multiplicity_window(root, c.lo, c.hi, c.workers), classes);
}

json snapshot_json(const ComponentSnapshot& s) {
  json j;
  j["bound"] = s.bound;
  j["members"] = s.members.size();
  j["thickening"] = s.thickening.size();
  j["smallest_members"] = std::vector<i64>(s.member_curvatures.begin(),
                                           s.member_curvatures.begin() +
                                               static_cast<std::ptrdiff_t>(std::min<size_t>(20, s.member_curvatures.size())));
  j["touches_root"] = s.touches_root;
  if (s.root_quadruple) j["root_quadruple"] = quad_json(*s.root_quadruple);
  j["root_valid"] = s.root_valid;
  return j;
}

Output cmd_components(const Config& c, const Quadruple& root) {
  Output o;
  if (!c.census) {
    ComponentSnapshot s = extract_component(root, c.seed, c.X);
    o.result = snapshot_json(s);
    o.header = {"curvature", "role"};
    for (i64 v : s.member_curvatures) o.rows.push_back({std::to_string(v), "member"});
    for (i64 v : s.thickening_curvatures) o.rows.push_back({std::to_string(v), "thickening"});
    return o;
  }
  Census cs = component_census(root, c.X, c.moduli, c.residue_root_max);
  o.header = {"label", "smallest", "members", "prime_root", "birth", "word"};
  json arr = json::array();
  for (const auto& s : cs.components) {
    if (s.members == 0) continue;
    o.rows.push_back({std::to_string(s.label), std::to_string(s.smallest), std::to_string(s.members),
                      s.prime_root ? "1" : "0", quoted(format_quadruple(s.birth)), quoted(format_word(s.word))});
    json e{{"label", s.label},     {"smallest", s.smallest},         {"members", s.members},
           {"prime_root", s.prime_root}, {"birth", quad_json(s.birth)}, {"word", s.word}};
    auto it = cs.residues.find(s.label);
    if (it != cs.residues.end()) {
      json cov = json::object();
      for (const auto& set : it->second) {
        Coverage cv = residue_coverage(set, units_mod(set.modulus()));
        cov[std::to_string(set.modulus())] = {{"present", set.size()}, {"missing", cv.missing}};
      }
      e["unit_coverage"] = cov;
    }
    arr.push_back(e);
  }
  o.result["largest"] = cs.largest();
  o.result["label_conflicts"] = cs.label_conflicts;
  o.result["components"] = arr;
  return o;
}

Output cmd_thicken(const Config& c, const Quadruple& root) {
  ScanOptions opt;
  opt.grid = grid_or_X(c);
  opt.lo = c.lo;
  opt.hi = c.hi;
  opt.moduli = c.moduli;
  ComponentTarget target;
  if (c.seed) {
    CircleLocation loc = locate_circle(root, c.seed);
    Reduction r = reduce_to_root(loc.birth);
    if (r.root != root) fail(ErrorKind::InconsistentCase, "seed does not reduce to the root");
    target.root_component = loc.id < 4;
    Word w(r.word.rbegin(), r.word.rend());
    target.word = w;
  }
  ComponentScan s = scan_component(root, target, opt);
  Output o;
  o.header = {"X", "members", "thickened"};
  json arr = json::array();
  for (size_t k = 0; k < s.grid.size(); ++k) {
    o.rows.push_back({std::to_string(s.grid[k]), std::to_string(s.members[k]), std::to_string(s.thickened[k])});
    arr.push_back({{"X", s.grid[k]}, {"members", s.members[k]}, {"thickened", s.thickened[k]}});
  }
  o.result["counts"] = arr;
  o.result["nodes"] = s.nodes;
  if (c.hi > c.lo) {
    Output h = histogram_output(s.window, std::nullopt);
    o.result["histogram"] = h.result["histogram"];
    o.result["mode"] = h.result["mode"];
  }
  return o;
}

Output cmd_roots(const Config& c, const Quadruple& root) {
  RootAsymptotics r = root_asymptotics(root, grid_or_X(c), c.c2, c.workers);
  Output o;
  o.header = {"X", "N_root", "Sigma1", "Sigma2", "C_full", "f"};
  json arr = json::array();
  char buf[32];
  for (size_t k = 0; k < r.counts.grid.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.9f", r.f[k]);
    o.rows.push_back({std::to_string(r.counts.grid[k]), std::to_string(r.counts.nroot[k]),
                      std::to_string(r.counts.sigma1[k]), std::to_string(r.counts.sigma2[k]),
                      std::to_string(r.counts.circles[k]), buf});
    arr.push_back({{"X", r.counts.grid[k]},
                   {"N_root", r.counts.nroot[k]},
                   {"Sigma1", r.counts.sigma1[k]},
                   {"Sigma2", r.counts.sigma2[k]},
                   {"C_full", r.counts.circles[k]},
                   {"f", r.f[k]}});
  }
  o.result["counts"] = arr;
  return o;
}

Output cmd_residues(const Config& c, const Quadruple& root) {
  ResidueClassSet s = admissible_residues(root, c.m);
  Output o;
  o.result["modulus"] = c.m;
  o.result["admissible"] = s.members();
  o.result["mod8_case"] = mod8_name(mod8_case(root));
  o.header = {"residue"};
  for (i64 r : s.members()) o.rows.push_back({std::to_string(r)});
  return o;
}

Output cmd_walk(const Config& c, const Quadruple& root) {
  CircleLocation loc = locate_circle(root, c.seed);
  GeodesicCaps caps;
  caps.tangent_cap = c.cap;
  caps.pinch_cap = c.cap;
  caps.allow_shortcut = c.shortcut;
  Geodesic g = core_geodesic(loc.birth, loc.slot, c.ell, c.m, caps);
  if (!validate_geodesic(g)) fail(ErrorKind::InconsistentCase, "geodesic failed validation");
  Output o;
  o.result["word"] = g.word;
  json steps = json::array();
  for (const auto& s : g.steps) steps.push_back({{"curvature", s.curvature}, {"quadruple", quad_json(s.quad)}});
  o.result["steps"] = steps;
  o.result["core"] = g.core;
  o.result["conditional_on"] = g.conditional_on ? json(*g.conditional_on) : json(nullptr);
  o.result["terminal_residue"] = mod(g.steps.back().curvature, c.m);
  return o;
}

Output cmd_kappa2(const Config& c, const Quadruple& root) {
  CircleLocation loc = locate_circle(root, c.seed);
  i64 bmax = c.bmax ? c.bmax : std::max<i64>(3, static_cast<i64>(std::sqrt(static_cast<double>(c.X))));
  Kappa2 k = two_layer_kappa2(loc.birth, loc.slot, bmax, c.X);
  double shape = static_cast<double>(c.X) / std::sqrt(std::log(std::log(static_cast<double>(c.X))));
  Output o;
  o.result["bmax"] = bmax;
  o.result["layer1"] = k.layer1.size();
  o.result["distinct"] = k.distinct;
  o.result["nonpositive"] = k.nonpositive;
  o.result["total"] = k.total;
  o.result["ratio_to_shape"] = static_cast<double>(k.distinct) / shape;
  return o;
}

Output cmd_stats(const Config& c, const Quadruple& root) {
  std::vector<i64> grid = grid_or_X(c);
  GrowthTable t = growth_table(root, ComponentTarget{}, grid);
  RootCounts rc = count_prime_roots_series(root, grid, c.workers);
  Output o;
  o.header = {"X", "Cpr", "Cth", "pi", "Cpr_over_pi", "Cth_over_X", "psi_over_Cfull", "pairlog_over_Cfull"};
  json arr = json::array();
  char b1[32], b2[32], b3[32], b4[32];
  for (size_t k = 0; k < t.rows.size(); ++k) {
    const auto& r = t.rows[k];
    double cf = static_cast<double>(rc.circles[k]);
    std::snprintf(b1, sizeof b1, "%.9f", r.cpr_over_pi());
    std::snprintf(b2, sizeof b2, "%.9f", r.cth_over_x());
    std::snprintf(b3, sizeof b3, "%.9f", rc.psi[k] / cf);
    std::snprintf(b4, sizeof b4, "%.9f", rc.pair_log[k] / cf);
    o.rows.push_back({std::to_string(r.X), std::to_string(r.members), std::to_string(r.thickened),
                      std::to_string(r.pi), b1, b2, b3, b4});
    arr.push_back({{"X", r.X},
                   {"Cpr", r.members},
                   {"Cth", r.thickened},
                   {"pi", r.pi},
                   {"Cpr_over_pi", r.cpr_over_pi()},
                   {"Cth_over_X", r.cth_over_x()},
                   {"psi_over_Cfull", rc.psi[k] / cf},
                   {"pairlog_over_Cfull", rc.pair_log[k] / cf}});
  }
  o.result["rows"] = arr;
  if (t.fit) o.result["fit"] = {{"c", t.fit->c}, {"alpha", t.fit->alpha}};
  return o;
}

Output cmd_render(const Config& c, const Quadruple& root) {
  if (c.output.empty()) fail(ErrorKind::IOError, "render needs --output");
  std::vector<PlacedCircle> placed = place_circles(root, c.X);
  double worst = max_residual(placed);
  if (worst > 1e-6) fail(ErrorKind::PlacementUnavailable, "tangency residual too large");
  Coloring col;
  std::optional<ComponentSnapshot> snap;
  if (c.coloring == "residue") {
    col.kind = Coloring::Kind::ResidueMod;
    col.m = c.m;
    if (c.seed) {  // color only the circles tangent to the seed
      CircleLocation loc = locate_circle(root, c.seed);
      for (const auto& p : placed)
        for (int k = 0; k < p.nparents; ++k)
          if (p.parents[static_cast<size_t>(k)] == loc.id) col.focus.push_back(p.id);
      for (const auto& p : placed)
        if (p.id == loc.id)
          for (int k = 0; k < p.nparents; ++k) col.focus.push_back(p.parents[static_cast<size_t>(k)]);
      if (loc.id < 4)
        for (i64 k = 0; k < 4; ++k)
          if (k != loc.id) col.focus.push_back(k);
      std::sort(col.focus.begin(), col.focus.end());
      col.focus.erase(std::unique(col.focus.begin(), col.focus.end()), col.focus.end());
    }
  } else if (c.coloring == "component") {
    col.kind = Coloring::Kind::Component;
    snap = extract_component(root, c.seed, c.X);
    col.snapshot = &*snap;
  } else {
    col.kind = Coloring::Kind::PrimeVsComposite;
  }
  emit_svg(placed, col, c.output);
  if (!c.csv.empty()) {
    std::ofstream f(c.csv, std::ios::binary);
    if (!f) fail(ErrorKind::IOError, "cannot open " + c.csv);
    f << placement_csv(placed, col);
  }
  Output o;
  o.result["circles"] = placed.size();
  o.result["max_residual"] = worst;
  o.result["svg"] = c.output;
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime components of integral Apollonian circle packings"};
  app.require_subcommand(1, 1);
  Config c;

  auto add_root = [&](CLI::App* s) { s->add_option("--root", c.root, "root quadruple a,b,c,d"); };
  auto add_X = [&](CLI::App* s) { s->add_option("--X", c.X, "curvature bound"); };
  auto add_grid = [&](CLI::App* s) { s->add_option("--grid", c.grid, "ascending bounds")->delimiter(','); };
  auto add_workers = [&](CLI::App* s) { s->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1, 1024)); };
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--output", c.output, "output path (default stdout)");
  };
  auto add_seed = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--seed-curvature", c.seed, "curvature of the seed circle");
    if (required) opt->required();
  };

  auto* reduce = app.add_subcommand("reduce", "reduce a quadruple to its root");
  reduce->add_option("--quadruple", c.quadruple, "a,b,c,d")->required();
  add_format(reduce);

  auto* enumerate = app.add_subcommand("enumerate", "count circles with curvature <= X");
  auto* distinct = app.add_subcommand("distinct", "count distinct curvatures <= X");
  for (auto* s : {enumerate, distinct}) {
    add_root(s);
    add_X(s);
    add_grid(s);
    add_workers(s);
    add_format(s);
  }
  enumerate->add_flag("--list", c.list, "list every circle");

  auto* window = app.add_subcommand("window", "multiplicity histogram over [lo, hi)");
  add_root(window);
  window->add_option("--lo", c.lo)->required();
  window->add_option("--hi", c.hi)->required();
  window->add_flag("--admissible-only", c.admissible_only, "only curvatures in admissible classes mod 24");
  add_workers(window);
  add_format(window);

  auto* components = app.add_subcommand("components", "extract one prime component, or list all");
  add_root(components);
  add_X(components);
  add_seed(components, false);
  components->add_flag("--census", c.census, "summarize every component");
  components->add_option("--moduli", c.moduli, "residue moduli for the census")->delimiter(',');
  components->add_option("--residue-root-max", c.residue_root_max, "track residues of components rooted below this");
  add_format(components);

  auto* thicken = app.add_subcommand("thicken", "follow one thickened component over a grid");
  add_root(thicken);
  add_X(thicken);
  add_grid(thicken);
  add_seed(thicken, false);
  thicken->add_option("--lo", c.lo);
  thicken->add_option("--hi", c.hi);
  add_format(thicken);

  auto* roots = app.add_subcommand("roots-count", "count prime component roots");
  add_root(roots);
  add_X(roots);
  add_grid(roots);
  add_workers(roots);
  roots->add_option("--c2", c.c2, "second-order constant c''");
  add_format(roots);

  auto* residues = app.add_subcommand("residues", "admissible residues of the packing");
  add_root(residues);
  residues->add_option("--m", c.m)->check(CLI::Range(i64{1}, i64{150}));
  add_format(residues);

  auto* walk = app.add_subcommand("walk", "core geodesic to a residue class");
  add_root(walk);
  walk->add_option("--m", c.m)->required();
  walk->add_option("--ell", c.ell)->required();
  add_seed(walk, true);
  walk->add_option("--cap", c.cap, "search cap");
  walk->add_flag("!--no-shortcut", c.shortcut, "skip the distance-one search");
  add_format(walk);

  auto* kappa2 = app.add_subcommand("kappa2", "two-layer curvature set of a circle");
  add_root(kappa2);
  add_X(kappa2);
  add_seed(kappa2, true);
  kappa2->add_option("--bmax", c.bmax, "largest first-layer prime (default sqrt X)");
  add_format(kappa2);

  auto* stats = app.add_subcommand("stats", "growth ratios and prime sums of the root component");
  add_root(stats);
  add_X(stats);
  add_grid(stats);
  add_workers(stats);
  add_format(stats);

  auto* render = app.add_subcommand("render", "SVG of the packing");
  add_root(render);
  add_X(render);
  add_seed(render, false);
  render->add_option("--coloring", c.coloring)->check(CLI::IsMember({"prime", "residue", "component"}));
  render->add_option("--m", c.m);
  render->add_option("--output", c.output)->required();
  render->add_option("--csv", c.csv, "also write curvature,x,y,r,tag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    if (!c.grid.empty() && !std::is_sorted(c.grid.begin(), c.grid.end()))
      fail(ErrorKind::ConstraintViolation, "--grid must ascend");
    Quadruple root = parse_quadruple(c.root);
    Output o;
    if (c.command == "reduce") o = cmd_reduce(c);
    else if (c.command == "enumerate") o = cmd_enumerate(c, root);
    else if (c.command == "distinct") o = cmd_distinct(c, root);
    else if (c.command == "window") o = cmd_window(c, root);
    else if (c.command == "components") o = cmd_components(c, root);
    else if (c.command == "thicken") o = cmd_thicken(c, root);
    else if (c.command == "roots-count") o = cmd_roots(c, root);
    else if (c.command == "residues") o = cmd_residues(c, root);
    else if (c.command == "walk") o = cmd_walk(c, root);
    else if (c.command == "kappa2") o = cmd_kappa2(c, root);
    else if (c.command == "stats") o = cmd_stats(c, root);
    else if (c.command == "render") {
      o = cmd_render(c, root);
      std::string svg = c.output;
      c.output.clear();  // the summary goes to stdout
      write(c, o, out);
      c.output = svg;
      return 0;
    }
    write(c, o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace acp::cli
