#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "parabolic/harness.hpp"

namespace parabolic {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ojson num(double v) {
  if (std::isfinite(v)) return v;
  return fmt(v);
}

double from_num(const ojson& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::invalid_argument("report: bad number '" + s + "'");
}

ojson grid_json(const GridSpec& g) {
  return ojson{{"n", g.n}, {"nx", g.nx}, {"nt", g.nt}, {"lx", g.lx}, {"lt", g.lt}, {"T", g.T}};
}

GridSpec grid_from(const ojson& j) {
  GridSpec g;
  g.n = j.at("n").get<int>();
  g.nx = j.at("nx").get<int>();
  g.nt = j.at("nt").get<int>();
  g.lx = j.at("lx").get<double>();
  g.lt = j.at("lt").get<double>();
  g.T = j.at("T").get<double>();
  return g;
}

ojson rows_json(const std::vector<ReportRow>& rows) {
  ojson a = ojson::array();
  for (const auto& r : rows)
    a.push_back(ojson{{"label", r.label},
                      {"parameter", num(r.parameter)},
                      {"lhs", num(r.lhs)},
                      {"rhs", num(r.rhs)},
                      {"ratio", num(r.ratio)}});
  return a;
}

std::vector<ReportRow> rows_from(const ojson& a) {
  std::vector<ReportRow> out;
  for (const auto& j : a) {
    ReportRow r;
    r.label = j.at("label").get<std::string>();
    r.parameter = from_num(j.at("parameter"));
    r.lhs = from_num(j.at("lhs"));
    r.rhs = from_num(j.at("rhs"));
    r.ratio = from_num(j.at("ratio"));
    out.push_back(r);
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

std::string compact(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string report_csv(const EquivalenceReport& report) {
  std::string out = "label,parameter,lhs,rhs,ratio,control_lhs,control_rhs,control_ratio\n";
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const auto& r = report.rows[k];
    out += r.label + "," + fmt(r.parameter) + "," + fmt(r.lhs) + "," + fmt(r.rhs) + "," + fmt(r.ratio);
    if (k < report.control_rows.size()) {
      const auto& c = report.control_rows[k];
      out += "," + fmt(c.lhs) + "," + fmt(c.rhs) + "," + fmt(c.ratio);
    } else {
      out += ",,,";
    }
    out += "\n";
  }
  return out;
}

std::string report_json(const EquivalenceReport& r) {
  ojson params{{"alpha", num(r.params.alpha)},
               {"p", num(r.params.p)},
               {"q", num(r.params.q_or_p())},
               {"i", r.params.i},
               {"T", num(r.params.T)},
               {"control_shift", num(r.params.control_shift)}};
  if (r.theorem == "self") params["norm"] = to_string(r.params.self_kind);
  ojson j{{"theorem", r.theorem},
          {"family", r.family},
          {"grid", grid_json(r.grid)},
          {"params", params},
          {"two_sided", r.two_sided},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"control", r.control},
          {"spread", num(r.spread)},
          {"control_spread", num(r.control_spread)},
          {"max_ratio", num(r.max_ratio)},
          {"control_max_ratio", num(r.control_max_ratio)},
          {"threshold", num(r.threshold)},
          {"separation", num(r.separation)},
          {"passed", r.passed},
          {"rows", rows_json(r.rows)},
          {"control_rows", rows_json(r.control_rows)}};
  return j.dump(2) + "\n";
}

EquivalenceReport report_from_json(const std::string& text) {
  const ojson j = ojson::parse(text);
  EquivalenceReport r;
  r.theorem = j.at("theorem").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.grid = grid_from(j.at("grid"));
  const auto& p = j.at("params");
  r.params.alpha = from_num(p.at("alpha"));
  r.params.p = from_num(p.at("p"));
  r.params.q = from_num(p.at("q"));
  r.params.i = p.at("i").get<int>();
  r.params.T = from_num(p.at("T"));
  r.params.control_shift = from_num(p.at("control_shift"));
  if (p.contains("norm")) {
    const std::string k = p.at("norm").get<std::string>();
    for (auto kind : {NormKind::sobolev, NormKind::besov_lp, NormKind::besov_diff,
                      NormKind::besov_highorder, NormKind::w2ii, NormKind::besov_halfcyl,
                      NormKind::spatial_besov})
      if (to_string(kind) == k) r.params.self_kind = kind;
  }
  r.two_sided = j.at("two_sided").get<bool>();
  r.lhs = j.at("lhs").get<std::string>();
  r.rhs = j.at("rhs").get<std::string>();
  r.control = j.at("control").get<std::string>();
  r.spread = from_num(j.at("spread"));
  r.control_spread = from_num(j.at("control_spread"));
  r.max_ratio = from_num(j.at("max_ratio"));
  r.control_max_ratio = from_num(j.at("control_max_ratio"));
  r.threshold = from_num(j.at("threshold"));
  r.separation = from_num(j.at("separation"));
  r.passed = j.at("passed").get<bool>();
  r.rows = rows_from(j.at("rows"));
  r.control_rows = rows_from(j.at("control_rows"));
  return r;
}

std::string decay_csv(const DecayReport& report) {
  std::string out = "i,t,s,lower,upper,bound,ok\n";
  for (const auto& r : report.rows)
    out += std::to_string(r.i) + "," + fmt(r.t) + "," + fmt(r.s) + "," + fmt(r.lower) + "," +
           fmt(r.upper) + "," + fmt(r.bound) + "," + (r.ok ? "1" : "0") + "\n";
  return out;
}

std::string decay_json(const DecayReport& r) {
  auto arr = [](const std::vector<double>& v) {
    ojson a = ojson::array();
    for (double x : v) a.push_back(num(x));
    return a;
  };
  ojson rows = ojson::array();
  for (const auto& row : r.rows)
    rows.push_back(ojson{{"i", row.i},
                         {"t", num(row.t)},
                         {"s", num(row.s)},
                         {"lower", num(row.lower)},
                         {"upper", num(row.upper)},
                         {"bound", num(row.bound)},
                         {"ok", row.ok}});
  ojson j{{"theorem", "lemma5.2"},
          {"grid", grid_json(r.grid)},
          {"p", num(r.p)},
          {"constants", arr(r.constants)},
          {"slopes", arr(r.slopes)},
          {"t0_upper", arr(r.t0_upper)},
          {"core_l1", arr(r.core_l1)},
          {"passed", r.passed},
          {"rows", rows}};
  return j.dump(2) + "\n";
}

void emit_report(const EquivalenceReport& report, const std::filesystem::path& dir,
                 const std::string& stem) {
  if (report.rows.empty()) throw std::invalid_argument("refusing to write an empty report");
  prepare_dir(dir);
  write_file(dir / (stem + ".csv"), report_csv(report));
  write_file(dir / (stem + ".json"), report_json(report));
}

void emit_decay(const DecayReport& report, const std::filesystem::path& dir,
                const std::string& stem) {
  if (report.rows.empty()) throw std::invalid_argument("refusing to write an empty report");
  prepare_dir(dir);
  write_file(dir / (stem + ".csv"), decay_csv(report));
  write_file(dir / (stem + ".json"), decay_json(report));
}

GridSpec suite_space_time_grid() { return make_grid(1, 256, 1024, 8.0, 8.0, 1.0); }
GridSpec suite_spatial_grid() { return make_grid(1, 2048, 512, 16.0, 4.0, 1.0); }
GridSpec suite_refinement_grid() { return make_grid(1, 128, 128, 4.0, 4.0, 1.0); }
GridSpec suite_decay_grid() { return make_grid(1, 2048, 8, 8.0, 8.0, 1.0); }
GridSpec suite_corpus_grid() { return make_grid(1, 256, 512, 8.0, 8.0, 1.0); }

std::vector<SuiteCase> default_suite(std::uint64_t) {
  std::vector<SuiteCase> out;
  auto add = [&](TheoremId id, double alpha, double p, int i = 1) {
    ExperimentParams P;
    P.alpha = alpha;
    P.p = p;
    P.i = i;
    // Block norms put small-eps members in psi, so one unit of mismatch
    // cannot reach the separation factor within 7 octaves.
    if (id == TheoremId::t3_3 || id == TheoremId::c3_4) P.control_shift = 2.0;
    out.push_back({id, P});
  };
  const double inf = std::numeric_limits<double>::infinity();
  for (double a : {0.5, 1.0, 1.5})
    for (double p : {1.0, 2.0, inf}) add(TheoremId::p2_1, a, p);
  add(TheoremId::t3_1, 1.0, 2.0);
  add(TheoremId::t3_1, 0.5, 3.0);
  add(TheoremId::c3_2, 2.0, 2.0);
  add(TheoremId::c3_2, 2.5, 1.5);
  add(TheoremId::t3_3, 1.5, 2.0);
  add(TheoremId::t3_3, 1.0, inf);
  add(TheoremId::t3_3, 1.5, 1.0);
  add(TheoremId::c3_4, 2.5, 2.0);
  add(TheoremId::c3_4, 3.0, 1.0);
  add(TheoremId::t4_3, 3.5, 2.0);
  for (double a : {1.5, 2.5})
    for (double p : {2.0, inf}) add(TheoremId::t1_1, a, p);
  for (double p : {1.0, 2.0, inf}) add(TheoremId::t5_1, p == inf ? 0.0 : -2.0 / p, p);
  for (double p : {1.0, 2.0, inf}) add(TheoremId::t5_4, p == inf ? 0.0 : -2.0 / p, p);
  for (double p : {2.0, inf}) add(TheoremId::t5_3, 2.0 - (p == inf ? 0.0 : 2.0 / p), p);
  for (double p : {2.0, inf}) add(TheoremId::t5_5, 2.0 - (p == inf ? 0.0 : 2.0 / p), p);
  add(TheoremId::lemma5_2, 0.0, 2.0);
  return out;
}

FamilySpec suite_family(TheoremId id, std::uint64_t seed) {
  FamilySpec f;
  f.seed = seed;
  switch (id) {
    case TheoremId::p2_1:
      f.kind = FamilyKind::corpus;
      f.a = f.b = 2.5;
      f.a_max = f.b_max = 16.0;
      f.shift = 0.5;
      f.modulation = 4;
      f.band = 4;
      f.count = 20;
      break;
    case TheoremId::t1_1:
      f.domain = Domain::space;
      break;
    case TheoremId::t5_1:
    case TheoremId::t5_3:
    case TheoremId::t5_4:
    case TheoremId::t5_5:
      f.kind = FamilyKind::corpus;
      f.domain = Domain::space;
      f.a = 12.0;
      f.a_max = 16.0;
      f.shift = 0.25;
      f.modulation = 2;
      f.band = 2;
      f.count = 10;
      break;
    default:
      break;
  }
  return f;
}

GridSpec suite_grid(TheoremId id) {
  switch (id) {
    case TheoremId::p2_1: return suite_corpus_grid();
    case TheoremId::t1_1: return suite_spatial_grid();
    case TheoremId::t5_1:
    case TheoremId::t5_3:
    case TheoremId::t5_4:
    case TheoremId::t5_5: return suite_refinement_grid();
    case TheoremId::lemma5_2: return suite_decay_grid();
    default: return suite_space_time_grid();
  }
}

std::string case_stem(const SuiteCase& c) {
  std::string s = to_string(c.id);
  if (c.id == TheoremId::lemma5_2) return s + "_p" + compact(c.params.p);
  if (c.id == TheoremId::t5_3 || c.id == TheoremId::t5_5) return s + "_i" + std::to_string(c.params.i) + "_p" + compact(c.params.p);
  if (c.id == TheoremId::t5_1 || c.id == TheoremId::t5_4) return s + "_p" + compact(c.params.p);
  return s + "_a" + compact(c.params.alpha) + "_p" + compact(c.params.p);
}

SuiteOutcome run_suite(const std::vector<SuiteCase>& cases, const std::filesystem::path& out_dir,
                       std::uint64_t seed) {
  if (cases.empty()) throw std::invalid_argument("empty suite");
  SuiteOutcome out;
  out.passed = true;
  ojson summary = ojson::array();
  for (const auto& c : cases) {
    const std::string stem = case_stem(c);
    bool passed = false;
    if (c.id == TheoremId::lemma5_2) {
      DecayReport d = run_multiplier_decay(suite_decay_grid(), {2, 3, 4},
                                           {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}, c.params.p);
      if (!out_dir.empty()) emit_decay(d, out_dir, stem);
      passed = d.passed;
      out.decay = std::move(d);
    } else {
      EquivalenceReport r = run_equivalence(c.id, suite_family(c.id, seed), suite_grid(c.id), c.params);
      if (!out_dir.empty()) emit_report(r, out_dir, stem);
      passed = r.passed;
      out.reports.push_back(std::move(r));
    }
    out.passed = out.passed && passed;
    summary.push_back(ojson{{"case", stem}, {"passed", passed}});
  }
  if (!out_dir.empty()) {
    prepare_dir(out_dir);
    ojson j{{"seed", seed}, {"passed", out.passed}, {"cases", summary}};
    write_file(out_dir / "summary.json", j.dump(2) + "\n");
  }
  return out;
}

}  // namespace parabolic
