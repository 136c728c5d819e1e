// parabolic: command-line front end for the parabolic function-space toolkit.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "json_config.hpp"
#include "parabolic/dyadic.hpp"
#include "parabolic/extension.hpp"
#include "parabolic/field_io.hpp"
#include "parabolic/harness.hpp"
#include "parabolic/heat.hpp"
#include "parabolic/norms.hpp"

using namespace parabolic;
using ojson = nlohmann::ordered_json;

namespace {

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

ojson num(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

/// Preset name or "n,nx,nt,lx,lt,T".
GridSpec parse_grid(const std::string& s) {
  if (s == "space_time") return suite_space_time_grid();
  if (s == "spatial") return suite_spatial_grid();
  if (s == "refinement") return suite_refinement_grid();
  if (s == "decay") return suite_decay_grid();
  if (s == "corpus") return suite_corpus_grid();
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.size() != 6)
    throw std::invalid_argument("grid must be a preset (space_time, spatial, refinement, decay, corpus) "
                                "or n,nx,nt,lx,lt,T");
  return make_grid(std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2]), std::stod(parts[3]),
                   std::stod(parts[4]), std::stod(parts[5]));
}

Domain parse_domain(const std::string& s) {
  if (s == "space_time") return Domain::space_time;
  if (s == "space") return Domain::space;
  throw std::invalid_argument("domain must be space_time or space");
}

NormKind parse_kind(const std::string& s) {
  for (auto k : {NormKind::sobolev, NormKind::besov_lp, NormKind::besov_diff, NormKind::besov_highorder,
                 NormKind::w2ii, NormKind::besov_halfcyl, NormKind::spatial_besov})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown norm kind '" + s + "'");
}

/// "full" or "cyl" (T from the field's grid) or "cyl:T".
Region parse_region(const std::string& s, const GridSpec& g) {
  if (s == "full") return Region::full();
  if (s == "cyl") return Region::cyl(g.T);
  if (s.rfind("cyl:", 0) == 0) return Region::cyl(std::stod(s.substr(4)));
  throw std::invalid_argument("region must be full, cyl or cyl:T");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

// ---- sample -------------------------------------------------------------

struct SampleOpts {
  std::string grid = "space_time";
  std::string domain = "space_time";
  std::string profile = "gaussian";
  double a = 4.0, b = 4.0;
  int kx = 1, kt = 0;
  int band = 4;
  std::uint64_t seed = 1;
  std::string out;
};

int run_sample(const SampleOpts& o) {
  const GridSpec g = parse_grid(o.grid);
  const Domain d = parse_domain(o.domain);
  const bool st = d == Domain::space_time;
  Field f;
  if (o.profile == "gaussian") {
    f = sample(g, [&](const Point& p) {
      const double r2 = p.x[0] * p.x[0] + p.x[1] * p.x[1];
      return cplx(std::exp(-o.a * r2 - (st ? o.b * p.t * p.t : 0.0)));
    }, d);
  } else if (o.profile == "mode") {
    f = sample(g, [&](const Point& p) {
      return std::polar(1.0, 2.0 * kPi * (o.kx * p.x[0] / g.lx + (st ? o.kt * p.t / g.lt : 0.0)));
    }, d);
  } else if (o.profile == "band") {
    FamilySpec fs;
    fs.kind = FamilyKind::corpus;
    fs.domain = d;
    fs.count = 4;
    fs.band = o.band;
    fs.seed = o.seed;
    f = generate_family(fs, g)[3].field;
  } else {
    throw std::invalid_argument("profile must be gaussian, mode or band");
  }
  save_field(o.out, f);
  return 0;
}

// ---- decompose ----------------------------------------------------------

struct DecomposeOpts {
  std::string input;
  double alpha = 0.0;
  std::string p = "2";
  std::string out;
};

int run_decompose(const DecomposeOpts& o) {
  const Field f = load_field(o.input);
  const double p = parse_exponent(o.p);
  const Partition part = build_partition(
      f.spec, f.domain == Domain::space_time ? PartitionKind::parabolic : PartitionKind::spatial);
  std::string csv = "i,weight,block_norm\n";
  char buf[96];
  for (int i = 0; i <= part.i_max; ++i) {
    const double w = std::pow(2.0, o.alpha * i);
    const double bn = lp_norm(block_project(part, i, f), p);
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", i, w, bn);
    csv += buf;
  }
  write_text(o.out, csv);
  return 0;
}

// ---- norm ---------------------------------------------------------------

struct NormOpts {
  std::string kind = "sobolev";
  double alpha = 1.0;
  std::string p = "2";
  std::string q;
  int i = 1;
  std::string region = "full";
  std::string input;
  bool json = false;
};

int run_norm(const NormOpts& o) {
  const Field f = load_field(o.input);
  const double p = parse_exponent(o.p);
  const double q = o.q.empty() ? p : parse_exponent(o.q);
  NormResult r;
  if (o.kind == "lp") {
    r.value = lp_norm(f, p, parse_region(o.region, f.spec));
    r.p = p;
    r.breakdown.push_back({"Lp", r.value});
    r.truncation_energy = truncation_energy(f);
  } else {
    const Region region = parse_region(o.region, f.spec);
    switch (parse_kind(o.kind)) {
      case NormKind::sobolev: r = sobolev_norm(f, o.alpha, p); break;
      case NormKind::besov_lp:
        r = besov_lp_norm(f, o.alpha, p, q, build_partition(f.spec, PartitionKind::parabolic));
        break;
      case NormKind::spatial_besov:
        r = spatial_besov_norm(f, o.alpha, p, q, build_partition(f.spec, PartitionKind::spatial));
        break;
      case NormKind::besov_diff: r = besov_diff_norm(f, o.alpha, p, region); break;
      case NormKind::besov_highorder: r = besov_highorder_norm(f, o.alpha, p, region); break;
      case NormKind::w2ii: r = w2ii_norm(f, o.i, p, region); break;
      case NormKind::besov_halfcyl:
        r = besov_halfcyl_norm(f, o.alpha, p, region.cylinder ? region.T : f.spec.T);
        break;
    }
  }
  if (o.json) {
    ojson j{{"kind", o.kind}, {"alpha", num(o.alpha)}, {"p", num(p)}, {"q", num(q)},
            {"region", o.region}, {"value", num(r.value)}};
    ojson br = ojson::array();
    for (const auto& t : r.breakdown) br.push_back(ojson{{"label", t.label}, {"value", num(t.value)}});
    j["breakdown"] = br;
    j["truncation_energy"] = r.truncation_energy;
    j["flagged"] = r.flagged;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%.17g\n", r.value);
    if (r.flagged)
      std::fprintf(stderr, "warning: truncation energy %.3g, result unreliable\n", r.truncation_energy);
  }
  return 0;
}

// ---- heat ---------------------------------------------------------------

struct HeatOpts {
  std::string initial;
  double T = 0.0;
  std::string out;
};

int run_heat(const HeatOpts& o) {
  const Field f = load_field(o.initial);
  GridSpec g = f.spec;
  if (o.T > 0.0) g = make_grid(g.n, g.nx, g.nt, g.lx, g.lt, o.T);
  Field spatial = f;
  if (f.domain == Domain::space_time) spatial = f.slice(f.spec.zero_slice());
  spatial.spec = g;
  const HeatExtension ext = propagate(spatial, g);
  save_field(o.out, ext.u);
  return 0;
}

// ---- extend -------------------------------------------------------------

struct ExtendOpts {
  std::string op = "e2";
  int order = 1;
  int depth = -1;
  std::string input;
  std::string out;
};

int run_extend(const ExtendOpts& o) {
  const Field f = load_field(o.input);
  Field g;
  if (o.op == "e2") g = extend_E2(f, o.order, o.depth);
  else if (o.op == "e4") g = extend_E4(f, o.order, o.depth);
  else if (o.op == "e3") g = extend_E3(f, o.order, CutoffProfile::for_order(f.spec.T, o.order));
  else throw std::invalid_argument("operator must be e2, e3 or e4");
  save_field(o.out, g);
  return 0;
}

// ---- verify -------------------------------------------------------------

struct VerifyOpts {
  std::string theorem = "all";
  std::string alpha, p, q;
  int i = 1;
  double T = 1.0;
  double control_shift = 0.0;
  std::string grid;
  std::string family;
  std::uint64_t seed = 1;
  std::string out_dir;
};

int run_verify(const VerifyOpts& o) {
  std::vector<SuiteCase> cases;
  const auto suite = default_suite(o.seed);
  const bool custom = !o.alpha.empty() || !o.p.empty() || !o.q.empty();
  if (o.theorem == "all") {
    if (custom) throw std::invalid_argument("--alpha/--p/--q need a single --theorem");
    cases = suite;
  } else {
    const TheoremId id = theorem_from_string(o.theorem);
    if (!custom) {
      for (const auto& c : suite)
        if (c.id == id) cases.push_back(c);
    }
    if (cases.empty()) {
      SuiteCase c{id, {}};
      if (id == TheoremId::t3_3 || id == TheoremId::c3_4) c.params.control_shift = 2.0;
      cases.push_back(c);
    }
    for (auto& c : cases) {
      if (!o.alpha.empty()) c.params.alpha = parse_exponent(o.alpha);
      if (!o.p.empty()) c.params.p = parse_exponent(o.p);
      if (!o.q.empty()) c.params.q = parse_exponent(o.q);
      if (custom) c.params.i = o.i;
    }
  }
  for (auto& c : cases) {
    c.params.T = o.T;
    if (o.control_shift > 0.0) c.params.control_shift = o.control_shift;
  }

  bool passed = true;
  ojson summary = ojson::array();
  if (o.grid.empty() && o.family.empty()) {
    const SuiteOutcome out = run_suite(cases, o.out_dir, o.seed);
    passed = out.passed;
    for (const auto& r : out.reports)
      std::printf("%-6s %-4s spread=%.4g control=%.4g max=%.4g\n", r.theorem.c_str(),
                  r.passed ? "PASS" : "FAIL", r.spread, r.control_spread, r.max_ratio);
    if (out.decay)
      std::printf("%-6s %-4s decay table, %zu cells\n", "lemma5.2", out.decay->passed ? "PASS" : "FAIL",
                  out.decay->rows.size());
  } else {
    for (const auto& c : cases) {
      const GridSpec g = o.grid.empty() ? suite_grid(c.id) : parse_grid(o.grid);
      const std::string stem = case_stem(c);
      if (c.id == TheoremId::lemma5_2) {
        const DecayReport d = run_multiplier_decay(g, {2, 3, 4}, {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}, c.params.p);
        if (!o.out_dir.empty()) emit_decay(d, o.out_dir, stem);
        std::printf("%-6s %-4s decay table, %zu cells\n", "lemma5.2", d.passed ? "PASS" : "FAIL", d.rows.size());
        passed = passed && d.passed;
        summary.push_back(ojson{{"case", stem}, {"passed", d.passed}});
        continue;
      }
      FamilySpec fam = suite_family(c.id, o.seed);
      if (!o.family.empty()) fam.kind = family_kind_from_string(o.family);
      const EquivalenceReport r = run_equivalence(c.id, fam, g, c.params);
      if (!o.out_dir.empty()) emit_report(r, o.out_dir, stem);
      std::printf("%-6s %-4s spread=%.4g control=%.4g max=%.4g\n", r.theorem.c_str(),
                  r.passed ? "PASS" : "FAIL", r.spread, r.control_spread, r.max_ratio);
      passed = passed && r.passed;
      summary.push_back(ojson{{"case", stem}, {"passed", r.passed}});
    }
    if (!o.out_dir.empty()) {
      ojson j{{"seed", o.seed}, {"passed", passed}, {"cases", summary}};
      write_text((std::filesystem::path(o.out_dir) / "summary.json").string(), j.dump(2) + "\n");
    }
  }
  std::printf("%s\n", passed ? "all thresholds passed" : "some thresholds failed");
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parabolic function spaces: norms, heat extensions, reflection extensions, equivalence checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>(
      std::vector<std::string>{"sample", "decompose", "norm", "heat", "extend", "verify"}));
  app.set_config("--config", "", "JSON config file; command-line flags override it");
  app.allow_config_extras(CLI::config_extras_mode::ignore_all);

  SampleOpts so;
  auto* sample_cmd = app.add_subcommand("sample", "Write a sampled test field");
  sample_cmd->add_option("--grid", so.grid, "Grid preset or n,nx,nt,lx,lt,T")->capture_default_str();
  sample_cmd->add_option("--domain", so.domain, "space_time or space")->capture_default_str();
  sample_cmd->add_option("--profile", so.profile, "gaussian, mode or band")->capture_default_str();
  sample_cmd->add_option("--a", so.a, "Spatial Gaussian width parameter")->capture_default_str();
  sample_cmd->add_option("--b", so.b, "Temporal Gaussian width parameter")->capture_default_str();
  sample_cmd->add_option("--kx", so.kx, "Mode index in X_1")->capture_default_str();
  sample_cmd->add_option("--kt", so.kt, "Mode index in t")->capture_default_str();
  sample_cmd->add_option("--band", so.band, "Band for random band-limited fields")->capture_default_str();
  sample_cmd->add_option("--seed", so.seed, "Random seed")->capture_default_str();
  sample_cmd->add_option("--out", so.out, "Output field file")->required();

  DecomposeOpts dop;
  auto* dec = app.add_subcommand("decompose", "Per-block L^p norms as CSV (i, 2^(alpha i), block_norm)");
  dec->add_option("--input", dop.input, "Field file")->required();
  dec->add_option("--alpha", dop.alpha, "Smoothness for the weight column")->capture_default_str();
  dec->add_option("--p", dop.p, "Lebesgue exponent (number or inf)")->capture_default_str();
  dec->add_option("--out", dop.out, "CSV path (stdout if omitted)");

  NormOpts no;
  auto* norm = app.add_subcommand("norm", "Evaluate a norm of a field file");
  norm->add_option("--kind", no.kind,
                   "lp, sobolev, besov_lp, besov_diff, besov_highorder, w2ii, besov_halfcyl, spatial_besov")
      ->capture_default_str();
  norm->add_option("--alpha", no.alpha, "Smoothness")->capture_default_str();
  norm->add_option("--p", no.p, "Lebesgue exponent (number or inf)")->capture_default_str();
  norm->add_option("--q", no.q, "Summation exponent (defaults to p)");
  norm->add_option("--i", no.i, "Order for w2ii")->capture_default_str();
  norm->add_option("--region", no.region, "full, cyl or cyl:T")->capture_default_str();
  norm->add_option("--input", no.input, "Field file")->required();
  norm->add_flag("--json", no.json, "JSON output with breakdown and truncation energy");

  HeatOpts ho;
  auto* heat = app.add_subcommand("heat", "Heat extension of initial data");
  heat->add_option("--initial", ho.initial, "Initial data field file (spatial, or t = 0 slice is used)")->required();
  heat->add_option("--T", ho.T, "Cylinder height (default: the file's T)");
  heat->add_option("--out", ho.out, "Output space-time field file")->required();

  ExtendOpts eo;
  auto* ext = app.add_subcommand("extend", "Reflection extension in time");
  ext->add_option("--operator", eo.op, "e2, e3 or e4")->capture_default_str();
  ext->add_option("--order", eo.order, "Order i")->capture_default_str();
  ext->add_option("--depth", eo.depth, "Negative slices to fill (default: as many as fit)");
  ext->add_option("--input", eo.input, "Field file")->required();
  ext->add_option("--out", eo.out, "Output field file")->required();

  VerifyOpts vo;
  auto* ver = app.add_subcommand("verify", "Run equivalence experiments; exit 0 iff all pass");
  ver->add_option("--theorem", vo.theorem,
                  "all, p2.1, t3.1, c3.2, t3.3, c3.4, t4.3, t5.1, t5.3, t5.4, t5.5, t1.1, lemma5.2, self")
      ->capture_default_str();
  ver->add_option("--alpha", vo.alpha, "Smoothness (single-theorem runs)");
  ver->add_option("--p", vo.p, "Lebesgue exponent (number or inf)");
  ver->add_option("--q", vo.q, "Summation exponent");
  ver->add_option("--i", vo.i, "Order i for t5.3 / t5.5")->capture_default_str();
  ver->add_option("--T", vo.T, "Cylinder height")->capture_default_str();
  ver->add_option("--control-shift", vo.control_shift, "Smoothness removed in the control run");
  ver->add_option("--grid", vo.grid, "Grid preset or n,nx,nt,lx,lt,T (default: per theorem)");
  ver->add_option("--family", vo.family, "gaussian_dilation, random_shell, pure_mode_scan, corpus");
  ver->add_option("--seed", vo.seed, "Random seed")->capture_default_str();
  ver->add_option("--out-dir", vo.out_dir, "Directory for CSV / JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sample_cmd) return run_sample(so);
    if (*dec) return run_decompose(dop);
    if (*norm) return run_norm(no);
    if (*heat) return run_heat(ho);
    if (*ext) return run_extend(eo);
    if (*ver) return run_verify(vo);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
