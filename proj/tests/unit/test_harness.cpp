#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "parabolic/dyadic.hpp"
#include "parabolic/harness.hpp"
#include "parabolic/heat.hpp"

using namespace parabolic;
using namespace testutil;

namespace {

// Guard ~5.7, so exp(-4X^2 - 4t^2) keeps truncation energy below 1e-8.
const GridSpec kGrid = make_grid(1, 128, 256, 8.0, 8.0, 1.0);

FamilySpec small_dilation() {
  FamilySpec f;
  f.epsilons = {0.5, 1.0, 2.0};
  return f;
}

double energy(const Field& f) {
  double e = 0.0;
  for (const auto& v : f.values) e += std::norm(v);
  return e;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("dilation family members share the base samples") {
  const auto members = generate_family(small_dilation(), kGrid);
  REQUIRE(members.size() == 3);
  const Field base = sample(kGrid, [](const Point& p) { return cplx(std::exp(-4 * p.x[0] * p.x[0] - 4 * p.t * p.t)); });
  for (const auto& m : members) {
    CHECK(m.grid == dilated_grid(kGrid, m.parameter));
    CHECK(max_abs_diff(m.field, base) < 1e-12);
    CHECK(truncation_energy(m.field) < 1e-8);
    CHECK(edge_decay(m.field) < 1e-12);
  }
  CHECK(members[1].grid == kGrid);
  CHECK(members[2].grid.lx == doctest::Approx(4.0));
  CHECK(members[2].grid.lt == doctest::Approx(2.0));
  CHECK(members[2].grid.T == doctest::Approx(0.25));

  FamilySpec wide = small_dilation();
  wide.a = wide.b = 0.05;  // does not decay inside the period
  CHECK_THROWS_AS(generate_family(wide, kGrid), std::invalid_argument);
  FamilySpec narrow = small_dilation();
  narrow.a = 400.0;  // too sharp for the lattice
  CHECK_THROWS_AS(generate_family(narrow, kGrid), std::invalid_argument);
  CHECK_THROWS_AS(dilated_grid(kGrid, 0.0), std::invalid_argument);
}

TEST_CASE("corpus is seeded and survives refinement") {
  const GridSpec fine = suite_refinement_grid();
  const GridSpec coarse = make_grid(1, 64, 64, 4.0, 4.0, 1.0);
  const FamilySpec spec = suite_family(TheoremId::t5_1, 7);
  const auto a = generate_family(spec, fine);
  const auto b = generate_family(spec, fine);
  REQUIRE(a.size() == 10);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].field.values == b[k].field.values);

  FamilySpec other = spec;
  other.seed = 8;
  CHECK(generate_family(other, fine)[0].field.values != a[0].field.values);

  // Same members sampled at half resolution: every other fine sample.
  const auto c = generate_family(spec, coarse);
  for (std::size_t k = 0; k < a.size(); ++k) {
    double err = 0.0;
    for (int j = 0; j < coarse.nx; ++j)
      err = std::max(err, std::abs(c[k].field.values[static_cast<std::size_t>(j)] -
                                   a[k].field.values[static_cast<std::size_t>(2 * j)]));
    CHECK(err < 1e-12);
  }
}

TEST_CASE("shell and mode families") {
  const GridSpec g = make_grid(1, 128, 512, 4.0, 4.0, 1.0);
  FamilySpec spec;
  spec.kind = FamilyKind::random_shell;
  spec.shell_lo = 1;
  spec.shell_hi = 2;
  const Partition part = build_partition(g, PartitionKind::parabolic);
  for (const auto& m : generate_family(spec, g)) {
    const int j = static_cast<int>(m.parameter);
    CHECK(energy(block_project(part, j, m.field)) > 0.5 * energy(m.field));
    CHECK(energy(block_project(part, j + 2, m.field)) < 1e-20 * energy(m.field));
  }

  spec.kind = FamilyKind::pure_mode_scan;
  spec.shell_lo = 1;
  spec.shell_hi = 3;
  const auto modes = generate_family(spec, g);
  REQUIRE(modes.size() == 3);
  for (const auto& m : modes) {
    const Partition sp = build_partition(g, PartitionKind::parabolic);
    const int j = static_cast<int>(m.parameter);
    CHECK(max_abs_diff(block_project(sp, j, m.field), m.field) < 1e-10);
  }
  spec.shell_hi = 6;
  CHECK_THROWS_AS(generate_family(spec, g), std::invalid_argument);
  CHECK(family_kind_from_string("corpus") == FamilyKind::corpus);
  CHECK_THROWS_AS(family_kind_from_string("nope"), std::invalid_argument);
}

TEST_CASE("self comparison has spread exactly one") {
  const FamilySpec fam = small_dilation();
  for (auto kind : {NormKind::sobolev, NormKind::besov_lp, NormKind::besov_diff,
                    NormKind::besov_highorder, NormKind::w2ii, NormKind::besov_halfcyl}) {
    ExperimentParams P;
    P.alpha = kind == NormKind::besov_highorder ? 2.5 : 1.5;
    P.p = 2.0;
    P.T = 1.0;
    P.self_kind = kind;
    const auto r = run_equivalence(TheoremId::self, fam, kGrid, P);
    CAPTURE(to_string(kind));
    CHECK(r.spread == 1.0);
    for (const auto& row : r.rows) CHECK(row.ratio == 1.0);
    CHECK(r.passed);
  }
  FamilySpec spatial = small_dilation();
  spatial.domain = Domain::space;
  ExperimentParams P;
  P.self_kind = NormKind::spatial_besov;
  P.p = kInf;
  CHECK(run_equivalence(TheoremId::self, spatial, suite_spatial_grid(), P).spread == 1.0);
}

TEST_CASE("matched chain beats the mismatched control") {
  ExperimentParams P;
  P.alpha = 1.0;
  P.p = 2.0;
  const auto r = run_equivalence(TheoremId::t3_1, small_dilation(), kGrid, P);
  REQUIRE(r.rows.size() == 3);
  REQUIRE(r.control_rows.size() == 3);
  CHECK(r.spread >= 1.0);
  CHECK(r.spread < 2.0);
  CHECK(r.control_spread > 2.0 * r.spread);
  CHECK(r.rows[1].lhs == doctest::Approx(sobolev_norm(generate_family(small_dilation(), kGrid)[1].field, 1.0, 2.0).value));
  CHECK(spread_of(r.rows) == doctest::Approx(r.spread));
}

TEST_CASE("parameters outside the statements are rejected") {
  ExperimentParams P;
  const auto fam = small_dilation();
  P.p = 1.0;
  CHECK_THROWS_AS(run_equivalence(TheoremId::t3_1, fam, kGrid, P), std::invalid_argument);
  P.p = kInf;
  CHECK_THROWS_AS(run_equivalence(TheoremId::c3_2, fam, kGrid, P), std::invalid_argument);
  P.p = 2.0;
  P.alpha = 1.0;
  CHECK_THROWS_AS(run_equivalence(TheoremId::c3_4, fam, kGrid, P), std::invalid_argument);
  P.alpha = 4.0;
  CHECK_THROWS_AS(run_equivalence(TheoremId::c3_4, fam, kGrid, P), std::invalid_argument);
  FamilySpec spatial = fam;
  spatial.domain = Domain::space;
  P.alpha = 0.0;
  CHECK_THROWS_AS(run_equivalence(TheoremId::t1_1, spatial, suite_spatial_grid(), P), std::invalid_argument);
  P.alpha = 1.5;
  CHECK_THROWS_AS(run_equivalence(TheoremId::t1_1, fam, kGrid, P), std::invalid_argument);
  CHECK_THROWS_AS(run_equivalence(TheoremId::t3_1, spatial, kGrid, P), std::invalid_argument);
  P.i = 0;
  CHECK_THROWS_AS(run_equivalence(TheoremId::t5_3, spatial, suite_refinement_grid(), P), std::invalid_argument);
  CHECK_THROWS_AS(run_equivalence(TheoremId::lemma5_2, fam, kGrid, P), std::invalid_argument);
  CHECK(theorem_from_string("t4.3") == TheoremId::t4_3);
  CHECK_THROWS_AS(theorem_from_string("t9.9"), std::invalid_argument);
  CHECK(is_two_sided(TheoremId::t1_1));
  CHECK_FALSE(is_two_sided(TheoremId::t5_5));
}

TEST_CASE("one-sided runs compare against the coarse grid") {
  ExperimentParams P;
  P.p = 2.0;
  const auto r = run_equivalence(TheoremId::t5_1, suite_family(TheoremId::t5_1, 1),
                                 suite_refinement_grid(), P);
  CHECK_FALSE(r.two_sided);
  CHECK(r.rows.size() == r.control_rows.size());
  CHECK(std::isfinite(r.max_ratio));
  CHECK(r.passed);
  const auto inv = run_equivalence(TheoremId::t5_4, suite_family(TheoremId::t5_4, 1),
                                   suite_refinement_grid(), P);
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    CHECK(inv.rows[k].lhs == r.rows[k].rhs);
    CHECK(inv.rows[k].ratio * r.rows[k].ratio == doctest::Approx(1.0));
  }
}

TEST_CASE("cylinder L^p norm scales with T") {
  const GridSpec g = make_grid(1, 128, 64, 16.0, 16.0, 4.0);
  const Field f = sample(g, [](const Point& p) { return cplx(std::exp(-p.x[0] * p.x[0])); }, Domain::space);
  const HeatExtension ext = propagate(f, g);
  const HeatExtension v = rescale_extension(ext, g.T);
  for (double p : {1.0, 2.0, 3.0}) {
    const double lhs = lp_norm(ext.u, p, Region::cyl(g.T));
    const double rhs = std::pow(g.T, (g.n + 2) / (2.0 * p)) * lp_norm(v.u, p, Region::cyl(1.0));
    CHECK(std::abs(lhs - rhs) < 1e-6 * lhs);
  }
}

TEST_CASE("reports: csv rows, json round trip, byte stability") {
  ExperimentParams P;
  P.alpha = 1.0;
  P.p = 2.0;
  const auto r = run_equivalence(TheoremId::t3_1, small_dilation(), kGrid, P);
  const std::string csv = report_csv(r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.rfind("label,parameter,lhs,rhs,ratio", 0) == 0);

  const std::string js = report_json(r);
  const auto back = report_from_json(js);
  CHECK(report_json(back) == js);
  CHECK(back.rows.size() == r.rows.size());
  CHECK(back.rows[2].ratio == r.rows[2].ratio);
  CHECK(back.grid == r.grid);

  ExperimentParams Pinf = P;
  Pinf.p = kInf;
  EquivalenceReport ri = r;
  ri.params = Pinf;
  CHECK(std::isinf(report_from_json(report_json(ri)).params.p));

  const auto again = run_equivalence(TheoremId::t3_1, small_dilation(), kGrid, P);
  CHECK(report_json(again) == js);

  const auto dir = std::filesystem::temp_directory_path() / "parabolic_harness_test";
  std::filesystem::remove_all(dir);
  emit_report(r, dir, "t3.1_case");
  CHECK(slurp(dir / "t3.1_case.json") == js);
  CHECK(slurp(dir / "t3.1_case.csv") == csv);

  EquivalenceReport empty;
  CHECK_THROWS_AS(emit_report(empty, dir, "empty"), std::invalid_argument);
  CHECK_FALSE(std::filesystem::exists(dir / "empty.csv"));

  // A regular file where the directory should be.
  std::ofstream(dir / "blocker") << "x";
  try {
    emit_report(r, dir / "blocker" / "sub", "x");
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("blocker") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("multiplier decay table") {
  const GridSpec g = make_grid(1, 512, 8, 8.0, 8.0, 1.0);
  const auto d = run_multiplier_decay(g, {2, 3}, {0.25, 1.0, 4.0, 16.0}, 2.0);
  CHECK(d.rows.size() == 8);
  CHECK(d.constants.size() == 2);
  for (const auto& r : d.rows) {
    CHECK(r.lower <= r.upper * (1 + 1e-9));
    CHECK(r.ok);
  }
  for (double s : d.slopes) CHECK(s <= -0.125);
  CHECK(d.passed);
  CHECK(decay_csv(d).rfind("i,t,s,lower,upper,bound,ok\n", 0) == 0);
  CHECK(decay_json(d) == decay_json(run_multiplier_decay(g, {2, 3}, {0.25, 1.0, 4.0, 16.0}, 2.0)));
  CHECK_THROWS_AS(run_multiplier_decay(g, {}, {1.0}, 2.0), std::invalid_argument);
}

TEST_CASE("default suite layout") {
  const auto cases = default_suite(1);
  std::set<TheoremId> ids;
  std::set<std::string> stems;
  for (const auto& c : cases) {
    ids.insert(c.id);
    stems.insert(case_stem(c));
  }
  CHECK(stems.size() == cases.size());
  for (auto id : {TheoremId::p2_1, TheoremId::t3_1, TheoremId::c3_2, TheoremId::t3_3,
                  TheoremId::c3_4, TheoremId::t4_3, TheoremId::t5_1, TheoremId::t5_3,
                  TheoremId::t5_4, TheoremId::t5_5, TheoremId::t1_1, TheoremId::lemma5_2})
    CHECK(ids.count(id) == 1);
  CHECK(case_stem({TheoremId::t3_1, ExperimentParams{}}) == "t3.1_a1_p2");
  CHECK_THROWS_AS(run_suite({}, {}, 1), std::invalid_argument);
}
