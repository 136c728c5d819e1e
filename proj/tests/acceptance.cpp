// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance [--cli <path to parabolic>] [criterion numbers...]
//
// Criterion 9 runs `parabolic verify` twice and needs --cli.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "parabolic/dyadic.hpp"
#include "parabolic/extension.hpp"
#include "parabolic/harness.hpp"
#include "parabolic/heat.hpp"
#include "parabolic/norms.hpp"
#include "parabolic/spectral.hpp"

using namespace parabolic;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string cli_path;

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

std::vector<EquivalenceReport> run_cases(TheoremId id, std::vector<DecayReport>* decay = nullptr) {
  std::vector<SuiteCase> cases;
  for (const auto& c : default_suite(1))
    if (c.id == id) cases.push_back(c);
  SuiteOutcome out = run_suite(cases, {}, 1);
  if (decay && out.decay) decay->push_back(*out.decay);
  return out.reports;
}

std::string describe(const EquivalenceReport& r) {
  std::ostringstream os;
  os << r.theorem << "(a=" << r.params.alpha << ",p=" << r.params.p << ") spread " << r.spread;
  if (r.two_sided) os << " control " << r.control_spread;
  else os << " max " << r.max_ratio << "/" << r.control_max_ratio;
  return os.str();
}

Outcome partition_of_unity() {
  double worst = 0.0;
  for (int N : {64, 128}) {
    const double L = N / 16.0;
    for (int n : {1, 2}) {
      const GridSpec g = make_grid(n, N, N, L, L, 1.0);
      for (auto kind : {PartitionKind::parabolic, PartitionKind::spatial}) {
        const Partition part = build_partition(g, kind);
        for (std::size_t k = 0; k < part.psi_hat.size(); ++k) {
          double s = part.psi_hat[k];
          for (const auto& phi : part.phi_hats) s += phi[k];
          worst = std::max(worst, std::abs(s - 1.0));
        }
      }
    }
  }
  return {worst < 1e-10, fmt("max |psi + sum phi - 1| = %.3g on N = 64, 128, n = 1, 2", worst)};
}

Outcome half_derivative() {
  const GridSpec g = make_grid(1, 8, 256, 8.0, 16.0, 1.0);
  const double c = half_derivative_constant(g);
  double worst = 0.0;
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    // Random time profile with modes |m| <= 16, constant in X.
    std::vector<cplx> coef(33);
    for (auto& z : coef) z = {normal(rng), normal(rng)};
    const Field f = sample(g, [&](const Point& p) {
      cplx v = 0.0;
      for (int m = -16; m <= 16; ++m) v += coef[static_cast<std::size_t>(m + 16)] * std::polar(1.0, 2 * kPi * m * p.t / g.lt);
      return v;
    });
    const Field spec = half_time_derivative_spectral(f);
    const double err = lp_norm(half_derivative_quadrature(f) - spec, 2) / lp_norm(spec, 2);
    worst = std::max(worst, err);
  }
  return {worst < 1e-2, fmt("c = %.6f, ", c) + fmt("worst relative L2 error %.3g over 10 held-out profiles", worst)};
}

Outcome heat_oracle() {
  const GridSpec g = make_grid(1, 128, 64, 16.0, 4.0, 1.0);
  const double s0 = 0.25;
  auto periodic_gauss = [&](double var) {
    return sample(g, [&](const Point& p) {
      double v = 0.0;
      for (int k = -3; k <= 3; ++k) {
        const double x = p.x[0] + k * g.lx;
        v += std::exp(-x * x / (2 * var)) / std::sqrt(2 * kPi * var);
      }
      return cplx(v);
    }, Domain::space);
  };
  const HeatExtension ext = propagate(periodic_gauss(s0), g);
  double err = 0.0;
  const int slices = g.cylinder_slices();
  for (int k = g.zero_slice(); k <= g.zero_slice() + slices; ++k) {
    const double t = g.t_coord(k);
    err = std::max(err, max_abs_diff(ext.u.slice(k), periodic_gauss(s0 + 2 * t)));
  }
  // u(t + s) from u(t) versus u(t + s) directly.
  double semi = 0.0;
  for (int a : {1, 5, 8}) {
    const HeatExtension again = propagate(ext.u.slice(g.zero_slice() + a), g);
    for (int b : {1, 3, 8})
      semi = std::max(semi, max_abs_diff(again.u.slice(g.zero_slice() + b), ext.u.slice(g.zero_slice() + a + b)));
  }
  return {err < 1e-8 && semi < 1e-10,
          fmt("max pointwise error %.3g vs closed form (sigma^2 = 0.25, T = 1, Lx = 16, Nx = 128), ", err) +
              fmt("semigroup error %.3g", semi)};
}

Outcome vandermonde() {
  const auto l1 = solve_lambdas(1);
  const double d = std::max({std::abs(l1.lambdas[0] - 6), std::abs(l1.lambdas[1] + 8), std::abs(l1.lambdas[2] - 3)});
  double res = 0.0;
  for (int i = 0; i <= 3; ++i) res = std::max(res, solve_lambdas(i).residual());
  return {d < 1e-12 && res < 1e-9, fmt("i = 1 deviation from (6, -8, 3) %.3g, ", d) + fmt("max moment residual (i <= 3) %.3g", res)};
}

Outcome spread_only(TheoremId id, bool separation) {
  const auto reports = run_cases(id);
  bool ok = !reports.empty();
  double worst = 0.0;
  std::string bad;
  for (const auto& r : reports) {
    worst = std::max(worst, r.spread);
    bool good = r.spread <= 16.0;
    if (separation) good = good && r.control_spread >= 4.0 * r.spread;
    if (!good) bad += " [" + describe(r) + "]";
    ok = ok && good;
  }
  return {ok, std::to_string(reports.size()) + " cases, worst spread " + fmt("%.3g", worst) + bad};
}

Outcome equivalence_suites() {
  Outcome o{true, ""};
  for (auto id : {TheoremId::t3_1, TheoremId::c3_2, TheoremId::t3_3, TheoremId::c3_4, TheoremId::t4_3}) {
    const Outcome r = spread_only(id, true);
    o.pass = o.pass && r.pass;
    o.detail += to_string(id) + ": " + r.detail + "; ";
  }
  return o;
}

Outcome heat_suite() {
  Outcome two = spread_only(TheoremId::t1_1, false);
  bool ok = two.pass;
  std::string detail = "t1.1: " + two.detail + "; one-sided:";
  for (auto id : {TheoremId::t5_1, TheoremId::t5_3, TheoremId::t5_4, TheoremId::t5_5})
    for (const auto& r : run_cases(id)) {
      ok = ok && r.passed;
      if (!r.passed) detail += " [" + describe(r) + "]";
    }
  detail += ok ? " all stable within 2x" : "";
  return {ok, detail};
}

Outcome decay() {
  std::vector<DecayReport> d;
  run_cases(TheoremId::lemma5_2, &d);
  if (d.empty()) return {false, "no decay table"};
  double slope = -1e300;
  for (double s : d[0].slopes) slope = std::max(slope, s);
  int bad = 0;
  for (const auto& r : d[0].rows) bad += r.ok ? 0 : 1;
  return {d[0].passed, std::to_string(d[0].rows.size()) + " cells, " + std::to_string(bad) +
                           " violations, max fitted slope " + fmt("%.4f", slope)};
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  if (cli_path.empty()) return {false, "no --cli given"};
  const fs::path base = fs::temp_directory_path() / "parabolic_acceptance";
  fs::remove_all(base);
  for (const char* run : {"a", "b"}) {
    const std::string cmd = "\"" + cli_path + "\" verify --seed 1 --out-dir \"" + (base / run).string() + "\" > /dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return {false, "could not run " + cli_path};
  }
  std::set<std::string> names;
  for (const char* run : {"a", "b"})
    for (const auto& e : fs::directory_iterator(base / run)) names.insert(e.path().filename().string());
  int differing = 0;
  for (const auto& n : names)
    if (!fs::exists(base / "a" / n) || !fs::exists(base / "b" / n) ||
        read_all(base / "a" / n) != read_all(base / "b" / n))
      ++differing;
  fs::remove_all(base);
  return {!names.empty() && differing == 0,
          std::to_string(names.size()) + " report files, " + std::to_string(differing) + " differ"};
}

struct Criterion {
  int id;
  std::string name;
  double budget;  // seconds, 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int a = 1; a < argc; ++a) {
    const std::string s = argv[a];
    if (s == "--cli" && a + 1 < argc) cli_path = argv[++a];
    else only.insert(std::atoi(s.c_str()));
  }
  const std::vector<Criterion> all{
      {1, "partition of unity", 60, partition_of_unity},
      {2, "half derivative: spectral vs quadrature", 60, half_derivative},
      {3, "heat oracle and semigroup", 60, heat_oracle},
      {4, "reflection coefficients", 60, vandermonde},
      {5, "difference norm vs dyadic norm over corpus", 600, [] { return spread_only(TheoremId::p2_1, false); }},
      {6, "equivalence suites t3.1 c3.2 t3.3 c3.4 t4.3", 900, equivalence_suites},
      {7, "heat extension suites t1.1 and t5.x", 900, heat_suite},
      {8, "multiplier decay", 120, decay},
      {9, "determinism of verify reports", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && sec > c.budget) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s budget", c.budget);
    }
    std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), sec);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
