#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "parabolic/dyadic.hpp"
#include "parabolic/harness.hpp"
#include "parabolic/heat.hpp"
#include "parabolic/spectral.hpp"

namespace parabolic {

namespace {

struct Pair {
  double lhs = 0.0;
  double rhs = 0.0;
};

struct Names {
  std::string lhs, rhs, control;
};

std::array<int, 2> unit_beta(int k) { return k == 0 ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1}; }

bool is_even_integer(double a) { return std::fmod(a, 2.0) == 0.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

double two_over_p(double p) { return std::isinf(p) ? 0.0 : 2.0 / p; }

/// D_t^{1/2} f and the first-order spatial derivatives.
std::vector<Field> first_order_terms(const Field& f) {
  std::vector<Field> out{f};
  for (int k = 0; k < f.spec.n; ++k) out.push_back(derivative(f, unit_beta(k), 0));
  out.push_back(half_time_derivative_spectral(f));
  return out;
}

/// f, D_k D_l f over ordered pairs, D_t f.
std::vector<Field> second_order_terms(const Field& f) {
  std::vector<Field> out{f};
  for (int k = 0; k < f.spec.n; ++k)
    for (int l = 0; l < f.spec.n; ++l) {
      std::array<int, 2> beta{0, 0};
      beta[static_cast<std::size_t>(k)] += 1;
      beta[static_cast<std::size_t>(l)] += 1;
      out.push_back(derivative(f, beta, 0));
    }
  out.push_back(derivative(f, {0, 0}, 1));
  return out;
}

/// f, D^beta f with |beta| = 2i, D_t^i f.
std::vector<Field> order_2i_terms(const Field& f, int i) {
  std::vector<Field> out{f};
  for (const auto& beta : multi_indices(f.spec.n, 2 * i)) out.push_back(derivative(f, beta, 0));
  out.push_back(derivative(f, {0, 0}, i));
  return out;
}

/// f, D_k f, D_k D_j f (k <= j), D_t f.
std::vector<Field> halfcyl_terms(const Field& f) {
  std::vector<Field> out{f};
  for (int k = 0; k < f.spec.n; ++k) out.push_back(derivative(f, unit_beta(k), 0));
  for (const auto& beta : multi_indices(f.spec.n, 2)) out.push_back(derivative(f, beta, 0));
  out.push_back(derivative(f, {0, 0}, 1));
  return out;
}

double sum_over(const std::vector<Field>& terms, const std::function<double(const Field&)>& norm) {
  double s = 0.0;
  for (const auto& t : terms) s += norm(t);
  return s;
}

double self_norm(const FamilyMember& m, const ExperimentParams& P) {
  const Field& f = m.field;
  const double q = P.q_or_p();
  switch (P.self_kind) {
    case NormKind::sobolev: return sobolev_norm(f, P.alpha, P.p).value;
    case NormKind::besov_lp:
      return besov_lp_norm(f, P.alpha, P.p, q, build_partition(m.grid, PartitionKind::parabolic)).value;
    case NormKind::besov_diff: return besov_diff_norm(f, P.alpha, P.p).value;
    case NormKind::besov_highorder: return besov_highorder_norm(f, P.alpha, P.p).value;
    case NormKind::w2ii: return w2ii_norm(f, P.i, P.p).value;
    case NormKind::besov_halfcyl: return besov_halfcyl_norm(f, P.alpha, P.p, m.grid.T).value;
    case NormKind::spatial_besov:
      return spatial_besov_norm(f, P.alpha, P.p, q, build_partition(m.grid, PartitionKind::spatial)).value;
  }
  return 0.0;
}

void validate(TheoremId id, const FamilySpec& fam, const ExperimentParams& P) {
  require(P.p >= 1.0, "p must lie in [1, inf]");
  require(P.q_or_p() >= 1.0, "q must lie in [1, inf]");
  require(P.T > 0.0, "T must be positive");
  require(P.control_shift > 0.0, "control shift must be positive");
  const bool spatial = id == TheoremId::t1_1 || id == TheoremId::t5_1 || id == TheoremId::t5_3 ||
                       id == TheoremId::t5_4 || id == TheoremId::t5_5;
  if (id != TheoremId::self && id != TheoremId::lemma5_2)
    require((fam.domain == Domain::space) == spatial,
            to_string(id) + " needs a " + (spatial ? "spatial" : "space-time") + " family");
  switch (id) {
    case TheoremId::p2_1:
      require(P.alpha > 0.0 && P.alpha < 2.0, "p2.1 needs 0 < alpha < 2");
      break;
    case TheoremId::t3_1:
    case TheoremId::c3_2:
      require(P.p > 1.0 && !std::isinf(P.p), to_string(id) + " needs 1 < p < inf");
      break;
    case TheoremId::c3_4: {
      const int i = static_cast<int>(std::floor(P.alpha / 2.0));
      require(i >= 1 && !is_even_integer(P.alpha), "c3.4 needs alpha in (2i, 2i+2) with i >= 1");
      break;
    }
    case TheoremId::t4_3:
      require(P.alpha > 3.0 && !is_even_integer(P.alpha) && !is_even_integer(P.alpha - 1.0),
              "t4.3 needs alpha > 3 with alpha - 2 and alpha - 3 not even");
      break;
    case TheoremId::t1_1:
      require(P.alpha > 0.0 && !is_even_integer(P.alpha), "t1.1 needs alpha > 0, not an even integer");
      break;
    case TheoremId::t5_3:
    case TheoremId::t5_5:
      require(P.i >= 1, to_string(id) + " needs i >= 1");
      break;
    case TheoremId::lemma5_2:
      throw std::invalid_argument("lemma5.2 is a decay table, use run_multiplier_decay");
    default:
      break;
  }
}

Names names(TheoremId id, const ExperimentParams& P) {
  switch (id) {
    case TheoremId::p2_1: return {"besov_diff(alpha)", "besov_lp(alpha)", "besov_lp(alpha-shift)"};
    case TheoremId::t3_1:
      return {"sobolev(f,alpha)", "sobolev(f,alpha-1)+sum_k sobolev(D_k f,alpha-1)+sobolev(D_t^1/2 f,alpha-1)",
              "same terms at alpha-1-shift"};
    case TheoremId::c3_2:
      return {"sobolev(f,alpha)", "sobolev(f,alpha-2)+sum_kl sobolev(D_k D_l f,alpha-2)+sobolev(D_t f,alpha-2)",
              "same terms at alpha-2-shift"};
    case TheoremId::t3_3:
      return {"besov_lp(f,alpha)", "besov_lp(f,alpha-1)+sum_k besov_lp(D_k f,alpha-1)+besov_lp(D_t^1/2 f,alpha-1)",
              "same terms at alpha-1-shift"};
    case TheoremId::c3_4:
      return {"besov_lp(f,alpha)", "besov_lp(f,alpha-2i)+sum_|b|=2i besov_lp(D^b f,alpha-2i)+besov_lp(D_t^i f,alpha-2i)",
              "same terms at alpha-2i-shift"};
    case TheoremId::t4_3:
      return {"besov_halfcyl(f,alpha,T)",
              "besov_halfcyl over f, D_k f, D_k D_j f, D_t f at alpha-2", "same terms at alpha-2-shift"};
    case TheoremId::t1_1:
      return {"besov_halfcyl(u,alpha,T)", "spatial_besov(f,alpha-2/p)", "spatial_besov(f,alpha-2/p-shift)"};
    case TheoremId::t5_1: return {"lp(u,cyl)", "spatial_besov(f,-2/p)", "coarse grid"};
    case TheoremId::t5_4: return {"spatial_besov(f,-2/p)", "lp(u,cyl)", "coarse grid"};
    case TheoremId::t5_3: return {"w2ii(u,i,cyl)", "spatial_besov(f,2i-2/p)", "coarse grid"};
    case TheoremId::t5_5: return {"spatial_besov(f,2i-2/p)", "w2ii(u,i,cyl)", "coarse grid"};
    case TheoremId::self: {
      const std::string k = to_string(P.self_kind);
      return {k, k, k};
    }
    case TheoremId::lemma5_2: break;
  }
  return {};
}

/// lhs and rhs for one member. `shift` lowers the right side's smoothness.
Pair evaluate(TheoremId id, const FamilyMember& m, const ExperimentParams& P, double shift) {
  const Field& f = m.field;
  const double p = P.p;
  const double q = P.q_or_p();
  const double a = P.alpha;
  switch (id) {
    case TheoremId::p2_1: {
      const Partition part = build_partition(m.grid, PartitionKind::parabolic);
      return {besov_diff_norm(f, a, p).value, besov_lp_norm(f, a - shift, p, q, part).value};
    }
    case TheoremId::t3_1: {
      const double s = a - 1.0 - shift;
      return {sobolev_norm(f, a, p).value,
              sum_over(first_order_terms(f), [&](const Field& g) { return sobolev_norm(g, s, p).value; })};
    }
    case TheoremId::c3_2: {
      const double s = a - 2.0 - shift;
      return {sobolev_norm(f, a, p).value,
              sum_over(second_order_terms(f), [&](const Field& g) { return sobolev_norm(g, s, p).value; })};
    }
    case TheoremId::t3_3: {
      const Partition part = build_partition(m.grid, PartitionKind::parabolic);
      const double s = a - 1.0 - shift;
      return {besov_lp_norm(f, a, p, q, part).value,
              sum_over(first_order_terms(f),
                       [&](const Field& g) { return besov_lp_norm(g, s, p, q, part).value; })};
    }
    case TheoremId::c3_4: {
      const Partition part = build_partition(m.grid, PartitionKind::parabolic);
      const int i = static_cast<int>(std::floor(a / 2.0));
      const double s = a - 2.0 * i - shift;
      return {besov_lp_norm(f, a, p, q, part).value,
              sum_over(order_2i_terms(f, i),
                       [&](const Field& g) { return besov_lp_norm(g, s, p, q, part).value; })};
    }
    case TheoremId::t4_3: {
      const double T = m.grid.T;
      const double s = a - 2.0 - shift;
      return {besov_halfcyl_norm(f, a, p, T).value,
              sum_over(halfcyl_terms(f),
                       [&](const Field& g) { return besov_halfcyl_norm(g, s, p, T).value; })};
    }
    case TheoremId::t1_1: {
      const HeatExtension ext = propagate(f, m.grid);
      const Partition part = build_partition(m.grid, PartitionKind::spatial);
      return {besov_halfcyl_norm(ext.u, a, p, m.grid.T, heat_derivatives(ext)).value,
              spatial_besov_norm(f, a - two_over_p(p) - shift, p, q, part).value};
    }
    case TheoremId::t5_1:
    case TheoremId::t5_4: {
      const HeatExtension ext = propagate(f, m.grid);
      const Partition part = build_partition(m.grid, PartitionKind::spatial);
      const double s = -two_over_p(p);
      const double u_norm = lp_norm(ext.u, p, Region::cyl(m.grid.T));
      const double f_norm = spatial_besov_norm(f, s, p, q, part).value;
      return id == TheoremId::t5_1 ? Pair{u_norm, f_norm} : Pair{f_norm, u_norm};
    }
    case TheoremId::t5_3:
    case TheoremId::t5_5: {
      const HeatExtension ext = propagate(f, m.grid);
      const Partition part = build_partition(m.grid, PartitionKind::spatial);
      const double s = 2.0 * P.i - two_over_p(p);
      const double u_norm =
          w2ii_norm(ext.u, P.i, p, Region::cyl(m.grid.T), heat_derivatives(ext)).value;
      const double f_norm = spatial_besov_norm(f, s, p, q, part).value;
      return id == TheoremId::t5_3 ? Pair{u_norm, f_norm} : Pair{f_norm, u_norm};
    }
    case TheoremId::self:
      return {self_norm(m, P), self_norm(m, P)};
    case TheoremId::lemma5_2:
      break;
  }
  throw std::invalid_argument("unsupported theorem id");
}

ReportRow make_row(const FamilyMember& m, Pair v) {
  ReportRow r;
  r.label = m.label;
  r.parameter = m.parameter;
  r.lhs = v.lhs;
  r.rhs = v.rhs;
  r.ratio = v.rhs > 0.0 ? v.lhs / v.rhs : std::numeric_limits<double>::infinity();
  return r;
}

GridSpec coarse_grid(const GridSpec& g) {
  require(g.nx % 2 == 0 && g.nt % 2 == 0, "refinement grid needs even sizes");
  return make_grid(g.n, g.nx / 2, g.nt / 2, g.lx, g.lt, g.T);
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::p2_1: return "p2.1";
    case TheoremId::t3_1: return "t3.1";
    case TheoremId::c3_2: return "c3.2";
    case TheoremId::t3_3: return "t3.3";
    case TheoremId::c3_4: return "c3.4";
    case TheoremId::t4_3: return "t4.3";
    case TheoremId::t5_1: return "t5.1";
    case TheoremId::t5_3: return "t5.3";
    case TheoremId::t5_4: return "t5.4";
    case TheoremId::t5_5: return "t5.5";
    case TheoremId::t1_1: return "t1.1";
    case TheoremId::lemma5_2: return "lemma5.2";
    case TheoremId::self: return "self";
  }
  return "unknown";
}

TheoremId theorem_from_string(const std::string& s) {
  for (auto id : {TheoremId::p2_1, TheoremId::t3_1, TheoremId::c3_2, TheoremId::t3_3, TheoremId::c3_4,
                  TheoremId::t4_3, TheoremId::t5_1, TheoremId::t5_3, TheoremId::t5_4, TheoremId::t5_5,
                  TheoremId::t1_1, TheoremId::lemma5_2, TheoremId::self})
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown theorem '" + s + "'");
}

bool is_two_sided(TheoremId id) {
  return !(id == TheoremId::t5_1 || id == TheoremId::t5_3 || id == TheoremId::t5_4 ||
           id == TheoremId::t5_5 || id == TheoremId::lemma5_2);
}

double spread_of(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("spread of an empty report");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : rows) {
    if (!std::isfinite(r.ratio) || !(r.ratio > 0.0)) return std::numeric_limits<double>::infinity();
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  return hi / lo;
}

double max_ratio_of(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("max ratio of an empty report");
  double hi = 0.0;
  for (const auto& r : rows) {
    if (!std::isfinite(r.ratio)) return std::numeric_limits<double>::infinity();
    hi = std::max(hi, r.ratio);
  }
  return hi;
}

EquivalenceReport run_equivalence(TheoremId id, const FamilySpec& family, const GridSpec& grid,
                                  const ExperimentParams& params) {
  validate(id, family, params);
  const GridSpec base = make_grid(grid.n, grid.nx, grid.nt, grid.lx, grid.lt, params.T);

  EquivalenceReport rep;
  rep.theorem = to_string(id);
  rep.family = to_string(family.kind);
  rep.grid = base;
  rep.params = params;
  rep.two_sided = is_two_sided(id);
  const Names nm = names(id, params);
  rep.lhs = nm.lhs;
  rep.rhs = nm.rhs;
  rep.control = nm.control;

  const auto members = generate_family(family, base);
  if (members.empty()) throw std::invalid_argument("empty family");

  if (rep.two_sided) {
    for (const auto& m : members) {
      rep.rows.push_back(make_row(m, evaluate(id, m, params, 0.0)));
      if (id != TheoremId::self) rep.control_rows.push_back(make_row(m, evaluate(id, m, params, params.control_shift)));
    }
    rep.spread = spread_of(rep.rows);
    rep.max_ratio = max_ratio_of(rep.rows);
    if (id == TheoremId::self) {
      rep.control_rows = rep.rows;
      rep.control = "none";
    }
    rep.control_spread = spread_of(rep.control_rows);
    rep.control_max_ratio = max_ratio_of(rep.control_rows);
    const bool scaling = family.kind == FamilyKind::gaussian_dilation && id != TheoremId::self;
    rep.passed = rep.spread <= rep.threshold &&
                 (!scaling || rep.control_spread >= rep.separation * rep.spread);
  } else {
    const GridSpec coarse = coarse_grid(base);
    const auto coarse_members = generate_family(family, coarse);
    for (const auto& m : members) rep.rows.push_back(make_row(m, evaluate(id, m, params, 0.0)));
    for (const auto& m : coarse_members)
      rep.control_rows.push_back(make_row(m, evaluate(id, m, params, 0.0)));
    rep.spread = spread_of(rep.rows);
    rep.control_spread = spread_of(rep.control_rows);
    rep.max_ratio = max_ratio_of(rep.rows);
    rep.control_max_ratio = max_ratio_of(rep.control_rows);
    rep.threshold = 2.0;
    rep.separation = 0.0;
    const double hi = std::max(rep.max_ratio, rep.control_max_ratio);
    const double lo = std::min(rep.max_ratio, rep.control_max_ratio);
    rep.passed = std::isfinite(hi) && lo > 0.0 && hi / lo <= rep.threshold;
  }
  return rep;
}

DecayReport run_multiplier_decay(const GridSpec& spatial_grid, const std::vector<int>& shells,
                                 const std::vector<double>& s_values, double p) {
  require(!shells.empty() && !s_values.empty(), "decay table needs shells and s values");
  require(p >= 1.0, "p must lie in [1, inf]");
  constexpr int kProbes = 16;
  DecayReport rep;
  rep.grid = spatial_grid;
  rep.p = p;
  bool ok = true;
  const double s_min = *std::min_element(s_values.begin(), s_values.end());
  require(s_min > 0.0, "s values must be positive");
  for (int i : shells) {
    require(i >= 1, "shells start at 1");
    std::vector<DecayRow> rows;
    for (double s : s_values) {
      DecayRow row;
      row.i = i;
      row.s = s;
      row.t = std::ldexp(s, -2 * i);
      const auto est = estimate_multiplier_norm(symbols::rho(spatial_grid, row.t, i), p, kProbes,
                                                static_cast<std::uint64_t>(i));
      row.lower = est.lower_bound;
      row.upper = est.l1_kernel_upper;
      rows.push_back(row);
    }
    double c_upper = 0.0;
    for (const auto& r : rows)
      if (r.s == s_min) c_upper = r.upper;
    const double C = c_upper * std::exp(s_min / 8.0);
    rep.constants.push_back(C);

    // Least-squares slope of log(upper) against s.
    double ms = 0.0, ml = 0.0;
    for (const auto& r : rows) {
      ms += r.s;
      ml += std::log(r.upper);
    }
    ms /= rows.size();
    ml /= rows.size();
    double num = 0.0, den = 0.0;
    for (const auto& r : rows) {
      num += (r.s - ms) * (std::log(r.upper) - ml);
      den += (r.s - ms) * (r.s - ms);
    }
    const double slope = den > 0.0 ? num / den : 0.0;
    rep.slopes.push_back(slope);
    ok = ok && den > 0.0 && slope <= -0.125;

    for (auto& r : rows) {
      r.bound = C * std::exp(-r.s / 8.0);
      r.ok = r.lower <= r.upper * (1.0 + 1e-9) && r.upper <= r.bound * (1.0 + 1e-12);
      ok = ok && r.ok;
      rep.rows.push_back(r);
    }

    const double t0 = kernel_l1_norm(symbols::rho(spatial_grid, std::ldexp(1e-6, -2 * i), i));
    const double core = kernel_l1_norm(symbols::rho(spatial_grid, 0.0, i));
    rep.t0_upper.push_back(t0);
    rep.core_l1.push_back(core);
    ok = ok && t0 <= 2.0 * core && core <= 2.0 * t0;
  }
  rep.passed = ok;
  return rep;
}

}  // namespace parabolic
