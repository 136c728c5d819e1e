#include "parabolic/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "parabolic/spectral.hpp"

namespace parabolic {

namespace {

constexpr double kFlagThreshold = 1e-4;
// zeta(-1/2)
constexpr double kZetaMinusHalf = -0.207886224977354566;

double powp(double a, double p) {
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

double rootp(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

void check_p(double p, const char* what) {
  if (!(p >= 1.0)) throw std::invalid_argument(std::string(what) + ": p must lie in [1, inf]");
}

void check_q(double q, const char* what) {
  if (!(q >= 1.0)) throw std::invalid_argument(std::string(what) + ": q must lie in [1, inf]");
}

/// Time slice range [k0, k1) for a region.
std::pair<int, int> slice_range(const GridSpec& spec, Region region) {
  if (!region.cylinder) return {0, spec.nt};
  const int count = slices_for_duration(spec, region.T);
  if (count < 1 || region.T > spec.lt / 2.0 * (1 + 1e-12))
    throw std::invalid_argument("cylinder height must lie in (0, Lt/2]");
  return {spec.zero_slice(), spec.zero_slice() + count};
}

void require_space_time(const Field& f, const char* what) {
  if (f.domain != Domain::space_time)
    throw std::invalid_argument(std::string(what) + ": needs a space-time field");
}

void finish(NormResult& r, const Field& field) {
  r.value = r.recombine();
  r.truncation_energy = truncation_energy(field);
  r.flagged = r.truncation_energy > kFlagThreshold;
}

/// First-difference-in-time seminorm at smoothness s.
double time_seminorm(const Field& g, double s, double p, Region region) {
  const GridSpec& spec = g.spec;
  const std::size_t m = spec.spatial_size();
  const double ht = spec.ht();
  const auto [k0, k1] = slice_range(spec, region);
  const bool inf = std::isinf(p);
  const double expo = inf ? s / 2.0 : 1.0 + p * s / 2.0;
  const double hxn = spec.n == 1 ? spec.hx() : spec.hx() * spec.hx();
  double acc = 0.0;

  if (p == 2.0 && !region.cylinder) {
    // Periodic lags: sum_k |f(k+lag) - f(k)|^2 = sum |F|^2 (2 - 2 cos(2 pi tau lag ht)) / N.
    const int nt = spec.nt;
    std::vector<double> lag_weight;
    for (int lag = -nt / 2; lag < nt / 2; ++lag)
      lag_weight.push_back(lag == 0 ? 0.0 : std::pow(std::abs(lag) * ht, -expo));
    const Spectrum f = forward(g);
    const double scale = 1.0 / (spec.cell_volume(Domain::space_time) *
                                spec.cell_volume(Domain::space_time) *
                                static_cast<double>(spec.size(Domain::space_time)));
    std::vector<double> by_tau(static_cast<std::size_t>(nt), 0.0);
    for (int b = 0; b < nt; ++b)
      for (std::size_t x = 0; x < m; ++x)
        by_tau[static_cast<std::size_t>(b)] += std::norm(f.coeffs[static_cast<std::size_t>(b) * m + x]);
    for (int b = 0; b < nt; ++b) {
      const double tau = spec.tau(b);
      double v = 0.0;
      for (int lag = -nt / 2; lag < nt / 2; ++lag)
        v += lag_weight[static_cast<std::size_t>(lag + nt / 2)] *
             (2.0 - 2.0 * std::cos(2.0 * kPi * tau * lag * ht));
      acc += v * by_tau[static_cast<std::size_t>(b)];
    }
    return std::sqrt(acc * scale * ht * ht * hxn);
  }

  auto pair_term = [&](int ka, int kb, double dist) {
    const cplx* a = &g.values[static_cast<std::size_t>(ka) * m];
    const cplx* b = &g.values[static_cast<std::size_t>(kb) * m];
    const double w = std::pow(dist, -expo);
    if (inf) {
      double mx = 0.0;
      for (std::size_t x = 0; x < m; ++x) mx = std::max(mx, std::norm(a[x] - b[x]));
      acc = std::max(acc, std::sqrt(mx) * w);
    } else {
      double sum = 0.0;
      if (p == 2.0) {
        for (std::size_t x = 0; x < m; ++x) sum += std::norm(a[x] - b[x]);
      } else {
        for (std::size_t x = 0; x < m; ++x) sum += powp(std::abs(a[x] - b[x]), p);
      }
      acc += sum * w;
    }
  };

  if (region.cylinder) {
    for (int ka = k0; ka < k1; ++ka)
      for (int kb = k0; kb < k1; ++kb)
        if (ka != kb) pair_term(ka, kb, std::abs(ka - kb) * ht);
  } else {
    const int nt = spec.nt;
    for (int lag = -nt / 2; lag < nt / 2; ++lag) {
      if (lag == 0) continue;
      for (int ka = 0; ka < nt; ++ka) pair_term(ka, ((ka + lag) % nt + nt) % nt, std::abs(lag) * ht);
    }
  }
  if (inf) return acc;
  return rootp(acc * ht * ht * hxn, p);
}

/// Second-difference-in-space seminorm at smoothness s.
double space_seminorm(const Field& g, double s, double p, Region region) {
  const GridSpec& spec = g.spec;
  const int nx = spec.nx;
  const int n = spec.n;
  const std::size_t m = spec.spatial_size();
  const double hx = spec.hx();
  const auto [k0, k1] = g.domain == Domain::space ? std::pair<int, int>{0, 1}
                                                   : slice_range(spec, region);
  const bool inf = std::isinf(p);
  const double expo = inf ? s : n + p * s;
  auto wrap = [nx](int j) { return ((j % nx) + nx) % nx; };
  const int ny = n == 1 ? 1 : nx;
  const int ly_lo = n == 1 ? 0 : -nx / 2;
  const int ly_hi = n == 1 ? 1 : nx / 2;
  const double hxn = n == 1 ? hx : hx * hx;
  const double dt = g.domain == Domain::space ? 1.0 : spec.ht();

  double acc = 0.0;
  if (p == 2.0) {
    // Parseval per slice: the second difference multiplies F by 2 cos(2 pi xi.Y) - 2.
    std::vector<double> power(m, 0.0);
    for (int k = k0; k < k1; ++k) {
      const Spectrum f = forward(g.domain == Domain::space ? g : g.slice(k));
      for (std::size_t i = 0; i < m; ++i) power[i] += std::norm(f.coeffs[i]);
    }
    for_each_frequency(spec, Domain::space, [&](std::size_t idx, const Frequency& fq) {
      if (power[idx] == 0.0) return;
      double wsum = 0.0;
      for (int ly = ly_lo; ly < ly_hi; ++ly)
        for (int lx = -nx / 2; lx < nx / 2; ++lx) {
          if (lx == 0 && ly == 0) continue;
          const double dist = hx * std::sqrt(double(lx) * lx + double(ly) * ly);
          const double c = 2.0 * std::cos(2.0 * kPi * (fq.xi[0] * lx + fq.xi[1] * ly) * hx) - 2.0;
          wsum += c * c * std::pow(dist, -expo);
        }
      acc += wsum * power[idx];
    });
    // |F|^2 carries hxn^2 from the cell-volume scaling; Parseval divides by N^n.
    acc /= hxn * hxn * static_cast<double>(m);
    return std::sqrt(acc * hxn * hxn * dt);
  }
  for (int k = k0; k < k1; ++k) {
    const cplx* f = &g.values[static_cast<std::size_t>(k) * m];
    for (int ly = ly_lo; ly < ly_hi; ++ly) {
      for (int lx = -nx / 2; lx < nx / 2; ++lx) {
        if (lx == 0 && ly == 0) continue;
        const double dist = hx * std::sqrt(double(lx) * lx + double(ly) * ly);
        const double w = std::pow(dist, -expo);
        double term = 0.0;
        for (int y = 0; y < ny; ++y) {
          const std::size_t rp = static_cast<std::size_t>(wrap(y + ly)) * nx;
          const std::size_t rm = static_cast<std::size_t>(wrap(y - ly)) * nx;
          const std::size_t r0 = static_cast<std::size_t>(y) * nx;
          // x + lx and x - lx wrap at most once since |lx| <= nx / 2.
          int xp = wrap(lx), xm = wrap(-lx);
          for (int x = 0; x < nx; ++x) {
            const cplx d2 = f[rp + xp] - 2.0 * f[r0 + x] + f[rm + xm];
            if (inf)
              term = std::max(term, std::norm(d2));
            else
              term += p == 2.0 ? std::norm(d2) : powp(std::abs(d2), p);
            if (++xp == nx) xp = 0;
            if (++xm == nx) xm = 0;
          }
        }
        if (inf)
          acc = std::max(acc, std::sqrt(term) * w);
        else
          acc += term * w;
      }
    }
  }
  if (inf) return acc;
  return rootp(acc * hxn * hxn * dt, p);
}

std::string beta_label(std::array<int, 2> beta, int l, int n) {
  std::string s = "D^(" + std::to_string(beta[0]);
  if (n == 2) s += "," + std::to_string(beta[1]);
  return s + ")_t^" + std::to_string(l);
}

NormResult block_norm(const Field& field, double alpha, double p, double q,
                      const Partition& partition, NormKind kind) {
  check_p(p, "besov norm");
  check_q(q, "besov norm");
  require_same_lattice(partition.spec, partition.domain(), field.spec, field.domain,
                       "besov norm");
  NormResult r;
  r.kind = kind;
  r.alpha = alpha;
  r.p = p;
  r.q = q;
  r.aggregation = Aggregation::besov_blocks;
  const Spectrum s = forward(field);
  for (int i = 0; i <= partition.i_max; ++i) {
    const auto& window = partition.block(i);
    Spectrum b = s;
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) b.coeffs[k] *= window[k];
    const double v = lp_norm(inverse(b), p) * std::exp2(alpha * i);
    r.breakdown.push_back({i == 0 ? "psi" : "phi_" + std::to_string(i), v});
  }
  finish(r, field);
  return r;
}

/// Hurwitz zeta(s, a) for s > 1, a > 0, via Euler-Maclaurin.
double hurwitz_zeta(double s, double a) {
  constexpr int kShift = 12;
  // B_2k / (2k)!
  static const double kB[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0,
                              1.0 / 47900160.0, -691.0 / 1307674368000.0};
  double sum = 0.0;
  for (int k = 0; k < kShift; ++k) sum += std::pow(a + k, -s);
  const double x = a + kShift;
  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  double rising = s;  // s (s+1) ... (s+2j-2)
  double xp = std::pow(x, -s - 1.0);
  for (int j = 0; j < 6; ++j) {
    sum += kB[j] * rising * xp;
    rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
    xp /= x * x;
  }
  return sum;
}

/// Periodized |s|^{-3/2} at s = m h, m = 1..N-1.
std::vector<double> periodic_kernel(int nt, double lt) {
  std::vector<double> w(static_cast<std::size_t>(nt), 0.0);
  for (int m = 1; m < nt; ++m) {
    const double x = double(m) / nt;
    w[static_cast<std::size_t>(m)] =
        std::pow(lt, -1.5) * (hurwitz_zeta(1.5, x) + hurwitz_zeta(1.5, 1.0 - x));
  }
  return w;
}

void raw_quadrature_series(const std::vector<double>& w, double h, const cplx* in,
                           std::size_t stride, cplx* out, int nt) {
  const double corr = kZetaMinusHalf * std::pow(h, 1.5) / (h * h);
  for (int k = 0; k < nt; ++k) {
    const cplx fk = in[static_cast<std::size_t>(k) * stride];
    cplx sum = 0.0;
    for (int m = 1; m < nt; ++m)
      sum += (fk - in[static_cast<std::size_t>((k + m) % nt) * stride]) * w[static_cast<std::size_t>(m)];
    const cplx fp = in[static_cast<std::size_t>((k + 1) % nt) * stride];
    const cplx fm = in[static_cast<std::size_t>((k + nt - 1) % nt) * stride];
    out[static_cast<std::size_t>(k) * stride] = h * sum + corr * (fp - 2.0 * fk + fm);
  }
}

}  // namespace

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::sobolev: return "sobolev";
    case NormKind::besov_lp: return "besov_lp";
    case NormKind::besov_diff: return "besov_diff";
    case NormKind::besov_highorder: return "besov_highorder";
    case NormKind::w2ii: return "w2ii";
    case NormKind::besov_halfcyl: return "besov_halfcyl";
    case NormKind::spatial_besov: return "spatial_besov";
  }
  return "unknown";
}

double NormResult::recombine() const {
  if (breakdown.empty()) return 0.0;
  switch (aggregation) {
    case Aggregation::single:
      return breakdown.front().value;
    case Aggregation::sum: {
      double s = 0.0;
      for (const auto& t : breakdown) s += t.value;
      return s;
    }
    case Aggregation::p_sum: {
      double s = 0.0;
      if (std::isinf(p)) {
        for (const auto& t : breakdown) s += t.value;
        return s;
      }
      for (const auto& t : breakdown) s += powp(t.value, p);
      return rootp(s, p);
    }
    case Aggregation::besov_blocks: {
      if (std::isinf(q)) {
        double mx = 0.0;
        for (const auto& t : breakdown) mx = std::max(mx, t.value);
        return mx;
      }
      double s = 0.0;
      for (std::size_t i = 1; i < breakdown.size(); ++i) s += powp(breakdown[i].value, q);
      return breakdown.front().value + rootp(s, q);
    }
  }
  return 0.0;
}

DerivativeSource spectral_derivatives(const Field& field) {
  return [field](std::array<int, 2> beta, int l) { return derivative(field, beta, l); };
}

std::vector<std::array<int, 2>> multi_indices(int n, int order) {
  if (n != 1 && n != 2) throw std::invalid_argument("multi_indices: n must be 1 or 2");
  if (order < 0) throw std::invalid_argument("multi_indices: negative order");
  if (n == 1) return {{order, 0}};
  std::vector<std::array<int, 2>> out;
  for (int a = order; a >= 0; --a) out.push_back({a, order - a});
  return out;
}

double lp_norm(const Field& field, double p, Region region) {
  check_p(p, "lp_norm");
  std::size_t begin = 0;
  std::size_t end = field.values.size();
  if (region.cylinder) {
    require_space_time(field, "lp_norm on a cylinder");
    const auto [k0, k1] = slice_range(field.spec, region);
    begin = static_cast<std::size_t>(k0) * field.spec.spatial_size();
    end = static_cast<std::size_t>(k1) * field.spec.spatial_size();
  }
  if (std::isinf(p)) {
    double mx = 0.0;
    for (std::size_t i = begin; i < end; ++i) mx = std::max(mx, std::abs(field.values[i]));
    return mx;
  }
  double s = 0.0;
  if (p == 2.0) {
    for (std::size_t i = begin; i < end; ++i) s += std::norm(field.values[i]);
  } else {
    for (std::size_t i = begin; i < end; ++i) s += powp(std::abs(field.values[i]), p);
  }
  return rootp(s * field.spec.cell_volume(field.domain), p);
}

NormResult sobolev_norm(const Field& field, double alpha, double p) {
  check_p(p, "sobolev_norm");
  require_space_time(field, "sobolev_norm");
  NormResult r;
  r.kind = NormKind::sobolev;
  r.alpha = alpha;
  r.p = p;
  r.aggregation = Aggregation::single;
  r.breakdown.push_back({"Lp[J^alpha f]", lp_norm(bessel_potential(field, -alpha), p)});
  finish(r, field);
  return r;
}

NormResult besov_lp_norm(const Field& field, double alpha, double p, double q,
                         const Partition& partition) {
  require_space_time(field, "besov_lp_norm");
  return block_norm(field, alpha, p, q, partition, NormKind::besov_lp);
}

NormResult spatial_besov_norm(const Field& slice, double alpha, double p, double q,
                              const Partition& partition) {
  if (slice.domain != Domain::space)
    throw std::invalid_argument("spatial_besov_norm: needs a spatial field");
  return block_norm(slice, alpha, p, q, partition, NormKind::spatial_besov);
}

NormResult besov_diff_norm(const Field& field, double alpha, double p, Region region) {
  check_p(p, "besov_diff_norm");
  require_space_time(field, "besov_diff_norm");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("besov_diff_norm: alpha must lie in (0, 2)");
  NormResult r;
  r.kind = NormKind::besov_diff;
  r.alpha = alpha;
  r.p = p;
  r.region = region;
  r.aggregation = Aggregation::sum;
  r.breakdown.push_back({"Lp", lp_norm(field, p, region)});
  r.breakdown.push_back({"dt_diff", time_seminorm(field, alpha, p, region)});
  r.breakdown.push_back({"dx2_diff", space_seminorm(field, alpha, p, region)});
  finish(r, field);
  return r;
}

NormResult w2ii_norm(const Field& field, int i, double p, Region region,
                     const DerivativeSource& source) {
  check_p(p, "w2ii_norm");
  require_space_time(field, "w2ii_norm");
  if (i < 0) throw std::invalid_argument("w2ii_norm: i must be nonnegative");
  const DerivativeSource src = source ? source : spectral_derivatives(field);
  NormResult r;
  r.kind = NormKind::w2ii;
  r.alpha = 2.0 * i;
  r.p = p;
  r.region = region;
  r.aggregation = Aggregation::p_sum;
  for (int l = 0; l <= i; ++l) {
    for (int order = 0; order + 2 * l <= 2 * i; ++order) {
      for (const auto& beta : multi_indices(field.spec.n, order)) {
        const Field d = (order == 0 && l == 0) ? field : src(beta, l);
        r.breakdown.push_back({beta_label(beta, l, field.spec.n), lp_norm(d, p, region)});
      }
    }
  }
  finish(r, field);
  return r;
}

NormResult besov_highorder_norm(const Field& field, double alpha, double p, Region region,
                                const DerivativeSource& source) {
  check_p(p, "besov_highorder_norm");
  require_space_time(field, "besov_highorder_norm");
  if (!(alpha > 0.0)) throw std::invalid_argument("besov_highorder_norm: alpha must be positive");
  if (std::fmod(alpha, 2.0) == 0.0)
    throw std::invalid_argument("besov_highorder_norm: alpha is an even integer, use w2ii_norm");
  const int i = static_cast<int>(std::floor(alpha / 2.0));
  const double s = alpha - 2.0 * i;
  const DerivativeSource src = source ? source : spectral_derivatives(field);
  NormResult r;
  r.kind = NormKind::besov_highorder;
  r.alpha = alpha;
  r.p = p;
  r.region = region;
  r.aggregation = Aggregation::sum;
  if (i == 0) {
    r.breakdown.push_back({"Lp", lp_norm(field, p, region)});
    r.breakdown.push_back({"dt_diff", time_seminorm(field, s, p, region)});
    r.breakdown.push_back({"dx2_diff", space_seminorm(field, s, p, region)});
  } else {
    r.breakdown.push_back({"W2ii", w2ii_norm(field, i, p, region, src).value});
    r.breakdown.push_back({"dt_diff[D_t^" + std::to_string(i) + "]",
                           time_seminorm(src({0, 0}, i), s, p, region)});
    for (const auto& beta : multi_indices(field.spec.n, 2 * i))
      r.breakdown.push_back({"dx2_diff[" + beta_label(beta, 0, field.spec.n) + "]",
                             space_seminorm(src(beta, 0), s, p, region)});
  }
  finish(r, field);
  return r;
}

NormResult besov_halfcyl_norm(const Field& field, double alpha, double p, double T,
                              const DerivativeSource& source) {
  check_p(p, "besov_halfcyl_norm");
  require_space_time(field, "besov_halfcyl_norm");
  if (!(alpha > 0.0)) throw std::invalid_argument("besov_halfcyl_norm: alpha must be positive");
  if (std::fmod(alpha, 2.0) == 0.0)
    throw std::invalid_argument("besov_halfcyl_norm: alpha is an even integer, use w2ii_norm");
  const Region region = Region::cyl(T);
  const int i = static_cast<int>(std::floor(alpha / 2.0));
  const double s = alpha - 2.0 * i;
  const DerivativeSource src = source ? source : spectral_derivatives(field);
  const int n = field.spec.n;

  NormResult r = w2ii_norm(field, i, p, region, src);
  r.kind = NormKind::besov_halfcyl;
  r.alpha = alpha;
  r.aggregation = Aggregation::p_sum;
  for (int l = 0; l <= i; ++l) {
    for (const auto& beta : multi_indices(n, 2 * i - 2 * l)) {
      const Field d = (i == 0) ? field : src(beta, l);
      const std::string label = beta_label(beta, l, n);
      r.breakdown.push_back({"dt_diff[" + label + "]", time_seminorm(d, s, p, region)});
      r.breakdown.push_back({"dx2_diff[" + label + "]", space_seminorm(d, s, p, region)});
    }
  }
  finish(r, field);
  return r;
}

Field half_derivative_quadrature_raw(const Field& field) {
  require_space_time(field, "half_derivative_quadrature");
  const GridSpec& spec = field.spec;
  const auto w = periodic_kernel(spec.nt, spec.lt);
  Field out(spec, Domain::space_time);
  const std::size_t m = spec.spatial_size();
  for (std::size_t x = 0; x < m; ++x)
    raw_quadrature_series(w, spec.ht(), &field.values[x], m, &out.values[x], spec.nt);
  return out;
}

Field half_derivative_quadrature(const Field& field) {
  Field out = half_derivative_quadrature_raw(field);
  out *= half_derivative_constant(field.spec);
  return out;
}

double half_derivative_constant(const GridSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, double> cache;
  const auto key = std::make_pair(spec.nt, spec.lt);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const int nt = spec.nt;
  const double h = spec.ht();
  const auto w = periodic_kernel(nt, spec.lt);
  std::vector<double> ratios;
  std::vector<cplx> mode(static_cast<std::size_t>(nt));
  std::vector<cplx> out(static_cast<std::size_t>(nt));
  for (int mm = 1; mm <= nt / 8; ++mm) {
    for (int k = 0; k < nt; ++k)
      mode[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * kPi * mm * k / nt);
    raw_quadrature_series(w, h, mode.data(), 1, out.data(), nt);
    const double amp = std::abs(out[0]);
    ratios.push_back(std::sqrt(2.0 * kPi * mm / spec.lt) / amp);
  }
  std::sort(ratios.begin(), ratios.end());
  const std::size_t c = ratios.size();
  const double med = c % 2 ? ratios[c / 2] : 0.5 * (ratios[c / 2 - 1] + ratios[c / 2]);
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = med;
  return med;
}

}  // namespace parabolic
