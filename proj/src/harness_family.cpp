#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "parabolic/dyadic.hpp"
#include "parabolic/harness.hpp"

namespace parabolic {

namespace {

constexpr double kTruncationBudget = 1e-8;
constexpr double kEdgeBudget = 1e-12;

std::string number_label(const std::string& key, double v) {
  std::ostringstream os;
  os << key << "=" << v;
  return os.str();
}

void check_budgets(const FamilyMember& m, bool localized) {
  const double te = truncation_energy(m.field);
  if (!(te < kTruncationBudget))
    throw std::invalid_argument("family member " + m.label + " has truncation energy " +
                                std::to_string(te));
  if (localized) {
    const double ed = edge_decay(m.field);
    if (!(ed < kEdgeBudget))
      throw std::invalid_argument("family member " + m.label + " is not decayed at the boundary (" +
                                  std::to_string(ed) + ")");
  }
}

Field gaussian(const GridSpec& g, Domain d, double a, double b, double x0, double t0, int kx,
               int kt) {
  return sample(
      g,
      [&](const Point& p) {
        const double dx = p.x[0] - x0, dy = p.x[1];
        const double r2 = dx * dx + (g.n == 2 ? dy * dy : 0.0);
        const double tt = d == Domain::space_time ? p.t - t0 : 0.0;
        const double phase = 2.0 * kPi * (kx * p.x[0] / g.lx + (d == Domain::space_time ? kt * p.t / g.lt : 0.0));
        return std::exp(-a * r2 - b * tt * tt) * std::polar(1.0, phase);
      },
      d);
}

Field band_limited(const GridSpec& g, Domain d, int band, std::mt19937_64& rng) {
  // Draw order depends only on the band, so refinements see the same field.
  const bool st = d == Domain::space_time;
  if (band >= g.nx / 2 || (st && band >= g.nt / 2))
    throw std::invalid_argument("band-limited member does not fit the lattice");
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum s{g, d, std::vector<cplx>(g.size(d))};
  const int nx = g.nx;
  const int ny = g.n == 2 ? nx : 1;
  const int kt_band = st ? band : 0;
  const int ky_band = g.n == 2 ? band : 0;
  for (int kt = -kt_band; kt <= kt_band; ++kt)
    for (int ky = -ky_band; ky <= ky_band; ++ky)
      for (int kx = -band; kx <= band; ++kx) {
        const double re = normal(rng);
        const double im = normal(rng);
        const std::size_t b = st ? static_cast<std::size_t>(kt + g.nt / 2) : 0;
        const std::size_t y = g.n == 2 ? static_cast<std::size_t>(ky + nx / 2) : 0;
        const std::size_t x = static_cast<std::size_t>(kx + nx / 2);
        s.coeffs[(b * ny + y) * nx + x] = {re, im};
      }
  return inverse(s);
}

}  // namespace

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::gaussian_dilation: return "gaussian_dilation";
    case FamilyKind::random_shell: return "random_shell";
    case FamilyKind::pure_mode_scan: return "pure_mode_scan";
    case FamilyKind::corpus: return "corpus";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(const std::string& s) {
  for (auto k : {FamilyKind::gaussian_dilation, FamilyKind::random_shell,
                 FamilyKind::pure_mode_scan, FamilyKind::corpus})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown family '" + s + "'");
}

std::vector<double> default_epsilons() {
  std::vector<double> out;
  for (int e = -3; e <= 3; ++e) out.push_back(std::ldexp(1.0, e));
  return out;
}

GridSpec dilated_grid(const GridSpec& base, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("dilation parameter must be positive");
  return make_grid(base.n, base.nx, base.nt, base.lx / eps, base.lt / (eps * eps),
                   base.T / (eps * eps));
}

double edge_decay(const Field& field) {
  const GridSpec& g = field.spec;
  const int nx = g.nx;
  const int ny = g.n == 2 ? nx : 1;
  const int nt = field.domain == Domain::space_time ? g.nt : 1;
  double peak = 0.0, edge = 0.0;
  for (int k = 0; k < nt; ++k)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        const double v = std::abs(field.values[static_cast<std::size_t>((k * ny + y) * nx + x)]);
        peak = std::max(peak, v);
        const bool boundary = x == 0 || (g.n == 2 && y == 0) ||
                              (field.domain == Domain::space_time && k == 0);
        if (boundary) edge = std::max(edge, v);
      }
  return peak > 0.0 ? edge / peak : 0.0;
}

std::vector<FamilyMember> generate_family(const FamilySpec& spec, const GridSpec& grid) {
  std::vector<FamilyMember> out;
  const Domain d = spec.domain;
  switch (spec.kind) {
    case FamilyKind::gaussian_dilation: {
      if (spec.epsilons.empty()) throw std::invalid_argument("dilation family needs epsilons");
      for (double eps : spec.epsilons) {
        FamilyMember m;
        m.label = number_label("eps", eps);
        m.parameter = eps;
        m.grid = dilated_grid(grid, eps);
        m.field = sample(
            m.grid,
            [&](const Point& p) {
              const double x2 = p.x[0] * p.x[0] + p.x[1] * p.x[1];
              const double t = d == Domain::space_time ? p.t : 0.0;
              return cplx(std::exp(-spec.a * eps * eps * x2 - spec.b * std::pow(eps, 4) * t * t));
            },
            d);
        check_budgets(m, true);
        out.push_back(std::move(m));
      }
      break;
    }
    case FamilyKind::random_shell: {
      const Partition part = build_partition(
          grid, d == Domain::space_time ? PartitionKind::parabolic : PartitionKind::spatial);
      std::mt19937_64 rng(spec.seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int j = spec.shell_lo; j <= spec.shell_hi; ++j) {
        const auto& window = part.block(j);
        Spectrum s{grid, d, std::vector<cplx>(grid.size(d))};
        for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
          const double re = normal(rng);
          s.coeffs[i] = cplx(re, normal(rng)) * window[i];
        }
        FamilyMember m;
        m.label = number_label("shell", j);
        m.parameter = j;
        m.grid = grid;
        m.field = inverse(s);
        check_budgets(m, false);
        out.push_back(std::move(m));
      }
      break;
    }
    case FamilyKind::pure_mode_scan: {
      for (int j = spec.shell_lo; j <= spec.shell_hi; ++j) {
        // Nearest lattice xi to 2^j on the first axis, tau = 0.
        const double target = std::ldexp(1.0, j);
        const int k = static_cast<int>(std::lround(target * grid.lx));
        if (k >= grid.nx / 2)
          throw std::invalid_argument("pure mode at shell " + std::to_string(j) + " is off the lattice");
        FamilyMember m;
        m.label = number_label("shell", j);
        m.parameter = j;
        m.grid = grid;
        m.field = sample(
            grid, [&](const Point& p) { return std::polar(1.0, 2.0 * kPi * k * p.x[0] / grid.lx); }, d);
        out.push_back(std::move(m));
      }
      break;
    }
    case FamilyKind::corpus: {
      if (spec.count < 1) throw std::invalid_argument("corpus needs at least one member");
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      auto log_uniform = [&](double lo, double hi) {
        return lo * std::pow(hi / lo, unit(rng));
      };
      for (int c = 0; c < spec.count; ++c) {
        FamilyMember m;
        m.label = number_label("member", c);
        m.parameter = c;
        m.grid = grid;
        const bool random_member = c % 4 == 3;
        if (random_member) {
          m.field = band_limited(grid, d, spec.band, rng);
        } else {
          const double a = log_uniform(spec.a, spec.a_max);
          const double b = log_uniform(spec.b, spec.b_max);
          const double x0 = spec.shift * (2.0 * unit(rng) - 1.0);
          const double t0 = spec.shift * (2.0 * unit(rng) - 1.0);
          const bool modulated = c % 2 == 1;
          const int kx = modulated ? static_cast<int>(unit(rng) * (spec.modulation + 1)) : 0;
          const int kt = modulated ? static_cast<int>(unit(rng) * (spec.modulation + 1)) : 0;
          m.field = gaussian(grid, d, a, b, x0, t0, std::min(kx, spec.modulation),
                             std::min(kt, spec.modulation));
        }
        check_budgets(m, !random_member);
        out.push_back(std::move(m));
      }
      break;
    }
  }
  return out;
}

}  // namespace parabolic
