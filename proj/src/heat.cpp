#include "parabolic/heat.hpp"

#include <cmath>
#include <stdexcept>

#include "parabolic/spectral.hpp"

namespace parabolic {

namespace {

double xi2(const Frequency& f) { return f.xi[0] * f.xi[0] + f.xi[1] * f.xi[1]; }

/// Multiplies every t >= 0 slice spectrum by mult(xi) exp(-4 pi^2 t |xi|^2).
Field evolve(const HeatExtension& ext, const std::function<cplx(const Frequency&)>& mult) {
  const GridSpec& spec = ext.u.spec;
  const Spectrum f0 = forward(ext.initial);
  Field out(spec, Domain::space_time);
  for (int k = spec.zero_slice(); k < spec.nt; ++k) {
    const double t = spec.t_coord(k);
    Spectrum s = f0;
    for_each_frequency(spec, Domain::space, [&](std::size_t i, const Frequency& f) {
      s.coeffs[i] *= mult(f) * std::exp(-4.0 * kPi * kPi * t * xi2(f));
    });
    out.set_slice(k, inverse(s));
  }
  return out;
}

}  // namespace

HeatExtension propagate(const Field& initial, const GridSpec& spec) {
  if (initial.domain != Domain::space)
    throw std::invalid_argument("propagate: initial data must be a spatial field");
  require_same_lattice(initial.spec, Domain::space, spec, Domain::space, "propagate");
  HeatExtension ext;
  ext.initial = initial;
  ext.T = spec.T;
  ext.u = Field(spec, Domain::space_time);
  ext.u = evolve(ext, [](const Frequency&) { return cplx(1.0); });
  ext.u.set_slice(spec.zero_slice(), initial);
  return ext;
}

DerivativeSource heat_derivatives(const HeatExtension& ext) {
  return [ext](std::array<int, 2> beta, int l) {
    if (beta[0] == 0 && beta[1] == 0 && l == 0) return ext.u;
    return evolve(ext, [&](const Frequency& f) {
      cplx m = std::pow(cplx(0.0, 2.0 * kPi * f.xi[0]), beta[0]) *
               std::pow(cplx(0.0, 2.0 * kPi * f.xi[1]), beta[1]);
      return m * std::pow(-4.0 * kPi * kPi * xi2(f), l);
    });
  };
}

Field kernel_slice(const GridSpec& spec, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_slice: t must be positive");
  const double c = std::pow(4.0 * kPi * t, -spec.n / 2.0);
  // Images beyond this many periods are below double precision.
  const int images = 1 + static_cast<int>(std::ceil(std::sqrt(4.0 * t * 40.0) / spec.lx));
  return sample(
      spec,
      [&](const Point& p) {
        double sum = 0.0;
        for (int a = -images; a <= images; ++a) {
          const double x = p.x[0] + a * spec.lx;
          if (spec.n == 1) {
            sum += std::exp(-x * x / (4.0 * t));
            continue;
          }
          for (int b = -images; b <= images; ++b) {
            const double y = p.x[1] + b * spec.lx;
            sum += std::exp(-(x * x + y * y) / (4.0 * t));
          }
        }
        return cplx(c * sum);
      },
      Domain::space);
}

HeatExtension rescale_extension(const HeatExtension& ext, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("rescale_extension: T must be positive");
  const GridSpec& s = ext.u.spec;
  const double lt = s.lt / T;
  if (lt / 2.0 < 1.0)
    throw std::invalid_argument("rescale_extension: rescaled period too short for cutoff 1");
  const GridSpec spec = make_grid(s.n, s.nx, s.nt, s.lx / std::sqrt(T), lt, 1.0);
  HeatExtension out;
  out.T = 1.0;
  out.initial = Field(spec, Domain::space, ext.initial.values);
  out.u = Field(spec, Domain::space_time, ext.u.values);
  return out;
}

double heat_residual(const HeatExtension& ext) {
  const GridSpec& spec = ext.u.spec;
  const double h = spec.ht();
  // Sixth-order central first derivative.
  static const double w[] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  const int k0 = spec.zero_slice() + 3;
  const int k1 = spec.zero_slice() + spec.cylinder_slices() - 3;
  if (k1 + 3 >= spec.nt || k1 <= k0)
    throw std::invalid_argument("heat_residual: cylinder too short for the stencil");
  std::vector<Spectrum> slices;
  for (int k = k0 - 3; k <= k1 + 3; ++k) slices.push_back(forward(ext.u.slice(k)));
  double worst = 0.0;
  for (int k = k0; k <= k1; ++k) {
    const std::size_t c = static_cast<std::size_t>(k - k0 + 3);
    double num = 0.0, den = 0.0;
    for_each_frequency(spec, Domain::space, [&](std::size_t i, const Frequency& f) {
      cplx dt = 0.0;
      for (int j = 1; j <= 3; ++j)
        dt += w[j - 1] * (slices[c + j].coeffs[i] - slices[c - j].coeffs[i]);
      dt /= h;
      const cplx lap = 4.0 * kPi * kPi * xi2(f) * slices[c].coeffs[i];
      num += std::norm(dt + lap);
      den += std::norm(lap);
    });
    if (den > 0.0) worst = std::max(worst, std::sqrt(num / den));
  }
  return worst;
}

}  // namespace parabolic
