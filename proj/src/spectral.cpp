#include "parabolic/spectral.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "parabolic/dyadic.hpp"
#include "parabolic/norms.hpp"

namespace parabolic {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

Symbol make_symbol(const GridSpec& spec, Domain d, std::string name,
                   const std::function<cplx(const Frequency&)>& fn) {
  Symbol s{spec, d, std::vector<cplx>(spec.size(d)), std::move(name)};
  for_each_frequency(spec, d, [&](std::size_t idx, const Frequency& f) { s.values[idx] = fn(f); });
  return s;
}

cplx base_value(const Frequency& f) {
  const double r2 = f.xi[0] * f.xi[0] + f.xi[1] * f.xi[1];
  return {1.0 + 4.0 * kPi * kPi * r2, kTwoPi * f.tau};
}

void check_axis(const GridSpec& spec, int k) {
  if (k < 1 || k > spec.n) throw std::invalid_argument("spatial axis out of range");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

}  // namespace

Symbol operator*(const Symbol& a, const Symbol& b) {
  require_same_lattice(a.spec, a.domain, b.spec, b.domain, "symbol product");
  Symbol out{a.spec, a.domain, a.values, a.name + "*" + b.name};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

Field apply_symbol(const Symbol& symbol, const Field& field) {
  require_same_lattice(symbol.spec, symbol.domain, field.spec, field.domain, "apply_symbol");
  Spectrum s = forward(field);
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= symbol.values[i];
  return inverse(s);
}

namespace symbols {

Symbol constant(const GridSpec& spec, Domain d, cplx c) {
  std::ostringstream name;
  name << "const:" << c.real();
  return Symbol{spec, d, std::vector<cplx>(spec.size(d), c), name.str()};
}

Symbol parabolic_base(const GridSpec& spec) {
  return make_symbol(spec, Domain::space_time, "base", base_value);
}

Symbol bessel(const GridSpec& spec, double alpha) {
  std::ostringstream name;
  name << "bessel:" << alpha;
  // Re(base) >= 1, so the principal branch of pow never meets its cut.
  return make_symbol(spec, Domain::space_time, name.str(), [alpha](const Frequency& f) {
    return alpha == 0.0 ? cplx(1.0) : std::pow(base_value(f), -alpha / 2.0);
  });
}

Symbol dx(const GridSpec& spec, Domain d, int k) {
  check_axis(spec, k);
  return make_symbol(spec, d, "dx:" + std::to_string(k), [k](const Frequency& f) {
    return cplx(0.0, kTwoPi * f.xi[static_cast<std::size_t>(k - 1)]);
  });
}

Symbol dt(const GridSpec& spec) {
  return make_symbol(spec, Domain::space_time, "dt",
                     [](const Frequency& f) { return cplx(0.0, kTwoPi * f.tau); });
}

Symbol half_dt(const GridSpec& spec) {
  return make_symbol(spec, Domain::space_time, "half_dt", [](const Frequency& f) {
    return cplx(std::sqrt(kTwoPi * std::abs(f.tau)), 0.0);
  });
}

Symbol hilbert(const GridSpec& spec) {
  return make_symbol(spec, Domain::space_time, "hilbert", [](const Frequency& f) {
    if (f.tau == 0.0) return cplx(0.0);
    return cplx(0.0, f.tau > 0.0 ? 1.0 : -1.0);
  });
}

Symbol riesz(const GridSpec& spec, Domain d, int k) {
  check_axis(spec, k);
  return make_symbol(spec, d, "riesz:" + std::to_string(k), [k](const Frequency& f) {
    const double r = f.xi_norm();
    if (r == 0.0) return cplx(0.0);
    return cplx(0.0, -f.xi[static_cast<std::size_t>(k - 1)] / r);
  });
}

Symbol mu1(const GridSpec& spec, int k) {
  check_axis(spec, k);
  return make_symbol(spec, Domain::space_time, "mu1:" + std::to_string(k),
                     [k](const Frequency& f) {
                       return cplx(0.0, kTwoPi * f.xi[static_cast<std::size_t>(k - 1)]) /
                              std::sqrt(base_value(f));
                     });
}

Symbol mu2(const GridSpec& spec) {
  return make_symbol(spec, Domain::space_time, "mu2", [](const Frequency& f) {
    return std::sqrt(kTwoPi * std::abs(f.tau)) / std::sqrt(base_value(f));
  });
}

Symbol nu1(const GridSpec& spec) {
  return make_symbol(spec, Domain::space_time, "nu1", [](const Frequency& f) {
    return std::sqrt(kTwoPi * std::abs(f.tau)) / base_value(f);
  });
}

Symbol nu2(const GridSpec& spec, int k) {
  check_axis(spec, k);
  return make_symbol(spec, Domain::space_time, "nu2:" + std::to_string(k),
                     [k](const Frequency& f) {
                       return cplx(0.0, kTwoPi * f.xi[static_cast<std::size_t>(k - 1)]) /
                              base_value(f);
                     });
}

Symbol nu3(const GridSpec& spec, int k) {
  check_axis(spec, k);
  return make_symbol(spec, Domain::space_time, "nu3:" + std::to_string(k),
                     [k](const Frequency& f) {
                       return cplx(0.0, kTwoPi * f.xi[static_cast<std::size_t>(k - 1)]) *
                              std::sqrt(kTwoPi * std::abs(f.tau)) / base_value(f);
                     });
}

Symbol k_hat(const GridSpec& spec) {
  return make_symbol(spec, Domain::space_time, "khat", [](const Frequency& f) {
    const double denom = 1.0 + kTwoPi * f.xi_norm() + std::sqrt(kTwoPi * std::abs(f.tau));
    return std::sqrt(base_value(f)) / denom;
  });
}

Symbol heat(const GridSpec& spec, double t) {
  if (t < 0.0) throw std::invalid_argument("heat symbol: t must be nonnegative");
  std::ostringstream name;
  name << "heat:" << t;
  return make_symbol(spec, Domain::space, name.str(), [t](const Frequency& f) {
    const double r2 = f.xi[0] * f.xi[0] + f.xi[1] * f.xi[1];
    return cplx(std::exp(-4.0 * kPi * kPi * t * r2), 0.0);
  });
}

Symbol rho(const GridSpec& spec, double t, int i) {
  if (t < 0.0) throw std::invalid_argument("rho symbol: t must be nonnegative");
  const Partition part = build_partition(spec, PartitionKind::spatial);
  if (i < 1 || i > part.i_max) throw std::invalid_argument("rho symbol: shell out of range");
  const SecondOrderBlocks blocks = second_order_blocks(part);
  const auto& window = blocks.phi_hats[static_cast<std::size_t>(i - 1)];
  std::ostringstream name;
  name << "rho:" << t << ":" << i;
  Symbol s{spec, Domain::space, std::vector<cplx>(spec.spatial_size()), name.str()};
  for_each_frequency(spec, Domain::space, [&](std::size_t idx, const Frequency& f) {
    const double r2 = f.xi[0] * f.xi[0] + f.xi[1] * f.xi[1];
    s.values[idx] = window[idx] * std::exp(-t * r2);
  });
  return s;
}

}  // namespace symbols

Symbol symbol_from_name(const GridSpec& spec, const std::string& name) {
  const auto parts = split(name, ':');
  if (parts.empty()) throw std::invalid_argument("empty symbol name");
  const std::string& head = parts[0];
  auto arg = [&](std::size_t i) -> const std::string& {
    if (parts.size() <= i) throw std::invalid_argument("symbol '" + name + "' is missing arguments");
    return parts[i];
  };
  auto axis = [&](std::size_t i) { return static_cast<int>(parse_double(arg(i))); };
  const Domain st = Domain::space_time;

  if (head == "identity") return symbols::identity(spec, st);
  if (head == "const") return symbols::constant(spec, st, parse_double(arg(1)));
  if (head == "bessel") return symbols::bessel(spec, parse_double(arg(1)));
  if (head == "dx") return symbols::dx(spec, st, axis(1));
  if (head == "dt") return symbols::dt(spec);
  if (head == "half_dt") return symbols::half_dt(spec);
  if (head == "hilbert") return symbols::hilbert(spec);
  if (head == "riesz") return symbols::riesz(spec, st, axis(1));
  if (head == "mu1") return symbols::mu1(spec, axis(1));
  if (head == "mu2") return symbols::mu2(spec);
  if (head == "nu1") return symbols::nu1(spec);
  if (head == "nu2") return symbols::nu2(spec, axis(1));
  if (head == "nu3") return symbols::nu3(spec, axis(1));
  if (head == "khat") return symbols::k_hat(spec);
  if (head == "heat") return symbols::heat(spec, parse_double(arg(1)));
  if (head == "rho") return symbols::rho(spec, parse_double(arg(1)), axis(2));
  throw std::invalid_argument("unknown symbol '" + name + "'");
}

Field bessel_potential(const Field& field, double alpha) {
  if (field.domain != Domain::space_time)
    throw std::invalid_argument("bessel_potential: needs a space-time field");
  if (alpha == 0.0) return field;
  return apply_symbol(symbols::bessel(field.spec, alpha), field);
}

Field half_time_derivative_spectral(const Field& field) {
  return apply_symbol(symbols::half_dt(field.spec), field);
}

Field derivative(const Field& field, std::array<int, 2> beta, int l) {
  if (beta[0] < 0 || beta[1] < 0 || l < 0)
    throw std::invalid_argument("derivative: negative order");
  if (field.spec.n == 1 && beta[1] != 0)
    throw std::invalid_argument("derivative: second axis on a 1-D grid");
  if (field.domain == Domain::space && l != 0)
    throw std::invalid_argument("derivative: time derivative of a spatial field");
  if (beta[0] == 0 && beta[1] == 0 && l == 0) return field;
  Spectrum s = forward(field);
  for_each_frequency(field.spec, field.domain, [&](std::size_t idx, const Frequency& f) {
    cplx m = std::pow(cplx(0.0, kTwoPi * f.xi[0]), beta[0]);
    if (beta[1] != 0) m *= std::pow(cplx(0.0, kTwoPi * f.xi[1]), beta[1]);
    if (l != 0) m *= std::pow(cplx(0.0, kTwoPi * f.tau), l);
    s.coeffs[idx] *= m;
  });
  return inverse(s);
}

double kernel_l1_norm(const Symbol& symbol) {
  const Field kernel = inverse(Spectrum{symbol.spec, symbol.domain, symbol.values});
  double sum = 0.0;
  for (const auto& v : kernel.values) sum += std::abs(v);
  return sum * symbol.spec.cell_volume(symbol.domain);
}

MultiplierEstimate estimate_multiplier_norm(const Symbol& symbol, double p, int probes,
                                            std::uint64_t seed) {
  if (!(p >= 1.0)) throw std::invalid_argument("multiplier estimate: p must lie in [1, inf]");
  if (probes < 1) throw std::invalid_argument("multiplier estimate: need at least one probe");
  MultiplierEstimate est;
  est.name = symbol.name;
  est.p = p;
  est.probe_count = probes;

  // A lattice pure mode is an eigenfunction: ratio |sigma| for every p.
  double lower = 0.0;
  for (const auto& v : symbol.values) lower = std::max(lower, std::abs(v));

  const GridSpec& spec = symbol.spec;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int band_x = spec.nx / 8;
  const int band_t = spec.nt / 8;
  for (int probe = 0; probe < probes; ++probe) {
    Spectrum s{spec, symbol.domain, std::vector<cplx>(spec.size(symbol.domain))};
    for_each_frequency(spec, symbol.domain, [&](std::size_t idx, const Frequency& f) {
      const double a = std::abs(f.xi[0]) * spec.lx;
      const double b = std::abs(f.xi[1]) * spec.lx;
      const double c = std::abs(f.tau) * spec.lt;
      if (a <= band_x && b <= band_x && c <= band_t) s.coeffs[idx] = {normal(rng), normal(rng)};
    });
    const Field f = inverse(s);
    const double denom = lp_norm(f, p);
    if (denom <= 0.0) continue;
    lower = std::max(lower, lp_norm(apply_symbol(symbol, f), p) / denom);
  }
  est.lower_bound = lower;
  est.l1_kernel_upper = kernel_l1_norm(symbol);
  return est;
}

}  // namespace parabolic
