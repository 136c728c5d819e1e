#include "parabolic/dyadic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace parabolic {

namespace {

double seed_exp(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double seed_exp_sq(double x) { return x > 0.0 ? std::exp(-1.0 / (x * x)) : 0.0; }

double step_with(double x, double (*s)(double)) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = s(x);
  return a / (a + s(1.0 - x));
}

}  // namespace

double smooth_step(double x) { return step_with(x, seed_exp); }

double BumpProfile::eta(double r) const {
  const double x = 2.0 - r;
  return kind == BumpKind::exp_step ? step_with(x, seed_exp) : step_with(x, seed_exp_sq);
}

double BumpProfile::chi(double r) const {
  if (r <= 0.5 || r >= 2.0) return 0.0;
  return eta(r) - eta(2.0 * r);
}

double partition_radius(PartitionKind kind, const Frequency& f) {
  const double r = f.xi_norm();
  if (kind == PartitionKind::spatial) return r;
  return r + std::sqrt(2.0 * kPi * std::abs(f.tau));
}

const std::vector<double>& Partition::block(int i) const {
  if (i < 0 || i > i_max)
    throw std::out_of_range("partition block " + std::to_string(i) + " outside [0, " +
                            std::to_string(i_max) + "]");
  return i == 0 ? psi_hat : phi_hats[static_cast<std::size_t>(i - 1)];
}

Partition build_partition(const GridSpec& spec, PartitionKind kind, BumpProfile bump) {
  Partition part;
  part.spec = spec;
  part.kind = kind;
  part.bump = bump;
  const Domain d = part.domain();

  double rho_max = 0.0;
  for_each_frequency(spec, d, [&](std::size_t, const Frequency& f) {
    rho_max = std::max(rho_max, partition_radius(kind, f));
  });
  // Smallest I with 2^I >= rho_max: block I+1 starts at 2^I and vanishes.
  part.i_max = std::max(1, static_cast<int>(std::ceil(std::log2(rho_max) - 1e-12)));
  if (part.i_max < 3)
    throw std::invalid_argument("partition: grid too coarse, only " +
                                std::to_string(part.i_max) + " dyadic shells fit");

  const std::size_t size = spec.size(d);
  part.psi_hat.assign(size, 1.0);
  part.phi_hats.assign(static_cast<std::size_t>(part.i_max), std::vector<double>(size, 0.0));
  for_each_frequency(spec, d, [&](std::size_t idx, const Frequency& f) {
    double sum = 0.0;
    for (int i = 1; i <= part.i_max; ++i) {
      // phi_i(xi, tau) = phi(2^-i xi, 2^-2i tau)
      Frequency scaled = f;
      const double s = std::ldexp(1.0, -i);
      scaled.xi = {f.xi[0] * s, f.xi[1] * s};
      scaled.tau = f.tau * s * s;
      const double v = bump.chi(partition_radius(kind, scaled));
      part.phi_hats[static_cast<std::size_t>(i - 1)][idx] = v;
      sum += v;
    }
    part.psi_hat[idx] = 1.0 - sum;
  });
  return part;
}

Field block_project(const Partition& partition, int i, const Field& field) {
  require_same_lattice(partition.spec, partition.domain(), field.spec, field.domain,
                       "block_project");
  const auto& window = partition.block(i);
  Spectrum s = forward(field);
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) s.coeffs[k] *= window[k];
  return inverse(s);
}

SecondOrderBlocks second_order_blocks(const Partition& spatial) {
  if (spatial.kind != PartitionKind::spatial)
    throw std::invalid_argument("second_order_blocks: needs the spatial partition");
  SecondOrderBlocks out;
  out.spec = spatial.spec;
  const std::size_t size = spatial.psi_hat.size();
  out.psi_hat.assign(size, 0.0);
  out.phi_hats.assign(static_cast<std::size_t>(spatial.i_max), std::vector<double>(size));
  const auto& bump = spatial.bump;
  for_each_frequency(spatial.spec, Domain::space, [&](std::size_t idx, const Frequency& f) {
    const double r = f.xi_norm();
    out.psi_hat[idx] = spatial.psi_hat[idx] + bump.chi(r / 2.0) + bump.chi(r / 4.0);
    for (int i = 1; i <= spatial.i_max; ++i) {
      const double ri = std::ldexp(r, -i);
      out.phi_hats[static_cast<std::size_t>(i - 1)][idx] =
          bump.chi(ri / 2.0) + bump.chi(ri) + bump.chi(2.0 * ri);
    }
  });
  return out;
}

double nyquist_guard_radius(const GridSpec& spec, Domain d) {
  const double xi_edge = spec.nx / (2.0 * spec.lx);
  double edge = xi_edge;
  if (d == Domain::space_time) {
    const double tau_edge = spec.nt / (2.0 * spec.lt);
    edge = std::min(edge, std::sqrt(2.0 * kPi * tau_edge));
  }
  return edge / std::sqrt(2.0);
}

double truncation_energy(const Field& field) {
  const Spectrum s = forward(field);
  const PartitionKind kind =
      field.domain == Domain::space_time ? PartitionKind::parabolic : PartitionKind::spatial;
  const double guard = nyquist_guard_radius(field.spec, field.domain);
  double total = 0.0;
  double high = 0.0;
  for_each_frequency(field.spec, field.domain, [&](std::size_t idx, const Frequency& f) {
    const double e = std::norm(s.coeffs[idx]);
    total += e;
    if (partition_radius(kind, f) >= guard) high += e;
  });
  return total > 0.0 ? high / total : 0.0;
}

}  // namespace parabolic
