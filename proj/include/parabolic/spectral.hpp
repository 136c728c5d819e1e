#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parabolic/lattice.hpp"

namespace parabolic {

/// A complex function on the frequency lattice, applied as a Fourier
/// multiplier. Values are stored in the same centered layout as Spectrum.
struct Symbol {
  GridSpec spec;
  Domain domain = Domain::space_time;
  std::vector<cplx> values;
  std::string name;
};

Symbol operator*(const Symbol& a, const Symbol& b);

/// inverse(symbol * forward(field)).
Field apply_symbol(const Symbol& symbol, const Field& field);

namespace symbols {

Symbol constant(const GridSpec& spec, Domain d, cplx c);
inline Symbol identity(const GridSpec& spec, Domain d) { return constant(spec, d, 1.0); }

/// 1 + 4 pi^2 |xi|^2 + 2 pi i tau.
Symbol parabolic_base(const GridSpec& spec);
/// (1 + 4 pi^2 |xi|^2 + 2 pi i tau)^(-alpha/2), principal branch.
Symbol bessel(const GridSpec& spec, double alpha);

/// 2 pi i xi_k, k = 1..n.
Symbol dx(const GridSpec& spec, Domain d, int k);
/// 2 pi i tau.
Symbol dt(const GridSpec& spec);
/// |2 pi tau|^(1/2).
Symbol half_dt(const GridSpec& spec);
/// Time Hilbert symbol i sign(tau), normalized so that
/// hilbert * half_dt * half_dt == dt. Zero at tau = 0.
Symbol hilbert(const GridSpec& spec);
/// Riesz symbol -i xi_k / |xi|, zero at xi = 0.
Symbol riesz(const GridSpec& spec, Domain d, int k);

/// Symbols from the Sobolev lifting arguments, in the 2 pi i tau convention.
Symbol mu1(const GridSpec& spec, int k);  // 2 pi i xi_k / B^(1/2)
Symbol mu2(const GridSpec& spec);         // |2 pi tau|^(1/2) / B^(1/2)
Symbol nu1(const GridSpec& spec);         // |2 pi tau|^(1/2) / B
Symbol nu2(const GridSpec& spec, int k);  // 2 pi i xi_k / B
Symbol nu3(const GridSpec& spec, int k);  // 2 pi i xi_k |2 pi tau|^(1/2) / B
/// B^(1/2) / (1 + 2 pi |xi| + |2 pi tau|^(1/2)).
Symbol k_hat(const GridSpec& spec);

/// Heat semigroup on the spatial lattice: exp(-4 pi^2 t |xi|^2).
Symbol heat(const GridSpec& spec, double t);

/// Enlarged spatial block times a Gaussian damping:
/// Phi'_i(xi) exp(-t |xi|^2).
Symbol rho(const GridSpec& spec, double t, int i);

}  // namespace symbols

/// Looks up a catalog symbol by name, e.g. "bessel:1.5", "riesz:1",
/// "heat:0.25", "rho:0.01:3", "dx:1", "dt", "half_dt", "hilbert", "mu1:1",
/// "mu2", "nu1", "nu2:1", "nu3:1", "khat", "identity", "const:2".
/// Throws std::invalid_argument for unknown names.
Symbol symbol_from_name(const GridSpec& spec, const std::string& name);

Field bessel_potential(const Field& field, double alpha);
Field half_time_derivative_spectral(const Field& field);

/// D_X^beta D_t^l computed spectrally. beta has n entries.
Field derivative(const Field& field, std::array<int, 2> beta, int l = 0);

/// Bracket on the L^p operator norm of a discrete multiplier.
struct MultiplierEstimate {
  std::string name;
  int probe_count = 0;
  double p = 2.0;
  double lower_bound = 0.0;
  double l1_kernel_upper = 0.0;
};

/// lower_bound: max of ||T f||_p / ||f||_p over every lattice pure mode and
/// `probes` random band-limited fields. l1_kernel_upper: L^1 norm of the
/// convolution kernel (discrete Young bound). p may be infinity.
MultiplierEstimate estimate_multiplier_norm(const Symbol& symbol, double p, int probes,
                                            std::uint64_t seed = 1);

/// L^1 norm of the inverse transform of a symbol.
double kernel_l1_norm(const Symbol& symbol);

}  // namespace parabolic
