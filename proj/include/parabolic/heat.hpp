#pragma once

#include "parabolic/lattice.hpp"
#include "parabolic/norms.hpp"

namespace parabolic {

/// u(X,t) = (Gamma(., t) * f)(X) on the torus.
///
/// `u` lives on the full space-time lattice: slices with t >= 0 carry the
/// propagated data (the t = 0 slice is the initial data itself), slices with
/// t < 0 are zero.
struct HeatExtension {
  Field initial;
  Field u;
  double T = 0.0;
};

/// Exact spectral semigroup: each slice spectrum is exp(-4 pi^2 t |xi|^2) f^.
HeatExtension propagate(const Field& initial, const GridSpec& spec);

/// D_X^beta D_t^l u from the semigroup, using D_t u = Laplacian u; zero for t < 0.
/// The field is not smooth across t = 0, so spectral time derivatives of u
/// would be wrong there.
DerivativeSource heat_derivatives(const HeatExtension& ext);

/// Periodized heat kernel (4 pi t)^(-n/2) exp(-|X|^2 / 4t) on the spatial lattice.
/// Throws std::invalid_argument for t <= 0.
Field kernel_slice(const GridSpec& spec, double t);

/// v(X,t) = u(T^(1/2) X, T t) expressed on the rescaled lattice
/// (Lx / T^(1/2), Lt / T, cutoff 1). Samples are unchanged; v is the heat
/// extension of f_T(Y) = f(T^(1/2) Y). Throws if the new cutoff 1 is not a
/// whole number of time samples.
HeatExtension rescale_extension(const HeatExtension& ext, double T);

/// max over interior times 0 < t < T of ||(D_t + 4 pi^2 |xi|^2) u^||_2 / ||4 pi^2 |xi|^2 u^||_2,
/// with D_t from sixth-order central differences of the stored slices.
double heat_residual(const HeatExtension& ext);

}  // namespace parabolic
