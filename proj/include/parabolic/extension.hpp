#pragma once

#include <vector>

#include "parabolic/lattice.hpp"
#include "parabolic/norms.hpp"

namespace parabolic {

/// lambda_1..lambda_{2i+1} with sum_j (-j)^l lambda_j = 1 for l = 0..2i.
struct ReflectionCoefficients {
  int i = 0;
  std::vector<double> lambdas;

  /// Largest |sum_j (-j)^l lambda_j - 1| over l = 0..2i.
  double residual() const;
};

/// Exact rational solve. Throws std::invalid_argument for i < 0 or i > 6.
ReflectionCoefficients solve_lambdas(int i);

/// Smooth cutoff: 1 on [-inner, T + inner], 0 outside (-outer, T + outer).
struct CutoffProfile {
  double T = 1.0;
  double inner = 0.0;
  double outer = 0.0;

  double operator()(double t) const;

  /// Margins outer = T / (2i+1), inner = outer / 2, so every reflected time
  /// used inside the support of theta stays in [0, T].
  static CutoffProfile for_order(double T, int i);
};

/// Number of negative time slices that E_2 of order i can fill from the
/// stored t >= 0 slices: j * s must stay below Lt/2 for j <= 2i+1.
int max_reflection_depth(const GridSpec& spec, int i);

/// t >= 0: f; -depth*ht <= t < 0: sum_j w_j f(X, -j t); otherwise 0.
/// depth < 0 selects max_reflection_depth. Throws std::out_of_range if a
/// reflected time leaves the lattice.
Field reflect(const Field& field, const std::vector<double>& weights, int depth = -1);

/// E_2 f with weights lambda_j.
Field extend_E2(const Field& field, int i, int depth = -1);

/// E_4 f with weights (-j) lambda_j.
Field extend_E4(const Field& field, int i, int depth = -1);

/// E_2 with weights (-j)^l lambda_j, so that D_t^l E_2 f = extend_derivative(D_t^l f, i, l).
Field extend_derivative(const Field& field, int i, int l, int depth = -1);

/// E_3 g for g given on [0, T] (T = spec.T): g on [0,T], reflections about 0
/// on (-outer, 0) and about T (T - j (t - T)) on (T, T + outer), all times theta.
Field extend_E3(const Field& field, int i, const CutoffProfile& theta);

/// Derivatives of E_2 f from derivatives of f, through the commutation rules
/// D_X E_2 = E_2 D_X and D_t^l E_2 = E_2^(l) D_t^l.
DerivativeSource extension_derivatives(const DerivativeSource& source, int i, int depth = -1);

}  // namespace parabolic
