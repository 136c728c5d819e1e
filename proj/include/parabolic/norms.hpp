#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "parabolic/dyadic.hpp"
#include "parabolic/lattice.hpp"

namespace parabolic {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Integration region: the whole torus or the half cylinder 0 <= t < T.
struct Region {
  bool cylinder = false;
  double T = 0.0;

  static Region full() { return {}; }
  static Region cyl(double T) { return {true, T}; }
};

enum class NormKind {
  sobolev,
  besov_lp,
  besov_diff,
  besov_highorder,
  w2ii,
  besov_halfcyl,
  spatial_besov,
};

std::string to_string(NormKind kind);

/// How breakdown terms combine into the value.
enum class Aggregation {
  single,       // one term
  besov_blocks, // term0 + l^q(terms 1..), q = inf -> max over all
  sum,          // plain sum
  p_sum,        // (sum term^p)^(1/p), p = inf -> plain sum
};

struct NormTerm {
  std::string label;
  double value = 0.0;
};

struct NormResult {
  double value = 0.0;
  NormKind kind = NormKind::sobolev;
  double alpha = 0.0;
  double p = 2.0;
  double q = 2.0;
  Region region;
  Aggregation aggregation = Aggregation::single;
  std::vector<NormTerm> breakdown;
  double truncation_energy = 0.0;
  bool flagged = false;

  /// Recomputes the value from the breakdown under the aggregation rule.
  double recombine() const;
};

/// D_X^beta D_t^l of the underlying field, on its full lattice. Norms on a
/// region evaluate the returned field only inside that region.
using DerivativeSource = std::function<Field(std::array<int, 2> beta, int l)>;

/// Spectral derivatives of a globally smooth torus field.
DerivativeSource spectral_derivatives(const Field& field);

/// All multi-indices beta with |beta| == order for dimension n.
std::vector<std::array<int, 2>> multi_indices(int n, int order);

/// Discrete L^p norm: (sum |f|^p cellvolume)^(1/p), or max |f| for p = inf.
double lp_norm(const Field& field, double p, Region region = Region::full());

NormResult sobolev_norm(const Field& field, double alpha, double p);

NormResult besov_lp_norm(const Field& field, double alpha, double p, double q,
                         const Partition& partition);

/// Same aggregation as besov_lp_norm over the spatial partition.
NormResult spatial_besov_norm(const Field& slice, double alpha, double p, double q,
                              const Partition& partition);

/// L^p term + first-difference-in-time seminorm + second-difference-in-space
/// seminorm, 0 < alpha < 2. Terms add.
NormResult besov_diff_norm(const Field& field, double alpha, double p,
                           Region region = Region::full());

/// W^{2i,i} part + time-difference seminorm of D_t^i f + second-difference
/// seminorms of D_X^beta f, |beta| = 2i, smoothness alpha - 2i, i =
/// floor(alpha/2). Terms add; i = 0 reproduces besov_diff_norm.
NormResult besov_highorder_norm(const Field& field, double alpha, double p,
                                Region region = Region::full(),
                                const DerivativeSource& source = {});

/// (sum over |beta| + 2l <= 2i of ||D_X^beta D_t^l f||_p^p)^(1/p); p = inf
/// sums the sup norms.
NormResult w2ii_norm(const Field& field, int i, double p, Region region = Region::full(),
                     const DerivativeSource& source = {});

/// Half-cylinder Besov norm: W^{2i,i}(0,T) part plus both difference
/// seminorms of every D_X^beta D_t^l f with |beta| + 2l = 2i, combined as a
/// p-sum (plain sum for p = inf).
NormResult besov_halfcyl_norm(const Field& field, double alpha, double p, double T,
                              const DerivativeSource& source = {});

/// Singular-integral half time derivative c * int (f(t) - f(s)) / |t-s|^{3/2} ds
/// on the periodic time axis, with the constant from half_derivative_constant.
Field half_derivative_quadrature(const Field& field);

/// Same quadrature without the constant (c = 1).
Field half_derivative_quadrature_raw(const Field& field);

/// Calibrated constant: median over pure time modes m = 1..Nt/8 of
/// (2 pi m / Lt)^(1/2) divided by the raw quadrature amplitude. Cached per grid.
double half_derivative_constant(const GridSpec& spec);

}  // namespace parabolic
