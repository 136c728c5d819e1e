#include "parabolic/extension.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

#include "parabolic/dyadic.hpp"

namespace parabolic {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr int kMaxOrder = 6;

void check_order(int i) {
  if (i < 0 || i > kMaxOrder)
    throw std::invalid_argument("reflection order must lie in [0, " + std::to_string(kMaxOrder) +
                                "], got " + std::to_string(i));
}

std::vector<double> scaled_weights(int i, int l) {
  const auto lam = solve_lambdas(i).lambdas;
  std::vector<double> w(lam.size());
  for (std::size_t j = 0; j < lam.size(); ++j) w[j] = lam[j] * std::pow(-double(j + 1), l);
  return w;
}

}  // namespace

double ReflectionCoefficients::residual() const {
  double worst = 0.0;
  for (int l = 0; l <= 2 * i; ++l) {
    double s = 0.0;
    for (std::size_t j = 0; j < lambdas.size(); ++j) s += std::pow(-double(j + 1), l) * lambdas[j];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

ReflectionCoefficients solve_lambdas(int i) {
  check_order(i);
  const int m = 2 * i + 1;
  // Rows l = 0..2i: sum_j (-j)^l lambda_j = 1.
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(m),
                                       std::vector<Rational>(static_cast<std::size_t>(m + 1)));
  for (int l = 0; l < m; ++l) {
    for (int j = 1; j <= m; ++j) {
      Rational v = 1;
      for (int e = 0; e < l; ++e) v *= -j;
      a[l][j - 1] = v;
    }
    a[l][m] = 1;
  }
  for (int c = 0; c < m; ++c) {
    int piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[c], a[piv]);
    for (int r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (int k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
    }
  }
  ReflectionCoefficients out;
  out.i = i;
  for (int j = 0; j < m; ++j) out.lambdas.push_back(static_cast<double>(a[j][m] / a[j][j]));
  return out;
}

double CutoffProfile::operator()(double t) const {
  const double width = outer - inner;
  if (t >= -inner && t <= T + inner) return 1.0;
  if (t <= -outer || t >= T + outer) return 0.0;
  if (t < 0.0) return smooth_step((t + outer) / width);
  return smooth_step((T + outer - t) / width);
}

CutoffProfile CutoffProfile::for_order(double T, int i) {
  check_order(i);
  if (!(T > 0.0)) throw std::invalid_argument("cutoff: T must be positive");
  CutoffProfile c;
  c.T = T;
  c.outer = T / (2 * i + 1);
  c.inner = c.outer / 2.0;
  return c;
}

int max_reflection_depth(const GridSpec& spec, int i) {
  check_order(i);
  return (spec.nt / 2 - 1) / (2 * i + 1);
}

Field reflect(const Field& field, const std::vector<double>& weights, int depth) {
  if (field.domain != Domain::space_time)
    throw std::invalid_argument("reflect: needs a space-time field");
  const GridSpec& spec = field.spec;
  const int z = spec.zero_slice();
  const int m = static_cast<int>(weights.size());
  if (depth < 0) depth = (spec.nt / 2 - 1) / std::max(m, 1);
  if (static_cast<long>(depth) * m > spec.nt / 2 - 1)
    throw std::out_of_range("reflect: reflected time " + std::to_string(depth * m) +
                            " slices past t = 0 leaves the lattice");
  Field out(spec, Domain::space_time);
  const std::size_t n = spec.spatial_size();
  for (int k = z; k < spec.nt; ++k)
    std::copy_n(field.values.begin() + static_cast<std::ptrdiff_t>(k * n), n,
                out.values.begin() + static_cast<std::ptrdiff_t>(k * n));
  for (int s = 1; s <= depth && z - s >= 0; ++s) {
    cplx* dst = &out.values[static_cast<std::size_t>(z - s) * n];
    for (int j = 1; j <= m; ++j) {
      const cplx* src = &field.values[static_cast<std::size_t>(z + j * s) * n];
      const double w = weights[static_cast<std::size_t>(j - 1)];
      for (std::size_t x = 0; x < n; ++x) dst[x] += w * src[x];
    }
  }
  return out;
}

Field extend_E2(const Field& field, int i, int depth) {
  return reflect(field, solve_lambdas(i).lambdas, depth < 0 ? max_reflection_depth(field.spec, i) : depth);
}

Field extend_E4(const Field& field, int i, int depth) { return extend_derivative(field, i, 1, depth); }

Field extend_derivative(const Field& field, int i, int l, int depth) {
  if (l < 0) throw std::invalid_argument("extend_derivative: negative order");
  return reflect(field, scaled_weights(i, l), depth < 0 ? max_reflection_depth(field.spec, i) : depth);
}

Field extend_E3(const Field& field, int i, const CutoffProfile& theta) {
  if (field.domain != Domain::space_time)
    throw std::invalid_argument("extend_E3: needs a space-time field");
  const GridSpec& spec = field.spec;
  const auto lam = solve_lambdas(i).lambdas;
  const int m = static_cast<int>(lam.size());
  const int z = spec.zero_slice();
  const int top = z + slices_for_duration(spec, theta.T);
  if (top >= spec.nt) throw std::out_of_range("extend_E3: T beyond the lattice");
  const std::size_t n = spec.spatial_size();
  Field out(spec, Domain::space_time);

  auto fetch = [&](int k) -> const cplx* {
    if (k < z || k > top)
      throw std::out_of_range("extend_E3: reflected time leaves [0, T]; cutoff margin too wide");
    return &field.values[static_cast<std::size_t>(k) * n];
  };
  for (int k = 0; k < spec.nt; ++k) {
    const double t = spec.t_coord(k);
    const double th = theta(t);
    if (th == 0.0) continue;
    cplx* dst = &out.values[static_cast<std::size_t>(k) * n];
    if (k >= z && k <= top) {
      const cplx* src = fetch(k);
      for (std::size_t x = 0; x < n; ++x) dst[x] = th * src[x];
      continue;
    }
    // Reflection about 0 (k < z) or about T (k > top), in slice units.
    const int s = k < z ? z - k : k - top;
    for (int j = 1; j <= m; ++j) {
      const cplx* src = fetch(k < z ? z + j * s : top - j * s);
      const double w = th * lam[static_cast<std::size_t>(j - 1)];
      for (std::size_t x = 0; x < n; ++x) dst[x] += w * src[x];
    }
  }
  return out;
}

DerivativeSource extension_derivatives(const DerivativeSource& source, int i, int depth) {
  check_order(i);
  return [source, i, depth](std::array<int, 2> beta, int l) {
    return extend_derivative(source(beta, l), i, l, depth);
  };
}

}  // namespace parabolic
