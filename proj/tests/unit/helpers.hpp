#pragma once

#include <cmath>
#include <random>

#include "parabolic/lattice.hpp"

namespace testutil {

using namespace parabolic;

inline double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

inline double max_abs(const Field& a) {
  double m = 0.0;
  for (const auto& v : a.values) m = std::max(m, std::abs(v));
  return m;
}

/// Random field with spectrum confined to |offset| <= band per axis.
inline Field random_band_limited(const GridSpec& spec, unsigned seed, int band = 6,
                                 Domain d = Domain::space_time) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Spectrum s{spec, d, std::vector<cplx>(spec.size(d))};
  for_each_frequency(spec, d, [&](std::size_t i, const Frequency& f) {
    if (std::abs(f.xi[0] * spec.lx) <= band && std::abs(f.xi[1] * spec.lx) <= band &&
        std::abs(f.tau * spec.lt) <= band)
      s.coeffs[i] = {g(rng), g(rng)};
  });
  return inverse(s);
}

inline Field random_field(const GridSpec& spec, unsigned seed, Domain d = Domain::space_time) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Field f(spec, d);
  for (auto& v : f.values) v = {g(rng), g(rng)};
  return f;
}

inline Field mode(const GridSpec& spec, int k, int m) {
  return sample(spec, [&](const Point& p) {
    return std::polar(1.0, 2.0 * kPi * (k * p.x[0] / spec.lx + m * p.t / spec.lt));
  });
}

}  // namespace testutil
