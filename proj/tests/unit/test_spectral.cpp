#include "doctest.h"
#include "helpers.hpp"
#include "parabolic/norms.hpp"
#include "parabolic/spectral.hpp"

using namespace parabolic;
using namespace testutil;

namespace {
const GridSpec kGrid = make_grid(1, 32, 32, 8.0, 8.0, 1.0);
}

TEST_CASE("identity and derivative symbols") {
  const Field f = random_field(kGrid, 1);
  CHECK(max_abs_diff(apply_symbol(symbols::identity(kGrid, Domain::space_time), f), f) < 1e-12);

  const Field one = sample(kGrid, [](const Point&) { return cplx(1.0); });
  CHECK(max_abs(apply_symbol(symbols::dx(kGrid, Domain::space_time, 1), one)) < 1e-12);

  const double L = kGrid.lx;
  const Field s = sample(kGrid, [&](const Point& p) { return cplx(std::sin(2 * kPi * p.x[0] / L)); });
  const Field c = sample(kGrid, [&](const Point& p) { return cplx(2 * kPi / L * std::cos(2 * kPi * p.x[0] / L)); });
  CHECK(max_abs_diff(apply_symbol(symbols::dx(kGrid, Domain::space_time, 1), s), c) < 1e-10);
  CHECK(max_abs_diff(derivative(s, {1, 0}, 0), c) < 1e-10);
}

TEST_CASE("linearity and composition") {
  const Field f = random_field(kGrid, 2), g = random_field(kGrid, 3);
  const cplx a(0.3, -1.2), b(2.0, 0.5);
  const Symbol sig = symbols::bessel(kGrid, 1.3);
  const Field lhs = apply_symbol(sig, a * f + b * g);
  const Field rhs = a * apply_symbol(sig, f) + b * apply_symbol(sig, g);
  CHECK(max_abs_diff(lhs, rhs) < 1e-10);

  const Symbol s2 = symbols::mu2(kGrid);
  CHECK(max_abs_diff(apply_symbol(sig, apply_symbol(s2, f)), apply_symbol(sig * s2, f)) < 1e-10);
}

TEST_CASE("bessel potential") {
  const Field f = random_band_limited(kGrid, 4);
  CHECK(max_abs_diff(bessel_potential(f, 0.0), f) < 1e-12);
  const Field dc = mode(kGrid, 0, 0);
  CHECK(max_abs_diff(bessel_potential(dc, 2.0), dc) < 1e-12);
  const Field m = mode(kGrid, 3, 2);
  const double alpha = 1.5;
  const double xi = 3.0 / kGrid.lx, tau = 2.0 / kGrid.lt;
  const double expect = std::pow(std::abs(cplx(1 + 4 * kPi * kPi * xi * xi, 2 * kPi * tau)), -alpha / 2);
  const Field out = bessel_potential(m, alpha);
  for (const auto& v : out.values) CHECK(std::abs(v) == doctest::Approx(expect).epsilon(1e-12));

  const double as[] = {-2, -1, -0.5, 0, 0.5, 1, 2};
  for (double x : as)
    for (double y : as) {
      const Field lhs = bessel_potential(bessel_potential(f, x), y);
      const Field rhs = bessel_potential(f, x + y);
      CHECK(max_abs_diff(lhs, rhs) < 1e-10 * std::max(1.0, max_abs(rhs)));
    }
}

TEST_CASE("half time derivative and Hilbert") {
  const Field one = sample(kGrid, [](const Point&) { return cplx(1.0); });
  CHECK(max_abs(half_time_derivative_spectral(one)) < 1e-12);
  for (int m = 1; m < 8; ++m) {
    const Field e = mode(kGrid, 0, m);
    Field expect = e;
    expect *= std::sqrt(2 * kPi * m / kGrid.lt);
    CHECK(max_abs_diff(half_time_derivative_spectral(e), expect) < 1e-12);
  }
  const Field f = random_band_limited(kGrid, 5);
  const Field hdd = apply_symbol(symbols::hilbert(kGrid),
                                 half_time_derivative_spectral(half_time_derivative_spectral(f)));
  CHECK(max_abs_diff(hdd, derivative(f, {0, 0}, 1)) < 1e-10);
}

TEST_CASE("Riesz and Hilbert are L2 isometries on mean-zero modes") {
  const GridSpec g2 = make_grid(2, 16, 16, 4.0, 4.0, 1.0);
  for (int k = 1; k < 5; ++k) {
    const Field m = mode(kGrid, k, k + 1);
    CHECK(lp_norm(apply_symbol(symbols::riesz(kGrid, Domain::space_time, 1), m), 2) ==
          doctest::Approx(lp_norm(m, 2)).epsilon(1e-12));
    CHECK(lp_norm(apply_symbol(symbols::hilbert(kGrid), m), 2) ==
          doctest::Approx(lp_norm(m, 2)).epsilon(1e-12));
    const Field m2 = sample(g2, [&](const Point& p) {
      return std::polar(1.0, 2 * kPi * (k * p.x[0] + 2 * p.x[1]) / g2.lx);
    });
    CHECK(lp_norm(apply_symbol(symbols::riesz(g2, Domain::space_time, 2), m2), 2) ==
          doctest::Approx(lp_norm(m2, 2) * 2 / std::hypot(k, 2)).epsilon(1e-12));
  }
}

TEST_CASE("symbols are finite with defined origin values") {
  const char* names[] = {"identity", "const:2", "bessel:1.5", "dx:1", "dt", "half_dt", "hilbert",
                         "riesz:1", "mu1:1", "mu2", "nu1", "nu2:1", "nu3:1", "khat"};
  for (const char* n : names) {
    const Symbol s = symbol_from_name(kGrid, n);
    for (const auto& v : s.values) CHECK(std::isfinite(std::abs(v)));
  }
  CHECK_THROWS_AS(symbol_from_name(kGrid, "nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(symbol_from_name(kGrid, "riesz"), std::invalid_argument);
  const Symbol h = symbol_from_name(kGrid, "heat:0.25");
  CHECK(h.domain == Domain::space);
}

TEST_CASE("multiplier estimates") {
  const auto id = estimate_multiplier_norm(symbols::identity(kGrid, Domain::space_time), 2.0, 4);
  CHECK(id.lower_bound == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(id.l1_kernel_upper == doctest::Approx(1.0).epsilon(1e-8));
  const auto c = estimate_multiplier_norm(symbols::constant(kGrid, Domain::space_time, 3.0), kInf, 4);
  CHECK(c.lower_bound == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(c.l1_kernel_upper == doctest::Approx(3.0).epsilon(1e-8));
  CHECK_THROWS_AS(estimate_multiplier_norm(symbols::mu2(kGrid), 0.5, 4), std::invalid_argument);

  for (double p : {1.0, 1.5, 2.0, 4.0, kInf})
    for (const char* n : {"mu1:1", "mu2", "nu1", "nu2:1", "nu3:1", "khat", "bessel:1"}) {
      const auto e = estimate_multiplier_norm(symbol_from_name(kGrid, n), p, 3);
      CHECK(e.lower_bound <= e.l1_kernel_upper * (1 + 1e-6));
    }
}
