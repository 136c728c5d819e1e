#include "doctest.h"
#include "helpers.hpp"
#include "parabolic/extension.hpp"
#include "parabolic/spectral.hpp"

using namespace parabolic;
using namespace testutil;

namespace {
const GridSpec kGrid = make_grid(1, 16, 256, 8.0, 16.0, 1.0);

Field poly(const GridSpec& g, int deg) {
  return sample(g, [deg](const Point& p) { return cplx(std::pow(p.t, deg) * (1.0 + 0.1 * p.x[0])); });
}
}  // namespace

TEST_CASE("lambda solve") {
  CHECK(solve_lambdas(0).lambdas == std::vector<double>{1.0});
  const auto l1 = solve_lambdas(1).lambdas;
  REQUIRE(l1.size() == 3);
  CHECK(l1[0] == 6.0);
  CHECK(l1[1] == -8.0);
  CHECK(l1[2] == 3.0);
  for (int i = 0; i <= 6; ++i) {
    const auto r = solve_lambdas(i);
    CHECK(r.lambdas.size() == static_cast<std::size_t>(2 * i + 1));
    CHECK(r.residual() < 1e-9);
  }
  CHECK_THROWS_AS(solve_lambdas(7), std::invalid_argument);
  CHECK_THROWS_AS(solve_lambdas(-1), std::invalid_argument);
}

TEST_CASE("cutoff profile") {
  for (int i : {0, 1, 3}) {
    const auto th = CutoffProfile::for_order(1.0, i);
    for (int k = 0; k <= 100; ++k) CHECK(th(k / 100.0) == 1.0);
    CHECK(th(-1.0) == 0.0);
    CHECK(th(2.0) == 0.0);
    for (int k = -300; k <= 300; ++k) {
      const double v = th(k / 100.0);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("E2 reproduces low-degree polynomials") {
  for (int i = 0; i <= 3; ++i) {
    const int depth = max_reflection_depth(kGrid, i);
    for (int l = 0; l <= 2 * i; ++l) {
      const Field f = poly(kGrid, l);
      const Field e = extend_E2(f, i);
      double worst = 0.0;
      for (int s = 0; s <= depth; ++s) {
        const int k = kGrid.zero_slice() - s;
        for (int x = 0; x < kGrid.nx; ++x) {
          const std::size_t idx = static_cast<std::size_t>(k * kGrid.nx + x);
          worst = std::max(worst, std::abs(e.values[idx] - f.values[idx]) / std::max(1.0, std::abs(f.values[idx])));
        }
      }
      CHECK(worst < 1e-9);
    }
  }
  const Field zero(kGrid, Domain::space_time);
  CHECK(max_abs(extend_E2(zero, 2)) == 0.0);
  CHECK_THROWS_AS(extend_E2(poly(kGrid, 0), 1, kGrid.nt), std::out_of_range);
}

TEST_CASE("E2 commutes with spatial derivatives") {
  const Field f = sample(kGrid, [](const Point& p) { return cplx(std::exp(-p.x[0] * p.x[0] - p.t * p.t)); });
  const Field lhs = derivative(extend_E2(f, 2), {1, 0}, 0);
  const Field rhs = extend_E2(derivative(f, {1, 0}, 0), 2);
  CHECK(max_abs_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("E4 and the time derivative") {
  const Field one = poly(kGrid, 0);
  const Field e4 = extend_E4(one, 1);
  const int z = kGrid.zero_slice();
  for (int s = 1; s < max_reflection_depth(kGrid, 1); ++s)
    CHECK(std::abs(e4.values[static_cast<std::size_t>((z - s) * kGrid.nx + 3)] - one.values[3]) < 1e-12);

  // f = t: D_t E2 f = 1 on both sides and E4(1) = 1.
  const Field t1 = sample(kGrid, [](const Point& p) { return cplx(p.t); });
  const Field e2 = extend_E2(t1, 1);
  const Field ones = sample(kGrid, [](const Point&) { return cplx(1.0); });
  const Field e4o = extend_E4(ones, 1);
  const double h = kGrid.ht();
  for (int k = z - 20; k < z + 20; ++k) {
    const std::size_t a = static_cast<std::size_t>((k + 1) * kGrid.nx), b = static_cast<std::size_t>((k - 1) * kGrid.nx);
    CHECK(std::abs((e2.values[a] - e2.values[b]) / (2 * h) - 1.0) < 1e-9);
    CHECK(std::abs(e4o.values[static_cast<std::size_t>(k * kGrid.nx)] - 1.0) < 1e-12);
  }

  // Smooth data: central difference of E2 f against E4(D_t f) away from t = 0.
  const GridSpec fine = make_grid(1, 16, 2048, 8.0, 16.0, 1.0);
  const int zf = fine.zero_slice();
  const double hf = fine.ht();
  const Field g = sample(fine, [](const Point& p) { return cplx(std::exp(-p.x[0] * p.x[0] - (p.t - 0.3) * (p.t - 0.3))); });
  const Field eg = extend_E2(g, 1);
  const Field rhs = extend_E4(derivative(g, {0, 0}, 1), 1);
  double worst = 0.0, scale = 0.0;
  for (int k = zf - 160; k <= zf - 16; ++k)
    for (int x = 0; x < fine.nx; ++x) {
      const double fd = std::abs((eg.values[static_cast<std::size_t>((k + 1) * fine.nx + x)] -
                                  eg.values[static_cast<std::size_t>((k - 1) * fine.nx + x)]) / (2 * hf) -
                                 rhs.values[static_cast<std::size_t>(k * fine.nx + x)]);
      worst = std::max(worst, fd);
      scale = std::max(scale, std::abs(rhs.values[static_cast<std::size_t>(k * fine.nx + x)]));
    }
  CHECK(worst < 1e-2 * scale);
}

TEST_CASE("E3") {
  const auto th = CutoffProfile::for_order(1.0, 1);
  const Field one = poly(kGrid, 0);
  const Field e = extend_E3(one, 1, th);
  const Field t1 = sample(kGrid, [](const Point& p) { return cplx(p.t); });
  const Field et = extend_E3(t1, 1, th);
  for (int k = 0; k < kGrid.nt; ++k) {
    const double t = kGrid.t_coord(k);
    const std::size_t idx = static_cast<std::size_t>(k * kGrid.nx + 5);
    if (t <= -1.0 || t >= 2.0) CHECK(e.values[idx] == cplx(0.0));
    if (th(t) == 1.0) {
      CHECK(std::abs(e.values[idx] - one.values[idx]) < 1e-12);
      CHECK(std::abs(et.values[idx] - t) < 1e-12);
    }
    if (t >= 0 && t <= 1.0) CHECK(et.values[idx] == t1.values[idx]);
  }
  const Field g = sample(kGrid, [](const Point& p) { return cplx(std::sin(3 * p.t) + p.x[0]); });
  const Field eg = extend_E3(g, 2, CutoffProfile::for_order(1.0, 2));
  for (int k = 0; k < kGrid.nt; ++k) {
    const double t = kGrid.t_coord(k);
    if (t <= -1.0 || t >= 2.0)
      for (int x = 0; x < kGrid.nx; ++x) CHECK(eg.values[static_cast<std::size_t>(k * kGrid.nx + x)] == cplx(0.0));
  }
  CutoffProfile wide{1.0, 0.5, 0.75};
  CHECK_THROWS_AS(extend_E3(one, 1, wide), std::out_of_range);
}

TEST_CASE("extension derivative source") {
  const Field f = sample(kGrid, [](const Point& p) { return cplx(std::exp(-p.x[0] * p.x[0] - p.t * p.t)); });
  const auto src = extension_derivatives(spectral_derivatives(f), 1);
  CHECK(max_abs_diff(src({0, 0}, 0), extend_E2(f, 1)) < 1e-14);
  CHECK(max_abs_diff(src({0, 0}, 1), extend_E4(derivative(f, {0, 0}, 1), 1)) < 1e-14);
}
