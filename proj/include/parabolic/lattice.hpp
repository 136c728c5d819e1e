#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace parabolic {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Whether a sampled object lives on the space-time lattice or on a single
/// spatial slice of it.
enum class Domain { space_time, space };

/// Periodic space-time lattice [-Lx/2, Lx/2)^n x [-Lt/2, Lt/2).
///
/// Sample coordinates are X_j = (j - Nx/2) hx and t_k = (k - Nt/2) ht, so the
/// origin sits on the lattice and X -> -X maps lattice points onto lattice
/// points exactly. Frequencies follow the same centered indexing:
/// xi_a = (a - Nx/2) / Lx, tau_b = (b - Nt/2) / Lt.
struct GridSpec {
  int n = 1;
  int nx = 0;
  int nt = 0;
  double lx = 0.0;
  double lt = 0.0;
  double T = 0.0;

  double hx() const { return lx / nx; }
  double ht() const { return lt / nt; }

  std::size_t spatial_size() const {
    return n == 1 ? static_cast<std::size_t>(nx)
                  : static_cast<std::size_t>(nx) * static_cast<std::size_t>(nx);
  }
  std::size_t size(Domain d) const {
    return d == Domain::space ? spatial_size()
                              : spatial_size() * static_cast<std::size_t>(nt);
  }
  double cell_volume(Domain d) const;

  double x_coord(int j) const { return (j - nx / 2) * hx(); }
  double t_coord(int k) const { return (k - nt / 2) * ht(); }
  double xi(int a) const { return (a - nx / 2) / lx; }
  double tau(int b) const { return (b - nt / 2) / lt; }

  /// Number of time samples in [0, T).
  int cylinder_slices() const;
  /// Index of the time slice t = 0.
  int zero_slice() const { return nt / 2; }

  /// FFT dimensions, slowest axis first.
  std::vector<int> dims(Domain d) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Validates and builds a grid. Throws std::invalid_argument on bad input.
GridSpec make_grid(int n, int nx, int nt, double lx, double lt, double T);

/// Number of time samples spanned by a duration, throwing if it is not a
/// whole number of samples.
int slices_for_duration(const GridSpec& spec, double duration);

/// A lattice point: up to two spatial coordinates and a time.
struct Point {
  std::array<double, 2> x{0.0, 0.0};
  double t = 0.0;
};

/// Complex samples on the lattice, time slowest, X_1 fastest.
struct Field {
  GridSpec spec;
  Domain domain = Domain::space_time;
  std::vector<cplx> values;

  Field() = default;
  Field(GridSpec s, Domain d);
  Field(GridSpec s, Domain d, std::vector<cplx> v);

  std::size_t size() const { return values.size(); }
  /// Copy of one time slice as a spatial field.
  Field slice(int k) const;
  void set_slice(int k, const Field& spatial);

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx c);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx c, Field a);

/// Discrete Fourier coefficients, indexed by the centered frequency lattice.
struct Spectrum {
  GridSpec spec;
  Domain domain = Domain::space_time;
  std::vector<cplx> coeffs;
};

/// Frequency of a centered lattice index: spatial components and tau (0 for
/// spatial domains).
struct Frequency {
  std::array<double, 2> xi{0.0, 0.0};
  double tau = 0.0;
  double xi_norm() const;
};

/// Calls fn(index, frequency) for every coefficient position.
void for_each_frequency(const GridSpec& spec, Domain d,
                        const std::function<void(std::size_t, const Frequency&)>& fn);

/// Calls fn(index, point) for every sample position.
void for_each_point(const GridSpec& spec, Domain d,
                    const std::function<void(std::size_t, const Point&)>& fn);

using ClosedForm = std::function<cplx(const Point&)>;

/// Samples a closed form on the lattice. Throws std::domain_error naming the
/// lattice point if an evaluation is not finite.
Field sample(const GridSpec& spec, const ClosedForm& fn,
             Domain d = Domain::space_time);

/// Forward transform with kernel exp(-2 pi i (X.xi + t tau)), scaled by the
/// cell volume so that coefficients approximate the continuous transform.
Spectrum forward(const Field& field);
Field inverse(const Spectrum& spectrum);

/// Time slices with 0 <= t < T.
struct CylinderField {
  GridSpec spec;
  int first_slice = 0;
  int slices = 0;
  std::vector<cplx> values;
};

CylinderField restrict_to_cylinder(const Field& field, double T);

/// Throws std::invalid_argument unless both objects share a lattice.
void require_same_lattice(const GridSpec& a, Domain da, const GridSpec& b,
                          Domain db, const std::string& what);

}  // namespace parabolic
