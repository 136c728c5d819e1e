#include "parabolic/lattice.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"

namespace parabolic {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

double GridSpec::cell_volume(Domain d) const {
  double v = std::pow(hx(), n);
  return d == Domain::space ? v : v * ht();
}

int slices_for_duration(const GridSpec& spec, double duration) {
  const double ratio = duration / spec.ht();
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
    std::ostringstream os;
    os << "duration " << duration << " is not a whole number of time samples (ht = "
       << spec.ht() << ")";
    throw std::invalid_argument(os.str());
  }
  return static_cast<int>(rounded);
}

int GridSpec::cylinder_slices() const { return slices_for_duration(*this, T); }

std::vector<int> GridSpec::dims(Domain d) const {
  std::vector<int> out;
  if (d == Domain::space_time) out.push_back(nt);
  for (int a = 0; a < n; ++a) out.push_back(nx);
  return out;
}

GridSpec make_grid(int n, int nx, int nt, double lx, double lt, double T) {
  if (n != 1 && n != 2) throw std::invalid_argument("grid: n must be 1 or 2");
  if (nx < 8 || !is_power_of_two(nx))
    throw std::invalid_argument("grid: Nx must be a power of two >= 8");
  if (nt < 8 || !is_power_of_two(nt))
    throw std::invalid_argument("grid: Nt must be a power of two >= 8");
  if (!(lx > 0.0) || !(lt > 0.0) || !std::isfinite(lx) || !std::isfinite(lt))
    throw std::invalid_argument("grid: periods must be positive and finite");
  if (!(T > 0.0)) throw std::invalid_argument("grid: T must be positive");
  if (T > lt / 2 * (1 + 1e-12)) throw std::invalid_argument("grid: T exceeds Lt/2");
  GridSpec spec{n, nx, nt, lx, lt, T};
  (void)spec.cylinder_slices();
  return spec;
}

Field::Field(GridSpec s, Domain d) : spec(s), domain(d), values(s.size(d)) {}

Field::Field(GridSpec s, Domain d, std::vector<cplx> v)
    : spec(s), domain(d), values(std::move(v)) {
  if (values.size() != spec.size(domain))
    throw std::invalid_argument("field: value count does not match the lattice");
  for (const auto& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::domain_error("field: non-finite sample");
  }
}

Field Field::slice(int k) const {
  if (domain != Domain::space_time) throw std::logic_error("slice of a spatial field");
  if (k < 0 || k >= spec.nt) throw std::out_of_range("slice index");
  const std::size_t m = spec.spatial_size();
  Field out(spec, Domain::space);
  std::copy(values.begin() + static_cast<std::ptrdiff_t>(k * m),
            values.begin() + static_cast<std::ptrdiff_t>((k + 1) * m), out.values.begin());
  return out;
}

void Field::set_slice(int k, const Field& spatial) {
  if (domain != Domain::space_time || spatial.domain != Domain::space)
    throw std::logic_error("set_slice: domain mismatch");
  if (k < 0 || k >= spec.nt) throw std::out_of_range("slice index");
  const std::size_t m = spec.spatial_size();
  if (spatial.values.size() != m) throw std::invalid_argument("set_slice: size mismatch");
  std::copy(spatial.values.begin(), spatial.values.end(),
            values.begin() + static_cast<std::ptrdiff_t>(k * m));
}

Field& Field::operator+=(const Field& other) {
  require_same_lattice(spec, domain, other.spec, other.domain, "field +");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_lattice(spec, domain, other.spec, other.domain, "field -");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
  return *this;
}

Field& Field::operator*=(cplx c) {
  for (auto& v : values) v *= c;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx c, Field a) { return a *= c; }

double Frequency::xi_norm() const { return std::hypot(xi[0], xi[1]); }

void for_each_frequency(const GridSpec& spec, Domain d,
                        const std::function<void(std::size_t, const Frequency&)>& fn) {
  const int nt = d == Domain::space_time ? spec.nt : 1;
  const int ny = spec.n == 2 ? spec.nx : 1;
  std::size_t idx = 0;
  Frequency f;
  for (int b = 0; b < nt; ++b) {
    f.tau = d == Domain::space_time ? spec.tau(b) : 0.0;
    for (int c = 0; c < ny; ++c) {
      f.xi[1] = spec.n == 2 ? spec.xi(c) : 0.0;
      for (int a = 0; a < spec.nx; ++a) {
        f.xi[0] = spec.xi(a);
        fn(idx++, f);
      }
    }
  }
}

void for_each_point(const GridSpec& spec, Domain d,
                    const std::function<void(std::size_t, const Point&)>& fn) {
  const int nt = d == Domain::space_time ? spec.nt : 1;
  const int ny = spec.n == 2 ? spec.nx : 1;
  std::size_t idx = 0;
  Point p;
  for (int k = 0; k < nt; ++k) {
    p.t = d == Domain::space_time ? spec.t_coord(k) : 0.0;
    for (int c = 0; c < ny; ++c) {
      p.x[1] = spec.n == 2 ? spec.x_coord(c) : 0.0;
      for (int j = 0; j < spec.nx; ++j) {
        p.x[0] = spec.x_coord(j);
        fn(idx++, p);
      }
    }
  }
}

Field sample(const GridSpec& spec, const ClosedForm& fn, Domain d) {
  Field out(spec, d);
  for_each_point(spec, d, [&](std::size_t i, const Point& p) {
    const cplx v = fn(p);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "sample: non-finite value at X=(" << p.x[0];
      if (spec.n == 2) os << ", " << p.x[1];
      os << "), t=" << p.t;
      throw std::domain_error(os.str());
    }
    out.values[i] = v;
  });
  return out;
}

Spectrum forward(const Field& field) {
  const auto dims = field.spec.dims(field.domain);
  auto work = detail::half_shift(field.values, dims);
  detail::fft_inplace(work, dims, -1);
  auto coeffs = detail::half_shift(work, dims);
  const double vol = field.spec.cell_volume(field.domain);
  for (auto& c : coeffs) c *= vol;
  return Spectrum{field.spec, field.domain, std::move(coeffs)};
}

Field inverse(const Spectrum& spectrum) {
  const auto& spec = spectrum.spec;
  const auto dims = spec.dims(spectrum.domain);
  auto work = detail::half_shift(spectrum.coeffs, dims);
  detail::fft_inplace(work, dims, +1);
  Field out(spec, spectrum.domain);
  out.values = detail::half_shift(work, dims);
  double measure = std::pow(spec.lx, spec.n);
  if (spectrum.domain == Domain::space_time) measure *= spec.lt;
  const double scale = 1.0 / measure;
  for (auto& v : out.values) v *= scale;
  return out;
}

CylinderField restrict_to_cylinder(const Field& field, double T) {
  if (field.domain != Domain::space_time)
    throw std::invalid_argument("restrict_to_cylinder: needs a space-time field");
  if (!(T > 0.0) || T > field.spec.lt / 2 * (1 + 1e-12))
    throw std::invalid_argument("restrict_to_cylinder: T outside (0, Lt/2]");
  const int count = slices_for_duration(field.spec, T);
  CylinderField out;
  out.spec = field.spec;
  out.first_slice = field.spec.zero_slice();
  out.slices = count;
  const std::size_t m = field.spec.spatial_size();
  out.values.assign(field.values.begin() + static_cast<std::ptrdiff_t>(out.first_slice * m),
                    field.values.begin() +
                        static_cast<std::ptrdiff_t>((out.first_slice + count) * m));
  return out;
}

void require_same_lattice(const GridSpec& a, Domain da, const GridSpec& b, Domain db,
                          const std::string& what) {
  if (!(a == b) || da != db)
    throw std::invalid_argument(what + ": operands live on different lattices");
}

}  // namespace parabolic
