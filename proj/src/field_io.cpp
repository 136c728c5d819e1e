#include "parabolic/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace parabolic {

namespace {

static_assert(std::endian::native == std::endian::little,
              "field serialization assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("field file: truncated header");
  return v;
}

}  // namespace

void write_field(std::ostream& os, const Field& field) {
  os.write("PFLD", 4);
  put<std::uint16_t>(os, kFieldFormatVersion);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(field.spec.n));
  put<std::uint8_t>(os, field.domain == Domain::space ? 1 : 0);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(field.spec.nx));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(field.spec.nt));
  put<double>(os, field.spec.lx);
  put<double>(os, field.spec.lt);
  put<double>(os, field.spec.T);
  for (const auto& z : field.values) {
    put<double>(os, z.real());
    put<double>(os, z.imag());
  }
  if (!os) throw std::runtime_error("field file: write failed");
}

Field read_field(std::istream& is) {
  std::array<char, 4> magic{};
  is.read(magic.data(), 4);
  if (!is || std::memcmp(magic.data(), "PFLD", 4) != 0)
    throw std::runtime_error("field file: bad magic");
  const auto version = get<std::uint16_t>(is);
  if (version != kFieldFormatVersion)
    throw std::runtime_error("field file: unsupported version " + std::to_string(version));
  const int n = get<std::uint8_t>(is);
  const auto domain_tag = get<std::uint8_t>(is);
  if (domain_tag > 1) throw std::runtime_error("field file: bad domain tag");
  const auto nx = get<std::uint64_t>(is);
  const auto nt = get<std::uint64_t>(is);
  const auto lx = get<double>(is);
  const auto lt = get<double>(is);
  const auto T = get<double>(is);
  const GridSpec spec =
      make_grid(n, static_cast<int>(nx), static_cast<int>(nt), lx, lt, T);
  const Domain domain = domain_tag == 1 ? Domain::space : Domain::space_time;
  std::vector<cplx> values(spec.size(domain));
  for (auto& z : values) {
    double re = 0.0;
    double im = 0.0;
    is.read(reinterpret_cast<char*>(&re), sizeof re);
    is.read(reinterpret_cast<char*>(&im), sizeof im);
    if (!is) throw std::runtime_error("field file: truncated sample data");
    z = {re, im};
  }
  return Field(spec, domain, std::move(values));
}

void save_field(const std::filesystem::path& path, const Field& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  try {
    write_field(os, field);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

Field load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_field(is);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace parabolic
