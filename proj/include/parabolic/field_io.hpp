#pragma once

#include <filesystem>
#include <iosfwd>

#include "parabolic/lattice.hpp"

namespace parabolic {

// Binary field file, all little-endian:
//
//   offset  size  content
//        0     4  magic "PFLD"
//        4     2  format version (uint16, currently 1)
//        6     1  n, spatial dimension (uint8)
//        7     1  domain (uint8: 0 = space-time, 1 = spatial slice)
//        8     8  Nx (uint64)
//       16     8  Nt (uint64)
//       24     8  Lx (float64)
//       32     8  Lt (float64)
//       40     8  T  (float64)
//       48     -  samples as (re, im) float64 pairs, lattice order
//
// The header is 48 bytes. Sample count is Nx^n * Nt (space-time) or Nx^n.

inline constexpr std::uint16_t kFieldFormatVersion = 1;
inline constexpr std::size_t kFieldHeaderBytes = 48;

void write_field(std::ostream& os, const Field& field);
Field read_field(std::istream& is);

void save_field(const std::filesystem::path& path, const Field& field);
Field load_field(const std::filesystem::path& path);

}  // namespace parabolic
