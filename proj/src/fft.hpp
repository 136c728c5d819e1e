#pragma once

#include <complex>
#include <span>
#include <vector>

namespace parabolic::detail {

/// In-place unnormalized multidimensional DFT over row-major data.
/// sign = -1 forward, +1 backward.
void fft_inplace(std::span<std::complex<double>> data, const std::vector<int>& dims,
                 int sign);

/// Cyclic shift by half the extent along every axis (all extents even, so
/// the shift is its own inverse).
std::vector<std::complex<double>> half_shift(std::span<const std::complex<double>> data,
                                             const std::vector<int>& dims);

}  // namespace parabolic::detail
