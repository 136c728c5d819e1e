#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace parabolic::detail {

namespace {
// FFTW planning is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void fft_inplace(std::span<std::complex<double>> data, const std::vector<int>& dims,
                 int sign) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (total != data.size()) throw std::invalid_argument("fft: size does not match dims");

  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), ptr, ptr,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fft: planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

std::vector<std::complex<double>> half_shift(std::span<const std::complex<double>> data,
                                             const std::vector<int>& dims) {
  std::vector<std::complex<double>> out(data.size());
  const std::size_t rank = dims.size();
  std::vector<std::size_t> stride(rank, 1);
  for (std::size_t a = rank; a-- > 1;) stride[a - 1] = stride[a] * dims[a];

  std::vector<int> idx(rank, 0);
  for (std::size_t lin = 0; lin < data.size(); ++lin) {
    std::size_t dst = 0;
    for (std::size_t a = 0; a < rank; ++a) {
      dst += static_cast<std::size_t>((idx[a] + dims[a] / 2) % dims[a]) * stride[a];
    }
    out[dst] = data[lin];
    for (std::size_t a = rank; a-- > 0;) {
      if (++idx[a] < dims[a]) break;
      idx[a] = 0;
    }
  }
  return out;
}

}  // namespace parabolic::detail
