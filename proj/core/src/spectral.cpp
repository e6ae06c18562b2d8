#include "spectral.hpp"

#include <algorithm>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>

namespace pasym::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> aligned(std::size_t n) {
  return std::unique_ptr<T[], FftwFree>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

}  // namespace

Spectral::Spectral(int dimension, std::size_t points, double half_extent)
    : dimension_(dimension), points_(points) {
  const std::size_t half = points / 2 + 1;
  real_size_ = dimension == 1 ? points : points * points;
  complex_size_ = dimension == 1 ? half : points * half;

  auto in = aligned<double>(real_size_);
  auto out = aligned<fftw_complex>(complex_size_);
  const int n = static_cast<int>(points);
  {
    std::lock_guard lock(planner_mutex());
    if (dimension == 1) {
      forward_plan_ = fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE);
      inverse_plan_ = fftw_plan_dft_c2r_1d(n, out.get(), in.get(), FFTW_ESTIMATE);
    } else {
      forward_plan_ = fftw_plan_dft_r2c_2d(n, n, in.get(), out.get(), FFTW_ESTIMATE);
      inverse_plan_ = fftw_plan_dft_c2r_2d(n, n, out.get(), in.get(), FFTW_ESTIMATE);
    }
  }

  // Period 2L: ξ_m = π m / L.
  const double dk = std::numbers::pi / half_extent;
  const auto signed_mode = [&](std::size_t i) {
    return i <= points / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(points);
  };
  const auto nyquist = points / 2;
  k2_.resize(complex_size_);
  k0_.resize(complex_size_);
  k1_.assign(complex_size_, 0.0);
  if (dimension == 1) {
    for (std::size_t m = 0; m < half; ++m) {
      const double k = dk * static_cast<double>(m);
      k2_[m] = k * k;
      k0_[m] = m == nyquist ? 0.0 : k;
    }
  } else {
    for (std::size_t i = 0; i < points; ++i) {
      const double ki = dk * signed_mode(i);
      for (std::size_t j = 0; j < half; ++j) {
        const double kj = dk * static_cast<double>(j);
        const std::size_t idx = i * half + j;
        k2_[idx] = ki * ki + kj * kj;
        k0_[idx] = i == nyquist ? 0.0 : ki;
        k1_[idx] = j == nyquist ? 0.0 : kj;
      }
    }
  }
}

Spectral::~Spectral() {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(forward_plan_);
  if (inverse_plan_) fftw_destroy_plan(inverse_plan_);
}

std::vector<std::complex<double>> Spectral::forward(std::span<const double> in) const {
  auto rin = aligned<double>(real_size_);
  auto cout = aligned<fftw_complex>(complex_size_);
  std::copy(in.begin(), in.end(), rin.get());
  fftw_execute_dft_r2c(forward_plan_, rin.get(), cout.get());
  std::vector<std::complex<double>> result(complex_size_);
  for (std::size_t k = 0; k < complex_size_; ++k) result[k] = {cout.get()[k][0], cout.get()[k][1]};
  return result;
}

std::vector<double> Spectral::inverse(std::span<const std::complex<double>> in) const {
  auto cin = aligned<fftw_complex>(complex_size_);
  auto rout = aligned<double>(real_size_);
  std::memcpy(cin.get(), in.data(), sizeof(fftw_complex) * complex_size_);
  fftw_execute_dft_c2r(inverse_plan_, cin.get(), rout.get());
  const double scale = 1.0 / static_cast<double>(real_size_);
  std::vector<double> result(real_size_);
  for (std::size_t i = 0; i < real_size_; ++i) result[i] = rout[i] * scale;
  return result;
}

}  // namespace pasym::detail
