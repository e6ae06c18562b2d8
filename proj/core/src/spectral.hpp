#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <fftw3.h>

namespace pasym::detail {

/// Real-to-complex transforms for one grid geometry. Plans are created once
/// (under a global lock); execution uses per-call buffers, so concurrent
/// transforms are safe.
class Spectral {
 public:
  Spectral(int dimension, std::size_t points, double half_extent);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  std::size_t real_size() const { return real_size_; }
  std::size_t complex_size() const { return complex_size_; }

  std::vector<std::complex<double>> forward(std::span<const double> in) const;
  /// Inverse transform including the 1/size normalisation.
  std::vector<double> inverse(std::span<const std::complex<double>> in) const;

  /// |ξ|² per complex coefficient.
  std::span<const double> k_squared() const { return k2_; }
  /// ξ_axis per complex coefficient, zero on that axis' Nyquist mode.
  std::span<const double> k_axis(int axis) const { return axis == 0 ? k0_ : k1_; }

 private:
  int dimension_;
  std::size_t points_;
  std::size_t real_size_;
  std::size_t complex_size_;
  fftw_plan forward_plan_ = nullptr;
  fftw_plan inverse_plan_ = nullptr;
  std::vector<double> k2_;
  std::vector<double> k0_;
  std::vector<double> k1_;
};

}  // namespace pasym::detail
