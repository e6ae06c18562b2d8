#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pasym/multi_index.hpp"

namespace pasym {

namespace detail {
class Spectral;
}

/// Uniform periodic grid on [-L, L)^N with n nodes per axis, N ∈ {1,2}.
///
/// Nodes are x_j = -L + j·h with h = 2L/n. Samples are stored row-major with
/// the first axis slowest.
class Grid {
 public:
  Grid(int dimension, double half_extent, std::size_t points_per_axis);

  static std::shared_ptr<const Grid> make(int dimension, double half_extent,
                                          std::size_t points_per_axis);

  int dimension() const { return dimension_; }
  double half_extent() const { return half_extent_; }
  std::size_t points_per_axis() const { return points_; }
  std::size_t size() const { return size_; }
  double spacing() const { return spacing_; }
  /// h^N, the trapezoid quadrature weight.
  double cell_volume() const;

  double node(std::size_t j) const { return -half_extent_ + static_cast<double>(j) * spacing_; }
  /// Coordinates of the flat sample index (unused axes are zero).
  std::array<double, 2> point(std::size_t flat) const;
  /// True for samples on the outermost layer of nodes.
  bool on_boundary(std::size_t flat) const;

  bool same_geometry(const Grid& other) const;

  const detail::Spectral& spectral() const { return *spectral_; }

 private:
  int dimension_;
  double half_extent_;
  std::size_t points_;
  std::size_t size_;
  double spacing_;
  std::shared_ptr<const detail::Spectral> spectral_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Max |sample| tolerated on the outermost grid layer before a result is
/// declared invalid.
inline constexpr double kBoundaryTol = 1e-9;

/// A real function sampled on a Grid. Value semantics; binary operations
/// require identical grid geometry.
class Field {
 public:
  Field() = default;
  Field(GridPtr grid, std::vector<double> samples, std::optional<double> time = std::nullopt);

  static Field zeros(GridPtr grid, std::optional<double> time = std::nullopt);
  static Field sample(GridPtr grid, const std::function<double(std::span<const double>)>& f,
                      std::optional<double> time = std::nullopt);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return samples_.size(); }
  std::span<const double> values() const { return samples_; }
  std::span<double> values() { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }
  double& operator[](std::size_t i) { return samples_[i]; }

  std::optional<double> time() const { return time_; }
  void set_time(std::optional<double> t) { time_ = t; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  /// this += s·other
  Field& add_scaled(double s, const Field& other);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator*(Field a, double s) { return a *= s; }

  /// Max |sample| over the outermost layer.
  double boundary_max() const;
  bool all_finite() const;
  bool is_zero() const;

 private:
  void require_same_grid(const Field& other) const;

  GridPtr grid_;
  std::vector<double> samples_;
  std::optional<double> time_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Trapezoid L^q norm; q = kInfinity gives max |f|. Throws DomainError for q < 1.
double lq_norm(const Field& f, double q);
/// Trapezoid ∫ (1+|x|)^l |f|. Throws DomainError for l < 0.
double weighted_l1_norm(const Field& f, double l);
/// Trapezoid ∫ f.
double integral(const Field& f);
/// Trapezoid ∫ x^α f.
double moment_of_field(const Field& f, const MultiIndex& alpha);

/// e^{τΔ}f by exact multiplication with exp(-|ξ|²τ) in Fourier space.
Field heat_apply(const Field& f, double tau);
/// exp(-damping·τ)·e^{τΔ}f.
Field damped_heat_apply(const Field& f, double tau, double damping);
/// Multiplies the Fourier transform by symbol(|ξ|²).
Field apply_radial_symbol(const Field& f, const std::function<double(double)>& symbol);
/// Spectral ∂/∂x_i for every axis (Nyquist mode dropped).
std::vector<Field> gradient(const Field& f);
/// Spectral Σ ∂ᵢ Fᵢ.
Field divergence(std::span<const Field> components);
/// Spectral Laplacian.
Field laplacian(const Field& f);

/// Pointwise Euclidean norm of a list of fields on one grid.
Field pointwise_norm(std::span<const Field> components);

/// Snapshot CSV: '#'-prefixed header (N, L, n, time_tag) then one
/// "x[,y],value" row per node, 17 significant digits.
void write_field_csv(std::ostream& out, const Field& f);
/// Reads a snapshot; reuses `grid` when its geometry matches the header.
Field read_field_csv(std::istream& in, GridPtr grid = nullptr);

}  // namespace pasym
