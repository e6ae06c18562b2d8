#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pasym/field.hpp"

namespace pasym {

/// Time-indexed solution record: per recorded time the m component fields,
/// the forcing F evaluated there, and (for chemotaxis) the chemical field v.
///
/// Append-only; every appended state must pass the boundary and finiteness
/// guards. Times are strictly increasing and start at 0.
class Trajectory {
 public:
  Trajectory(GridPtr grid, std::string descriptor, std::size_t components);

  void append(double t, std::vector<Field> state, std::vector<Field> forcing,
              std::optional<Field> chemical = std::nullopt);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::string& descriptor() const { return descriptor_; }
  std::size_t components() const { return components_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }

  const std::vector<double>& times() const { return times_; }
  double time(std::size_t k) const { return times_[k]; }
  double horizon() const { return times_.back(); }
  const std::vector<Field>& state(std::size_t k) const { return states_[k]; }
  const std::vector<Field>& forcing(std::size_t k) const { return forcing_[k]; }
  const std::optional<Field>& chemical(std::size_t k) const { return chemical_[k]; }

  /// ∫ u_c(0) dx per component.
  std::vector<double> initial_mass() const;

  /// Index of a recorded time (relative match 1e-12), if present.
  std::optional<std::size_t> index_of(double t) const;
  /// As index_of, throwing DomainError when t is not recorded.
  std::size_t require_index(double t) const;

 private:
  GridPtr grid_;
  std::string descriptor_;
  std::size_t components_;
  std::vector<double> times_;
  std::vector<std::vector<Field>> states_;
  std::vector<std::vector<Field>> forcing_;
  std::vector<std::optional<Field>> chemical_;
};

/// Throws GuardBreach when f has non-finite samples or exceeds kBoundaryTol on the boundary.
void check_field_guard(const Field& f, const std::string& what);

/// Writes snapshots/<k>_u<c>.csv (plus forcing and chemical) and a manifest
/// with times, grid geometry and the caller's config echo.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const std::string& config_echo);
Trajectory read_trajectory(const std::filesystem::path& dir);

}  // namespace pasym
