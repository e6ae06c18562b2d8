#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pasym/duhamel.hpp"
#include "pasym/dynamics.hpp"
#include "pasym/field.hpp"
#include "pasym/multi_index.hpp"
#include "pasym/trajectory.hpp"

namespace pasym {

struct SolveConfig {
  double horizon = 100.0;
  /// Uniform spacing on [0, uniform_until].
  double uniform_dt = 0.02;
  double uniform_until = 1.0;
  /// Geometric growth factor of the time grid after uniform_until.
  double growth = 1.05;
  double max_dt = 2.0;
  /// Each level inserts the midpoint of every interval.
  int refinement = 0;
  double picard_tol = 1e-10;
  int picard_max_iters = 25;
  DuhamelRule duhamel_rule = DuhamelRule::Trapezoid;

  void validate() const;
};

/// Recording times t₀ = 0 < … < T of the configured grid.
std::vector<double> time_grid(const SolveConfig& cfg);

/// One fixed-point sweep u ↦ base + right-endpoint Duhamel term of F(u) on
/// [t_left, t_left + dt]. For chemotaxis the chemical is advanced from
/// `chemical_left` with the iterate as the right endpoint.
std::vector<Field> picard_step(const Nonlinearity& nl, std::span<const Field> iterate, double t_left,
                               double dt, std::span<const Field> base, DuhamelRule rule,
                               const ChemotaxisState* chemical_left = nullptr,
                               std::span<const Field> u_left = {});

/// Duhamel stepping with per-slab Picard iteration. `psi` is the initial
/// chemical and is required exactly when nl.needs_chemotaxis().
Trajectory solve(const Nonlinearity& nl, std::vector<Field> phi, const SolveConfig& cfg,
                 std::optional<Field> psi = std::nullopt);

struct MomentAuditEntry {
  std::size_t component = 0;
  MultiIndex alpha;
  double max_residual = 0.0;
  double scale = 0.0;
  double max_relative = 0.0;
  /// max_t |||u(t)|||_{|α|}, the size a moment of u can reach.
  double natural_scale = 0.0;
};

/// Residuals at or below this fraction of the natural scale are roundoff.
inline constexpr double kAuditRoundoffFloor = 1e-10;

struct MomentAudit {
  std::vector<MomentAuditEntry> entries;
  double max_relative = 0.0;
  /// Largest |∫u(t) − ∫φ| over the recorded times, per component.
  std::vector<double> mass_drift;
};

/// Residual of M_α(u(t),t) − M_α(φ,0) − ∫₀ᵗ M_α(F(τ),τ)dτ with trapezoid
/// τ-quadrature, for every |α| <= k_cap and every recorded t.
MomentAudit mass_and_moment_audit(const Trajectory& traj, int k_cap);

/// ‖u(T) − e^{TΔ}φ − Σ_k e^{(T−t_{k+1})Δ}(slab_k)‖₁ recomputed from the stored
/// states and forcings.
double duhamel_consistency(const Trajectory& traj, DuhamelRule rule);

}  // namespace pasym
