#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pasym/duhamel.hpp"
#include "pasym/dynamics.hpp"
#include "pasym/multi_index.hpp"
#include "pasym/rates.hpp"
#include "pasym/trajectory.hpp"

namespace pasym {

inline constexpr int kMaxExpansionOrder = 4;

/// A profile evaluated at every recorded time of its source trajectory.
struct ExpansionProfile {
  Variant variant = Variant::Un;
  int order = 0;
  double K = 0.0;
  int J = -1;
  std::vector<double> times;
  /// values[k][c]: component c at times[k].
  std::vector<std::vector<Field>> values;
  /// Duhamel-accumulated correction; empty for the order-0 and leading profiles.
  std::vector<std::vector<Field>> corrections;
  /// Scalars worth reporting (limit mass, tail estimates, ...).
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
  bool flagged = false;

  std::size_t index_of(double t) const;
  const std::vector<Field>& at(double t) const;
};

/// Σ_{|α|<=[K]} M_α(u(t),t) g_α(t) for every component. Throws DomainError
/// when t is not a recorded time.
std::vector<Field> build_U0(const Trajectory& traj, double K, double t);

/// U_n of the inductive recursion; n = 0 gives U₀ with zero correction.
/// Refuses n > kMaxExpansionOrder.
ExpansionProfile build_Un(const Trajectory& traj, const Nonlinearity& nl, double K, int n,
                          DuhamelRule rule = DuhamelRule::Trapezoid);

/// ũ with the frozen profile 𝒰_J built from the horizon moments.
ExpansionProfile build_tilde_u(const Trajectory& traj, const Nonlinearity& nl, double K, int J,
                               DuhamelRule rule = DuhamelRule::Trapezoid);

/// û = [M − ∫₀^∞∫F_M] g + Σ c_α(t) g_α + ∫₀ᵗ e^{(t−s)Δ}F_M ds.
ExpansionProfile build_hat_u(const Trajectory& traj, const Nonlinearity& nl, double K,
                             DuhamelRule rule = DuhamelRule::Trapezoid);

/// M·g with M the limit mass.
ExpansionProfile build_leading(const Trajectory& traj, const Nonlinearity& nl);

/// Power-law tail ∫_T^∞ v(s) ds fitted on the recorded [T/10, T] part of v.
struct TailEstimate {
  double value = 0.0;
  double exponent = 0.0;
  /// The integrand is at roundoff level relative to `scale`; value is 0.
  bool negligible = false;
  bool flagged = false;
  std::string note;
};

TailEstimate power_law_tail(std::span<const double> times, std::span<const double> values, double scale);

/// Limit masses per component: exact for divergence form, otherwise the
/// horizon mass plus the extrapolated tail of ∫F.
std::vector<double> limit_mass(const Trajectory& traj, const Nonlinearity& nl,
                               std::vector<TailEstimate>* tails = nullptr);

struct CoefficientSeries {
  MultiIndex alpha;
  std::size_t component = 0;
  std::vector<double> times;
  std::vector<double> values;
  TailEstimate tail;
};

/// c_α(t) at every recorded time: c₀ by truncation on [t,T] plus tail,
/// c_α (|α| >= 1) as M_α(u(t),t) − trapezoid ∫₀ᵗ M_α(F_M(s),s)ds.
CoefficientSeries c_alpha_series(const Trajectory& traj, const Nonlinearity& nl, const MultiIndex& alpha,
                                 std::size_t component = 0);

/// Fits |M_α(u(t),t) − M_α(u(T),T)| against t^{-(A-1)+|α|/2}; for
/// A <= 1 + |α|/2 fits |M_α(u(t),t)| against the growth envelope.
RateVerdict coefficient_drift_check(const Trajectory& traj, const Nonlinearity& nl, const MultiIndex& alpha,
                                    double tolerance = 0.1, std::optional<FitWindow> window = std::nullopt,
                                    std::size_t component = 0);

}  // namespace pasym
