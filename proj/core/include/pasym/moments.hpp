#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "pasym/field.hpp"
#include "pasym/multi_index.hpp"

namespace pasym {

/// Largest moment order the projection machinery accepts.
inline constexpr int kMaxMomentOrder = 6;
/// Guard on x^α amplification of the truncated tail: boundary_max·L^K must stay below this.
inline constexpr double kMomentTailTol = 1e-6;

/// [k]: the unique integer in (k-1, k]. Throws DomainError for k < 0.
int bracket(double k);

/// Coefficients M_α(f,t) for every |α| ≤ K_cap, in graded order.
class MomentTable {
 public:
  MomentTable(int dimension, int k_cap, double time, std::vector<std::pair<MultiIndex, double>> entries);

  int dimension() const { return dimension_; }
  int k_cap() const { return k_cap_; }
  double time() const { return time_; }
  const std::vector<std::pair<MultiIndex, double>>& entries() const { return entries_; }

  double at(const MultiIndex& alpha) const;
  double max_abs() const;

 private:
  int dimension_;
  int k_cap_;
  double time_;
  std::vector<std::pair<MultiIndex, double>> entries_;
};

/// Inductive M_α(f,t): the raw moment ∫x^α f minus the contributions of
/// lower g_ρ (ρ ∈ J(α)), with ∫x^α g_ρ taken from the kernel closed form.
/// Throws GuardBreach when the truncated tail would pollute order-K_cap moments.
MomentTable moment_coefficients(const Field& f, double t, int k_cap);

/// g_α(·,t) sampled on `grid`.
Field g_alpha_field(const GridPtr& grid, const MultiIndex& alpha, double t);

/// Σ_{|α|≤i} M_α g_α(·,t) from a table computed at time t.
Field moment_profile(const GridPtr& grid, const MomentTable& table, int i);

/// P_i(t)f = f − Σ_{|α|≤i} M_α(f,t) g_α(·,t). The table must have been
/// computed at exactly t and with K_cap ≥ i.
Field project_P(const Field& f, const MomentTable& table, double t, int i);
Field project_P(const Field& f, double t, int i);

/// ‖P_K(t) e^{tΔ}φ − e^{tΔ} P_K(0) φ‖₁, both sides computed independently.
double commute_check(const Field& phi, double t, int k_cap);

/// Rows "alpha,value,t" (alpha dash-joined), 17 significant digits.
void write_moment_csv(std::ostream& out, const MomentTable& table, bool header = true);

}  // namespace pasym
