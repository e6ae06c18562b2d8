#include "pasym/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pasym/errors.hpp"
#include "pasym/moments.hpp"

namespace pasym {

void SolveConfig::validate() const {
  if (!(horizon > 0.0)) throw DomainError("SolveConfig: horizon must be positive");
  if (!(uniform_dt > 0.0) || !(max_dt > 0.0)) throw DomainError("SolveConfig: step sizes must be positive");
  if (!(uniform_until >= 0.0)) throw DomainError("SolveConfig: uniform_until must be nonnegative");
  if (!(growth > 1.0)) throw DomainError("SolveConfig: growth factor must exceed 1");
  if (refinement < 0) throw DomainError("SolveConfig: refinement must be nonnegative");
  if (!(picard_tol > 0.0)) throw DomainError("SolveConfig: picard_tol must be positive");
  if (picard_max_iters < 1) throw DomainError("SolveConfig: picard_max_iters must be >= 1");
}

std::vector<double> time_grid(const SolveConfig& cfg) {
  cfg.validate();
  const double T = cfg.horizon;
  std::vector<double> t{0.0};
  const double until = std::min(cfg.uniform_until, T);
  const auto n_uniform = static_cast<std::size_t>(std::llround(until / cfg.uniform_dt));
  for (std::size_t k = 1; k <= n_uniform; ++k) {
    const double s = std::min(static_cast<double>(k) * cfg.uniform_dt, until);
    if (s > t.back()) t.push_back(s);
  }
  while (t.back() < T) {
    const double cur = t.back();
    double next = cur > 0.0 ? std::min(cur * cfg.growth, cur + cfg.max_dt) : cfg.uniform_dt;
    next = std::max(next, cur + cfg.uniform_dt);
    // Avoid a sliver interval at the end.
    if (next >= T || T - next < 1e-3 * (next - cur)) next = T;
    t.push_back(next);
  }
  for (int level = 0; level < cfg.refinement; ++level) {
    std::vector<double> fine{t.front()};
    for (std::size_t k = 1; k < t.size(); ++k) {
      fine.push_back(0.5 * (t[k - 1] + t[k]));
      fine.push_back(t[k]);
    }
    t = std::move(fine);
  }
  return t;
}

namespace {

double l1_sum(std::span<const Field> fs) {
  double s = 0.0;
  for (const Field& f : fs) s += lq_norm(f, 1.0);
  return s;
}

double l1_distance(std::span<const Field> a, std::span<const Field> b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += lq_norm(a[c] - b[c], 1.0);
  return s;
}

}  // namespace

std::vector<Field> picard_step(const Nonlinearity& nl, std::span<const Field> iterate, double t_left,
                               double dt, std::span<const Field> base, DuhamelRule rule,
                               const ChemotaxisState* chemical_left, std::span<const Field> u_left) {
  const double t_right = t_left + dt;
  std::vector<Field> out(base.begin(), base.end());
  if (nl.is_zero()) return out;
  std::optional<ChemotaxisState> chem;
  if (nl.needs_chemotaxis()) {
    if (chemical_left == nullptr || u_left.empty()) {
      throw ContractViolation("picard_step: chemotaxis needs the left chemical and state");
    }
    chem = ChemotaxisState{advance_chemical(chemical_left->v, u_left[0], iterate[0], dt), chemical_left->psi};
  }
  const auto F = nl(t_right, iterate, chem ? &*chem : nullptr);
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] += duhamel_right(F[c], dt, rule);
    out[c].set_time(t_right);
  }
  return out;
}

Trajectory solve(const Nonlinearity& nl, std::vector<Field> phi, const SolveConfig& cfg, std::optional<Field> psi) {
  cfg.validate();
  if (phi.size() != nl.system_size()) throw ContractViolation("solve: initial data has wrong component count");
  const GridPtr grid = phi.front().grid_ptr();
  for (const Field& f : phi) {
    if (!f.grid().same_geometry(*grid)) throw ContractViolation("solve: components live on different grids");
  }
  if (nl.needs_chemotaxis() && !psi) throw ContractViolation("solve: chemotaxis needs an initial chemical");
  if (!nl.needs_chemotaxis() && psi) throw ContractViolation("solve: initial chemical given without chemotaxis");

  const auto times = time_grid(cfg);
  Trajectory traj(grid, nl.descriptor(), nl.system_size());

  std::vector<Field> u = std::move(phi);
  for (Field& f : u) f.set_time(0.0);
  std::optional<ChemotaxisState> chem;
  if (psi) {
    psi->set_time(0.0);
    chem = ChemotaxisState{*psi, *psi};
  }
  std::vector<Field> F = nl(0.0, u, chem ? &*chem : nullptr);
  traj.append(0.0, u, F, chem ? std::optional<Field>(chem->v) : std::nullopt);

  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t0 = times[k];
    const double t1 = times[k + 1];
    const double dt = t1 - t0;
    std::vector<Field> base;
    for (std::size_t c = 0; c < u.size(); ++c) {
      Field b = heat_apply(u[c], dt);
      if (!nl.is_zero()) b += duhamel_left(F[c], dt, cfg.duhamel_rule);
      b.set_time(t1);
      base.push_back(std::move(b));
    }
    std::vector<Field> next = base;
    if (!nl.is_zero()) {
      for (std::size_t c = 0; c < u.size(); ++c) next[c] += duhamel_right(F[c], dt, cfg.duhamel_rule);
      bool converged = false;
      double change = 0.0;
      for (int it = 0; it < cfg.picard_max_iters; ++it) {
        auto sweep = picard_step(nl, next, t0, dt, base, cfg.duhamel_rule, chem ? &*chem : nullptr, u);
        change = l1_distance(sweep, next) / std::max(l1_sum(sweep), 1e-300);
        next = std::move(sweep);
        if (change <= cfg.picard_tol) {
          converged = true;
          break;
        }
      }
      if (!converged) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "solve: Picard iteration did not converge on [%.6g, %.6g] (last change %.3e)",
                      t0, t1, change);
        throw ConvergenceError(buf);
      }
    }
    if (chem) chem->v = advance_chemical(chem->v, u[0], next[0], dt);
    F = nl(t1, next, chem ? &*chem : nullptr);
    u = std::move(next);
    traj.append(t1, u, F, chem ? std::optional<Field>(chem->v) : std::nullopt);
  }
  return traj;
}

MomentAudit mass_and_moment_audit(const Trajectory& traj, int k_cap) {
  MomentAudit audit;
  const std::size_t n = traj.size();
  const int dim = traj.grid().dimension();
  const auto alphas = indices_up_to(dim, k_cap);
  for (std::size_t c = 0; c < traj.components(); ++c) {
    std::vector<MomentTable> mu, mf;
    for (std::size_t k = 0; k < n; ++k) {
      mu.push_back(moment_coefficients(traj.state(k)[c], traj.time(k), k_cap));
      mf.push_back(moment_coefficients(traj.forcing(k)[c], traj.time(k), k_cap));
    }
    const double m0 = integral(traj.state(0)[c]);
    double drift = 0.0;
    for (std::size_t k = 0; k < n; ++k) drift = std::max(drift, std::abs(integral(traj.state(k)[c]) - m0));
    audit.mass_drift.push_back(drift);

    for (const MultiIndex& alpha : alphas) {
      MomentAuditEntry e;
      e.component = c;
      e.alpha = alpha;
      double acc = 0.0, acc_abs = 0.0;
      // Floored at the roundoff level of the natural moment size, so moments
      // that vanish by symmetry do not report 0/0.
      e.scale = std::abs(mu[0].at(alpha));
      for (std::size_t k = 0; k < n; ++k) {
        e.natural_scale = std::max(e.natural_scale, weighted_l1_norm(traj.state(k)[c], alpha.order()));
      }
      e.scale = std::max(e.scale, kAuditRoundoffFloor * e.natural_scale);
      for (std::size_t k = 1; k < n; ++k) {
        const double dt = traj.time(k) - traj.time(k - 1);
        const double fl = mf[k - 1].at(alpha), fr = mf[k].at(alpha);
        acc += 0.5 * dt * (fl + fr);
        acc_abs += 0.5 * dt * (std::abs(fl) + std::abs(fr));
        const double res = mu[k].at(alpha) - mu[0].at(alpha) - acc;
        e.max_residual = std::max(e.max_residual, std::abs(res));
        e.scale = std::max({e.scale, std::abs(mu[k].at(alpha)), acc_abs});
      }
      e.max_relative = e.scale > 0.0 ? e.max_residual / e.scale : 0.0;
      audit.max_relative = std::max(audit.max_relative, e.max_relative);
      audit.entries.push_back(std::move(e));
    }
  }
  return audit;
}

double duhamel_consistency(const Trajectory& traj, DuhamelRule rule) {
  const std::size_t last = traj.size() - 1;
  const double T = traj.horizon();
  double total = 0.0;
  for (std::size_t c = 0; c < traj.components(); ++c) {
    Field rebuilt = heat_apply(traj.state(0)[c], T);
    for (std::size_t k = 0; k < last; ++k) {
      const double dt = traj.time(k + 1) - traj.time(k);
      Field slab = duhamel_left(traj.forcing(k)[c], dt, rule);
      slab += duhamel_right(traj.forcing(k + 1)[c], dt, rule);
      rebuilt += heat_apply(slab, T - traj.time(k + 1));
    }
    total += lq_norm(traj.state(last)[c] - rebuilt, 1.0);
  }
  return total;
}

}  // namespace pasym
