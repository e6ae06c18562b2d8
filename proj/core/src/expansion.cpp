#include "pasym/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "pasym/errors.hpp"
#include "pasym/kernel.hpp"
#include "pasym/moments.hpp"

namespace pasym {

std::size_t ExpansionProfile::index_of(double t) const {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (std::abs(times[k] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return k;
  }
  throw DomainError("ExpansionProfile: time " + std::to_string(t) + " is not an evaluation time");
}

const std::vector<Field>& ExpansionProfile::at(double t) const { return values[index_of(t)]; }

namespace {

using Series = std::vector<std::vector<Field>>;

std::optional<ChemotaxisState> chemical_at(const Trajectory& traj, std::size_t k) {
  if (!traj.chemical(k)) return std::nullopt;
  return ChemotaxisState{*traj.chemical(k), *traj.chemical(0)};
}

std::vector<Field> evaluate(const Nonlinearity& nl, const Trajectory& traj, std::size_t k,
                            std::span<const Field> profile) {
  const auto chem = chemical_at(traj, k);
  if (nl.needs_chemotaxis() && !chem) throw ContractViolation("expansion: trajectory has no chemical record");
  return nl(traj.time(k), profile, chem ? &*chem : nullptr);
}

// D(t_{k+1}) = e^{ΔtΔ}D(t_k) + slab rule of the sampled forcing.
Series accumulate(const Trajectory& traj, const Series& forcing, DuhamelRule rule) {
  Series out;
  std::vector<Field> d;
  for (const Field& f : forcing[0]) d.push_back(Field::zeros(f.grid_ptr(), 0.0));
  out.push_back(d);
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double dt = traj.time(k + 1) - traj.time(k);
    for (std::size_t c = 0; c < d.size(); ++c) {
      Field next = heat_apply(d[c], dt);
      next += duhamel_left(forcing[k][c], dt, rule);
      next += duhamel_right(forcing[k + 1][c], dt, rule);
      next.set_time(traj.time(k + 1));
      d[c] = std::move(next);
    }
    out.push_back(d);
  }
  return out;
}

Series projected(const Trajectory& traj, Series forcing, int i) {
  for (std::size_t k = 0; k < forcing.size(); ++k) {
    for (Field& f : forcing[k]) f = project_P(f, traj.time(k), i);
  }
  return forcing;
}

ExpansionProfile moment_part(const Trajectory& traj, double K) {
  ExpansionProfile p;
  p.K = K;
  p.times = traj.times();
  for (std::size_t k = 0; k < traj.size(); ++k) p.values.push_back(build_U0(traj, K, traj.time(k)));
  return p;
}

Field gauss_field(const GridPtr& grid, double t) { return g_alpha_field(grid, MultiIndex::zero(grid->dimension()), t); }

double trapezoid(std::span<const double> t, std::span<const double> v, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t k = from; k < to; ++k) s += 0.5 * (t[k + 1] - t[k]) * (v[k] + v[k + 1]);
  return s;
}

}  // namespace

std::vector<Field> build_U0(const Trajectory& traj, double K, double t) {
  const std::size_t k = traj.require_index(t);
  const int i = bracket(K);
  std::vector<Field> out;
  for (const Field& u : traj.state(k)) {
    out.push_back(moment_profile(traj.grid_ptr(), moment_coefficients(u, traj.time(k), i), i));
  }
  return out;
}

ExpansionProfile build_Un(const Trajectory& traj, const Nonlinearity& nl, double K, int n, DuhamelRule rule) {
  if (n < 0) throw DomainError("build_Un: order must be nonnegative");
  if (n > kMaxExpansionOrder) throw DomainError("build_Un: order above 4 refused (cost guard)");
  if (nl.system_size() != traj.components()) throw ContractViolation("build_Un: component count mismatch");
  ExpansionProfile p = moment_part(traj, K);
  p.order = n;
  if (n == 0) return p;
  if (nl.is_zero()) {
    p.notes.push_back("zero nonlinearity: U_n = U_0");
    return p;
  }
  if (!nl.supported()) {
    p.flagged = true;
    p.notes.push_back(nl.support_note());
  }
  const ExpansionProfile prev = build_Un(traj, nl, K, n - 1, rule);
  Series forcing;
  for (std::size_t k = 0; k < traj.size(); ++k) forcing.push_back(evaluate(nl, traj, k, prev.values[k]));
  p.corrections = accumulate(traj, projected(traj, std::move(forcing), bracket(K)), rule);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    for (std::size_t c = 0; c < traj.components(); ++c) p.values[k][c] += p.corrections[k][c];
  }
  return p;
}

ExpansionProfile build_tilde_u(const Trajectory& traj, const Nonlinearity& nl, double K, int J, DuhamelRule rule) {
  if (J < 0 || J > bracket(K)) throw DomainError("build_tilde_u: J must lie in {0, ..., [K]}");
  const double A = nl.decay_exponent();
  if (!(A > 1.0)) throw DomainError("build_tilde_u: requires A > 1");
  const double J_A = std::min(static_cast<double>(J), 2.0 * (A - 1.0));
  const std::size_t last = traj.size() - 1;
  const double T = traj.horizon();
  const GridPtr& grid = traj.grid_ptr();

  // Frozen coefficients: the horizon values stand in for the limits M_α.
  std::vector<std::vector<std::pair<MultiIndex, double>>> frozen(traj.components());
  const int top = J == 0 ? 0 : static_cast<int>(std::ceil(J_A)) - 1;
  for (std::size_t c = 0; c < traj.components(); ++c) {
    const auto table = moment_coefficients(traj.state(last)[c], T, std::max(top, 0));
    for (const auto& [alpha, m] : table.entries()) {
      if (J > 0 && !(alpha.order() < J_A)) continue;
      if (!(A > 1.0 + alpha.order() / 2.0)) {
        throw DomainError("build_tilde_u: M_" + alpha.to_string() +
                          " has no limit (A <= 1 + |alpha|/2, the coefficient may grow)");
      }
      frozen[c].emplace_back(alpha, m);
    }
  }

  ExpansionProfile p = moment_part(traj, K);
  p.variant = Variant::Tilde;
  p.order = 1;
  p.J = J;
  p.diagnostics["J_A"] = J_A;
  for (std::size_t c = 0; c < traj.components(); ++c) {
    for (const auto& [alpha, m] : frozen[c]) {
      p.diagnostics["frozen_M_" + alpha.to_string() + "_u" + std::to_string(c)] = m;
    }
  }
  if (nl.is_zero()) return p;

  Series forcing;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<Field> U;
    for (std::size_t c = 0; c < traj.components(); ++c) {
      Field f = Field::zeros(grid, traj.time(k));
      for (const auto& [alpha, m] : frozen[c]) f.add_scaled(m, g_alpha_field(grid, alpha, traj.time(k)));
      U.push_back(std::move(f));
    }
    forcing.push_back(evaluate(nl, traj, k, U));
  }
  p.corrections = accumulate(traj, projected(traj, std::move(forcing), bracket(K)), rule);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    for (std::size_t c = 0; c < traj.components(); ++c) p.values[k][c] += p.corrections[k][c];
  }
  return p;
}

TailEstimate power_law_tail(std::span<const double> times, std::span<const double> values, double scale) {
  TailEstimate tail;
  if (times.size() != values.size() || times.empty()) throw ContractViolation("power_law_tail: bad series");
  const double T = times.back();
  std::vector<double> lx, ly;
  double vmax = 0.0;
  int sign = 0;
  bool mixed = false;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < T / 10.0 || times[k] <= 0.0) continue;
    vmax = std::max(vmax, std::abs(values[k]));
    const int s = values[k] > 0.0 ? 1 : (values[k] < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) mixed = true;
    if (sign == 0) sign = s;
    if (s != 0) {
      lx.push_back(std::log(times[k]));
      ly.push_back(std::log(std::abs(values[k])));
    }
  }
  if (vmax <= 1e-12 * scale || vmax == 0.0) {
    tail.negligible = true;
    tail.note = "integrand at roundoff level; tail set to 0";
    return tail;
  }
  if (mixed || lx.size() < 3) {
    tail.flagged = true;
    tail.note = "integrand changes sign on [T/10, T]; no power-law tail";
    return tail;
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k] / n;
    my += ly[k] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rms = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    const double r = ly[k] - (intercept + slope * lx[k]);
    rms += r * r / n;
  }
  rms = std::sqrt(rms);
  tail.exponent = slope;
  if (!(slope < -1.0)) {
    tail.flagged = true;
    tail.note = "fitted tail exponent >= -1 is not integrable";
    return tail;
  }
  if (rms > 0.1) {
    tail.flagged = true;
    tail.note = "tail is not a clean power law (log residual > 0.1)";
  }
  tail.value = sign * std::exp(intercept) * std::pow(T, slope + 1.0) / (-slope - 1.0);
  return tail;
}

std::vector<double> limit_mass(const Trajectory& traj, const Nonlinearity& nl, std::vector<TailEstimate>* tails) {
  std::vector<double> M;
  const std::size_t last = traj.size() - 1;
  for (std::size_t c = 0; c < traj.components(); ++c) {
    if (nl.divergence_form()) {
      M.push_back(integral(traj.state(0)[c]));
      if (tails) tails->push_back(TailEstimate{0.0, 0.0, true, false, "divergence form: mass is conserved"});
      continue;
    }
    std::vector<double> mass_rate;
    double scale = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      mass_rate.push_back(integral(traj.forcing(k)[c]));
      scale = std::max(scale, lq_norm(traj.forcing(k)[c], 1.0));
    }
    const TailEstimate tail = power_law_tail(traj.times(), mass_rate, scale);
    M.push_back(integral(traj.state(last)[c]) + tail.value);
    if (tails) tails->push_back(tail);
  }
  return M;
}

namespace {

struct HatParts {
  std::vector<double> M;
  std::vector<TailEstimate> mass_tails;
  Series forcing_M;
};

HatParts hat_parts(const Trajectory& traj, const Nonlinearity& nl) {
  HatParts h;
  h.M = limit_mass(traj, nl, &h.mass_tails);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Field g = gauss_field(traj.grid_ptr(), traj.time(k));
    std::vector<Field> U;
    for (double m : h.M) U.push_back(m * g);
    h.forcing_M.push_back(evaluate(nl, traj, k, U));
  }
  return h;
}

CoefficientSeries coefficient_series(const Trajectory& traj, const HatParts& h, const MultiIndex& alpha,
                                     std::size_t c) {
  CoefficientSeries s;
  s.alpha = alpha;
  s.component = c;
  s.times = traj.times();
  const std::size_t n = traj.size();
  if (alpha.order() == 0) {
    std::vector<double> gap(n);
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      gap[k] = integral(h.forcing_M[k][c]) - integral(traj.forcing(k)[c]);
      scale = std::max(scale, lq_norm(h.forcing_M[k][c], 1.0) + lq_norm(traj.forcing(k)[c], 1.0));
    }
    s.tail = power_law_tail(s.times, gap, scale);
    for (std::size_t k = 0; k < n; ++k) s.values.push_back(trapezoid(s.times, gap, k, n - 1) + s.tail.value);
    return s;
  }
  const int order = alpha.order();
  std::vector<double> rate(n);
  for (std::size_t k = 0; k < n; ++k) {
    rate[k] = moment_coefficients(h.forcing_M[k][c], traj.time(k), order).at(alpha);
  }
  s.tail.negligible = true;
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) acc += 0.5 * (s.times[k] - s.times[k - 1]) * (rate[k - 1] + rate[k]);
    s.values.push_back(moment_coefficients(traj.state(k)[c], traj.time(k), order).at(alpha) - acc);
  }
  return s;
}

}  // namespace

CoefficientSeries c_alpha_series(const Trajectory& traj, const Nonlinearity& nl, const MultiIndex& alpha,
                                 std::size_t component) {
  if (component >= traj.components()) throw DomainError("c_alpha_series: no such component");
  if (alpha.order() > kMaxMomentOrder) throw DomainError("c_alpha_series: order too large");
  return coefficient_series(traj, hat_parts(traj, nl), alpha, component);
}

ExpansionProfile build_hat_u(const Trajectory& traj, const Nonlinearity& nl, double K, DuhamelRule rule) {
  const int i = bracket(K);
  const HatParts h = hat_parts(traj, nl);
  const GridPtr& grid = traj.grid_ptr();
  const std::size_t n = traj.size();

  ExpansionProfile p;
  p.variant = Variant::Hat;
  p.order = 1;
  p.K = K;
  p.times = traj.times();
  p.corrections = accumulate(traj, h.forcing_M, rule);
  p.values = p.corrections;

  for (std::size_t c = 0; c < traj.components(); ++c) {
    const std::string tag = "_u" + std::to_string(c);
    const TailEstimate& mt = h.mass_tails[c];
    p.diagnostics["M" + tag] = h.M[c];
    if (!mt.negligible) p.diagnostics["mass_tail" + tag] = mt.value;
    if (mt.flagged) {
      p.flagged = true;
      p.notes.push_back("limit mass" + tag + ": " + mt.note);
    }

    std::vector<double> mass_rate(n);
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      mass_rate[k] = integral(h.forcing_M[k][c]);
      scale = std::max(scale, lq_norm(h.forcing_M[k][c], 1.0));
    }
    const TailEstimate fm_tail = power_law_tail(p.times, mass_rate, scale);
    const double total = trapezoid(p.times, mass_rate, 0, n - 1) + fm_tail.value;
    p.diagnostics["integral_F_M" + tag] = total;
    if (!fm_tail.negligible) {
      p.diagnostics["integral_F_M_tail" + tag] = fm_tail.value;
      p.diagnostics["integral_F_M_tail_exponent" + tag] = fm_tail.exponent;
    }
    if (fm_tail.flagged) {
      p.flagged = true;
      p.notes.push_back("integral of F_M" + tag + ": " + fm_tail.note);
    }

    std::vector<CoefficientSeries> coeffs;
    for (const MultiIndex& alpha : indices_up_to(grid->dimension(), i)) {
      coeffs.push_back(coefficient_series(traj, h, alpha, c));
      if (coeffs.back().tail.flagged) {
        p.flagged = true;
        p.notes.push_back("c_0" + tag + ": " + coeffs.back().tail.note);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double t = p.times[k];
      Field& v = p.values[k][c];
      for (const CoefficientSeries& s : coeffs) {
        double a = s.values[k];
        if (s.alpha.order() == 0) a += h.M[c] - total;
        v.add_scaled(a, g_alpha_field(grid, s.alpha, t));
      }
      v.set_time(t);
    }
  }
  return p;
}

ExpansionProfile build_leading(const Trajectory& traj, const Nonlinearity& nl) {
  ExpansionProfile p;
  p.variant = Variant::Leading;
  p.times = traj.times();
  std::vector<TailEstimate> tails;
  const auto M = limit_mass(traj, nl, &tails);
  for (std::size_t c = 0; c < M.size(); ++c) {
    p.diagnostics["M_u" + std::to_string(c)] = M[c];
    if (tails[c].flagged) {
      p.flagged = true;
      p.notes.push_back("limit mass: " + tails[c].note);
    }
  }
  for (double t : p.times) {
    const Field g = gauss_field(traj.grid_ptr(), t);
    std::vector<Field> v;
    for (double m : M) v.push_back(m * g);
    p.values.push_back(std::move(v));
  }
  return p;
}

RateVerdict coefficient_drift_check(const Trajectory& traj, const Nonlinearity& nl, const MultiIndex& alpha,
                                    double tolerance, std::optional<FitWindow> window, std::size_t component) {
  const double A = nl.decay_exponent();
  if (!(A > 1.0)) throw DomainError("coefficient_drift_check: requires A > 1");
  const int order = alpha.order();
  const std::size_t last = traj.size() - 1;
  const double T = traj.horizon();
  const FitWindow w = window.value_or(FitWindow{10.0, T / 2.0});
  const bool growth = !(A > 1.0 + order / 2.0);
  const double limit = moment_coefficients(traj.state(last)[component], T, order).at(alpha);

  NormSeries s;
  double scale = 0.0;
  std::vector<std::pair<double, double>> raw;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.time(k);
    if (t < 1.0) continue;
    const double m = moment_coefficients(traj.state(k)[component], t, order).at(alpha);
    scale = std::max(scale, std::abs(m));
    raw.emplace_back(t, growth ? std::abs(m) : std::abs(m - limit));
  }
  for (const auto& [t, v] : raw) {
    if (v > 1e-13 * std::max(scale, 1e-300) && t < T) {
      s.t.push_back(t);
      s.value.push_back(v);
    }
  }
  PredictedRate rate;
  if (std::isinf(A)) {
    rate.exponent = std::numeric_limits<double>::infinity();
  } else {
    rate.exponent = (A - 1.0) - order / 2.0;
    rate.log_flag = std::abs(rate.exponent) <= 1e-12;
  }
  std::size_t in_window = 0;
  for (double t : s.t) in_window += (t >= w.lo && t <= w.hi) ? 1 : 0;
  if (in_window == 0) {
    RateVerdict v;
    v.fitted_slope = -std::numeric_limits<double>::infinity();
    v.predicted_exponent = rate.exponent;
    v.tolerance = tolerance;
    v.window = w;
    v.pass = true;
    v.note = "drift identically zero at roundoff level";
    return v;
  }
  RateVerdict v = verdict_against(s, rate, tolerance, w, LogCorrection::Auto);
  if (growth) v.note = "growth envelope (A <= 1 + |alpha|/2)";
  return v;
}

}  // namespace pasym
