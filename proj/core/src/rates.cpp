#include "pasym/rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "pasym/errors.hpp"
#include "pasym/expansion.hpp"

namespace pasym {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Un: return "Un";
    case Variant::Tilde: return "tilde";
    case Variant::Hat: return "hat";
    case Variant::Leading: return "leading";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "Un" || name == "un") return Variant::Un;
  if (name == "tilde") return Variant::Tilde;
  if (name == "hat") return Variant::Hat;
  if (name == "leading") return Variant::Leading;
  throw DomainError("unknown expansion variant '" + name + "'");
}

FitWindow default_window(double horizon) { return FitWindow{horizon / 10.0, horizon / 2.0}; }

LogCorrection parse_log_correction(const std::string& name) {
  if (name == "auto") return LogCorrection::Auto;
  if (name == "on" || name == "true") return LogCorrection::On;
  if (name == "off" || name == "false") return LogCorrection::Off;
  throw DomainError("unknown log correction mode '" + name + "'");
}

std::string to_string(LogCorrection mode) {
  switch (mode) {
    case LogCorrection::Auto: return "auto";
    case LogCorrection::On: return "on";
    case LogCorrection::Off: return "off";
  }
  return "?";
}

PredictedRate predicted_rate(double K, double A, int n) {
  if (!(A > 1.0)) throw DomainError("predicted_rate: requires A > 1");
  if (K < 0.0 || n < 0) throw DomainError("predicted_rate: requires K >= 0 and n >= 0");
  const double other = (n + 1) * (A - 1.0);
  return PredictedRate{std::min(K / 2.0, other), std::abs(2.0 * other - K) <= 1e-12};
}

PredictedRate predicted_rate_tilde(double K, double A) {
  if (!(A > 1.0)) throw DomainError("predicted_rate_tilde: requires A > 1");
  if (K < 0.0) throw DomainError("predicted_rate_tilde: requires K >= 0");
  return PredictedRate{std::min(K / 2.0, 2.0 * (A - 1.0)), std::abs(K - 4.0 * (A - 1.0)) <= 1e-12};
}

NormSeries measure_error_series(const Trajectory& traj, const ExpansionProfile& profile, double q, int j,
                                std::optional<double> weight) {
  if (j != 0 && j != 1) throw DomainError("measure_error_series: derivative order must be 0 or 1");
  if (!weight && !(q >= 1.0)) throw DomainError("measure_error_series: q must lie in [1, inf]");
  if (weight && *weight < 0.0) throw DomainError("measure_error_series: weight must be nonnegative");
  NormSeries s;
  s.q = weight ? 1.0 : q;
  s.j = j;
  s.weight = weight;
  const double N = traj.grid().dimension();
  std::size_t dropped = 0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.time(k);
    if (t < 1.0) continue;
    const auto& U = profile.values[profile.index_of(t)];
    std::vector<Field> parts;
    for (std::size_t c = 0; c < traj.components(); ++c) {
      Field d = traj.state(k)[c] - U[c];
      if (j == 0) {
        parts.push_back(std::move(d));
      } else {
        for (Field& g : gradient(d)) parts.push_back(std::move(g));
      }
    }
    const Field mag = pointwise_norm(parts);
    double value = 0.0;
    if (weight) {
      value = std::pow(t, j / 2.0) * std::pow(1.0 + t, -*weight / 2.0) * weighted_l1_norm(mag, *weight);
    } else {
      const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
      value = std::pow(t, N / 2.0 * (1.0 - inv_q) + j / 2.0) * lq_norm(mag, q);
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      ++dropped;
      continue;
    }
    s.t.push_back(t);
    s.value.push_back(value);
  }
  if (dropped > 0) s.notes.push_back("dropped " + std::to_string(dropped) + " zero or non-finite values");
  return s;
}

double fit_slope(const NormSeries& series, FitWindow window, bool log_corrected) {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    const double t = series.t[k];
    if (t < window.lo || t > window.hi) continue;
    double v = series.value[k];
    if (log_corrected) v /= std::log(2.0 + t);
    x.push_back(std::log(t));
    y.push_back(std::log(v));
  }
  if (x.size() < kMinFitPoints) {
    throw DomainError("fit_slope: need at least 8 points in the window, have " + std::to_string(x.size()));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  return sxy / sxx;
}

RateVerdict verdict_against(const NormSeries& series, PredictedRate rate, double tolerance, FitWindow window,
                            LogCorrection mode) {
  RateVerdict v;
  v.predicted_exponent = rate.exponent;
  v.log_correction = mode == LogCorrection::On || (mode == LogCorrection::Auto && rate.log_flag);
  v.tolerance = tolerance;
  v.window = window;
  v.fitted_slope = fit_slope(series, window, v.log_correction);
  v.pass = v.fitted_slope <= -rate.exponent + tolerance;
  v.sharp = std::abs(v.fitted_slope + rate.exponent) <= kSharpnessBand;
  for (const auto& n : series.notes) v.note += (v.note.empty() ? "" : "; ") + n;
  return v;
}

RateVerdict verdict(const NormSeries& series, double K, double A, int n, Variant variant, double tolerance,
                    FitWindow window, LogCorrection mode) {
  PredictedRate rate;
  switch (variant) {
    case Variant::Un: rate = predicted_rate(K, A, n); break;
    case Variant::Tilde:
    case Variant::Hat: rate = predicted_rate_tilde(K, A); break;
    case Variant::Leading: rate = predicted_rate(std::min(K, 1.0), A, 0); break;
  }
  if (series.weight) {
    // The weighted bound holds with K/2 − σ for every σ > 0.
    const double K2 = std::max(0.0, (variant == Variant::Leading ? std::min(K, 1.0) : K) / 2.0 - kWeightSigma);
    const double other = variant == Variant::Un ? (n + 1) * (A - 1.0)
                         : variant == Variant::Leading ? A - 1.0
                                                       : 2.0 * (A - 1.0);
    rate = PredictedRate{std::min(K2, other), false};
  }
  return verdict_against(series, rate, tolerance, window, mode);
}

void write_series_csv(std::ostream& out, const NormSeries& series) {
  out << "t,scaled_value\n";
  char buf[80];
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", series.t[k], series.value[k]);
    out << buf;
  }
}

}  // namespace pasym
