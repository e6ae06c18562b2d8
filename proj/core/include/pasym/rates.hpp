#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pasym/trajectory.hpp"

namespace pasym {

struct ExpansionProfile;

/// Which asymptotic profile a series or verdict refers to. Leading is the
/// bare M·g profile.
enum class Variant { Un, Tilde, Hat, Leading };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

/// Scaled error norm along a trajectory.
struct NormSeries {
  double q = 1.0;
  int j = 0;
  std::optional<double> weight;
  std::vector<double> t;
  std::vector<double> value;
  std::vector<std::string> notes;
};

struct PredictedRate {
  double exponent = 0.0;
  bool log_flag = false;
};

struct FitWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// [T/10, T/2].
FitWindow default_window(double horizon);

enum class LogCorrection { Auto, On, Off };

LogCorrection parse_log_correction(const std::string& name);
std::string to_string(LogCorrection mode);

struct RateVerdict {
  double fitted_slope = 0.0;
  double predicted_exponent = 0.0;
  bool log_correction = false;
  double tolerance = 0.0;
  FitWindow window;
  bool pass = false;
  /// Informational: |slope + exponent| <= kSharpnessBand.
  bool sharp = false;
  std::string note;
};

inline constexpr double kSharpnessBand = 0.15;
inline constexpr double kWeightSigma = 0.05;
inline constexpr std::size_t kMinFitPoints = 8;

/// min{K/2, (n+1)(A-1)}; log flag when 2(n+1)(A-1) = K.
PredictedRate predicted_rate(double K, double A, int n);

/// min{K/2, 2(A-1)}; log flag when K = 4(A-1).
PredictedRate predicted_rate_tilde(double K, double A);

/// t^{(N/2)(1-1/q)+j/2}‖∇ʲ(u−U)‖_q at every common time t >= 1, or the
/// weighted t^{j/2}(1+t)^{-l/2}|||∇ʲ(u−U)|||_l when `weight` is set.
/// Components are combined by the pointwise Euclidean norm.
NormSeries measure_error_series(const Trajectory& traj, const ExpansionProfile& profile, double q, int j,
                                std::optional<double> weight = std::nullopt);

/// Least-squares slope of log(value) against log(t) on the window; with
/// log_corrected the value is first divided by log(2+t).
double fit_slope(const NormSeries& series, FitWindow window, bool log_corrected);

/// pass ⇔ slope <= -exponent + tolerance.
RateVerdict verdict_against(const NormSeries& series, PredictedRate rate, double tolerance, FitWindow window,
                            LogCorrection mode = LogCorrection::Auto);

/// Prediction chosen from the variant: Un uses (n+1)(A-1), Tilde and Hat
/// use 2(A-1), Leading uses the n = 0 rate with K capped at 1. Weighted
/// series lower K/2 by kWeightSigma.
RateVerdict verdict(const NormSeries& series, double K, double A, int n, Variant variant, double tolerance,
                    FitWindow window, LogCorrection mode = LogCorrection::Auto);

void write_series_csv(std::ostream& out, const NormSeries& series);

}  // namespace pasym
