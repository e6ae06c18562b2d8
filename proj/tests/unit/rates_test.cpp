#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "pasym/errors.hpp"
#include "pasym/expansion.hpp"
#include "pasym/rates.hpp"
#include "support.hpp"

using namespace pasym;
using pasym::testing::benchmark;

namespace {

NormSeries synthetic(const std::function<double(double)>& f, double t_max = 200.0) {
  NormSeries s;
  for (double t = 1.0; t <= t_max; t *= 1.05) {
    s.t.push_back(t);
    s.value.push_back(f(t));
  }
  return s;
}

}  // namespace

TEST(PredictedRate, MinimumOfMomentAndNonlinearTerms) {
  auto r = predicted_rate(2.0, 1.5, 0);
  EXPECT_DOUBLE_EQ(r.exponent, 0.5);
  EXPECT_FALSE(r.log_flag);
  r = predicted_rate(2.0, 1.5, 1);
  EXPECT_DOUBLE_EQ(r.exponent, 1.0);
  EXPECT_TRUE(r.log_flag);
  r = predicted_rate(1.0, 1.5, 0);
  EXPECT_DOUBLE_EQ(r.exponent, 0.5);
  EXPECT_TRUE(r.log_flag);
  r = predicted_rate(3.0, 2.0, 2);
  EXPECT_DOUBLE_EQ(r.exponent, 1.5);
  EXPECT_DOUBLE_EQ(predicted_rate(1.0, kInfinity, 0).exponent, 0.5);
  EXPECT_THROW(predicted_rate(1.0, 1.0, 0), DomainError);
  EXPECT_THROW(predicted_rate(-1.0, 2.0, 0), DomainError);
}

TEST(PredictedRate, FrozenMomentVariant) {
  auto r = predicted_rate_tilde(2.0, 1.5);
  EXPECT_DOUBLE_EQ(r.exponent, 1.0);
  EXPECT_TRUE(r.log_flag);
  r = predicted_rate_tilde(3.0, 1.5);
  EXPECT_DOUBLE_EQ(r.exponent, 1.0);
  EXPECT_FALSE(r.log_flag);
  EXPECT_THROW(predicted_rate_tilde(2.0, 0.9), DomainError);
}

TEST(FitSlope, RecoversPowerLaws) {
  EXPECT_NEAR(fit_slope(synthetic([](double t) { return 2.0 * std::pow(t, -0.7); }), {10, 100}, false), -0.7, 1e-12);
  const auto logged = synthetic([](double t) { return std::log(2.0 + t) / t; });
  EXPECT_NEAR(fit_slope(logged, {10, 100}, true), -1.0, 1e-12);
  EXPECT_GT(fit_slope(logged, {10, 100}, false), -1.0);
  EXPECT_THROW(fit_slope(logged, {10, 11}, false), DomainError);
}

TEST(FitSlope, DefaultWindow) {
  const auto w = default_window(200.0);
  EXPECT_DOUBLE_EQ(w.lo, 20.0);
  EXPECT_DOUBLE_EQ(w.hi, 100.0);
}

// A correct prediction passes; an inflated one must fail on the same data.
TEST(Verdict, IsFalsifiable) {
  const auto s = synthetic([](double t) { return std::pow(t, -0.5); });
  const auto ok = verdict_against(s, {0.5, false}, 0.15, {10, 100});
  EXPECT_TRUE(ok.pass);
  EXPECT_TRUE(ok.sharp);
  const auto bad = verdict_against(s, {1.0, false}, 0.15, {10, 100});
  EXPECT_FALSE(bad.pass);
  EXPECT_FALSE(bad.sharp);
  // Faster decay than predicted is consistent, not sharp.
  const auto fast = verdict_against(synthetic([](double t) { return std::pow(t, -1.2); }), {0.5, false}, 0.15, {10, 100});
  EXPECT_TRUE(fast.pass);
  EXPECT_FALSE(fast.sharp);
}

TEST(Verdict, LogCorrectionModes) {
  const auto s = synthetic([](double t) { return std::log(2.0 + t) / t; });
  EXPECT_TRUE(verdict_against(s, {1.0, true}, 0.05, {10, 100}).pass);
  EXPECT_FALSE(verdict_against(s, {1.0, true}, 0.05, {10, 100}, LogCorrection::Off).pass);
  EXPECT_TRUE(verdict_against(s, {1.0, false}, 0.05, {10, 100}, LogCorrection::On).log_correction);
}

TEST(Verdict, WeightedSeriesLoseSigma) {
  auto s = synthetic([](double t) { return std::pow(t, -0.95); });
  s.weight = 2.0;
  const auto v = verdict(s, 2.0, kInfinity, 0, Variant::Un, 0.01, {10, 100});
  EXPECT_DOUBLE_EQ(v.predicted_exponent, 1.0 - kWeightSigma);
  EXPECT_TRUE(v.pass);
}

TEST(Variant, NamesRoundTrip) {
  for (auto v : {Variant::Un, Variant::Tilde, Variant::Hat, Variant::Leading}) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("bogus"), DomainError);
  EXPECT_EQ(parse_log_correction("true"), LogCorrection::On);
  EXPECT_EQ(parse_log_correction("off"), LogCorrection::Off);
  EXPECT_THROW(parse_log_correction("maybe"), DomainError);
}

TEST(ErrorSeries, ScalingMatchesDirectComputation) {
  const auto& b = benchmark("heat-shift-k1");
  const auto lead = build_leading(b.traj, b.nl);
  const auto s = measure_error_series(b.traj, lead, kInfinity, 0);
  ASSERT_FALSE(s.t.empty());
  EXPECT_GE(s.t.front(), 1.0);
  const std::size_t k = b.traj.require_index(s.t[5]);
  const double direct = std::sqrt(s.t[5]) * lq_norm(b.traj.state(k)[0] - lead.values[k][0], kInfinity);
  EXPECT_NEAR(s.value[5], direct, 1e-14 * direct);
  EXPECT_THROW(measure_error_series(b.traj, lead, 0.5, 0), DomainError);
  EXPECT_THROW(measure_error_series(b.traj, lead, 1.0, 2), DomainError);
}

// Shifted heat data: u − Mg decays like t^{-1/2}, u − U0 with K = 1 like t^{-1}.
TEST(ErrorSeries, HeatFlowRates) {
  const auto& b = benchmark("heat-shift-k1");
  const auto lead = build_leading(b.traj, b.nl);
  const auto u0 = build_Un(b.traj, b.nl, 1.0, 0);
  for (double q : {1.0, 2.0, kInfinity}) {
    EXPECT_NEAR(fit_slope(measure_error_series(b.traj, lead, q, 0), {10, 100}, false), -0.5, 0.05) << q;
    EXPECT_NEAR(fit_slope(measure_error_series(b.traj, u0, q, 0), {10, 100}, false), -1.0, 0.05) << q;
  }
}

TEST(ErrorSeries, CsvShape) {
  NormSeries s;
  s.t = {1.0, 2.0};
  s.value = {0.5, 0.25};
  std::ostringstream os;
  write_series_csv(os, s);
  EXPECT_EQ(os.str(), "t,scaled_value\n1,0.5\n2,0.25\n");
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(FitSlope, InvariantUnderPositiveScaling) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> noise(0.9, 1.1), factor(-20.0, 20.0);
  const auto base = synthetic([&](double t) { return noise(rng) * std::pow(t, -0.8); });
  const double s = fit_slope(base, {10, 100}, false);
  for (int k = 0; k < 10; ++k) {
    auto scaled = base;
    const double c = std::exp(factor(rng));
    for (double& v : scaled.value) v *= c;
    EXPECT_NEAR(fit_slope(scaled, {10, 100}, false), s, 1e-12);
  }
}

TEST(PredictedRate, NondecreasingInOrderUntilSaturation) {
  for (double K : {0.5, 1.0, 2.0, 3.5}) {
    for (double A : {1.1, 1.5, 2.0, 3.0}) {
      for (int n = 0; n < 6; ++n) {
        const double e0 = predicted_rate(K, A, n).exponent;
        const double e1 = predicted_rate(K, A, n + 1).exponent;
        EXPECT_GE(e1, e0);
        if ((n + 1) * (A - 1.0) >= K / 2.0) EXPECT_DOUBLE_EQ(e1, e0);
      }
    }
  }
}

// The q = 1 distance to M·g decreases over the last decade of every shipped benchmark.
TEST(ErrorSeries, LeadingDistanceDecreasesOnLastDecade) {
  for (const auto& entry : benchmark_registry()) {
    const auto& b = benchmark(entry.id);
    const auto s = measure_error_series(b.traj, build_leading(b.traj, b.nl), 1.0, 0);
    const double T = b.traj.horizon();
    for (std::size_t k = 1; k < s.t.size(); ++k) {
      if (s.t[k - 1] < T / 10.0) continue;
      EXPECT_LT(s.value[k], s.value[k - 1]) << entry.id << " t " << s.t[k];
    }
  }
}
