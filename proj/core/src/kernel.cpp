#include "pasym/kernel.hpp"

#include <cmath>
#include <numbers>

#include "pasym/errors.hpp"

namespace pasym::kernel {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double double_factorial(int n) {
  double f = 1.0;
  for (int k = n; k > 1; k -= 2) f *= k;
  return f;
}

double squared_norm(std::span<const double> x) {
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  return r2;
}

void check_order(const MultiIndex& alpha) {
  if (alpha.order() > kMaxOrder) {
    throw DomainError("kernel: |alpha| = " + std::to_string(alpha.order()) +
                      " exceeds the supported maximum " + std::to_string(kMaxOrder));
  }
}

}  // namespace

double hermite(int n, double z) {
  if (n < 0) throw DomainError("hermite: negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    double next = 2.0 * z * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gauss(std::span<const double> x, double t) {
  if (!(t > 0.0)) throw DomainError("gauss: time must be strictly positive");
  const double e = squared_norm(x) / (4.0 * t);
  if (e > kUnderflowExponent) return 0.0;
  const double n = static_cast<double>(x.size());
  return std::pow(4.0 * std::numbers::pi * t, -0.5 * n) * std::exp(-e);
}

double g_alpha(const MultiIndex& alpha, std::span<const double> x, double t) {
  if (t < 0.0) throw DomainError("g_alpha: time must be nonnegative");
  if (static_cast<std::size_t>(alpha.dimension()) != x.size()) {
    throw DomainError("g_alpha: multi-index and point dimensions differ");
  }
  check_order(alpha);
  const double s = 1.0 + t;
  const double base = gauss(x, s);
  if (base == 0.0) return 0.0;
  // ∂ⁿ exp(-x²/4s) = (-1)ⁿ (4s)^{-n/2} Hₙ(x/2√s) exp(-x²/4s); the sign cancels against (-1)^{|α|}.
  const double scale = 2.0 * std::sqrt(s);
  double v = base;
  for (int i = 0; i < alpha.dimension(); ++i) {
    const int n = alpha[i];
    if (n == 0) continue;
    v *= hermite(n, x[static_cast<std::size_t>(i)] / scale) / (std::pow(scale, n) * factorial(n));
  }
  return v;
}

double gaussian_moment(const MultiIndex& beta, double t) {
  if (t < 0.0) throw DomainError("gaussian_moment: time must be nonnegative");
  const double variance = 2.0 * (1.0 + t);
  double m = 1.0;
  for (int b : beta.entries()) {
    if (b % 2 == 1) return 0.0;
    m *= double_factorial(b - 1) * std::pow(variance, b / 2);
  }
  return m;
}

double g_alpha_moment(const MultiIndex& alpha, const MultiIndex& beta, double t) {
  check_order(alpha);
  if (alpha.dimension() != beta.dimension()) {
    throw DomainError("g_alpha_moment: multi-index dimensions differ");
  }
  if (!alpha.le(beta)) return 0.0;
  double binom = 1.0;
  for (int i = 0; i < alpha.dimension(); ++i) {
    binom *= factorial(beta[i]) / (factorial(alpha[i]) * factorial(beta[i] - alpha[i]));
  }
  return binom * gaussian_moment(beta.minus(alpha), t);
}

}  // namespace pasym::kernel
