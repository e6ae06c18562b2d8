#pragma once

#include <span>

#include "pasym/multi_index.hpp"

/// Closed-form calculus for the Gauss kernel
///   G(x,t) = (4πt)^{-N/2} exp(-|x|²/4t)
/// and its normalized derivatives g_α(x,t) = ((-1)^{|α|}/α!) ∂^α G(x,1+t),
/// in any dimension N = x.size(). All functions are pure.
namespace pasym::kernel {

/// Largest |α| accepted by g_alpha and the moment formulas.
inline constexpr int kMaxOrder = 8;

/// Exponent cutoff: exp(-r) is returned as exactly zero for r > kUnderflowExponent.
inline constexpr double kUnderflowExponent = 700.0;

/// Physicists' Hermite polynomial H_n(z) via the three-term recurrence.
double hermite(int n, double z);

/// G(x,t); throws DomainError for t <= 0.
double gauss(std::span<const double> x, double t);

/// g_α(x,t) evaluated at kernel time 1+t; throws DomainError for t < 0 or |α| > kMaxOrder.
double g_alpha(const MultiIndex& alpha, std::span<const double> x, double t);

/// ∫ x^β G(x,1+t) dx: a product of centred 1-D moments with variance 2(1+t).
double gaussian_moment(const MultiIndex& beta, double t);

/// ∫ x^β g_α(x,t) dx = β!/(α!(β-α)!) · gaussian_moment(β-α, t) when α ≤ β, else 0.
double g_alpha_moment(const MultiIndex& alpha, const MultiIndex& beta, double t);

}  // namespace pasym::kernel
