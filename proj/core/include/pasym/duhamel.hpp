#pragma once

#include <string>
#include <string_view>

#include "pasym/field.hpp"

namespace pasym {

/// Quadrature rule for one slab of ∫ e^{(t₁-s)(Δ-c)} f(s) ds from the
/// endpoint values f(t₀), f(t₁).
///  - Trapezoid:   (dt/2)·[e^{dt(Δ-c)} f(t₀) + f(t₁)]
///  - Exponential: f linear in s, the propagator integrated exactly per Fourier mode.
enum class DuhamelRule { Trapezoid, Exponential };

std::string to_string(DuhamelRule rule);
DuhamelRule parse_duhamel_rule(std::string_view name);

/// Weight of the left endpoint (already propagated to t₁).
Field duhamel_left(const Field& f_left, double dt, DuhamelRule rule, double damping = 0.0);
/// Weight of the right endpoint.
Field duhamel_right(const Field& f_right, double dt, DuhamelRule rule, double damping = 0.0);

/// Exact ∫₀¹ e^{-zτ} dτ and ∫₀¹ τ e^{-zτ} dτ, stable near z = 0.
double phi_one(double z);
double phi_tau(double z);

}  // namespace pasym
