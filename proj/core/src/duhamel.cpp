#include "pasym/duhamel.hpp"

#include <cmath>

#include "pasym/errors.hpp"

namespace pasym {

std::string to_string(DuhamelRule rule) {
  return rule == DuhamelRule::Trapezoid ? "trapezoid" : "exponential";
}

DuhamelRule parse_duhamel_rule(std::string_view name) {
  if (name == "trapezoid") return DuhamelRule::Trapezoid;
  if (name == "exponential") return DuhamelRule::Exponential;
  throw DomainError("unknown Duhamel rule '" + std::string(name) + "'");
}

double phi_one(double z) {
  if (std::abs(z) < 1e-8) return 1.0 - 0.5 * z;
  return -std::expm1(-z) / z;
}

double phi_tau(double z) {
  if (std::abs(z) < 0.1) {
    // Σ (-z)^k / (k! (k+2))
    double term = 1.0, sum = 0.0;
    for (int k = 0; k < 18; ++k) {
      sum += term / (k + 2);
      term *= -z / (k + 1);
    }
    return sum;
  }
  return (1.0 - std::exp(-z) * (1.0 + z)) / (z * z);
}

Field duhamel_left(const Field& f_left, double dt, DuhamelRule rule, double damping) {
  if (dt <= 0.0) throw DomainError("duhamel_left: slab length must be positive");
  if (rule == DuhamelRule::Trapezoid) {
    Field out = damping == 0.0 ? heat_apply(f_left, dt) : damped_heat_apply(f_left, dt, damping);
    out *= 0.5 * dt;
    return out;
  }
  Field out = apply_radial_symbol(f_left, [=](double k2) { return dt * phi_tau((k2 + damping) * dt); });
  if (f_left.time()) out.set_time(*f_left.time() + dt);
  return out;
}

Field duhamel_right(const Field& f_right, double dt, DuhamelRule rule, double damping) {
  if (dt <= 0.0) throw DomainError("duhamel_right: slab length must be positive");
  if (rule == DuhamelRule::Trapezoid) return 0.5 * dt * f_right;
  return apply_radial_symbol(f_right, [=](double k2) {
    const double z = (k2 + damping) * dt;
    return dt * (phi_one(z) - phi_tau(z));
  });
}

}  // namespace pasym
