#include "pasym/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "pasym/duhamel.hpp"
#include "pasym/errors.hpp"

namespace pasym {

Nonlinearity::Nonlinearity(std::string name, std::size_t system_size, double decay_exponent,
                           bool divergence_form, Evaluator evaluator)
    : name_(std::move(name)),
      system_size_(system_size),
      decay_exponent_(decay_exponent),
      divergence_form_(divergence_form),
      evaluator_(std::move(evaluator)) {
  if (system_size_ == 0) throw DomainError("Nonlinearity: system size must be >= 1");
}

std::string Nonlinearity::descriptor() const {
  std::string s = name_ + "(";
  bool first = true;
  char buf[64];
  for (const auto& [k, v] : parameters_) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += (first ? "" : ",") + k + "=" + buf;
    first = false;
  }
  return s + ")";
}

std::vector<Field> Nonlinearity::operator()(double t, std::span<const Field> u,
                                            const ChemotaxisState* state) const {
  if (u.size() != system_size_) throw ContractViolation(name_ + ": wrong number of components");
  if (needs_chemotaxis_ && state == nullptr) {
    throw ContractViolation(name_ + ": chemotaxis state is required");
  }
  return evaluator_(t, u, state);
}

Nonlinearity& Nonlinearity::with_parameter(std::string key, double value) {
  parameters_[std::move(key)] = value;
  return *this;
}

Nonlinearity& Nonlinearity::mark_unsupported(std::string note) {
  support_note_ = std::move(note);
  return *this;
}

Nonlinearity& Nonlinearity::mark_zero() {
  is_zero_ = true;
  return *this;
}

Nonlinearity& Nonlinearity::require_chemotaxis() {
  needs_chemotaxis_ = true;
  return *this;
}

namespace {

double signed_power(double u, double p) {
  if (u == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(u), p), u);
}

Field map_field(const Field& f, const std::function<double(double)>& op) {
  Field out = f;
  for (double& v : out.values()) v = op(v);
  return out;
}

}  // namespace

Nonlinearity make_heat(int dimension, std::size_t system_size) {
  Nonlinearity nl(
      "heat", system_size, std::numeric_limits<double>::infinity(), true,
      [](double, std::span<const Field> u, const ChemotaxisState*) {
        std::vector<Field> out;
        for (const Field& c : u) out.push_back(Field::zeros(c.grid_ptr(), c.time()));
        return out;
      });
  nl.with_parameter("N", dimension).mark_zero();
  return nl;
}

Nonlinearity make_semilinear(int dimension, double lambda, double p) {
  if (!(p > 1.0)) throw DomainError("make_semilinear: exponent p must exceed 1");
  const double A = dimension * (p - 1.0) / 2.0;
  Nonlinearity nl("semilinear", 1, A, false,
                  [lambda, p](double, std::span<const Field> u, const ChemotaxisState*) {
                    return std::vector<Field>{
                        map_field(u[0], [=](double v) { return lambda * signed_power(v, p); })};
                  });
  nl.with_parameter("N", dimension).with_parameter("lambda", lambda).with_parameter("p", p);
  if (lambda == 0.0) nl.mark_zero();
  if (!(p > 1.0 + 2.0 / dimension)) {
    nl.mark_unsupported("semilinear: p <= 1 + 2/N, outside the Gauss-like regime (A <= 1)");
  }
  return nl;
}

Nonlinearity make_convection(std::vector<double> a, double p) {
  if (a.empty() || a.size() > 2) throw DomainError("make_convection: a must have 1 or 2 components");
  if (!(p > 1.0)) throw DomainError("make_convection: exponent p must exceed 1");
  const int dimension = static_cast<int>(a.size());
  const double A = dimension * (p - 1.0) / 2.0 + 0.5;
  Nonlinearity nl("convection", 1, A, true, [a, p](double, std::span<const Field> u, const ChemotaxisState*) {
    if (u[0].grid().dimension() != static_cast<int>(a.size())) {
      throw ContractViolation("convection: vector a does not match grid dimension");
    }
    const Field w = map_field(u[0], [p](double v) { return signed_power(v, p); });
    const auto dw = gradient(w);
    Field out = Field::zeros(u[0].grid_ptr(), u[0].time());
    for (std::size_t i = 0; i < a.size(); ++i) out.add_scaled(a[i], dw[i]);
    return std::vector<Field>{std::move(out)};
  });
  nl.with_parameter("N", dimension).with_parameter("p", p).with_parameter("a1", a[0]);
  if (a.size() == 2) nl.with_parameter("a2", a[1]);
  bool zero = true;
  for (double ai : a) zero = zero && ai == 0.0;
  if (zero) nl.mark_zero();
  if (!(p > 1.0 + 1.0 / dimension)) {
    nl.mark_unsupported("convection: p <= 1 + 1/N gives A_* <= 1; the expansion theory does not apply");
  }
  return nl;
}

Nonlinearity make_keller_segel(int dimension) {
  if (dimension != 1 && dimension != 2) throw DomainError("make_keller_segel: N must be 1 or 2");
  Nonlinearity nl("keller-segel", 1, dimension / 2.0 + 1.0, true,
                  [](double, std::span<const Field> u, const ChemotaxisState* state) {
                    auto flux = gradient(state->v);
                    for (Field& c : flux) {
                      for (std::size_t i = 0; i < c.size(); ++i) c[i] *= u[0][i];
                    }
                    Field out = divergence(flux);
                    out *= -1.0;
                    out.set_time(u[0].time());
                    return std::vector<Field>{std::move(out)};
                  });
  nl.with_parameter("N", dimension).require_chemotaxis();
  return nl;
}

Nonlinearity make_system(int dimension, std::vector<PointwiseLaw> laws, double a) {
  if (laws.empty()) throw DomainError("make_system: need at least one component law");
  if (!(a > 1.0)) throw DomainError("make_system: growth exponent must exceed 1");
  const std::size_t m = laws.size();
  Nonlinearity nl("system", m, dimension * (a - 1.0) / 2.0, false,
                  [laws = std::move(laws), m](double, std::span<const Field> u, const ChemotaxisState*) {
                    std::vector<Field> out;
                    for (std::size_t c = 0; c < m; ++c) out.push_back(Field::zeros(u[0].grid_ptr(), u[0].time()));
                    std::vector<double> value(m);
                    for (std::size_t i = 0; i < u[0].size(); ++i) {
                      for (std::size_t c = 0; c < m; ++c) value[c] = u[c][i];
                      for (std::size_t c = 0; c < m; ++c) out[c][i] = laws[c](value);
                    }
                    return out;
                  });
  nl.with_parameter("N", dimension).with_parameter("a", a).with_parameter("m", static_cast<double>(m));
  if (!(a > 1.0 + 2.0 / dimension)) {
    nl.mark_unsupported("system: a <= 1 + 2/N, outside the Gauss-like regime (A <= 1)");
  }
  return nl;
}

Field advance_chemical(const Field& v_left, const Field& u_left, const Field& u_right, double dt) {
  Field v = damped_heat_apply(v_left, dt, 1.0);
  v += duhamel_left(u_left, dt, DuhamelRule::Exponential, 1.0);
  v += duhamel_right(u_right, dt, DuhamelRule::Exponential, 1.0);
  return v;
}

ChemotaxisState update_chemotaxis(const ChemotaxisState& state, const Trajectory& u_history, double t) {
  if (u_history.empty() || u_history.time(0) != 0.0) {
    throw DomainError("update_chemotaxis: history must start at t = 0");
  }
  if (t > u_history.horizon() * (1.0 + 1e-12)) {
    throw DomainError("update_chemotaxis: history does not cover [0, t]");
  }
  const std::size_t last = u_history.require_index(t);
  const double tk = u_history.time(last);
  Field v = damped_heat_apply(state.psi, tk, 1.0);
  for (std::size_t k = 0; k < last; ++k) {
    const double dt = u_history.time(k + 1) - u_history.time(k);
    Field slab = duhamel_left(u_history.state(k)[0], dt, DuhamelRule::Exponential, 1.0);
    slab += duhamel_right(u_history.state(k + 1)[0], dt, DuhamelRule::Exponential, 1.0);
    v += damped_heat_apply(slab, tk - u_history.time(k + 1), 1.0);
  }
  v.set_time(tk);
  return ChemotaxisState{std::move(v), state.psi};
}

}  // namespace pasym
