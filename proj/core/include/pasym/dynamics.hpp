#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pasym/field.hpp"
#include "pasym/trajectory.hpp"

namespace pasym {

/// Chemical concentration v of the parabolic-parabolic Keller-Segel system
/// together with its initial value ψ.
struct ChemotaxisState {
  Field v;
  Field psi;
};

/// A nonlinearity F(x,t,u,∇u) with its decay metadata.
///
/// `decay_exponent` is the A of the (1+t)^{-A} envelope; +inf for the heat
/// equation. Plug-ins outside the Gauss-like regime are still constructible
/// but carry supported() == false and a note.
class Nonlinearity {
 public:
  using Evaluator =
      std::function<std::vector<Field>(double t, std::span<const Field> u, const ChemotaxisState* state)>;

  Nonlinearity(std::string name, std::size_t system_size, double decay_exponent, bool divergence_form,
               Evaluator evaluator);

  const std::string& name() const { return name_; }
  std::size_t system_size() const { return system_size_; }
  double decay_exponent() const { return decay_exponent_; }
  bool divergence_form() const { return divergence_form_; }
  bool needs_chemotaxis() const { return needs_chemotaxis_; }
  /// True when F vanishes identically (pure heat flow).
  bool is_zero() const { return is_zero_; }
  bool supported() const { return support_note_.empty(); }
  const std::string& support_note() const { return support_note_; }
  const std::map<std::string, double>& parameters() const { return parameters_; }
  /// "name(key=value,...)" used in manifests.
  std::string descriptor() const;

  std::vector<Field> operator()(double t, std::span<const Field> u, const ChemotaxisState* state = nullptr) const;

  Nonlinearity& with_parameter(std::string key, double value);
  Nonlinearity& mark_unsupported(std::string note);
  Nonlinearity& mark_zero();
  Nonlinearity& require_chemotaxis();

 private:
  std::string name_;
  std::size_t system_size_;
  double decay_exponent_;
  bool divergence_form_;
  bool needs_chemotaxis_ = false;
  bool is_zero_ = false;
  std::string support_note_;
  std::map<std::string, double> parameters_;
  Evaluator evaluator_;
};

/// F ≡ 0 with A = +inf.
Nonlinearity make_heat(int dimension, std::size_t system_size = 1);

/// λ|u|^{p-1}u, A = N(p-1)/2. Throws DomainError for p <= 1.
Nonlinearity make_semilinear(int dimension, double lambda, double p);

/// a·∇(|u|^{p-1}u), divergence form, A = N(p-1)/2 + 1/2. Flagged
/// unsupported for p <= 1 + 1/N.
Nonlinearity make_convection(std::vector<double> a, double p);

/// −∇·(u∇v) with v from the chemotaxis state; A = N/2 + 1.
Nonlinearity make_keller_segel(int dimension);

/// Pointwise law of the m-vector value at one node.
using PointwiseLaw = std::function<double(std::span<const double>)>;

/// F = (law₁(u),…,law_m(u)) with |F(v)| ≤ C|v|^a; A = N(a-1)/2. Flagged
/// unsupported for a <= 1 + 2/N.
Nonlinearity make_system(int dimension, std::vector<PointwiseLaw> laws, double a);

/// v(t) = e^{-t}e^{tΔ}ψ + ∫₀ᵗ e^{-(t-s)}e^{(t-s)Δ}u(s) ds recomputed from the
/// whole recorded u-history (component 0) up to the recorded time t. The
/// s-integral is a slab-wise exponential-trapezoid: u linear in s, the damped
/// heat propagator integrated exactly per Fourier mode.
ChemotaxisState update_chemotaxis(const ChemotaxisState& state, const Trajectory& u_history, double t);

/// One slab of the same quadrature: v(t₁) from v(t₀), u(t₀), u(t₁).
Field advance_chemical(const Field& v_left, const Field& u_left, const Field& u_right, double dt);

}  // namespace pasym
