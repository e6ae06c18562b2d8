#include "pasym/moments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "pasym/errors.hpp"
#include "pasym/kernel.hpp"

namespace pasym {

int bracket(double k) {
  if (!(k >= 0.0)) throw DomainError("bracket: argument must be nonnegative");
  return static_cast<int>(std::floor(k));
}

MomentTable::MomentTable(int dimension, int k_cap, double time,
                         std::vector<std::pair<MultiIndex, double>> entries)
    : dimension_(dimension), k_cap_(k_cap), time_(time), entries_(std::move(entries)) {}

double MomentTable::at(const MultiIndex& alpha) const {
  for (const auto& [a, v] : entries_) {
    if (a == alpha) return v;
  }
  throw DomainError("MomentTable: no entry for alpha = " + alpha.to_string());
}

double MomentTable::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.second));
  return m;
}

MomentTable moment_coefficients(const Field& f, double t, int k_cap) {
  if (k_cap < 0 || k_cap > kMaxMomentOrder) {
    throw DomainError("moment_coefficients: K_cap must lie in [0, " + std::to_string(kMaxMomentOrder) + "]");
  }
  if (t < 0.0) throw DomainError("moment_coefficients: time must be nonnegative");
  const Grid& g = f.grid();
  const double tail = f.boundary_max() * std::pow(g.half_extent(), k_cap);
  if (tail > kMomentTailTol) {
    throw GuardBreach("moment_coefficients: truncated tail too large (boundary_max * L^K = " +
                      std::to_string(tail) + ")");
  }
  const int dim = g.dimension();
  std::vector<std::pair<MultiIndex, double>> entries;
  for (const MultiIndex& alpha : indices_up_to(dim, k_cap)) {
    double m = moment_of_field(f, alpha);
    // Only strictly smaller ρ enter, so every needed M_ρ is already present.
    for (const auto& [rho, m_rho] : entries) {
      if (rho != alpha && rho.le(alpha)) m -= m_rho * kernel::g_alpha_moment(rho, alpha, t);
    }
    entries.emplace_back(alpha, m);
  }
  return MomentTable(dim, k_cap, t, std::move(entries));
}

Field g_alpha_field(const GridPtr& grid, const MultiIndex& alpha, double t) {
  return Field::sample(grid, [&](std::span<const double> x) { return kernel::g_alpha(alpha, x, t); }, t);
}

Field moment_profile(const GridPtr& grid, const MomentTable& table, int i) {
  if (i > table.k_cap()) throw DomainError("moment_profile: order exceeds the table's K_cap");
  Field out = Field::zeros(grid, table.time());
  for (const auto& [alpha, m] : table.entries()) {
    if (alpha.order() > i || m == 0.0) continue;
    out.add_scaled(m, g_alpha_field(grid, alpha, table.time()));
  }
  return out;
}

Field project_P(const Field& f, const MomentTable& table, double t, int i) {
  if (table.time() != t) throw DomainError("project_P: moment table was computed at a different time");
  if (i < 0 || i > table.k_cap()) throw DomainError("project_P: order exceeds the table's K_cap");
  Field out = f;
  out -= moment_profile(f.grid_ptr(), table, i);
  return out;
}

Field project_P(const Field& f, double t, int i) {
  return project_P(f, moment_coefficients(f, t, i), t, i);
}

double commute_check(const Field& phi, double t, int k_cap) {
  const Field lhs = project_P(heat_apply(phi, t), t, k_cap);
  const Field rhs = heat_apply(project_P(phi, 0.0, k_cap), t);
  return lq_norm(lhs - rhs, 1.0);
}

void write_moment_csv(std::ostream& out, const MomentTable& table, bool header) {
  if (header) out << "alpha,value,t\n";
  char buf[96];
  for (const auto& [alpha, m] : table.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", m, table.time());
    out << alpha.to_string() << ',' << buf << '\n';
  }
}

}  // namespace pasym
