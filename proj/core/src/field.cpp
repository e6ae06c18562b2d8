#include "pasym/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pasym/errors.hpp"
#include "spectral.hpp"

namespace pasym {

Grid::Grid(int dimension, double half_extent, std::size_t points_per_axis)
    : dimension_(dimension), half_extent_(half_extent), points_(points_per_axis) {
  if (dimension != 1 && dimension != 2) throw DomainError("Grid: dimension must be 1 or 2");
  if (!(half_extent > 0.0)) throw DomainError("Grid: half extent must be positive");
  if (points_per_axis < 64 || (points_per_axis & (points_per_axis - 1)) != 0) {
    throw DomainError("Grid: points per axis must be a power of two >= 64");
  }
  size_ = dimension == 1 ? points_ : points_ * points_;
  spacing_ = 2.0 * half_extent / static_cast<double>(points_);
  spectral_ = std::make_shared<const detail::Spectral>(dimension, points_, half_extent);
}

std::shared_ptr<const Grid> Grid::make(int dimension, double half_extent, std::size_t points_per_axis) {
  return std::make_shared<const Grid>(dimension, half_extent, points_per_axis);
}

double Grid::cell_volume() const { return dimension_ == 1 ? spacing_ : spacing_ * spacing_; }

std::array<double, 2> Grid::point(std::size_t flat) const {
  if (dimension_ == 1) return {node(flat), 0.0};
  return {node(flat / points_), node(flat % points_)};
}

bool Grid::on_boundary(std::size_t flat) const {
  const auto edge = [&](std::size_t j) { return j == 0 || j + 1 == points_; };
  if (dimension_ == 1) return edge(flat);
  return edge(flat / points_) || edge(flat % points_);
}

bool Grid::same_geometry(const Grid& other) const {
  return dimension_ == other.dimension_ && half_extent_ == other.half_extent_ && points_ == other.points_;
}

Field::Field(GridPtr grid, std::vector<double> samples, std::optional<double> time)
    : grid_(std::move(grid)), samples_(std::move(samples)), time_(time) {
  if (!grid_) throw ContractViolation("Field: null grid");
  if (samples_.size() != grid_->size()) throw ContractViolation("Field: sample count does not match grid");
}

Field Field::zeros(GridPtr grid, std::optional<double> time) {
  const std::size_t n = grid->size();
  return Field(std::move(grid), std::vector<double>(n, 0.0), time);
}

Field Field::sample(GridPtr grid, const std::function<double(std::span<const double>)>& f,
                    std::optional<double> time) {
  std::vector<double> s(grid->size());
  const std::size_t dim = static_cast<std::size_t>(grid->dimension());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto p = grid->point(i);
    s[i] = f(std::span<const double>(p.data(), dim));
  }
  return Field(std::move(grid), std::move(s), time);
}

void Field::require_same_grid(const Field& other) const {
  if (grid_ != other.grid_ && !grid_->same_geometry(*other.grid_)) {
    throw ContractViolation("Field: operands live on different grids");
  }
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += other.samples_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= other.samples_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : samples_) v *= s;
  return *this;
}

Field& Field::add_scaled(double s, const Field& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += s * other.samples_[i];
  return *this;
}

double Field::boundary_max() const {
  double m = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (grid_->on_boundary(i)) m = std::max(m, std::abs(samples_[i]));
  }
  return m;
}

bool Field::all_finite() const {
  return std::all_of(samples_.begin(), samples_.end(), [](double v) { return std::isfinite(v); });
}

bool Field::is_zero() const {
  return std::all_of(samples_.begin(), samples_.end(), [](double v) { return v == 0.0; });
}

double lq_norm(const Field& f, double q) {
  if (!(q >= 1.0)) throw DomainError("lq_norm: exponent must be >= 1");
  const auto v = f.values();
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  if (q == 1.0) {
    for (double x : v) s += std::abs(x);
    return s * f.grid().cell_volume();
  }
  if (q == 2.0) {
    for (double x : v) s += x * x;
    return std::sqrt(s * f.grid().cell_volume());
  }
  for (double x : v) s += std::pow(std::abs(x), q);
  return std::pow(s * f.grid().cell_volume(), 1.0 / q);
}

double weighted_l1_norm(const Field& f, double l) {
  if (!(l >= 0.0)) throw DomainError("weighted_l1_norm: weight exponent must be >= 0");
  const Grid& g = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto p = g.point(i);
    const double r = std::sqrt(p[0] * p[0] + p[1] * p[1]);
    s += std::pow(1.0 + r, l) * std::abs(f[i]);
  }
  return s * g.cell_volume();
}

double integral(const Field& f) {
  double s = 0.0;
  for (double x : f.values()) s += x;
  return s * f.grid().cell_volume();
}

double moment_of_field(const Field& f, const MultiIndex& alpha) {
  const Grid& g = f.grid();
  if (alpha.dimension() != g.dimension()) throw DomainError("moment_of_field: dimension mismatch");
  const std::size_t dim = static_cast<std::size_t>(g.dimension());
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto p = g.point(i);
    s += alpha.monomial(std::span<const double>(p.data(), dim)) * f[i];
  }
  return s * g.cell_volume();
}

Field apply_radial_symbol(const Field& f, const std::function<double(double)>& symbol) {
  const auto& sp = f.grid().spectral();
  auto coeffs = sp.forward(f.values());
  const auto k2 = sp.k_squared();
  for (std::size_t m = 0; m < coeffs.size(); ++m) coeffs[m] *= symbol(k2[m]);
  return Field(f.grid_ptr(), sp.inverse(coeffs), f.time());
}

Field heat_apply(const Field& f, double tau) {
  if (tau < 0.0) throw DomainError("heat_apply: duration must be nonnegative");
  if (tau == 0.0) return f;
  Field out = apply_radial_symbol(f, [tau](double k2) { return std::exp(-k2 * tau); });
  if (f.time()) out.set_time(*f.time() + tau);
  return out;
}

Field damped_heat_apply(const Field& f, double tau, double damping) {
  if (tau < 0.0) throw DomainError("damped_heat_apply: duration must be nonnegative");
  if (tau == 0.0) return f;
  Field out = apply_radial_symbol(f, [tau, damping](double k2) { return std::exp(-(k2 + damping) * tau); });
  if (f.time()) out.set_time(*f.time() + tau);
  return out;
}

std::vector<Field> gradient(const Field& f) {
  const auto& sp = f.grid().spectral();
  const auto coeffs = sp.forward(f.values());
  std::vector<Field> out;
  for (int axis = 0; axis < f.grid().dimension(); ++axis) {
    const auto k = sp.k_axis(axis);
    std::vector<std::complex<double>> d(coeffs.size());
    for (std::size_t m = 0; m < d.size(); ++m) d[m] = std::complex<double>(0.0, k[m]) * coeffs[m];
    out.emplace_back(f.grid_ptr(), sp.inverse(d), f.time());
  }
  return out;
}

Field divergence(std::span<const Field> components) {
  if (components.empty()) throw ContractViolation("divergence: no components");
  const Field& first = components.front();
  if (static_cast<int>(components.size()) != first.grid().dimension()) {
    throw ContractViolation("divergence: need one component per axis");
  }
  const auto& sp = first.grid().spectral();
  std::vector<std::complex<double>> acc(sp.complex_size(), 0.0);
  for (int axis = 0; axis < first.grid().dimension(); ++axis) {
    const auto coeffs = sp.forward(components[static_cast<std::size_t>(axis)].values());
    const auto k = sp.k_axis(axis);
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += std::complex<double>(0.0, k[m]) * coeffs[m];
  }
  return Field(first.grid_ptr(), sp.inverse(acc), first.time());
}

Field laplacian(const Field& f) {
  return apply_radial_symbol(f, [](double k2) { return -k2; });
}

Field pointwise_norm(std::span<const Field> components) {
  if (components.empty()) throw ContractViolation("pointwise_norm: no components");
  Field out = Field::zeros(components.front().grid_ptr(), components.front().time());
  for (const Field& c : components) {
    if (!c.grid().same_geometry(out.grid())) throw ContractViolation("pointwise_norm: grid mismatch");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i] * c[i];
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(out[i]);
  return out;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_field_csv(std::ostream& out, const Field& f) {
  const Grid& g = f.grid();
  out << "# N=" << g.dimension() << "\n";
  out << "# L=" << fmt17(g.half_extent()) << "\n";
  out << "# n=" << g.points_per_axis() << "\n";
  out << "# time_tag=" << (f.time() ? fmt17(*f.time()) : std::string("none")) << "\n";
  out << (g.dimension() == 1 ? "x,value\n" : "x,y,value\n");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto p = g.point(i);
    out << fmt17(p[0]) << ',';
    if (g.dimension() == 2) out << fmt17(p[1]) << ',';
    out << fmt17(f[i]) << '\n';
  }
}

Field read_field_csv(std::istream& in, GridPtr grid) {
  int dim = 0;
  double L = 0.0;
  std::size_t n = 0;
  std::optional<double> time;
  std::string line;
  std::vector<double> samples;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string val = line.substr(eq + 1);
      if (key == "N") dim = std::stoi(val);
      else if (key == "L") L = std::stod(val);
      else if (key == "n") n = std::stoul(val);
      else if (key == "time_tag" && val != "none") time = std::stod(val);
      continue;
    }
    if (!header_done) {
      header_done = true;  // column-name row
      continue;
    }
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) throw DomainError("read_field_csv: malformed row");
    // strtod rather than stod: subnormal tail values are legitimate samples.
    char* end = nullptr;
    const char* start = line.c_str() + comma + 1;
    const double v = std::strtod(start, &end);
    if (end == start) throw DomainError("read_field_csv: malformed value");
    samples.push_back(v);
  }
  if (dim == 0 || n == 0) throw DomainError("read_field_csv: missing header");
  if (!grid || grid->dimension() != dim || grid->half_extent() != L || grid->points_per_axis() != n) {
    grid = Grid::make(dim, L, n);
  }
  return Field(std::move(grid), std::move(samples), time);
}

}  // namespace pasym
