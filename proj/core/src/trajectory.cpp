#include "pasym/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pasym/errors.hpp"

namespace pasym {

namespace fs = std::filesystem;

void check_field_guard(const Field& f, const std::string& what) {
  if (!f.all_finite()) throw GuardBreach(what + ": non-finite samples");
  const double b = f.boundary_max();
  if (b > kBoundaryTol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, ": boundary value %.3e exceeds tolerance %.1e (enlarge the domain)", b,
                  kBoundaryTol);
    throw GuardBreach(what + buf);
  }
}

Trajectory::Trajectory(GridPtr grid, std::string descriptor, std::size_t components)
    : grid_(std::move(grid)), descriptor_(std::move(descriptor)), components_(components) {
  if (!grid_) throw ContractViolation("Trajectory: null grid");
  if (components_ == 0) throw ContractViolation("Trajectory: need at least one component");
}

void Trajectory::append(double t, std::vector<Field> state, std::vector<Field> forcing,
                        std::optional<Field> chemical) {
  if (times_.empty() && t != 0.0) throw ContractViolation("Trajectory: first time must be 0");
  if (!times_.empty() && !(t > times_.back())) throw ContractViolation("Trajectory: times must increase");
  if (state.size() != components_ || forcing.size() != components_) {
    throw ContractViolation("Trajectory: component count mismatch");
  }
  for (std::size_t c = 0; c < components_; ++c) {
    char what[64];
    std::snprintf(what, sizeof what, "state u%zu at t=%.6g", c, t);
    check_field_guard(state[c], what);
    if (!forcing[c].all_finite()) throw GuardBreach(std::string(what) + ": non-finite forcing");
    state[c].set_time(t);
    forcing[c].set_time(t);
  }
  if (chemical) chemical->set_time(t);
  times_.push_back(t);
  states_.push_back(std::move(state));
  forcing_.push_back(std::move(forcing));
  chemical_.push_back(std::move(chemical));
}

std::vector<double> Trajectory::initial_mass() const {
  std::vector<double> m;
  if (states_.empty()) return m;
  for (const Field& f : states_.front()) m.push_back(integral(f));
  return m;
}

std::optional<std::size_t> Trajectory::index_of(double t) const {
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (std::abs(times_[k] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return k;
  }
  return std::nullopt;
}

std::size_t Trajectory::require_index(double t) const {
  if (auto k = index_of(t)) return *k;
  throw DomainError("Trajectory: time " + std::to_string(t) + " is not a recorded time");
}

namespace {

std::string snapshot_name(std::size_t k, const char* kind, std::size_t c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%05zu_%s%zu.csv", k, kind, c);
  return buf;
}

void write_snapshot(const fs::path& path, const Field& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_field_csv(out, f);
}

Field read_snapshot(const fs::path& path, const GridPtr& grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_field_csv(in, grid);
}

}  // namespace

void write_trajectory(const fs::path& dir, const Trajectory& traj, const std::string& config_echo) {
  fs::create_directories(dir / "snapshots");
  std::ofstream manifest(dir / "trajectory.manifest");
  char buf[64];
  manifest << "# trajectory manifest\n";
  manifest << "grid.dimension = " << traj.grid().dimension() << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", traj.grid().half_extent());
  manifest << "grid.half_extent = " << buf << "\n";
  manifest << "grid.points = " << traj.grid().points_per_axis() << "\n";
  manifest << "trajectory.descriptor = " << traj.descriptor() << "\n";
  manifest << "trajectory.components = " << traj.components() << "\n";
  manifest << "trajectory.chemical = " << (traj.chemical(0) ? "true" : "false") << "\n";
  manifest << "trajectory.times = ";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.time(k));
    manifest << (k ? "," : "") << buf;
  }
  manifest << "\n";
  if (!config_echo.empty()) manifest << "# config echo\n" << config_echo;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    for (std::size_t c = 0; c < traj.components(); ++c) {
      write_snapshot(dir / "snapshots" / snapshot_name(k, "u", c), traj.state(k)[c]);
      write_snapshot(dir / "snapshots" / snapshot_name(k, "F", c), traj.forcing(k)[c]);
    }
    if (traj.chemical(k)) write_snapshot(dir / "snapshots" / snapshot_name(k, "v", 0), *traj.chemical(k));
  }
}

Trajectory read_trajectory(const fs::path& dir) {
  std::ifstream manifest(dir / "trajectory.manifest");
  if (!manifest) throw std::runtime_error("missing trajectory manifest in " + dir.string());
  std::string line, descriptor;
  std::size_t components = 1;
  bool chemical = false;
  std::vector<double> times;
  int dim = 1;
  double L = 0.0;
  std::size_t n = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq), val = line.substr(eq + 3);
    if (key == "grid.dimension") dim = std::stoi(val);
    else if (key == "grid.half_extent") L = std::stod(val);
    else if (key == "grid.points") n = std::stoul(val);
    else if (key == "trajectory.descriptor") descriptor = val;
    else if (key == "trajectory.components") components = std::stoul(val);
    else if (key == "trajectory.chemical") chemical = val == "true";
    else if (key == "trajectory.times") {
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) times.push_back(std::stod(item));
    }
  }
  auto grid = Grid::make(dim, L, n);
  Trajectory traj(grid, descriptor, components);
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<Field> u, F;
    for (std::size_t c = 0; c < components; ++c) {
      u.push_back(read_snapshot(dir / "snapshots" / snapshot_name(k, "u", c), grid));
      F.push_back(read_snapshot(dir / "snapshots" / snapshot_name(k, "F", c), grid));
    }
    std::optional<Field> v;
    if (chemical) v = read_snapshot(dir / "snapshots" / snapshot_name(k, "v", 0), grid);
    traj.append(times[k], std::move(u), std::move(F), std::move(v));
  }
  return traj;
}

}  // namespace pasym
