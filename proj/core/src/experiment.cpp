#include "pasym/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "pasym/errors.hpp"
#include "pasym/expansion.hpp"
#include "pasym/kernel.hpp"
#include "pasym/moments.hpp"
#include "pasym/trajectory.hpp"

namespace pasym {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

ExperimentConfig with(std::initializer_list<std::pair<const char*, const char*>> overrides) {
  ExperimentConfig cfg;
  for (const auto& [k, v] : overrides) cfg.set(k, v);
  return cfg;
}

std::vector<BenchmarkEntry> build_registry() {
  std::vector<BenchmarkEntry> r;
  r.push_back({"heat-shift-k1", "heat-flow moment expansion (first-moment term, K=1)",
               "F = 0, unit-mass shifted Gaussian; M g versus U0 with K = 1",
               with({{"name", "heat-shift-k1"},
                     {"nonlinearity.name", "heat"},
                     {"initial.family", "shifted-gaussian"},
                     {"initial.mass", "1"},
                     {"initial.shift", "1"},
                     {"grid.half_extent", "160"},
                     {"solver.horizon", "100"},
                     {"expansion.K", "1"},
                     {"expansion.orders", "0"},
                     {"expansion.variants", "leading,Un"},
                     {"rates.window", "10,100"}})});
  r.push_back({"cd-p3-k2", "convection-diffusion expansion theorem (N=1, p=3, A=3/2)",
               "u_t = u_xx + (u^3)_x, Gaussian data of mass 0.1; U0, U1, tilde and hat profiles with K = 2",
               with({{"name", "cd-p3-k2"},
                     {"nonlinearity.name", "convection"},
                     {"nonlinearity.p", "3"},
                     {"nonlinearity.a", "1"},
                     {"initial.family", "gaussian"},
                     {"initial.mass", "0.1"},
                     {"grid.half_extent", "160"},
                     {"solver.horizon", "200"},
                     {"expansion.K", "2"},
                     {"expansion.orders", "0,1"},
                     {"expansion.variants", "Un,tilde,hat"}})});
  r.push_back({"ks-n1", "Keller-Segel first-order decay (N=1, K=1)",
               "parabolic-parabolic Keller-Segel, ||phi||_1 = 0.05; u - M g in L1 and Linf",
               with({{"name", "ks-n1"},
                     {"nonlinearity.name", "keller-segel"},
                     {"initial.family", "shifted-gaussian"},
                     {"initial.mass", "0.05"},
                     {"initial.shift", "1"},
                     {"chemical.mass", "0.05"},
                     {"grid.half_extent", "160"},
                     {"solver.horizon", "200"},
                     {"expansion.K", "1"},
                     {"expansion.orders", "0"},
                     {"expansion.variants", "leading,hat"},
                     {"rates.norms", "1,inf"},
                     {"rates.derivatives", "0"},
                     {"rates.window", "10,100"},
                     {"rates.log_correction", "off"}})});
  r.push_back({"sl-p4", "semilinear expansion theorem (N=1, p=4, A=3/2)",
               "u_t = u_xx + |u|^3 u, Gaussian data of mass 0.5; U0 and U1 with K = 2",
               with({{"name", "sl-p4"},
                     {"nonlinearity.name", "semilinear"},
                     {"nonlinearity.lambda", "1"},
                     {"nonlinearity.p", "4"},
                     {"initial.family", "gaussian"},
                     // With mass 0.1 the U1 error sits at roundoff level.
                     {"initial.mass", "0.5"},
                     {"grid.half_extent", "160"},
                     {"solver.horizon", "200"},
                     {"expansion.K", "2"},
                     {"expansion.orders", "0,1"},
                     {"expansion.variants", "Un"}})});
  r.push_back({"sys-m2", "cross-power parabolic system (N=1, a=4, A=3/2)",
               "two components, F = (|u2|^3 u2, |u1|^3 u1); U0 and U1 with K = 2",
               with({{"name", "sys-m2"},
                     {"nonlinearity.name", "system"},
                     {"nonlinearity.components", "2"},
                     {"nonlinearity.system_exponent", "4"},
                     {"initial.family", "gaussian"},
                     {"initial.mass", "0.5,0.25"},
                     {"grid.half_extent", "160"},
                     {"solver.horizon", "200"},
                     {"expansion.K", "2"},
                     {"expansion.orders", "0,1"},
                     {"expansion.variants", "Un"}})});
  for (auto& e : r) {
    e.config.set("benchmark", e.id);
    e.config.set("anchor", e.anchor);
  }
  return r;
}

std::map<std::string, std::string> read_key_values(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return kv;
}

std::string q_label(double q) { return std::isinf(q) ? "inf" : format_number(q); }

}  // namespace

const std::vector<BenchmarkEntry>& benchmark_registry() {
  static const std::vector<BenchmarkEntry> registry = build_registry();
  return registry;
}

std::vector<BenchmarkEntry> list_benchmarks(const std::string& filter) {
  std::vector<BenchmarkEntry> out;
  for (const auto& e : benchmark_registry()) {
    if (filter.empty() || e.id.find(filter) != std::string::npos) out.push_back(e);
  }
  return out;
}

ExperimentConfig resolve_config(const std::string& id_or_path) {
  for (const auto& e : benchmark_registry()) {
    if (e.id == id_or_path) return e.config;
  }
  std::ifstream in(id_or_path);
  if (!in) throw ConfigError("'" + id_or_path + "' is neither a benchmark id nor a readable config file");
  const auto pairs = ExperimentConfig::parse(in);
  ExperimentConfig cfg;
  for (const auto& [k, v] : pairs) {
    if (k != "benchmark" || v.empty()) continue;
    bool found = false;
    for (const auto& e : benchmark_registry()) {
      if (e.id == v) {
        cfg = e.config;
        found = true;
      }
    }
    if (!found) throw ConfigError("unknown benchmark '" + v + "'");
  }
  for (const auto& [k, v] : pairs) cfg.set(k, v);
  return cfg;
}

GridPtr make_grid(const ExperimentConfig& cfg) {
  const int n = cfg.integer("grid.points");
  if (n <= 0) throw ConfigError("grid.points must be positive");
  try {
    return Grid::make(cfg.integer("grid.dimension"), cfg.number("grid.half_extent"), static_cast<std::size_t>(n));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

Nonlinearity make_nonlinearity(const ExperimentConfig& cfg) {
  const std::string name = cfg.text("nonlinearity.name");
  const int N = cfg.integer("grid.dimension");
  if (name == "heat") return make_heat(N);
  if (name == "semilinear") return make_semilinear(N, cfg.number("nonlinearity.lambda"), cfg.number("nonlinearity.p"));
  if (name == "convection") {
    auto a = cfg.numbers("nonlinearity.a");
    if (a.size() == 1 && N == 2) a.push_back(0.0);
    if (static_cast<int>(a.size()) != N) throw ConfigError("nonlinearity.a must have N entries");
    return make_convection(a, cfg.number("nonlinearity.p"));
  }
  if (name == "keller-segel") return make_keller_segel(N);
  // Cross-power system: component c is driven by λ|u_{c+1}|^{a-1}u_{c+1}.
  const int m = cfg.integer("nonlinearity.components");
  if (m < 1) throw ConfigError("nonlinearity.components must be >= 1");
  const double a = cfg.number("nonlinearity.system_exponent");
  const double lambda = cfg.number("nonlinearity.lambda");
  std::vector<PointwiseLaw> laws;
  for (int c = 0; c < m; ++c) {
    const auto src = static_cast<std::size_t>((c + 1) % m);
    laws.push_back([=](std::span<const double> u) {
      const double v = u[src];
      return v == 0.0 ? 0.0 : lambda * std::copysign(std::pow(std::abs(v), a), v);
    });
  }
  auto nl = make_system(N, std::move(laws), a);
  nl.with_parameter("lambda", lambda);
  if (lambda == 0.0) nl.mark_zero();
  return nl;
}

std::vector<Field> make_initial_data(const ExperimentConfig& cfg, const GridPtr& grid) {
  const int N = grid->dimension();
  std::size_t m = 1;
  const std::string nl = cfg.text("nonlinearity.name");
  if (nl == "system") m = static_cast<std::size_t>(cfg.integer("nonlinearity.components"));
  auto masses = cfg.numbers("initial.mass");
  if (masses.size() == 1) masses.resize(m, masses[0]);
  if (masses.size() != m) throw ConfigError("initial.mass must have 1 or m entries");
  auto shift = cfg.numbers("initial.shift");
  if (shift.size() == 1) shift.resize(static_cast<std::size_t>(N), shift[0]);
  if (static_cast<int>(shift.size()) != N) throw ConfigError("initial.shift must have 1 or N entries");
  const double width = cfg.number("initial.width");
  if (!(width > 0.0)) throw ConfigError("initial.width must be positive");
  const std::string family = cfg.text("initial.family");

  std::vector<Field> out;
  for (double mass : masses) {
    out.push_back(Field::sample(grid, [&](std::span<const double> x) {
      double y[2] = {x[0], N == 2 ? x[1] : 0.0};
      if (family == "shifted-gaussian") {
        for (int i = 0; i < N; ++i) y[i] -= shift[static_cast<std::size_t>(i)];
      }
      const double G = kernel::gauss(std::span<const double>(y, static_cast<std::size_t>(N)), width);
      // The dipole −∂₁G has zero mass and first moment `mass`.
      if (family == "dipole") return mass * y[0] / (2.0 * width) * G;
      return mass * G;
    }, 0.0));
  }
  return out;
}

std::optional<Field> make_chemical(const ExperimentConfig& cfg, const GridPtr& grid) {
  if (cfg.text("nonlinearity.name") != "keller-segel") return std::nullopt;
  const double mass = cfg.number("chemical.mass");
  return Field::sample(grid, [&](std::span<const double> x) { return mass * kernel::gauss(x, 1.0); }, 0.0);
}

SolveConfig make_solve_config(const ExperimentConfig& cfg) {
  SolveConfig s;
  s.horizon = cfg.number("solver.horizon");
  s.uniform_dt = cfg.number("solver.uniform_dt");
  s.uniform_until = cfg.number("solver.uniform_until");
  s.growth = cfg.number("solver.growth");
  s.max_dt = cfg.number("solver.max_dt");
  s.refinement = cfg.integer("solver.refinement");
  s.picard_tol = cfg.number("solver.picard_tol");
  s.picard_max_iters = cfg.integer("solver.picard_max_iters");
  s.duhamel_rule = parse_duhamel_rule(cfg.text("solver.duhamel_rule"));
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return s;
}

FitWindow make_window(const ExperimentConfig& cfg) {
  const std::string w = cfg.text("rates.window");
  if (w == "auto") return default_window(cfg.number("solver.horizon"));
  const auto parts = split_list(w);
  if (parts.size() != 2) throw ConfigError("rates.window must be 'auto' or 'lo,hi'");
  FitWindow fw{parse_number(parts[0]), parse_number(parts[1])};
  if (!(fw.lo > 0.0 && fw.hi > fw.lo)) throw ConfigError("rates.window needs 0 < lo < hi");
  return fw;
}

namespace {

struct Artifacts {
  fs::path dir;
  std::vector<VerdictRow> rows;
  std::vector<std::string> report_lines;
  std::vector<std::pair<std::string, std::string>> derived;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

void write_manifest(const fs::path& dir, const ExperimentConfig& cfg,
                    const std::vector<std::pair<std::string, std::string>>& derived) {
  std::ostringstream os;
  cfg.write(os);
  for (const auto& [k, v] : derived) os << "derived." << k << " = " << v << '\n';
  write_text(dir / "manifest", os.str());
}

void write_verdicts(const fs::path& dir, const std::vector<VerdictRow>& rows) {
  std::ostringstream os;
  os << "benchmark,variant,n,q,j,l,slope,predicted,log_flag,tolerance,t_lo,t_hi,pass,sharp\n";
  for (const auto& r : rows) {
    const auto& v = r.verdict;
    os << r.benchmark << ',' << to_string(r.variant) << ',' << r.n << ',' << q_label(r.q) << ',' << r.j << ','
       << (r.weight ? format_number(*r.weight) : std::string()) << ',' << format_number(v.fitted_slope) << ','
       << format_number(v.predicted_exponent) << ',' << (v.log_correction ? "true" : "false") << ','
       << format_number(v.tolerance) << ',' << format_number(v.window.lo) << ',' << format_number(v.window.hi)
       << ',' << (v.pass ? "true" : "false") << ',' << (v.sharp ? "true" : "false") << '\n';
  }
  write_text(dir / "verdicts.csv", os.str());
}

void measure_profile(const Trajectory& traj, const ExpansionProfile& p, const ExperimentConfig& cfg,
                     const Nonlinearity& nl, Artifacts& art) {
  const double K = cfg.number("expansion.K");
  const double A = nl.decay_exponent();
  const FitWindow window = make_window(cfg);
  const LogCorrection mode = parse_log_correction(cfg.text("rates.log_correction"));
  const bool higher = p.variant == Variant::Tilde || p.variant == Variant::Hat || (p.variant == Variant::Un && p.order >= 1);
  const double tol = cfg.number(higher ? "rates.tolerance_higher" : "rates.tolerance");
  const std::string bench = cfg.text("name");
  const std::size_t first_row = art.rows.size();
  fs::create_directories(art.dir / "series");

  auto record = [&](const NormSeries& s, double q, int j, std::optional<double> l) {
    std::string file = to_string(p.variant) + "_n" + std::to_string(p.order) + "_q" + q_label(q) + "_j" +
                       std::to_string(j) + (l ? "_l" + format_number(*l) : "") + ".csv";
    std::ostringstream os;
    write_series_csv(os, s);
    write_text(art.dir / "series" / file, os.str());
    VerdictRow row{bench, p.variant, p.order, q, j, l, {}};
    try {
      row.verdict = verdict(s, K, A, p.order, p.variant, tol, window, mode);
    } catch (const DomainError& e) {
      row.verdict.window = window;
      row.verdict.tolerance = tol;
      row.verdict.fitted_slope = std::nan("");
      row.verdict.pass = false;
      row.verdict.note = e.what();
    }
    if (!row.verdict.note.empty()) {
      art.report_lines.push_back("note [" + file + "]: " + row.verdict.note);
    }
    art.rows.push_back(std::move(row));
  };

  for (double jd : cfg.numbers("rates.derivatives")) {
    const int j = static_cast<int>(jd);
    for (double q : cfg.numbers("rates.norms")) record(measure_error_series(traj, p, q, j), q, j, std::nullopt);
    for (double l : cfg.numbers("rates.weights")) record(measure_error_series(traj, p, 1.0, j, l), 1.0, j, l);
  }
  // With K an integer the bound is o(t^{-K/2}); a finite-horizon fit cannot tell o from O.
  const bool moment_limited =
      std::any_of(art.rows.begin() + static_cast<std::ptrdiff_t>(first_row), art.rows.end(), [&](const VerdictRow& r) {
        return std::abs(r.verdict.predicted_exponent - K / 2.0) <= 1e-12;
      });
  if (K == std::floor(K) && moment_limited) {
    art.report_lines.push_back("profile " + to_string(p.variant) + " n=" + std::to_string(p.order) +
                               ": K is an integer, the o(t^{-K/2}) bound is reported as consistent, not proved");
  }
  for (const auto& n : p.notes) art.report_lines.push_back("profile " + to_string(p.variant) + ": " + n);
  for (const auto& [k, v] : p.diagnostics) {
    art.derived.emplace_back(to_string(p.variant) + "_n" + std::to_string(p.order) + "." + k, format_number(v));
  }
}

void run_pipeline(const ExperimentConfig& cfg, Artifacts& art) {
  const GridPtr grid = make_grid(cfg);
  const Nonlinearity nl = make_nonlinearity(cfg);
  auto phi = make_initial_data(cfg, grid);
  auto psi = make_chemical(cfg, grid);
  const SolveConfig scfg = make_solve_config(cfg);
  const double K = cfg.number("expansion.K");
  const int Kb = bracket(K);

  art.derived.emplace_back("descriptor", nl.descriptor());
  art.derived.emplace_back("A", format_number(nl.decay_exponent()));
  art.derived.emplace_back("divergence_form", nl.divergence_form() ? "true" : "false");
  art.derived.emplace_back("supported", nl.supported() ? "true" : "false");
  if (!nl.supported()) art.report_lines.push_back("warning: " + nl.support_note());

  const Trajectory traj = solve(nl, std::move(phi), scfg, std::move(psi));
  art.derived.emplace_back("recorded_times", std::to_string(traj.size()));

  for (std::size_t c = 0; c < traj.components(); ++c) {
    std::ostringstream os;
    os << "alpha,value,t\n";
    double largest = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const MomentTable table = moment_coefficients(traj.state(k)[c], traj.time(k), Kb);
      largest = std::max(largest, table.max_abs());
      write_moment_csv(os, table, false);
    }
    write_text(art.dir / (c == 0 ? std::string("moments.csv") : "moments_u" + std::to_string(c) + ".csv"), os.str());
    art.derived.emplace_back("moment_table_max_abs_u" + std::to_string(c), format_number(largest));
  }

  const MomentAudit audit = mass_and_moment_audit(traj, Kb);
  art.derived.emplace_back("moment_audit_max_relative", format_number(audit.max_relative));
  for (std::size_t c = 0; c < audit.mass_drift.size(); ++c) {
    art.derived.emplace_back("mass_drift_u" + std::to_string(c), format_number(audit.mass_drift[c]));
  }
  art.derived.emplace_back("duhamel_residual_l1", format_number(duhamel_consistency(traj, scfg.duhamel_rule)));

  std::vector<int> orders;
  for (double o : cfg.numbers("expansion.orders")) orders.push_back(static_cast<int>(o));
  for (const std::string& name : cfg.words("expansion.variants")) {
    const Variant variant = parse_variant(name);
    switch (variant) {
      case Variant::Un:
        for (int n : orders) measure_profile(traj, build_Un(traj, nl, K, n, scfg.duhamel_rule), cfg, nl, art);
        break;
      case Variant::Tilde:
        measure_profile(traj, build_tilde_u(traj, nl, K, cfg.integer("expansion.J"), scfg.duhamel_rule), cfg, nl, art);
        break;
      case Variant::Hat:
        measure_profile(traj, build_hat_u(traj, nl, K, scfg.duhamel_rule), cfg, nl, art);
        break;
      case Variant::Leading:
        measure_profile(traj, build_leading(traj, nl), cfg, nl, art);
        break;
    }
  }

  std::ostringstream cs;
  cs << "component,alpha,t,value\n";
  for (std::size_t c = 0; c < traj.components(); ++c) {
    for (const MultiIndex& alpha : indices_up_to(grid->dimension(), Kb)) {
      const auto s = c_alpha_series(traj, nl, alpha, c);
      for (std::size_t k = 0; k < s.times.size(); ++k) {
        cs << c << ',' << alpha.to_string() << ',' << format_number(s.times[k]) << ',' << format_number(s.values[k])
           << '\n';
      }
      if (alpha.order() == 0) {
        double worst = 0.0;
        for (double v : s.values) worst = std::max(worst, std::abs(v));
        art.derived.emplace_back("c0_max_abs_u" + std::to_string(c), format_number(worst));
      }
      if (nl.decay_exponent() > 1.0 && !nl.is_zero()) {
        try {
          const RateVerdict d = coefficient_drift_check(traj, nl, alpha, 0.1, std::nullopt, c);
          const std::string key = "drift_u" + std::to_string(c) + "_" + alpha.to_string();
          art.derived.emplace_back(key + ".slope", format_number(d.fitted_slope));
          art.derived.emplace_back(key + ".predicted", format_number(d.predicted_exponent));
          art.derived.emplace_back(key + ".pass", d.pass ? "true" : "false");
        } catch (const DomainError& e) {
          art.report_lines.push_back("drift check " + alpha.to_string() + ": " + e.what());
        }
      }
    }
  }
  write_text(art.dir / "coefficients.csv", cs.str());

  if (cfg.flag("output.snapshots")) {
    std::ostringstream echo;
    cfg.write(echo);
    write_trajectory(art.dir / "trajectory", traj, echo.str());
  }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, const std::optional<fs::path>& out_dir) {
  RunResult result;
  fs::path dir = out_dir ? *out_dir : fs::path(cfg.text("output.dir"));
  if (dir.empty()) dir = fs::path("runs") / cfg.text("name");
  fs::create_directories(dir);
  result.dir = dir;

  Artifacts art;
  art.dir = dir;
  try {
    run_pipeline(cfg, art);
  } catch (const std::exception& e) {
    result.exit_code = kExitGuardOrConfig;
    result.error = e.what();
    art.report_lines.push_back(std::string("ERROR: ") + e.what());
  }
  art.derived.emplace_back("status", result.error.empty() ? "complete" : "aborted");
  write_manifest(dir, cfg, art.derived);
  write_verdicts(dir, art.rows);
  {
    std::ostringstream notes;
    for (const auto& l : art.report_lines) notes << l << '\n';
    write_text(dir / "notes.txt", notes.str());
  }
  write_text(dir / "report.txt", render_report(dir));
  result.verdicts = std::move(art.rows);
  if (result.exit_code == 0) {
    for (const auto& r : result.verdicts) {
      if (!r.verdict.pass) result.exit_code = kExitVerdictFailure;
    }
  }
  return result;
}

std::string render_report(const fs::path& dir) {
  const auto manifest = read_key_values(dir / "manifest");
  std::ostringstream os;
  auto get = [&](const std::string& k) {
    const auto it = manifest.find(k);
    return it == manifest.end() ? std::string("?") : it->second;
  };
  os << "experiment: " << get("name") << '\n';
  if (!get("anchor").empty() && get("anchor") != "?") os << "anchor: " << get("anchor") << '\n';
  os << "nonlinearity: " << get("derived.descriptor") << "  A = " << get("derived.A") << '\n';
  os << "grid: N = " << get("grid.dimension") << ", L = " << get("grid.half_extent") << ", n = " << get("grid.points")
     << '\n';
  os << "horizon: " << get("solver.horizon") << "  recorded times: " << get("derived.recorded_times") << '\n';
  os << "status: " << get("derived.status") << "\n\n";
  os << "audits:\n";
  for (const auto& [k, v] : manifest) {
    if (k.rfind("derived.mass_drift", 0) == 0 || k.rfind("derived.moment_audit", 0) == 0 ||
        k.rfind("derived.duhamel", 0) == 0 || k.rfind("derived.c0_", 0) == 0 || k.rfind("derived.drift_", 0) == 0) {
      os << "  " << k.substr(8) << " = " << v << '\n';
    }
  }

  std::ifstream vin(dir / "verdicts.csv");
  std::string line;
  std::getline(vin, line);
  int total = 0, passed = 0;
  os << "\nverdicts (slope <= -predicted + tolerance):\n";
  char buf[256];
  while (std::getline(vin, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() < 14) continue;
    ++total;
    const bool pass = f[12] == "true";
    passed += pass ? 1 : 0;
    const std::string norm = f[5].empty() ? "q=" + f[3] : "l=" + f[5];
    std::snprintf(buf, sizeof buf, "  %-4s %-8s n=%s %-6s j=%s  slope %9.4f  predicted %.4f%s  tol %.2f  [%s, %s]%s\n",
                  pass ? "PASS" : "FAIL", f[1].c_str(), f[2].c_str(), norm.c_str(), f[4].c_str(),
                  std::strtod(f[6].c_str(), nullptr), std::strtod(f[7].c_str(), nullptr),
                  f[8] == "true" ? " (log)" : "", std::strtod(f[9].c_str(), nullptr), f[10].c_str(), f[11].c_str(),
                  f[13] == "true" ? "  sharp" : "");
    os << buf;
  }
  os << "\n" << passed << " of " << total << " verdicts pass\n";

  std::ifstream nin(dir / "notes.txt");
  if (nin) {
    std::ostringstream notes;
    notes << nin.rdbuf();
    if (!notes.str().empty()) os << "\nnotes:\n" << notes.str();
  }
  return os.str();
}

}  // namespace pasym
