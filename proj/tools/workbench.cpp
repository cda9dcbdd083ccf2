#include "workbench.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "hyperdot/measures.hpp"
#include "hyperdot/quadrature.hpp"
#include "hyperdot/report.hpp"
#include "hyperdot/specfun.hpp"
#include "hyperdot/uncertainty.hpp"
#include "hyperdot/zeros.hpp"

namespace hyperdot::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int job_count(const RunConfig& cfg) {
  if (cfg.jobs > 0) return cfg.jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Evaluates fn(0..count-1) on a small pool; results keep their index order.
template <class T>
std::vector<T> parallel_map(int jobs, std::size_t count, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int nthreads = static_cast<int>(std::min<std::size_t>(std::max(1, jobs), count));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

SystemSpec spec_for(SystemKind kind, int d) {
  SystemSpec s;
  s.kind = kind;
  s.d = d;
  return s;
}

std::string csv_g(double x) { return format_g(x, 12); }

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open output file " + path);
  return f;
}

// Writes to --out when given, otherwise to the fallback stream.
template <class F>
void with_output(const std::string& path, std::ostream& fallback, F&& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  auto f = open_out(path);
  body(f);
}

int alpha_points_or(const RunConfig& cfg, int dflt, int quick) {
  if (cfg.alpha_points > 0) return cfg.alpha_points;
  return cfg.quick ? quick : dflt;
}

// --- figures ---

void figure_waveforms(const RunConfig& cfg, std::ostream& log) {
  if (cfg.out.empty()) throw ConfigError("figure 1 writes one CSV per curve: --out DIR is required");
  std::filesystem::create_directories(cfg.out);
  const std::vector<int> dims = cfg.dims.empty() ? std::vector<int>{3, 4, 5, 6} : cfg.dims;
  const SystemKind dot = cfg.system == SystemKind::Hydrogen ? SystemKind::DirichletDot : cfg.system;
  struct Curve {
    SystemKind kind;
    Space space;
    double xmax;
    int points;
  };
  const std::vector<Curve> curves = {{dot, Space::Position, 1.0, 201},
                                     {dot, Space::Momentum, 20.0, 401},
                                     {SystemKind::Hydrogen, Space::Position, 15.0, 301},
                                     {SystemKind::Hydrogen, Space::Momentum, 3.0, 301}};
  for (const Curve& c : curves) {
    for (int d : dims) {
      if (c.kind == SystemKind::Hydrogen && d < 3) continue;
      const auto r = radial_profile(spec_for(c.kind, d), {cfg.n, cfg.l}, c.space);
      std::vector<double> xs(c.points);
      for (int i = 0; i < c.points; ++i) xs[i] = c.xmax * i / (c.points - 1);
      const std::string name = "fig1_" + system_label(c.kind) + "_d" + std::to_string(d) + "_" + to_string(c.space) + ".csv";
      auto f = open_out((std::filesystem::path(cfg.out) / name).string());
      write_profile_csv(f, *r, xs);
      log << "wrote " << name << '\n';
    }
  }
}

void figure_renyi(const RunConfig& cfg, SystemKind kind, std::ostream& out) {
  const std::vector<int> dims = cfg.dims.empty() ? std::vector<int>{3, 4, 5, 6} : cfg.dims;
  const auto grid = alpha_grid(cfg.alpha_min, cfg.alpha_max, alpha_points_or(cfg, 101, 21), cfg.alpha_log);
  const QuantumNumbers qn{cfg.n, cfg.l};
  const double ln2pi = std::log(2.0 * std::numbers::pi);

  struct Curve {
    std::vector<std::string> rows;
    Thresholds th;
  };
  auto curves = parallel_map<Curve>(job_count(cfg), dims.size(), [&](std::size_t i) {
    const int d = dims[i];
    const SystemSpec spec = spec_for(kind, d);
    Curve c;
    c.th = thresholds(spec, qn.l);
    for (double a : grid) {
      const double beta = conjugate_beta(a);
      const double rhs = renyi_right_side(d, a);
      std::string row = std::to_string(d) + "," + csv_g(a) + "," + csv_g(beta) + ",";
      if (a >= c.th.alpha_r) {
        row += "nan,nan," + csv_g(rhs) + ",diverged";
      } else {
        const RelationCheck rc = renyi_sum(spec, qn, a, cfg.tol);
        row += csv_g(rc.left) + "," + csv_g(rc.left - (d - 3) * ln2pi) + "," + csv_g(rhs) + ",finite";
      }
      c.rows.push_back(row);
    }
    return c;
  });

  with_output(cfg.out, out, [&](std::ostream& o) {
    o << "d,alpha,beta,sum,offset_sum,right_side,status\n";
    for (const auto& c : curves)
      for (const auto& r : c.rows) o << r << '\n';
  });
  // Threshold verticals go to a sidecar file next to the data.
  const std::string side = cfg.out.empty() ? std::string() : cfg.out + ".thresholds.csv";
  auto write_side = [&](std::ostream& o) {
    o << "d,alpha_th,alpha_r\n";
    for (std::size_t i = 0; i < dims.size(); ++i)
      o << dims[i] << "," << csv_g(curves[i].th.alpha_th) << "," << csv_g(curves[i].th.alpha_r) << '\n';
  };
  if (side.empty()) {
    out << "# thresholds\n";
    write_side(out);
  } else {
    auto f = open_out(side);
    write_side(f);
  }
}

void figure_tsallis(const RunConfig& cfg, std::ostream& out) {
  const int d = cfg.dims.empty() ? 3 : cfg.dims.front();
  const SystemSpec spec = spec_for(cfg.system, d);
  const QuantumNumbers qn{cfg.n, cfg.l};
  const double lo = std::max(0.5, cfg.alpha_min), hi = std::min(1.0, cfg.alpha_max);
  const auto grid = alpha_grid(lo, hi, alpha_points_or(cfg, 101, 21), cfg.alpha_log);
  auto rows = parallel_map<std::string>(job_count(cfg), grid.size(), [&](std::size_t i) {
    const RelationCheck c = tsallis_sides(spec, qn, grid[i], cfg.tol);
    return csv_g(c.alpha) + "," + csv_g(c.beta) + "," + csv_g(c.left) + "," + csv_g(c.right);
  });
  with_output(cfg.out, out, [&](std::ostream& o) {
    o << "alpha,beta,t_rho,t_gamma\n";
    for (const auto& r : rows) o << r << '\n';
  });
}

// --- check suites ---

struct OracleRow {
  std::string name;
  SystemKind kind;
  int d, n, l;
  double residual, tolerance;
  bool ok() const { return residual <= tolerance; }
};

std::string oracle_csv(const OracleRow& r) {
  return r.name + "," + system_label(r.kind) + "," + std::to_string(r.d) + "," + std::to_string(r.n) + "," +
         std::to_string(r.l) + "," + format_g(r.residual, 6) + "," + format_g(r.tolerance, 3) + "," +
         (r.ok() ? "ok" : "FAIL");
}

// Decay exponent of the momentum density from its envelope at two large
// wave numbers, independent of the profile's own tail model.
double envelope_threshold(const SystemSpec& spec, const QuantumNumbers& qn) {
  const auto r = radial_profile(spec, qn, Space::Momentum);
  // Largest sample over one oscillation period, kept with its abscissa so
  // the slope is measured between actual peaks.
  auto peak = [&r](double z0) {
    std::pair<double, double> best{z0, -kInf};
    for (int i = 0; i <= 4000; ++i) {
      const double z = z0 + std::numbers::pi * i / 4000;
      const double v = 2.0 * r->log_abs(z);
      if (v > best.second) best = {z, v};
    }
    return best;
  };
  auto slope = [](std::pair<double, double> a, std::pair<double, double> b) {
    return (a.second - b.second) / std::log(b.first / a.first);
  };
  // Slopes over [z, 2z] and [2z, 4z]; Richardson removes the O(1/z) bias.
  const double z1 = spec.is_dot() ? 1000.0 : 200.0;
  const auto p1 = peak(z1), p2 = peak(2 * z1), p4 = peak(4 * z1);
  return spec.d / (2.0 * slope(p2, p4) - slope(p1, p2));
}

struct CheckResult {
  std::vector<RelationCheck> relations;
  std::vector<OracleRow> oracles;
};

CheckResult check_system(const RunConfig& cfg, SystemKind kind, int d) {
  CheckResult res;
  const SystemSpec spec = spec_for(kind, d);
  const int nmax = cfg.n;
  const double tol = cfg.tol;
  auto oracle = [&](const std::string& name, int n, int l, double residual, double tolerance) {
    res.oracles.push_back({name, kind, d, n, l, std::isnan(residual) ? kInf : residual, tolerance});
  };

  // Wavefunction oracles over l = 0..cfg.l.
  for (int l = 0; l <= cfg.l; ++l) {
    if (kind == SystemKind::Hydrogen && l >= nmax) break;
    for (Space space : {Space::Position, Space::Momentum}) {
      for (int n = (kind == SystemKind::Hydrogen ? l + 1 : 1); n <= nmax; ++n) {
        const auto a = radial_profile(spec, {n, l}, space);
        for (int m = n; m <= nmax; ++m) {
          const auto b = radial_profile(spec, {m, l}, space);
          const double ov = integrate_overlap(*a, *b, d - 1.0, 1e-11).to_double();
          oracle(std::string("orthonormality_") + to_string(space) + "_m" + std::to_string(m), n, l,
                 std::fabs(ov - (m == n ? 1.0 : 0.0)), 1e-8);
        }
      }
    }
    for (int n = (kind == SystemKind::Hydrogen ? l + 1 : 1); n <= nmax; ++n) {
      const QuantumNumbers qn{n, l};
      if (spec.is_dot()) {
        std::vector<double> grid;
        for (int i = 0; i < 12; ++i) grid.push_back(0.37 + 2.5 * i);
        oracle("fourier_consistency", n, l, fourier_consistency(spec, qn, grid), 1e-8);
      }
      for (Space space : {Space::Position, Space::Momentum}) {
        if (auto closed = fisher_closed_form(spec, qn, space)) {
          const double q = fisher(spec, qn, space, tol);
          oracle(std::string("fisher_closed_") + to_string(space), n, l, *closed == 0.0 ? std::fabs(q) : std::fabs(q / *closed - 1.0), 1e-7);
        }
      }
    }
    const double th = thresholds(spec, l).alpha_th + cfg.threshold_fault;
    oracle("threshold_envelope", 1, l, std::fabs(envelope_threshold(spec, {kind == SystemKind::Hydrogen ? l + 1 : 1, l}) - th),
           2e-3);
  }

  // Relation sweep, l = 0.
  const Thresholds th = thresholds(spec, 0);
  const double upper = std::min(3.0, th.alpha_r - 0.02 * (th.alpha_r - 0.5));
  const auto grid = alpha_grid(0.5, upper, cfg.quick ? 8 : 20, false);
  const auto tgrid = alpha_grid(0.5, 1.0, cfg.quick ? 3 : 6, false);
  for (int n = 1; n <= nmax; ++n) {
    const QuantumNumbers qn{n, 0};
    const RelationCheck sh = shannon_check(spec, qn, tol);
    res.relations.push_back(sh);
    std::vector<double> r_pos, r_mom;
    for (double a : grid) {
      const RelationCheck c = renyi_sum(spec, qn, a, tol);
      res.relations.push_back(c);
      r_pos.push_back(renyi(spec, qn, Space::Position, a, tol).value);
      r_mom.push_back(renyi(spec, qn, Space::Momentum, c.beta, tol).value);
    }
    // R(alpha) is non-increasing; beta decreases along the grid.
    double worst = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      worst = std::max(worst, r_pos[i] - r_pos[i - 1]);
      worst = std::max(worst, r_mom[i - 1] - r_mom[i]);
    }
    oracle("renyi_monotone", n, 0, worst, 1e-9);
    const RelationCheck half = res.relations[res.relations.size() - grid.size()];
    if (n == 1) oracle("ground_half_identity", n, 0, std::fabs(half.slack), kIdentityTolerance);
    else oracle("excited_half_strict", n, 0, half.slack > 1e-3 ? 0.0 : 1.0, 0.0);
    // Symmetric means around alpha = 1 cancel the linear term; Richardson over
    // two offsets removes the quadratic one. Offsets stay large enough that the
    // 1/(1 - alpha) cancellation does not amplify quadrature error.
    auto sym = [&](double e) {
      return 0.5 * (renyi_sum(spec, qn, 1.0 + e, tol).left + renyi_sum(spec, qn, 1.0 - e, tol).left);
    };
    const double near1 = (4.0 * sym(1e-3) - sym(2e-3)) / 3.0;
    oracle("renyi_shannon_limit", n, 0, std::fabs(near1 - sh.left), 1e-6);
    for (double a : tgrid) {
      const RelationCheck t = tsallis_sides(spec, qn, a, tol);
      res.relations.push_back(t);
      if (a == 1.0) oracle("tsallis_alpha1", n, 0, std::fabs(t.left - t.right), 1e-10);
    }
  }
  return res;
}

void load_cache(const std::string& path, std::ostream& log) {
  if (path.empty() || !std::filesystem::exists(path)) return;
  if (!ZeroTable::global().load(path)) log << "zero cache " << path << " is invalid; it will be rebuilt\n";
}

void save_cache(const std::string& path, std::size_t before, std::ostream& log) {
  if (path.empty() || ZeroTable::global().size() == before) return;
  const auto dir = std::filesystem::path(path).parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  ZeroTable::global().save(path);
  log << "zero cache updated: " << path << '\n';
}

}  // namespace

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> out;
  auto to_int = [&s](const std::string& t) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(t, &pos);
    } catch (const std::exception&) {
      throw ConfigError("bad --dims value '" + s + "'");
    }
    if (pos != t.size()) throw ConfigError("bad --dims value '" + s + "'");
    return v;
  };
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const int a = to_int(s.substr(0, dots)), b = to_int(s.substr(dots + 2));
    if (b < a) throw ConfigError("empty --dims range '" + s + "'");
    for (int d = a; d <= b; ++d) out.push_back(d);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw ConfigError("empty --dims");
  return out;
}

std::vector<double> alpha_grid(double lo, double hi, int points, bool log_spacing) {
  if (points < 1) throw ConfigError("alpha grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    g[i] = log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + (hi - lo) * t;
  }
  g.back() = hi;
  return g;
}

void validate(const RunConfig& cfg) {
  const bool hydrogen = cfg.system == SystemKind::Hydrogen;
  for (int d : cfg.dims) {
    if (d < 2) throw ConfigError("dimensionality must be at least 2");
    if (hydrogen && d < 3) throw ConfigError("hydrogen requires d >= 3");
    if (d > 400) throw ConfigError("dimensionality above 400 is not supported");
  }
  if (cfg.n < 1) throw ConfigError("--n must be at least 1");
  if (cfg.l < 0) throw ConfigError("--l must be non-negative");
  if (hydrogen && cfg.command != "check" && cfg.command != "zeros" && cfg.l >= cfg.n)
    throw ConfigError("hydrogen requires l < n");
  if (!(cfg.alpha_min >= 0.5)) throw ConfigError("--alpha-min must be at least 1/2");
  if (!(cfg.alpha_max >= cfg.alpha_min)) throw ConfigError("--alpha-max must not be below --alpha-min");
  if (cfg.alpha_points < 0) throw ConfigError("--alpha-points must be positive");
  if (cfg.command == "figure" && (cfg.figure < 1 || cfg.figure > 4)) throw ConfigError("figure number must be 1..4");
  if (cfg.command == "zeros" && cache_path(cfg).empty())
    throw ConfigError(std::string("zeros needs --cache or ") + kCacheDirEnv);
}

std::string cache_path(const RunConfig& cfg) {
  if (!cfg.cache.empty()) return cfg.cache;
  if (const char* dir = std::getenv(kCacheDirEnv); dir && *dir)
    return (std::filesystem::path(dir) / "zeros.txt").string();
  return {};
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  const std::vector<int> dims = cfg.dims.empty() ? parse_dims("2..10") : cfg.dims;
  const QuantumNumbers qn{cfg.n, cfg.l};
  auto rows = parallel_map<std::string>(job_count(cfg), dims.size(), [&](std::size_t i) {
    return measure_csv_row(measure_report(spec_for(cfg.system, dims[i]), qn, cfg.tol));
  });
  with_output(cfg.out, out, [&](std::ostream& o) {
    o << kMeasureCsvHeader << '\n';
    for (const auto& r : rows) o << r << '\n';
  });
  return kOk;
}

int cmd_figure(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  switch (cfg.figure) {
    case 1: figure_waveforms(cfg, log); break;
    case 2: figure_renyi(cfg, cfg.system_set ? cfg.system : SystemKind::DirichletDot, out); break;
    case 3: figure_renyi(cfg, cfg.system_set ? cfg.system : SystemKind::NeumannDot, out); break;
    case 4: figure_tsallis(cfg, out); break;
    default: throw ConfigError("figure number must be 1..4");
  }
  return kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const std::vector<int> dims = cfg.dims.empty() ? parse_dims(cfg.quick ? "3..4" : "2..6") : cfg.dims;
  std::vector<std::pair<SystemKind, int>> jobs;
  for (SystemKind k : {SystemKind::DirichletDot, SystemKind::NeumannDot, SystemKind::Hydrogen})
    for (int d : dims)
      if (k != SystemKind::Hydrogen || d >= 3) jobs.emplace_back(k, d);

  auto results = parallel_map<CheckResult>(job_count(cfg), jobs.size(),
                                           [&](std::size_t i) { return check_system(cfg, jobs[i].first, jobs[i].second); });

  int violated = 0, failed = 0;
  std::size_t nrel = 0, norc = 0;
  with_output(cfg.out, out, [&](std::ostream& o) {
    o << kRelationCsvHeader << '\n';
    for (const auto& r : results)
      for (const auto& c : r.relations) {
        o << relation_csv_row(c) << '\n';
        ++nrel;
        if (c.verdict == Verdict::Violated) ++violated;
      }
  });
  const std::string side = cfg.out.empty() ? std::string() : cfg.out + ".oracles.csv";
  auto write_oracles = [&](std::ostream& o) {
    o << "oracle,system,d,n,l,residual,tolerance,status\n";
    for (const auto& r : results)
      for (const auto& row : r.oracles) {
        o << oracle_csv(row) << '\n';
        ++norc;
        if (!row.ok()) ++failed;
      }
  };
  if (side.empty()) {
    write_oracles(log);
  } else {
    auto f = open_out(side);
    write_oracles(f);
  }
  log << "check: " << nrel << " relation checks, " << violated << " violated; " << norc << " oracle residuals, "
      << failed << " above tolerance\n";
  return (violated == 0 && failed == 0) ? kOk : kComputeFailure;
}

int cmd_zeros(const RunConfig& cfg, std::ostream& log) {
  const std::vector<int> dims = cfg.dims.empty() ? parse_dims("2..10") : cfg.dims;
  const int count = cfg.n > 1 ? cfg.n : 120;
  auto& table = ZeroTable::global();
  for (int d : dims)
    for (int l = 0; l <= cfg.l; ++l) {
      const double nu = l + 0.5 * d - 1.0;
      table.first(ZeroKind::Bessel, ZeroTable::bessel_key(nu), count);
      table.first(ZeroKind::Bessel, ZeroTable::bessel_key(nu + 1.0), count);
      table.first(ZeroKind::Neumann, ZeroTable::neumann_key(d, l), count);
    }
  log << "zeros: " << table.size() << " cached values\n";
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string bc, system, dims;
  CLI::App app{"Information measures and uncertainty relations of d-dimensional quantum dots and hydrogen"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bc", bc, "dot boundary condition")->check(CLI::IsMember({"dirichlet", "neumann"}));
    sub->add_option("--system", system, "system family")->check(CLI::IsMember({"dot", "hydrogen"}));
    sub->add_option("--dims", dims, "dimensionalities: A..B or a,b,c");
    sub->add_option("--n", cfg.n, "radial index (check: maximal index; zeros: zero count)");
    sub->add_option("--l", cfg.l, "orbital index (check, zeros: maximal index)");
    sub->add_option("--alpha-min", cfg.alpha_min, "lower end of the alpha grid");
    sub->add_option("--alpha-max", cfg.alpha_max, "upper end of the alpha grid");
    sub->add_option("--alpha-points", cfg.alpha_points, "number of alpha grid points");
    sub->add_flag("--alpha-log", cfg.alpha_log, "logarithmic alpha spacing");
    sub->add_option("--out", cfg.out, "output file (figure 1: directory)");
    sub->add_option("--cache", cfg.cache, std::string("zero cache file (default: $") + kCacheDirEnv + "/zeros.txt)");
    sub->add_option("--tol", cfg.tol, "relative quadrature tolerance");
    sub->add_flag("--quick", cfg.quick, "reduced grids and ranges");
    sub->add_option("--jobs", cfg.jobs, "worker threads (0: all cores)");
  };
  auto* table = app.add_subcommand("table", "measure table, one row per d");
  auto* figure = app.add_subcommand("figure", "figure data (1 waveforms, 2-3 Renyi sums, 4 Tsallis sides)");
  figure->add_option("number", cfg.figure, "figure number 1..4")->required();
  auto* check = app.add_subcommand("check", "invariant and oracle suites");
  check->add_option("--inject-threshold-fault", cfg.threshold_fault, "offset the claimed thresholds (negative test)");
  auto* zeros = app.add_subcommand("zeros", "precompute and persist Bessel and Neumann zeros");
  for (auto* s : {table, figure, check, zeros}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  std::size_t cached = 0;
  std::string cache;
  try {
    const CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (cfg.command == "check") {
      if (sub->count("--n") == 0) cfg.n = cfg.quick ? 2 : 3;
      if (sub->count("--l") == 0) cfg.l = cfg.quick ? 1 : 2;
    }
    if (!system.empty() && system == "hydrogen") cfg.system = SystemKind::Hydrogen;
    else if (bc == "neumann") cfg.system = SystemKind::NeumannDot;
    if (!bc.empty() && system == "hydrogen") throw ConfigError("--bc applies to dots only");
    cfg.system_set = !bc.empty() || !system.empty();
    if (!dims.empty()) cfg.dims = parse_dims(dims);
    validate(cfg);
    cache = cache_path(cfg);
    load_cache(cache, err);
    cached = ZeroTable::global().size();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  int code = kOk;
  try {
    if (cfg.command == "table") code = cmd_table(cfg, out);
    else if (cfg.command == "figure") code = cmd_figure(cfg, out, err);
    else if (cfg.command == "check") code = cmd_check(cfg, out, err);
    else code = cmd_zeros(cfg, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kComputeFailure;
  }
  try {
    save_cache(cache, cached, err);
  } catch (const std::exception& e) {
    err << "error: cannot write zero cache: " << e.what() << '\n';
    if (code == kOk) code = kComputeFailure;
  }
  return code;
}

}  // namespace hyperdot::cli
