#include "hyperdot/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyperdot/quadrature.hpp"
#include "hyperdot/specfun.hpp"

namespace hyperdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double pick_tol(const SystemSpec& spec, double tol) { return tol > 0 ? tol : default_tolerance(spec.d); }

// +1 for position, -1 for momentum: the sign with which ln L enters.
double length_sign(Space space) { return space == Space::Position ? 1.0 : -1.0; }

// ln of the angular weight |Y_0|^2, or 0 for radial-only (l > 0) measures.
double angular_log(const SystemSpec& spec, const QuantumNumbers& qn) {
  return qn.l == 0 ? log_angular_density_l0(spec.d) : 0.0;
}

double log_ball_volume(int d) { return 0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * d + 1.0); }

// Integral of an arbitrary position-space integrand over the profile's
// support; hydrogen tails decay exponentially.
QuadratureResult integrate_position(const RadialProfile& r, Integrand f, double tol) {
  IntegrandSpec spec;
  spec.f = std::move(f);
  if (!r.semi_infinite()) {
    spec.points = r.breakpoints(1.0);
    return integrate_finite(spec, 0.0, 1.0, tol);
  }
  const double cut = r.tail_start();
  spec.points = r.breakpoints(cut);
  spec.points.push_back(cut);
  spec.tail.mode = TailSpec::Mode::Exact;
  spec.tail.p = 2.0;
  spec.tail.fn = spec.f;
  return integrate_semi_infinite(spec, tol);
}

// Scan range for the global maximum of |R|.
double max_search_range(const SystemSpec& spec, const QuantumNumbers& qn, const RadialProfile& r) {
  if (!r.semi_infinite()) return 1.0;
  if (spec.is_dot()) return std::min(r.tail_start(), 2.0 * std::sqrt(dot_energy(spec, qn)) + 30.0);
  return r.tail_start();
}

}  // namespace

std::string to_string(RenyiStatus s) {
  switch (s) {
    case RenyiStatus::Finite: return "finite";
    case RenyiStatus::Diverged: return "diverged";
    case RenyiStatus::BelowThreshold: return "below-threshold";
  }
  return "?";
}

Thresholds thresholds(const SystemSpec& spec, int l) {
  spec.validate();
  const double d = spec.d;
  switch (spec.kind) {
    case SystemKind::DirichletDot: return {d / (d + 3.0), spec.d > 3 ? d / (d - 3.0) : kInf};
    case SystemKind::NeumannDot: return {d / (d + 1.0), d / (d - 1.0)};
    case SystemKind::Hydrogen: return {0.5 * d / (d + l + 1.0), kInf};
  }
  return {kNaN, kNaN};
}

double shannon(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double tol) {
  const auto r = radial_profile(spec, qn, space);
  const double radial = -integrate_profile(*r, 1.0, spec.d - 1.0, 1, pick_tol(spec, tol)).to_double();
  return radial - angular_log(spec, qn) + length_sign(space) * spec.d * std::log(spec.length);
}

double fisher(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double tol) {
  const auto r = radial_profile(spec, qn, Space::Position);
  const double t = pick_tol(spec, tol);
  const double L2 = spec.length * spec.length;
  if (space == Space::Momentum) return 4.0 * integrate_profile(*r, 1.0, spec.d + 1.0, 0, t).to_double() * L2;
  const int d = spec.d;
  const double ell = static_cast<double>(qn.l) * (qn.l + d - 2);
  Integrand f = [&r, d, ell](double x) {
    const LogReal lx = LogReal::from_log(std::log(x));
    LogReal v = LogReal::from_log(2.0 * r->log_abs_derivative(x)) * lx.pow(d - 1.0);
    if (ell > 0) {
      const double la = r->log_abs(x);
      if (std::isfinite(la)) v += LogReal::from_log(2.0 * la + (d - 3.0) * std::log(x) + std::log(ell));
    }
    return v;
  };
  return 4.0 * integrate_position(*r, f, t).to_double() / L2;
}

std::optional<double> fisher_closed_form(const SystemSpec& spec, const QuantumNumbers& qn, Space space) {
  validate(spec, qn);
  const double L2 = spec.length * spec.length;
  if (space == Space::Position) {
    if (spec.is_dot()) return 4.0 * dot_energy(spec, qn) / L2;
    const double lam = hydrogen_lambda(spec.d, qn.n);
    return 1.0 / (lam * lam * L2);
  }
  if (qn.l != 0) return std::nullopt;
  if (spec.kind == SystemKind::DirichletDot) {
    if (spec.d == 3) return fisher_closed_asymptotics(FisherCase::Dirichlet3DMomentum, qn.n) * L2;
    if (spec.d == 4) return 4.0 / 3.0 * L2;
  }
  if (spec.kind == SystemKind::NeumannDot) {
    if (qn.n == 1) return fisher_closed_asymptotics(FisherCase::NeumannGroundMomentum, spec.d) * L2;
    if (spec.d == 4) return 4.0 / 3.0 * L2;
  }
  return std::nullopt;
}

double fisher_closed_asymptotics(FisherCase c, double param) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  switch (c) {
    case FisherCase::Dirichlet3DMomentum: {
      const double n2 = param * param;
      return 2.0 / 3.0 * (2.0 * n2 * pi2 - 3.0) / (n2 * pi2);
    }
    case FisherCase::Dirichlet3DMomentumLarge: return 4.0 / 3.0 - 2.0 / (param * param * pi2);
    case FisherCase::NeumannGroundMomentum: return 4.0 * param / (param + 2.0);
    case FisherCase::NeumannGroundMomentumLarge: return std::isinf(param) ? 4.0 : 4.0 * (1.0 - 2.0 / param);
  }
  return kNaN;
}

double log_power_integral(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double alpha, double tol) {
  if (!(alpha > 0.0) || std::isinf(alpha)) throw std::domain_error("log_power_integral: alpha must be positive and finite");
  const auto r = radial_profile(spec, qn, space);
  const LogReal j = integrate_profile(*r, alpha, spec.d - 1.0, 0, pick_tol(spec, tol)).value;
  if (j.sign <= 0) throw std::runtime_error("log_power_integral: non-positive density integral");
  return j.logmag + (alpha - 1.0) * angular_log(spec, qn) +
         length_sign(space) * spec.d * (1.0 - alpha) * std::log(spec.length);
}

LogReal onicescu(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double tol) {
  return LogReal::from_log(log_power_integral(spec, qn, space, 2.0, tol));
}

double log_density_max(const SystemSpec& spec, const QuantumNumbers& qn, Space space) {
  const auto r = radial_profile(spec, qn, space);
  const double xmax = max_search_range(spec, qn, *r);
  const int n = 4000;
  auto la = [&r](double x) { return r->log_abs(x); };
  int best = 0;
  double best_val = la(0.0);
  for (int i = 1; i <= n; ++i) {
    const double v = la(xmax * i / n);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  // Golden-section refinement on the neighbouring cells.
  double a = xmax * std::max(0, best - 1) / n, b = xmax * std::min(n, best + 1) / n;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), e = a + g * (b - a);
  double fc = la(c), fe = la(e);
  for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, b); ++it) {
    if (fc > fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - g * (b - a);
      fc = la(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + g * (b - a);
      fe = la(e);
    }
  }
  best_val = std::max({best_val, fc, fe});
  const double log_max = 2.0 * best_val + angular_log(spec, qn) - length_sign(space) * spec.d * std::log(spec.length);
  return log_max;
}

RenyiPoint renyi(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double alpha, double tol) {
  validate(spec, qn);
  if (!(alpha >= 0.0)) throw std::domain_error("renyi: alpha must be non-negative");
  RenyiPoint p;
  p.alpha = alpha;
  p.space = space;
  p.radial_only = qn.l != 0;
  p.value = kNaN;
  const double lnL = length_sign(space) * spec.d * std::log(spec.length);
  const Thresholds th = thresholds(spec, qn.l);
  if (space == Space::Momentum && alpha <= th.alpha_th) {
    p.status = RenyiStatus::BelowThreshold;
    return p;
  }
  if (alpha == 0.0) {  // position only from here on
    if (!spec.is_dot()) {
      p.status = RenyiStatus::Diverged;
      return p;
    }
    p.value = qn.l == 0 ? log_ball_volume(spec.d) + lnL : std::log(1.0 / spec.d) + lnL;
    return p;
  }
  if (std::isinf(alpha)) {
    p.value = -log_density_max(spec, qn, space);
    return p;
  }
  if (alpha == 1.0) {
    p.value = shannon(spec, qn, space, tol);
    return p;
  }
  try {
    if (std::fabs(alpha - 1.0) < 1e-6) {
      // First-order expansion about the Shannon value.
      double h = 1e-3;
      if (space == Space::Momentum) h = std::min(h, 0.5 * (1.0 - th.alpha_th));
      const double up = log_power_integral(spec, qn, space, 1.0 + h, tol) / (-h);
      const double dn = log_power_integral(spec, qn, space, 1.0 - h, tol) / h;
      p.value = shannon(spec, qn, space, tol) + (alpha - 1.0) * (up - dn) / (2.0 * h);
      return p;
    }
    p.value = log_power_integral(spec, qn, space, alpha, tol) / (1.0 - alpha);
  } catch (const DivergenceError&) {
    p.status = RenyiStatus::Diverged;
    p.value = kNaN;
  }
  return p;
}

TsallisPoint tsallis(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double alpha, double tol) {
  const RenyiPoint r = renyi(spec, qn, space, alpha, tol);
  TsallisPoint t{alpha, space, kNaN, r.status, r.radial_only};
  if (r.status != RenyiStatus::Finite) return t;
  if (alpha == 1.0) {
    t.value = r.value;
  } else if (std::isinf(alpha)) {
    if (r.value > 0) {
      t.value = 0.0;
    } else {
      t.status = RenyiStatus::Diverged;
    }
  } else {
    t.value = -std::expm1((1.0 - alpha) * r.value) / (alpha - 1.0);
  }
  return t;
}

double MeasureReport::shannon_bound() const { return spec.d * (1.0 + std::log(std::numbers::pi)); }

MeasureReport measure_report(const SystemSpec& spec, const QuantumNumbers& qn, double tol) {
  validate(spec, qn);
  MeasureReport m;
  m.spec = spec;
  m.qn = qn;
  m.radial_only = qn.l != 0;
  m.s_rho = shannon(spec, qn, Space::Position, tol);
  m.s_gamma = shannon(spec, qn, Space::Momentum, tol);
  m.i_rho = fisher(spec, qn, Space::Position, tol);
  m.i_gamma = fisher(spec, qn, Space::Momentum, tol);
  m.o_rho = onicescu(spec, qn, Space::Position, tol);
  m.o_gamma = onicescu(spec, qn, Space::Momentum, tol);
  return m;
}

Complexity complexity(const MeasureReport& report, std::optional<double> alpha) {
  Complexity c;
  const double d = report.spec.d;
  c.cso_rho = LogReal::from_log(report.s_rho) * report.o_rho;
  c.cso_gamma = LogReal::from_log(report.s_gamma) * report.o_gamma;
  const double k = 1.0 / (2.0 * std::numbers::pi * std::numbers::e);
  c.fisher_shannon_rho = k * std::exp(2.0 * report.s_rho / d) * report.i_rho;
  c.fisher_shannon_gamma = k * std::exp(2.0 * report.s_gamma / d) * report.i_gamma;
  if (alpha) {
    const RenyiPoint rr = renyi(report.spec, report.qn, Space::Position, *alpha);
    const RenyiPoint rg = renyi(report.spec, report.qn, Space::Momentum, *alpha);
    if (rr.status == RenyiStatus::Finite) c.renyi_diseq_rho = LogReal::from_log(rr.value) * report.o_rho;
    if (rg.status == RenyiStatus::Finite) c.renyi_diseq_gamma = LogReal::from_log(rg.value) * report.o_gamma;
  }
  return c;
}

}  // namespace hyperdot
