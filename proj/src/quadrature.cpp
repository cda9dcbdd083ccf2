#include "hyperdot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "hyperdot/specfun.hpp"
#include "hyperdot/systems.hpp"

namespace hyperdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// QUADPACK qk21 abscissae and weights.
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.0};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};
constexpr double wg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                          0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                          0.295524224714752870173892994651338};

// One panel, stored as (result, error, |f| integral) scaled by exp(shift).
struct Panel {
  double a, b;
  double shift;
  double res, err, resabs;
  bool frozen = false;
};

Panel gk21(const Integrand& f, double a, double b, Accumulation mode) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  LogReal v[21];
  v[0] = f(c);
  for (int i = 0; i < 10; ++i) {
    v[1 + 2 * i] = f(c - h * xgk[i]);
    v[2 + 2 * i] = f(c + h * xgk[i]);
  }
  double shift = 0.0;
  if (mode == Accumulation::Log) {
    shift = -kInf;
    for (const auto& x : v) {
      if (std::isnan(x.logmag)) throw std::domain_error("integrand returned NaN");
      if (!x.is_zero()) shift = std::max(shift, x.logmag);
    }
    if (!std::isfinite(shift)) shift = 0.0;
  }
  double fv[21];
  for (int i = 0; i < 21; ++i) {
    fv[i] = v[i].is_zero() ? 0.0 : v[i].sign * std::exp(v[i].logmag - shift);
    if (!std::isfinite(fv[i])) throw std::domain_error("integrand is not finite");
  }
  double resk = wgk[10] * fv[0], resg = 0.0, resabs = wgk[10] * std::fabs(fv[0]);
  for (int i = 0; i < 10; ++i) {
    const double s = fv[1 + 2 * i] + fv[2 + 2 * i];
    resk += wgk[i] * s;
    resabs += wgk[i] * (std::fabs(fv[1 + 2 * i]) + std::fabs(fv[2 + 2 * i]));
    if (i % 2 == 1) resg += wg[i / 2] * s;
  }
  const double mean = 0.5 * resk;
  double resasc = wgk[10] * std::fabs(fv[0] - mean);
  for (int i = 0; i < 10; ++i) resasc += wgk[i] * (std::fabs(fv[1 + 2 * i] - mean) + std::fabs(fv[2 + 2 * i] - mean));
  const double ah = std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  resasc *= ah;
  resabs *= ah;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  err = std::max(err, 1e-15 * resabs);
  return {a, b, shift, resk * h, err, resabs};
}

// Adaptive bisection over the initial panels; values are kept relative to a
// common reference scale exp(ref).
QuadratureResult adapt(const Integrand& f, std::vector<double> cuts, const IntegrandSpec& spec, double tol_rel) {
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) panels.push_back(gk21(f, cuts[i], cuts[i + 1], spec.mode));
  QuadratureResult out;
  if (panels.empty()) return out;

  double ref = -kInf;
  for (const auto& p : panels)
    if (p.resabs > 0) ref = std::max(ref, p.shift + std::log(p.resabs));
  if (!std::isfinite(ref)) {
    out.subintervals = static_cast<int>(panels.size());
    return out;
  }
  auto scale = [&](const Panel& p) { return std::exp(p.shift - ref); };

  auto cmp = [&](std::size_t i, std::size_t j) {
    return panels[i].err * scale(panels[i]) < panels[j].err * scale(panels[j]);
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
  double total = 0.0, err = 0.0, absint = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    heap.push(i);
    total += panels[i].res * scale(panels[i]);
    err += panels[i].err * scale(panels[i]);
    absint += panels[i].resabs * scale(panels[i]);
  }

  auto converged = [&] { return err <= std::max(tol_rel * std::fabs(total), spec.abs_floor * absint); };
  int iter = 0;
  while (!converged()) {
    if (static_cast<int>(panels.size()) >= spec.max_subintervals || heap.empty()) break;
    const std::size_t i = heap.top();
    heap.pop();
    Panel p = panels[i];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || p.b - p.a <= 1e-14 * std::max(1.0, std::fabs(mid))) {
      panels[i].frozen = true;  // cannot be refined further
      continue;
    }
    Panel l = gk21(f, p.a, mid, spec.mode), r = gk21(f, mid, p.b, spec.mode);
    total += l.res * scale(l) + r.res * scale(r) - p.res * scale(p);
    err += l.err * scale(l) + r.err * scale(r) - p.err * scale(p);
    absint += l.resabs * scale(l) + r.resabs * scale(r) - p.resabs * scale(p);
    panels[i] = l;
    panels.push_back(r);
    heap.push(i);
    heap.push(panels.size() - 1);
    if (++iter % 64 == 0) {  // refresh running sums against drift
      total = err = absint = 0.0;
      for (const auto& q : panels) {
        total += q.res * scale(q);
        err += q.err * scale(q);
        absint += q.resabs * scale(q);
      }
    }
  }

  // Deterministic final sum in position order.
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  total = err = absint = 0.0;
  for (const auto& q : panels) {
    total += q.res * scale(q);
    err += q.err * scale(q);
    absint += q.resabs * scale(q);
  }
  out.value = total == 0.0 ? LogReal::zero() : LogReal(total > 0 ? 1 : -1, std::log(std::fabs(total)) + ref);
  out.abs_error = err * std::exp(ref);
  out.rel_error = total != 0.0 ? err / std::fabs(total) : (err == 0.0 ? 0.0 : kInf);
  out.subintervals = static_cast<int>(panels.size());
  if (!converged()) throw QuadratureError("adaptive quadrature did not reach the requested tolerance", out);
  return out;
}

std::vector<double> cut_list(const std::vector<double>& points, double lo, double hi) {
  std::vector<double> cuts{lo};
  std::vector<double> inner;
  for (double x : points)
    if (x > lo && x < hi) inner.push_back(x);
  std::sort(inner.begin(), inner.end());
  for (double x : inner)
    if (x > cuts.back()) cuts.push_back(x);
  cuts.push_back(hi);
  return cuts;
}

LogReal combine_error(const QuadratureResult& a, const QuadratureResult& b, QuadratureResult& out) {
  out.value = a.value + b.value;
  out.abs_error = a.abs_error + b.abs_error;
  out.subintervals = a.subintervals + b.subintervals;
  const double tot = std::fabs(out.value.to_double());
  out.rel_error = tot > 0 ? out.abs_error / tot : 0.0;
  if (!out.value.is_zero()) out.tail_fraction = std::min(1.0, std::exp(b.value.logmag - out.value.logmag));
  return out.value;
}

// ln|x|^{k} helper for the log-power integrands: ln(R^2) from ln|R|.
LogReal with_log(LogReal v, double log_abs_r, int log_power) {
  if (log_power == 0) return v;
  return v * LogReal::from_double(2.0 * log_abs_r);
}

}  // namespace

QuadratureResult integrate_finite(const IntegrandSpec& spec, double lo, double hi, double tol_rel) {
  if (!(hi >= lo)) throw std::invalid_argument("integrate_finite: hi < lo");
  if (hi == lo) return {};
  return adapt(spec.f, cut_list(spec.points, lo, hi), spec, tol_rel);
}

QuadratureResult integrate_semi_infinite(const IntegrandSpec& spec, double tol_rel) {
  if (spec.points.empty()) throw std::invalid_argument("integrate_semi_infinite: missing cut radius");
  const double cut = *std::max_element(spec.points.begin(), spec.points.end());
  QuadratureResult body = adapt(spec.f, cut_list(spec.points, 0.0, cut), spec, tol_rel);
  if (spec.tail.mode == TailSpec::Mode::None) return body;

  const double p = spec.tail.p;
  if (!(p > 1.0)) throw DivergenceError("integrand decays too slowly for a finite integral");
  // u = (z/Z)^{1-p} maps [Z, inf) to (0, 1] and flattens a z^{-p} tail.
  // Below u_far (z beyond 1e5 Z) the mapped integrand is taken as a + b ln u,
  // exact for z^{-p} (a' + b' ln z), and integrated in closed form.
  const Integrand& g = spec.tail.fn;
  const double u_far = std::pow(1e5, 1.0 - p);
  const double log_jac = -std::log(p - 1.0);
  auto mapped = [&, cut, p](double u) {
    const double z = cut * std::pow(u, 1.0 / (1.0 - p));
    const LogReal v = g(z);
    return v * LogReal::from_log(std::log(z) - std::log(u) + log_jac);
  };
  IntegrandSpec tail;
  tail.f = mapped;
  tail.mode = spec.mode;
  tail.abs_floor = spec.abs_floor;
  tail.max_subintervals = spec.max_subintervals;
  QuadratureResult t;
  if (u_far > 0.0 && u_far < 1.0) {
    t = adapt(mapped, {u_far, 1.0}, tail, tol_rel);
    // Slopes over the next two decades in z; their mismatch bounds the model
    // error.  Samples are taken in z (u would underflow for steep tails).
    auto at_z = [&, cut, p](double z) {
      return g(z) * LogReal::from_log(std::log(z) - (1.0 - p) * std::log(z / cut) + log_jac);
    };
    const double z_far = 1e5 * cut;
    const LogReal m1 = at_z(z_far), m2 = at_z(10.0 * z_far), m3 = at_z(100.0 * z_far);
    const LogReal inv_log = LogReal::from_double(1.0 / ((1.0 - p) * std::log(10.0)));
    const LogReal slope = (m2 - m1) * inv_log, slope2 = (m3 - m2) * inv_log;
    const LogReal lu_far = LogReal::from_log((1.0 - p) * std::log(1e5));
    t.value += (m1 - slope) * lu_far;
    t.abs_error += ((slope - slope2) * lu_far).abs().to_double();
  } else {
    t = adapt(mapped, {0.0, 1.0}, tail, tol_rel);
  }
  // The endpoint correction is the leading neglected term of the averaged
  // tail; its size is kept as a conservative error contribution.
  t.value += spec.tail.correction;
  t.abs_error += std::fabs(spec.tail.correction.to_double());
  QuadratureResult out;
  combine_error(body, t, out);
  return out;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol_rel,
                 const std::vector<double>& points) {
  IntegrandSpec spec;
  spec.f = [&f](double x) { return LogReal::from_double(f(x)); };
  spec.points = points;
  spec.mode = Accumulation::Plain;
  return integrate_finite(spec, lo, hi, tol_rel).to_double();
}

double cos_power_mean(double a) {
  return std::exp(std::lgamma(a + 0.5) - std::lgamma(a + 1.0)) / std::sqrt(std::numbers::pi);
}

double cos_power_log_mean(double a) { return cos_power_mean(a) * (digamma(a + 0.5) - digamma(a + 1.0)); }

double default_tolerance(int d) { return d > 50 ? 1e-7 : 1e-9; }

namespace {

// With R = A cos(theta), theta' ~ 1 and the cut at cos(theta) = 0, the
// oscillating remainder of |cos|^{2a} integrates to c2(a) G'(Z) + O(G'''),
// where G is the envelope and c2 the periodic second antiderivative of
// |cos|^{2a} - mean at pi/2:
//   c2 = -(1/2pi) int_0^pi sin^{2a} t (t^2 - pi t + pi^2/6) dt.
// The log variant weights the integrand with ln sin^2 t.
double endpoint_weight(double a, bool log_weight) {
  const double pi = std::numbers::pi;
  auto f = [a, pi, log_weight](double t) {
    const double s = std::sin(t);
    if (s <= 0.0) return 0.0;
    const double v = std::pow(s, 2.0 * a) * (t * t - pi * t + pi * pi / 6.0);
    return log_weight ? v * std::log(s * s) : v;
  };
  return -integrate(f, 0.0, pi, 1e-13, {0.5 * pi}) / (2.0 * pi);
}

double central_derivative(const std::function<double(double)>& g, double z) {
  const double h = 1e-3 * z;
  return (8.0 * (g(z + h) - g(z - h)) - (g(z + 2 * h) - g(z - 2 * h))) / (12.0 * h);
}

// Shared setup for semi-infinite profile integrals of |R|^{2 alpha} x^w.
QuadratureResult profile_integral(const RadialProfile& r, double alpha, double w, int log_power, double tol_rel,
                                  double cut, bool with_tail) {
  IntegrandSpec spec;
  spec.f = [&r, alpha, w, log_power](double x) {
    const double la = r.log_abs(x);
    if (!std::isfinite(la)) return LogReal::zero();
    return with_log(LogReal::from_log(2.0 * alpha * la + w * std::log(x)), la, log_power);
  };
  if (!r.semi_infinite()) {
    spec.points = r.breakpoints(1.0);
    return integrate_finite(spec, 0.0, 1.0, tol_rel);
  }
  spec.points = r.breakpoints(cut);
  spec.points.push_back(cut);
  // Far cuts start with one panel per oscillation, each with kinked ends at
  // the zeros; keep room to refine every one of them.
  spec.max_subintervals = std::max(spec.max_subintervals, 32 * static_cast<int>(spec.points.size()));
  if (with_tail) {
    if (r.oscillatory()) {
      const double p = alpha * r.decay_power() - w;
      const double m = cos_power_mean(alpha), mp = cos_power_log_mean(alpha);
      spec.tail.mode = TailSpec::Mode::Averaged;
      spec.tail.p = p;
      spec.tail.fn = [&r, alpha, w, log_power, m, mp](double z) {
        const double la = r.log_abs_tail_amplitude(z);
        const LogReal env = LogReal::from_log(2.0 * alpha * la + w * std::log(z));
        if (log_power == 0) return env * LogReal::from_double(m);
        return env * LogReal::from_double(m * 2.0 * la + mp);
      };
      // Envelope values near the cut are moderate, so plain doubles relative
      // to the envelope scale at the cut suffice for the derivative.
      const double ref = 2.0 * alpha * r.log_abs_tail_amplitude(cut) + w * std::log(cut);
      auto env = [&r, alpha, w, ref](double z) {
        return std::exp(2.0 * alpha * r.log_abs_tail_amplitude(z) + w * std::log(z) - ref);
      };
      double corr = endpoint_weight(alpha, false) * central_derivative(env, cut);
      if (log_power == 1) {
        auto env_log = [&r, &env](double z) { return env(z) * 2.0 * r.log_abs_tail_amplitude(z); };
        corr = endpoint_weight(alpha, false) * central_derivative(env_log, cut) +
               endpoint_weight(alpha, true) * central_derivative(env, cut);
      }
      spec.tail.correction = LogReal::from_double(corr) * LogReal::from_log(ref);
    } else {
      const double q = r.decay_power();
      spec.tail.mode = TailSpec::Mode::Exact;
      spec.tail.p = std::isinf(q) ? 2.0 : alpha * q - w;
      spec.tail.fn = spec.f;
    }
  }
  return integrate_semi_infinite(spec, tol_rel);
}

}  // namespace

QuadratureResult integrate_profile(const RadialProfile& r, double alpha, double w, int log_power, double tol_rel) {
  if (!(alpha > 0.0)) throw std::invalid_argument("integrate_profile: alpha must be positive");
  const double cut = r.semi_infinite() ? r.tail_start() : 1.0;
  return profile_integral(r, alpha, w, log_power, tol_rel, cut, true);
}

QuadratureResult integrate_profile_at_cut(const RadialProfile& r, double alpha, double w, int log_power, double cut,
                                          double tol_rel) {
  if (!r.semi_infinite()) throw std::invalid_argument("integrate_profile_at_cut: profile has compact support");
  if (!(alpha > 0.0)) throw std::invalid_argument("integrate_profile_at_cut: alpha must be positive");
  const double z = r.oscillatory() ? r.tail_start_below(cut) : cut;
  return profile_integral(r, alpha, w, log_power, tol_rel, z, true);
}

QuadratureResult integrate_profile_truncated(const RadialProfile& r, double alpha, double w, double cut,
                                             double tol_rel) {
  if (!r.semi_infinite()) throw std::invalid_argument("integrate_profile_truncated: profile has compact support");
  const double z = r.oscillatory() ? r.tail_start_below(cut) : cut;
  return profile_integral(r, alpha, w, 0, tol_rel, z, false);
}

QuadratureResult integrate_overlap(const RadialProfile& a, const RadialProfile& b, double w, double tol_rel) {
  if (a.space() != b.space() || a.dim() != b.dim())
    throw std::invalid_argument("integrate_overlap: profiles live in different spaces");
  IntegrandSpec spec;
  spec.mode = Accumulation::Plain;
  spec.abs_floor = 1e-13;
  spec.f = [&a, &b, w](double x) { return LogReal::from_double(a.value(x) * b.value(x) * std::pow(x, w)); };
  if (!a.semi_infinite()) {
    spec.points = a.breakpoints(1.0);
    const auto pb = b.breakpoints(1.0);
    spec.points.insert(spec.points.end(), pb.begin(), pb.end());
    return integrate_finite(spec, 0.0, 1.0, tol_rel);
  }
  double cut = std::max(a.tail_start(), b.tail_start());
  if (a.oscillatory()) cut = a.tail_start_below(cut);
  spec.points = a.breakpoints(cut);
  const auto pb = b.breakpoints(cut);
  spec.points.insert(spec.points.end(), pb.begin(), pb.end());
  spec.points.push_back(cut);
  if (a.oscillatory()) {
    spec.tail.mode = TailSpec::Mode::Averaged;
    spec.tail.p = 0.5 * (a.decay_power() + b.decay_power()) - w;
    // Amplitude signs are fixed beyond the cut; magnitudes go through logs.
    const double sign = (a.tail_amplitude(cut) > 0) == (b.tail_amplitude(cut) > 0) ? 1.0 : -1.0;
    auto log_env = [&a, &b, w](double z) {
      return a.log_abs_tail_amplitude(z) + b.log_abs_tail_amplitude(z) + w * std::log(z);
    };
    const double ref = log_env(cut);
    spec.tail.fn = [log_env, sign](double z) { return LogReal(sign > 0 ? 1 : -1, log_env(z) + std::log(0.5)); };
    auto env = [log_env, ref](double z) { return std::exp(log_env(z) - ref); };
    spec.tail.correction =
        LogReal::from_double(0.125 * sign * central_derivative(env, cut)) * LogReal::from_log(ref);
  } else {
    const double q = 0.5 * (a.decay_power() + b.decay_power());
    spec.tail.mode = TailSpec::Mode::Exact;
    spec.tail.p = std::isinf(q) ? 2.0 : q - w;
    spec.tail.fn = spec.f;
  }
  return integrate_semi_infinite(spec, tol_rel);
}

double expectation_moment(const RadialProfile& r, int s) {
  return integrate_profile(r, 1.0, r.dim() - 1.0 + s, 0, 1e-11).to_double();
}

}  // namespace hyperdot
