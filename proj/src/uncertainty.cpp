#include "hyperdot/uncertainty.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hyperdot/measures.hpp"
#include "hyperdot/specfun.hpp"

namespace hyperdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kPi = std::numbers::pi;

RelationCheck make_check(RelationKind kind, const SystemSpec& spec, const QuantumNumbers& qn, double alpha,
                         double beta, double left, double right) {
  RelationCheck c;
  c.kind = kind;
  c.spec = spec;
  c.qn = qn;
  c.alpha = alpha;
  c.beta = beta;
  c.left = left;
  c.right = right;
  c.slack = left - right;
  c.verdict = classify(c.slack);
  return c;
}

double finite_renyi(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double alpha, double tol) {
  const RenyiPoint p = renyi(spec, qn, space, alpha, tol);
  if (p.status != RenyiStatus::Finite)
    throw std::runtime_error("Renyi entropy is not finite at alpha = " + std::to_string(alpha) + " (" +
                             to_string(p.status) + ")");
  return p.value;
}

// ln t(alpha) for the Sobolev/Tsallis sides.
double log_sobolev_side(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double alpha, double tol) {
  const double d = spec.d;
  if (std::isinf(alpha)) return 0.5 * log_density_max(spec, qn, space);
  return d / (4.0 * alpha) * std::log(alpha / kPi) + log_power_integral(spec, qn, space, alpha, tol) / (2.0 * alpha);
}

}  // namespace

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Shannon: return "shannon";
    case RelationKind::Renyi: return "renyi";
    case RelationKind::Tsallis: return "tsallis";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Identity: return "identity";
    case Verdict::Strict: return "strict";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

Verdict classify(double slack) {
  if (std::fabs(slack) < kIdentityTolerance) return Verdict::Identity;
  return slack > 0 ? Verdict::Strict : Verdict::Violated;
}

double conjugate_beta(double alpha) {
  if (!(alpha >= 0.5)) throw std::domain_error("conjugate_beta: alpha must be at least 1/2");
  if (alpha == 0.5) return kInf;
  if (std::isinf(alpha)) return 0.5;
  return alpha / (2.0 * alpha - 1.0);
}

RelationCheck shannon_check(const SystemSpec& spec, const QuantumNumbers& qn, double tol) {
  const double left = shannon(spec, qn, Space::Position, tol) + shannon(spec, qn, Space::Momentum, tol);
  return make_check(RelationKind::Shannon, spec, qn, 1.0, 1.0, left, spec.d * (1.0 + std::log(kPi)));
}

double renyi_right_side(int d, double alpha) {
  if (!(alpha >= 0.5)) throw std::domain_error("renyi_right_side: alpha must be at least 1/2");
  if (alpha == 0.5 || std::isinf(alpha)) return d * std::log(2.0 * kPi);
  // With e = alpha - 1 the two singular terms combine into
  // d [ln pi - ln(1+e) + (1+2e) ln(1+2e) / (2e)], free of cancellation at e -> 0.
  const double e = alpha - 1.0;
  if (e == 0.0) return d * (1.0 + std::log(kPi));
  return d * (std::log(kPi) - std::log1p(e) + (1.0 + 2.0 * e) * std::log1p(2.0 * e) / (2.0 * e));
}

RelationCheck renyi_sum(const SystemSpec& spec, const QuantumNumbers& qn, double alpha, double tol) {
  const Thresholds th = thresholds(spec, qn.l);
  if (!(alpha >= 0.5) || !(alpha < th.alpha_r))
    throw std::out_of_range("renyi_sum: alpha outside [1/2, alpha_R)");
  const double beta = conjugate_beta(alpha);
  const double left = finite_renyi(spec, qn, Space::Position, alpha, tol) +
                      finite_renyi(spec, qn, Space::Momentum, beta, tol);
  return make_check(RelationKind::Renyi, spec, qn, alpha, beta, left, renyi_right_side(spec.d, alpha));
}

RelationCheck tsallis_sides(const SystemSpec& spec, const QuantumNumbers& qn, double alpha, double tol) {
  if (!(alpha >= 0.5) || !(alpha <= 1.0)) throw std::out_of_range("tsallis_sides: alpha outside [1/2, 1]");
  const double beta = conjugate_beta(alpha);
  const double left = std::exp(log_sobolev_side(spec, qn, Space::Position, alpha, tol));
  const double right = std::exp(log_sobolev_side(spec, qn, Space::Momentum, beta, tol));
  return make_check(RelationKind::Tsallis, spec, qn, alpha, beta, left, right);
}

double hydrogen_renyi_closed(int d, double alpha, Space space, double r0) {
  if (d < 3) throw std::domain_error("hydrogen_renyi_closed: d >= 3 required");
  const double lam = hydrogen_lambda(d, 1);
  const double y2 = log_angular_density_l0(d);
  const double ln2 = std::log(2.0);
  if (space == Space::Position) {
    if (!(alpha > 0.0)) throw std::domain_error("hydrogen_renyi_closed: position requires alpha > 0");
    if (alpha == 1.0) throw std::domain_error("hydrogen_renyi_closed: alpha = 1 is the Shannon limit");
    return d * std::log(lam * r0) - y2 + std::lgamma(d) - d / (1.0 - alpha) * std::log(alpha) +
           alpha / (1.0 - alpha) * std::log((d - 1.0) / (4.0 * lam));
  }
  if (!(alpha > d / (2.0 * (d + 1.0))))
    throw std::domain_error("hydrogen_renyi_closed: momentum requires alpha > d/(2(d+1))");
  if (alpha == 1.0) throw std::domain_error("hydrogen_renyi_closed: alpha = 1 is the Shannon limit");
  const double a1 = alpha * (d + 1.0);
  return -d * std::log(lam * r0) - y2 + (3.0 * d * alpha - d - 1.0) / (1.0 - alpha) * ln2 +
         alpha / (1.0 - alpha) *
             (std::log(lam) + 2.0 * std::lgamma(0.5 * (d - 1.0)) - std::log(kPi) - std::lgamma(d - 1.0)) +
         (std::lgamma(a1 - 0.5 * d) + std::lgamma(0.5 * d) - std::lgamma(a1)) / (1.0 - alpha);
}

double hydrogen_renyi_sum_closed(int d, double alpha) {
  return hydrogen_renyi_closed(d, alpha, Space::Position) +
         hydrogen_renyi_closed(d, conjugate_beta(alpha), Space::Momentum);
}

double hydrogen_alpha_max(int d) {
  auto f = [d](double a) { return hydrogen_renyi_sum_closed(d, a); };
  auto df = [&f](double a) {
    const double h = 1e-5;
    return (8.0 * (f(a + h) - f(a - h)) - (f(a + 2 * h) - f(a - 2 * h))) / (12.0 * h);
  };
  // The maximum sits above 1 and approaches it as d grows: scan for the
  // derivative sign change from 1.01, extending towards 1 if needed.
  double lo = 1.01, hi = 2.0;
  while (df(lo) <= 0.0 && lo > 1.0005) lo = 1.0 + 0.5 * (lo - 1.0);
  if (!(df(lo) > 0.0) || !(df(hi) < 0.0)) throw ConvergenceError("hydrogen_alpha_max: no bracket for the maximum");
  double flo = df(lo), fhi = df(hi);
  for (int it = 0; it < 200; ++it) {
    double x = hi - fhi * (hi - lo) / (fhi - flo);  // secant step inside the bracket
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = df(x);
    if (std::fabs(fx) < 1e-12 || hi - lo < 1e-12) return x;
    if (fx > 0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    // Illinois-style damping keeps the secant from stalling on one end.
    if (fx > 0) fhi *= 0.5;
    else flo *= 0.5;
  }
  throw ConvergenceError("hydrogen_alpha_max: secant iteration did not converge");
}

double hydrogen_sum_asymptote(int d) {
  if (d < 3) throw std::domain_error("hydrogen_sum_asymptote: d >= 3 required");
  return -2.0 * log_angular_density_l0(d) + 0.5 * std::log(kPi) + std::lgamma(d) - std::log(2.0) -
         (std::lgamma(0.5 * (d + 1.0)) - std::lgamma(0.5 * d));
}

double near_half_expansion(int d, double alpha) {
  const double e = 2.0 * alpha - 1.0;
  if (e == 0.0) return d * std::log(2.0 * kPi);
  return d * (std::log(2.0 * kPi) - (1.0 + std::log(e)) * e);
}

}  // namespace hyperdot
