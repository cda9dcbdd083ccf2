// Adaptive Gauss-Kronrod integration with log-domain accumulation, panel
// decomposition at special points, and averaged-envelope tails for
// oscillatory semi-infinite integrands.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperdot/logreal.hpp"

namespace hyperdot {

class RadialProfile;

struct QuadratureResult {
  LogReal value;
  double abs_error = 0.0;  // meaningful only when the value is representable
  double rel_error = 0.0;
  int subintervals = 0;
  double tail_fraction = 0.0;

  double to_double() const { return value.to_double(); }
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best) : std::runtime_error(what), best(best) {}
  QuadratureResult best;
};

// Semi-infinite integral whose tail decays too slowly to converge.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

using Integrand = std::function<LogReal(double)>;

enum class Accumulation { Plain, Log };

struct TailSpec {
  enum class Mode {
    None,      // no tail: integrate up to the last breakpoint only
    Exact,     // integrate `fn` itself beyond the cut (monotone decay)
    Averaged,  // integrate the oscillation-averaged envelope `fn` beyond the cut
  };
  Mode mode = Mode::None;
  double p = 2.0;  // integrand ~ z^{-p}; p <= 1 is rejected as divergent
  Integrand fn;
  // Added to the tail: endpoint term of the oscillating remainder that the
  // averaged envelope drops.
  LogReal correction;
};

struct IntegrandSpec {
  Integrand f;
  // Interior special points: removable singularities, zeros of the
  // integrand, or panel boundaries.  For semi-infinite integrals the last
  // point is the cut radius where the tail takes over.
  std::vector<double> points;
  TailSpec tail;
  Accumulation mode = Accumulation::Log;
  double abs_floor = 1e-15;  // error floor relative to int |f|, for values that cancel to ~0
  int max_subintervals = 20000;
};

// Integral over [lo, hi]; points outside (lo, hi) are ignored.
QuadratureResult integrate_finite(const IntegrandSpec& f, double lo, double hi, double tol_rel);

// Integral over [0, inf): panels up to f.points.back(), then the tail.
QuadratureResult integrate_semi_infinite(const IntegrandSpec& f, double tol_rel);

// Plain convenience wrapper.
double integrate(const std::function<double(double)>& f, double lo, double hi, double tol_rel = 1e-12,
                 const std::vector<double>& points = {});

// Mean over a period of |cos t|^{2a}: Gamma(a+1/2) / (sqrt(pi) Gamma(a+1)).
double cos_power_mean(double a);
// Mean of |cos t|^{2a} ln(cos^2 t): derivative of cos_power_mean in a.
double cos_power_log_mean(double a);

// Default relative tolerance for a given dimensionality.
double default_tolerance(int d);

// int |R(x)|^{2 alpha} x^{w} [ln R(x)^2]^{log_power} dx over the profile's
// support (log_power is 0 or 1).
QuadratureResult integrate_profile(const RadialProfile& r, double alpha, double w, int log_power, double tol_rel);

// int R_a(x) R_b(x) x^{w} dx; both profiles must live in the same space and,
// if semi-infinite, share their oscillating factor.
QuadratureResult integrate_overlap(const RadialProfile& a, const RadialProfile& b, double w, double tol_rel);

// integrate_profile with the tail handed over at `cut` (snapped down to an
// oscillator zero) instead of the profile's default tail start.
QuadratureResult integrate_profile_at_cut(const RadialProfile& r, double alpha, double w, int log_power, double cut,
                                          double tol_rel);

// Panel-only integral of |R|^{2 alpha} x^{w} up to the cut (no tail); the
// building block of threshold trend checks.
QuadratureResult integrate_profile_truncated(const RadialProfile& r, double alpha, double w, double cut, double tol_rel);

// <x^s> = int R^2 x^{d-1+s} dx.
double expectation_moment(const RadialProfile& r, int s);

}  // namespace hyperdot
