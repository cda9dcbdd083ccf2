#include "hyperdot/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hyperdot/logreal.hpp"
#include "hyperdot/zeros.hpp"

namespace hyperdot {

namespace {

constexpr double kPi = std::numbers::pi;

void check_order(double nu, double z) {
  if (!std::isfinite(nu) || !std::isfinite(z)) throw std::domain_error("bessel: non-finite argument");
  if (nu < 0) throw std::domain_error("bessel: negative order");
  if (z < 0) throw std::domain_error("bessel: negative argument");
}

// Below this the power series has no significant cancellation.
bool series_region(double nu, double z) { return z <= 2.0 || z * z <= nu + 1.0; }

// Hankel's expansion reaches full double precision once z >= nu^2 (and z is
// not tiny): the terms shrink at least like (mu/8z)^k / k!.
bool hankel_region(double nu, double z) { return z >= std::max(25.0, nu * nu); }

// sum_k (-z^2/4)^k / (k! (nu+1)_k)
double series_sum(double nu, double z) {
  const double q = -0.25 * z * z;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

// sum_k (-z^2/4)^k (nu + 2k) / (k! (nu+1)_k), the derivative companion.
double series_deriv_sum(double nu, double z) {
  const double q = -0.25 * z * z;
  double term = 1.0, sum = nu;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (k * (nu + k));
    const double t = term * (nu + 2 * k);
    sum += t;
    if (std::fabs(t) < 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

struct Steed {
  double j, jp, y;
};

// Continued-fraction evaluation (CF1 for J'/J, Steed's CF2 for p + iq,
// Wronskian normalisation); valid for z >= 2.  Evaluated in extended
// precision.
Steed steed(double nu_d, double x_d) {
  using R = long double;  // the extra bits absorb CF rounding at large order
  const R nu = nu_d, x = x_d;
  constexpr R kEps = 1e-19L;
  constexpr R kTiny = 1e-300L;
  const int nl = std::max(0, static_cast<int>(nu - x + 1.5L));
  const R xmu = nu - nl;
  const R xmu2 = xmu * xmu;
  const R xi = 1.0 / x;
  const R xi2 = 2.0 * xi;
  const R w = xi2 / std::numbers::pi_v<R>;
  const int maxit = 100000 + 8 * static_cast<int>(x_d);

  int isign = 1;
  R h = std::max(nu * xi, kTiny);
  R b = xi2 * nu, d = 0.0, c = h;
  int i = 0;
  for (; i < maxit; ++i) {
    b += xi2;
    d = b - d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const R del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  if (i >= maxit) throw ConvergenceError("bessel: CF1 did not converge");

  R rjl = isign * kTiny;
  R rjpl = h * rjl;
  R rjl1 = rjl, rjp1 = rjpl;
  R fact = nu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    const R t = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * t - rjl;
    rjl = t;
    if (std::fabs(rjl) > 1e250) {
      rjl *= 1e-250;
      rjpl *= 1e-250;
      rjl1 *= 1e-250;
      rjp1 *= 1e-250;
    }
  }
  if (rjl == 0.0) rjl = kEps;
  const R f = rjpl / rjl;

  R a = 0.25 - xmu2;
  R p = -0.5 * xi, q = 1.0;
  const R br = 2.0 * x;
  R bi = 2.0;
  fact = a * xi / (p * p + q * q);
  R cr = br + q * fact, ci = bi + p * fact;
  R den = br * br + bi * bi;
  R dr = br / den, di = -bi / den;
  R dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
  R temp = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = temp;
  for (i = 1; i < maxit; ++i) {
    a += 2 * i;
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::fabs(dr) + std::fabs(di) < kTiny) dr = kTiny;
    fact = a / (cr * cr + ci * ci);
    cr = br + cr * fact;
    ci = bi - ci * fact;
    if (std::fabs(cr) + std::fabs(ci) < kTiny) cr = kTiny;
    den = dr * dr + di * di;
    dr /= den;
    di /= -den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    if (std::fabs(dlr - 1.0) + std::fabs(dli) <= kEps) break;
  }
  if (i >= maxit) throw ConvergenceError("bessel: CF2 did not converge");

  const R gam = (p - f) / q;
  R rjmu = std::sqrt(w / ((p - f) * gam + q));
  rjmu = std::copysign(rjmu, rjl);
  R rymu = rjmu * gam;
  const R rymup = rymu * (p + q / gam);
  R ry1 = xmu * xi * rymu - rymup;
  fact = rjmu / rjl;
  Steed out{static_cast<double>(rjl1 * fact), static_cast<double>(rjp1 * fact), 0.0};
  for (i = 1; i <= nl; ++i) {
    const R t = (xmu + i) * xi2 * ry1 - rymu;
    rymu = ry1;
    ry1 = t;
  }
  out.y = static_cast<double>(rymu);
  return out;
}

detail::BesselPair hankel(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0, term = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (8.0 * z * k);
    if (std::fabs(next) > std::fabs(term)) break;  // asymptotic series turned
    term = next;
    const int m = k / 2;
    const double s = (m % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 1) q += s * term;
    else p += s * term;
    if (term == 0.0 || std::fabs(term) < 1e-17) break;
  }
  const double phi = (0.5 * nu + 0.25) * kPi;
  const double cz = std::cos(z), sz = std::sin(z);
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double cchi = cz * cphi + sz * sphi;  // cos(z - phi)
  const double schi = sz * cphi - cz * sphi;  // sin(z - phi)
  const double amp = std::sqrt(2.0 / (kPi * z));
  return {amp * (p * cchi - q * schi), amp * (p * schi + q * cchi)};
}

double series_prefactor_log(double nu) { return -nu * std::log(2.0) - std::lgamma(nu + 1.0); }

}  // namespace

namespace detail {

BesselPair bessel_jy(double nu, double z) {
  check_order(nu, z);
  if (z < 2.0) throw std::domain_error("bessel_jy: requires z >= 2");
  if (hankel_region(nu, z)) return hankel(nu, z);
  const Steed s = steed(nu, z);
  return {s.j, s.y};
}

}  // namespace detail

double bessel_j(double nu, double z) {
  check_order(nu, z);
  if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (series_region(nu, z)) return std::exp(nu * std::log(z) + series_prefactor_log(nu)) * series_sum(nu, z);
  if (hankel_region(nu, z)) return hankel(nu, z).j;
  return steed(nu, z).j;
}

double log_abs_bessel_j(double nu, double z) {
  check_order(nu, z);
  if (z == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (series_region(nu, z)) return nu * std::log(z) + series_prefactor_log(nu) + std::log(std::fabs(series_sum(nu, z)));
  return std::log(std::fabs(bessel_j(nu, z)));
}

double bessel_j_deriv(double nu, double z) {
  check_order(nu, z);
  if (z == 0.0) {
    if (nu < 1.0) throw std::domain_error("bessel_j_deriv: z = 0 requires nu >= 1");
    return nu == 1.0 ? 0.5 : 0.0;
  }
  if (series_region(nu, z)) {
    // (z/2)^(nu-1) / (2 Gamma(nu+1)) * sum
    return 0.5 * std::exp((nu - 1.0) * std::log(0.5 * z) - std::lgamma(nu + 1.0)) * series_deriv_sum(nu, z);
  }
  if (hankel_region(nu, z)) return (nu / z) * hankel(nu, z).j - hankel(nu + 1.0, z).j;
  return steed(nu, z).jp;
}

double bessel_j_scaled(double nu, double z) {
  check_order(nu, z);
  if (series_region(nu, z)) return std::exp(series_prefactor_log(nu)) * series_sum(nu, z);
  const double j = bessel_j(nu, z);
  if (j == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::fabs(j)) - nu * std::log(z)), j);
}

double radial_kernel(int d, int l, double z) {
  if (d < 2 || l < 0) throw std::domain_error("radial_kernel: need d >= 2, l >= 0");
  const double nu = l + 0.5 * d - 1.0;
  const double s = bessel_j_scaled(nu, z);
  return l == 0 ? s : std::pow(z, l) * s;
}

double log_abs_radial_kernel(int d, int l, double z) {
  if (d < 2 || l < 0) throw std::domain_error("radial_kernel: need d >= 2, l >= 0");
  check_order(0.0, z);
  const double nu = l + 0.5 * d - 1.0;
  if (z == 0.0) return l == 0 ? series_prefactor_log(nu) : -std::numeric_limits<double>::infinity();
  if (series_region(nu, z))
    return l * std::log(z) + series_prefactor_log(nu) + std::log(std::fabs(series_sum(nu, z)));
  return log_abs_bessel_j(nu, z) - (0.5 * d - 1.0) * std::log(z);
}

double radial_kernel_deriv(int d, int l, double z) {
  if (!(z > 0.0)) throw std::domain_error("radial_kernel_deriv: requires z > 0");
  const double next = radial_kernel(d, l + 1, z);
  if (l == 0) return -next;
  return -next + (l / z) * radial_kernel(d, l, z);
}

namespace {

// Sign of J_order(z); in the series region the power prefactor is positive.
int bessel_sign(double order, double z) {
  const double v = series_region(order, z) ? series_sum(order, z) : bessel_j(order, z);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

}  // namespace

LogReal radial_kernel_lr(int d, int l, double z) {
  const double nu = l + 0.5 * d - 1.0;
  if (z == 0.0) return l == 0 ? LogReal::from_log(series_prefactor_log(nu)) : LogReal::zero();
  return LogReal(bessel_sign(nu, z), log_abs_radial_kernel(d, l, z));
}

LogReal radial_kernel_deriv_lr(int d, int l, double z) {
  if (!(z > 0.0)) throw std::domain_error("radial_kernel_deriv: requires z > 0");
  const LogReal next = radial_kernel_lr(d, l + 1, z);
  if (l == 0) return -next;
  return radial_kernel_lr(d, l, z) * LogReal::from_double(l / z) - next;
}

double log_abs_radial_kernel_deriv(int d, int l, double z) { return radial_kernel_deriv_lr(d, l, z).logmag; }

double gegenbauer(int n, double lambda, double x) {
  if (n < 0) throw std::domain_error("gegenbauer: negative degree");
  if (n == 0) return 1.0;
  double c0 = 1.0, c1 = 2.0 * lambda * x;
  for (int k = 1; k < n; ++k) {
    const double c2 = (2.0 * x * (k + lambda) * c1 - (k + 2.0 * lambda - 1.0) * c0) / (k + 1.0);
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

double laguerre(int n, double eta, double x) {
  if (n < 0) throw std::domain_error("laguerre: negative degree");
  if (n == 0) return 1.0;
  double l0 = 1.0, l1 = 1.0 + eta - x;
  for (int k = 1; k < n; ++k) {
    const double l2 = ((2.0 * k + 1.0 + eta - x) * l1 - (k + eta) * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("ln_gamma: requires x > 0");
  return std::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // Bernoulli tail: sum B_2k / (2k x^2k)
  const double tail =
      r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12))))));
  return acc + std::log(x) - 0.5 / x - tail;
}

double bessel_zero(double nu, int n) {
  if (!std::isfinite(nu) || nu < 0) throw std::domain_error("bessel_zero: requires nu >= 0");
  if (n < 1) throw std::domain_error("bessel_zero: requires n >= 1");
  return ZeroTable::global().first(ZeroKind::Bessel, ZeroTable::bessel_key(nu), n)[n - 1];
}

double neumann_zero(int d, int l, int n) {
  if (d < 2 || l < 0) throw std::domain_error("neumann_zero: requires d >= 2, l >= 0");
  if (n < 1) throw std::domain_error("neumann_zero: requires n >= 1");
  return ZeroTable::global().first(ZeroKind::Neumann, ZeroTable::neumann_key(d, l), n)[n - 1];
}

}  // namespace hyperdot
