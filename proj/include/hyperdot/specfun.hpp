// Real-order Bessel functions of the first kind, their zeros, the
// hyperspherical radial kernel, classical orthogonal polynomials and
// Gamma-family helpers.
#pragma once

#include "hyperdot/logreal.hpp"

#include <stdexcept>
#include <string>

namespace hyperdot {

// Raised when an iterative special-function routine cannot meet its
// residual tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// J_nu(z) for nu >= 0, z >= 0.
double bessel_j(double nu, double z);

// dJ_nu/dz.  Defined at z = 0 only for nu >= 1 (and nu = 0, where it is 0).
double bessel_j_deriv(double nu, double z);

// ln|J_nu(z)|; stays finite where J_nu underflows (large nu, small z).
double log_abs_bessel_j(double nu, double z);

// J_nu(z) / z^nu, smooth down to z = 0.
double bessel_j_scaled(double nu, double z);

// n-th positive zero j_{nu,n} of J_nu.
double bessel_zero(double nu, int n);

// n-th zero a_{l,n} of the derivative of the d-dimensional radial kernel,
// i.e. of l J_nu(z) - z J_{nu+1}(z) with nu = l + d/2 - 1.  a_{0,1} = 0.
double neumann_zero(int d, int l, int n);

// Radial kernel J_nu(z) / z^{d/2-1}, nu = l + d/2 - 1 (no constant prefactor).
double radial_kernel(int d, int l, double z);
double log_abs_radial_kernel(int d, int l, double z);

// d/dz of radial_kernel via K_l' = -K_{l+1} + (l/z) K_l.
double radial_kernel_deriv(int d, int l, double z);
// ln|radial_kernel_deriv|, safe where the kernel under/overflows.
double log_abs_radial_kernel_deriv(int d, int l, double z);
// Signed extended-range kernel and kernel derivative.
LogReal radial_kernel_lr(int d, int l, double z);
LogReal radial_kernel_deriv_lr(int d, int l, double z);

double gegenbauer(int n, double lambda, double x);
double laguerre(int n, double eta, double x);

double ln_gamma(double x);
double digamma(double x);

namespace detail {

struct BesselPair {
  double j;
  double y;
};

// J_nu and Y_nu for z >= 2 (continued fractions or Hankel asymptotics).
// Only used internally: the modulus J^2 + Y^2 gives the smooth envelope of
// oscillatory integrands.
BesselPair bessel_jy(double nu, double z);

}  // namespace detail

}  // namespace hyperdot
