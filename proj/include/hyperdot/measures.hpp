// Shannon, Fisher, Onicescu, Renyi and Tsallis measures of dot and hydrogen
// states in position and momentum space.
//
// All functions return values for the physical length in SystemSpec::length;
// with length = 1 they are the dimensionless quantities.  Angular parts are
// folded in analytically for l = 0; for l > 0 the entropic measures are
// radial-only (flagged where a record is returned).
#pragma once

#include <limits>
#include <optional>
#include <string>

#include "hyperdot/logreal.hpp"
#include "hyperdot/systems.hpp"

namespace hyperdot {

enum class RenyiStatus { Finite, Diverged, BelowThreshold };

std::string to_string(RenyiStatus s);

struct RenyiPoint {
  double alpha = 1.0;
  Space space = Space::Position;
  double value = 0.0;  // NaN unless status == Finite
  RenyiStatus status = RenyiStatus::Finite;
  bool radial_only = false;
};

struct TsallisPoint {
  double alpha = 1.0;
  Space space = Space::Position;
  double value = 0.0;
  RenyiStatus status = RenyiStatus::Finite;
  bool radial_only = false;
};

// alpha_th: momentum Renyi/Tsallis integrals exist only for alpha > alpha_th.
// alpha_r: upper end of the Renyi uncertainty relation's range (may be +inf).
struct Thresholds {
  double alpha_th;
  double alpha_r;
};

Thresholds thresholds(const SystemSpec& spec, int l = 0);

// tol <= 0 selects default_tolerance(d).
double shannon(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double tol = 0);

// Quadrature route: position 4[int R'^2 x^{d-1} + l(l+d-2)<x^-2>], momentum 4<x^2>.
double fisher(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double tol = 0);

// Closed forms where known (l = 0 positions of both dots, 3D and 4D
// Dirichlet momenta, 4D Neumann n >= 2 momentum, Neumann ground momentum).
std::optional<double> fisher_closed_form(const SystemSpec& spec, const QuantumNumbers& qn, Space space);

enum class FisherCase {
  Dirichlet3DMomentum,        // (2/3)(2 n^2 pi^2 - 3)/(n^2 pi^2), param n
  Dirichlet3DMomentumLarge,   // 4/3 - 2/(n^2 pi^2), param n
  NeumannGroundMomentum,      // 4d/(d+2), param d
  NeumannGroundMomentumLarge  // 4(1 - 2/d), param d (inf gives the limit 4)
};

double fisher_closed_asymptotics(FisherCase c, double param);

LogReal onicescu(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double tol = 0);

// ln int rho^alpha over the full space (radial-only for l > 0).  Throws
// DivergenceError when the integral does not exist.
double log_power_integral(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double alpha,
                          double tol = 0);

// alpha may be 0 or +inf (limits); alpha = 1 is Shannon.
RenyiPoint renyi(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double alpha, double tol = 0);

TsallisPoint tsallis(const SystemSpec& spec, const QuantumNumbers& qn, Space space, double alpha, double tol = 0);

// ln max of the full density (|Y_0|^2 R^2 for l = 0, R^2 otherwise).
double log_density_max(const SystemSpec& spec, const QuantumNumbers& qn, Space space);

struct MeasureReport {
  SystemSpec spec;
  QuantumNumbers qn;
  double s_rho = 0, s_gamma = 0;
  double i_rho = 0, i_gamma = 0;
  LogReal o_rho, o_gamma;
  bool radial_only = false;

  double shannon_sum() const { return s_rho + s_gamma; }
  double shannon_bound() const;  // d (1 + ln pi)
  double shannon_slack() const { return shannon_sum() - shannon_bound(); }
  double fisher_product() const { return i_rho * i_gamma; }
  LogReal onicescu_product() const { return o_rho * o_gamma; }
};

MeasureReport measure_report(const SystemSpec& spec, const QuantumNumbers& qn = {}, double tol = 0);

struct Complexity {
  LogReal cso_rho, cso_gamma;  // e^S O
  double fisher_shannon_rho = 0, fisher_shannon_gamma = 0;  // e^{2S/d} I / (2 pi e)
  std::optional<LogReal> renyi_diseq_rho, renyi_diseq_gamma;  // e^{R(alpha)} O
};

Complexity complexity(const MeasureReport& report, std::optional<double> alpha = std::nullopt);

}  // namespace hyperdot
