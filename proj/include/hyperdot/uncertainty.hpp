// Entropic uncertainty relations (Shannon, Renyi, Tsallis) for conjugated
// parameters 1/alpha + 1/beta = 2, plus hydrogen ground-state closed forms.
#pragma once

#include <string>

#include "hyperdot/systems.hpp"

namespace hyperdot {

enum class RelationKind { Shannon, Renyi, Tsallis };
enum class Verdict { Identity, Strict, Violated };

std::string to_string(RelationKind k);
std::string to_string(Verdict v);

// |slack| below this counts as an identity.
inline constexpr double kIdentityTolerance = 1e-6;

struct RelationCheck {
  RelationKind kind = RelationKind::Shannon;
  SystemSpec spec;
  QuantumNumbers qn;
  double alpha = 1.0, beta = 1.0;
  double left = 0, right = 0, slack = 0;  // slack = left - right
  Verdict verdict = Verdict::Strict;
};

Verdict classify(double slack);

// beta = alpha / (2 alpha - 1); +inf at alpha = 1/2.
double conjugate_beta(double alpha);

RelationCheck shannon_check(const SystemSpec& spec, const QuantumNumbers& qn = {}, double tol = 0);

// -(d/2) [ln(alpha/pi)/(1-alpha) + ln(beta/pi)/(1-beta)], with the analytic
// limits d ln(2 pi) at alpha = 1/2 and d (1 + ln pi) at alpha = 1.
double renyi_right_side(int d, double alpha);

// alpha in [1/2, alpha_R); std::out_of_range otherwise.
RelationCheck renyi_sum(const SystemSpec& spec, const QuantumNumbers& qn, double alpha, double tol = 0);

// Sobolev form of the Tsallis relation, alpha in [1/2, 1]:
// t(alpha) = (alpha/pi)^{d/(4 alpha)} (int rho^alpha)^{1/(2 alpha)}, left = t_rho(alpha), right = t_gamma(beta).
RelationCheck tsallis_sides(const SystemSpec& spec, const QuantumNumbers& qn, double alpha, double tol = 0);

// Hydrogen ground-state Renyi entropies in closed form (length r0).
double hydrogen_renyi_closed(int d, double alpha, Space space, double r0 = 1.0);
// Sum R_rho(alpha) + R_gamma(beta) from the closed forms.
double hydrogen_renyi_sum_closed(int d, double alpha);
// Location of the maximum of the closed-form sum.
double hydrogen_alpha_max(int d);
// alpha -> inf limit of the closed-form sum.
double hydrogen_sum_asymptote(int d);

// d (ln 2 pi - [1 + ln(2 alpha - 1)] (2 alpha - 1)): right side near alpha = 1/2.
double near_half_expansion(int d, double alpha);

}  // namespace hyperdot
