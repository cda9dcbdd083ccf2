// Normalized radial wavefunctions of the d-dimensional Dirichlet and Neumann
// quantum dots and of the hydrogen-like ion, in position and momentum space.
//
// Everything is dimensionless: x = r/a and z = k a for dots, x = r/r0 and
// z = k r0 for hydrogen.  The physical length only enters at reporting time.
#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace hyperdot {

enum class SystemKind { DirichletDot, NeumannDot, Hydrogen };
enum class Space { Position, Momentum };

struct SystemSpec {
  SystemKind kind = SystemKind::DirichletDot;
  int d = 3;
  double length = 1.0;  // dot radius a, or r0 = a0/Z for hydrogen

  void validate() const;
  bool is_dot() const { return kind != SystemKind::Hydrogen; }
};

struct QuantumNumbers {
  int n = 1;
  int l = 0;  // magnetic index is always 0
};

void validate(const SystemSpec& spec, const QuantumNumbers& qn);

std::string to_string(SystemKind kind);
std::string to_string(Space space);

class RadialProfile {
 public:
  RadialProfile(Space space, int d, bool semi_infinite) : space_(space), d_(d), semi_infinite_(semi_infinite) {}
  virtual ~RadialProfile() = default;

  Space space() const { return space_; }
  int dim() const { return d_; }
  bool semi_infinite() const { return semi_infinite_; }
  double support_end() const;  // 1 or +inf

  virtual double value(double x) const = 0;
  virtual double log_abs(double x) const;
  // dR/dx; provided for position-space profiles.
  virtual double derivative(double x) const;
  // ln|dR/dx|, safe where the derivative under/overflows.
  virtual double log_abs_derivative(double x) const;

  // Sorted zeros, removable singularities and oscillator zeros in (0, xmax).
  virtual std::vector<double> breakpoints(double xmax) const = 0;
  const std::vector<double>& singular_points() const { return singular_; }

  // --- semi-infinite profiles ---
  // value^2 decays like x^{-decay_power()} (+inf for exponential decay).
  virtual double decay_power() const;
  // Oscillatory profiles are value(x) = amplitude(x) * cos(theta(x)) with a
  // smooth amplitude and a phase shared by all profiles of the same family.
  virtual bool oscillatory() const { return false; }
  virtual double tail_amplitude(double x) const;
  // ln|tail_amplitude|, safe where the amplitude under/overflows.
  virtual double log_abs_tail_amplitude(double x) const;
  // Where panel integration hands over to the tail; for oscillatory profiles
  // a zero of the shared oscillating factor.
  virtual double tail_start() const;
  // Largest oscillator zero not above x (oscillatory profiles only).
  virtual double tail_start_below(double x) const;

 protected:
  std::vector<double> singular_;

 private:
  Space space_;
  int d_;
  bool semi_infinite_;
};

using ProfilePtr = std::shared_ptr<const RadialProfile>;

// Dimensionless energy 2 m* a^2 E / hbar^2 of a dot state.
double dot_energy(const SystemSpec& spec, const QuantumNumbers& qn);
// Hydrogen energy in units of hbar^2/(2 m r0^2): -1/(4 lambda^2) with lambda = (n + (d-3)/2)/2.
double hydrogen_lambda(int d, int n);

ProfilePtr dot_position_radial(const SystemSpec& spec, const QuantumNumbers& qn);
ProfilePtr dot_momentum_radial(const SystemSpec& spec, const QuantumNumbers& qn);
ProfilePtr hydrogen_position_radial(const SystemSpec& spec, const QuantumNumbers& qn);
ProfilePtr hydrogen_momentum_radial(const SystemSpec& spec, const QuantumNumbers& qn);
ProfilePtr radial_profile(const SystemSpec& spec, const QuantumNumbers& qn, Space space);

// |Y_0|^2 = Gamma(d/2) / (2 pi^{d/2}) and its logarithm.
double angular_density_l0(int d);
double log_angular_density_l0(int d);

// Max |transform(position) - momentum| over the grid, where the transform is
// int_0^1 R(r) K(k r) r^{d-1} dr.  A global sign is immaterial.
double fourier_consistency(const SystemSpec& spec, const QuantumNumbers& qn, const std::vector<double>& grid);

// CSV dump "x,value" with 12 significant digits.
void write_profile_csv(std::ostream& out, const RadialProfile& r, const std::vector<double>& xs);

}  // namespace hyperdot
