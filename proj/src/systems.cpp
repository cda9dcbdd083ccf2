#include "hyperdot/systems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hyperdot/quadrature.hpp"
#include "hyperdot/specfun.hpp"
#include "hyperdot/zeros.hpp"

namespace hyperdot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPatch = 1e-4;  // Taylor-patch radius relative to the singular point

// Derivatives K'' .. K'''' of a radial kernel at z from K and K' using the
// radial equation K'' + ((d-1)/z) K' + (1 - L/z^2) K = 0.
struct KernelJet {
  double k0, k1, k2, k3, k4;
};

KernelJet kernel_jet(int d, int l, double z, double k0, double k1) {
  const double L = static_cast<double>(l) * (l + d - 2);
  const double p = (d - 1) / z, p1 = -(d - 1) / (z * z), p2 = 2.0 * (d - 1) / (z * z * z);
  const double q = 1.0 - L / (z * z), q1 = 2.0 * L / (z * z * z), q2 = -6.0 * L / (z * z * z * z);
  KernelJet j{k0, k1, 0, 0, 0};
  j.k2 = -p * k1 - q * k0;
  j.k3 = -p1 * k1 - p * j.k2 - q1 * k0 - q * k1;
  j.k4 = -p2 * k1 - 2.0 * p1 * j.k2 - p * j.k3 - q2 * k0 - 2.0 * q1 * k1 - q * j.k2;
  return j;
}

// c * N(z) / (z0^2 - z^2) near z0 where N(z0) = 0 and N has derivatives n1..n3.
double quotient_patch(double c, double z0, double z, double n1, double n2, double n3) {
  const double h = z - z0;
  return -c * (n1 + 0.5 * n2 * h + n3 * h * h / 6.0) / (2.0 * z0 + h);
}

std::vector<double> merge_points(std::vector<double> a, const std::vector<double>& b, double xmax) {
  a.insert(a.end(), b.begin(), b.end());
  std::vector<double> out;
  for (double x : a)
    if (x > 0 && x < xmax) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double modulus(double nu, double z) {
  const auto h = detail::bessel_jy(nu, z);
  return std::hypot(h.j, h.y);
}

// Roots of a polynomial-like function by a fine sign scan plus bisection.
template <class F>
std::vector<double> scan_roots(F f, double lo, double hi, int samples) {
  std::vector<double> roots;
  double a = lo, fa = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double b = lo + (hi - lo) * i / samples;
    const double fb = f(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa > 0) != (fb > 0) && fb != 0.0) {
      double x0 = a, x1 = b, f0 = fa;
      for (int it = 0; it < 200 && x1 - x0 > 1e-15 * std::max(1.0, std::fabs(x1)); ++it) {
        const double m = 0.5 * (x0 + x1), fm = f(m);
        if ((fm > 0) == (f0 > 0)) {
          x0 = m;
          f0 = fm;
        } else {
          x1 = m;
        }
      }
      roots.push_back(0.5 * (x0 + x1));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

double oscillatory_cut(double nu) { return std::max(300.0, 25.0 * (nu + 2.0)); }

// ---------------------------------------------------------------- Dirichlet

class DirichletPosition final : public RadialProfile {
 public:
  DirichletPosition(int d, int l, int n) : RadialProfile(Space::Position, d, false), l_(l), n_(n) {
    nu_ = l + 0.5 * d - 1.0;
    j_ = bessel_zero(nu_, n);
    log_c_ = 0.5 * std::log(2.0) + (0.5 * d - 1.0) * std::log(j_) - log_abs_bessel_j(nu_ + 1.0, j_);
    c_ = std::exp(log_c_);
  }
  double value(double x) const override { return c_ * radial_kernel(dim(), l_, j_ * x); }
  double log_abs(double x) const override { return log_c_ + log_abs_radial_kernel(dim(), l_, j_ * x); }
  double derivative(double x) const override {
    if (x <= 0.0) return l_ == 1 ? c_ * j_ * std::exp(-(nu_) * std::log(2.0) - std::lgamma(nu_ + 1.0)) : 0.0;
    return c_ * j_ * radial_kernel_deriv(dim(), l_, j_ * x);
  }
  double log_abs_derivative(double x) const override {
    if (x <= 0.0) return std::log(std::fabs(derivative(0.0)));
    return log_c_ + std::log(j_) + log_abs_radial_kernel_deriv(dim(), l_, j_ * x);
  }
  std::vector<double> breakpoints(double xmax) const override {
    std::vector<double> pts;
    for (int k = 1; k < n_; ++k) pts.push_back(bessel_zero(nu_, k) / j_);
    return merge_points(pts, {}, std::min(xmax, 1.0));
  }

 private:
  int l_, n_;
  double nu_, j_, c_, log_c_;
};

class DirichletMomentum final : public RadialProfile {
 public:
  DirichletMomentum(int d, int l, int n) : RadialProfile(Space::Momentum, d, true), l_(l), n_(n) {
    nu_ = l + 0.5 * d - 1.0;
    j_ = bessel_zero(nu_, n);
    c_ = std::sqrt(2.0) * j_;
    // The jet is kept relative to |K'(j)|, which underflows at large d.
    const LogReal k1 = radial_kernel_deriv_lr(d, l, j_);
    log_k1_ = k1.logmag;
    jet_ = kernel_jet(d, l, j_, 0.0, k1.sign);
    singular_ = {j_};
  }
  double value(double z) const override {
    if (std::fabs(z - j_) < kPatch * j_) return std::exp(log_k1_) * patch(z);
    return c_ * radial_kernel(dim(), l_, z) / ((j_ - z) * (j_ + z));
  }
  double log_abs(double z) const override {
    if (std::fabs(z - j_) < kPatch * j_) return log_k1_ + std::log(std::fabs(patch(z)));
    return std::log(c_) + log_abs_radial_kernel(dim(), l_, z) - std::log(std::fabs((j_ - z) * (j_ + z)));
  }
  std::vector<double> breakpoints(double xmax) const override {
    return merge_points(ZeroTable::global().below(ZeroKind::Bessel, ZeroTable::bessel_key(nu_), xmax), {}, xmax);
  }
  double decay_power() const override { return dim() + 3.0; }
  bool oscillatory() const override { return true; }
  double tail_amplitude(double z) const override {
    return c_ * modulus(nu_, z) / ((j_ - z) * (j_ + z) * std::pow(z, 0.5 * dim() - 1.0));
  }
  double log_abs_tail_amplitude(double z) const override {
    return std::log(c_ * modulus(nu_, z) / std::fabs((j_ - z) * (j_ + z))) - (0.5 * dim() - 1.0) * std::log(z);
  }
  double tail_start() const override { return tail_start_below(oscillatory_cut(nu_)); }
  double tail_start_below(double x) const override {
    const auto zs = ZeroTable::global().below(ZeroKind::Bessel, ZeroTable::bessel_key(nu_), x * (1 + 1e-15));
    if (zs.empty()) throw std::invalid_argument("tail_start_below: no oscillator zero below the cut");
    return zs.back();
  }

 private:
  double patch(double z) const { return quotient_patch(c_, j_, z, jet_.k1, jet_.k2, jet_.k3); }

  int l_, n_;
  double nu_, j_, c_, log_k1_;
  KernelJet jet_;
};

// ------------------------------------------------------------------ Neumann

class NeumannGroundPosition final : public RadialProfile {
 public:
  explicit NeumannGroundPosition(int d) : RadialProfile(Space::Position, d, false), c_(std::sqrt(double(d))) {}
  double value(double) const override { return c_; }
  double derivative(double) const override { return 0.0; }
  std::vector<double> breakpoints(double) const override { return {}; }

 private:
  double c_;
};

// Shared pieces of the Neumann momentum family: the oscillating factor is
// F(z) = l J_nu(z) - z J_{nu+1}(z), whose zeros are the a_{l,m}.
class NeumannMomentumBase : public RadialProfile {
 public:
  NeumannMomentumBase(int d, int l) : RadialProfile(Space::Momentum, d, true), l_(l), nu_(l + 0.5 * d - 1.0) {}
  std::vector<double> breakpoints(double xmax) const override {
    return merge_points(ZeroTable::global().below(ZeroKind::Neumann, ZeroTable::neumann_key(dim(), l_), xmax),
                        singular_, xmax);
  }
  double decay_power() const override { return dim() + 1.0; }
  bool oscillatory() const override { return true; }
  double tail_start() const override { return tail_start_below(oscillatory_cut(nu_ + 1.0)); }
  double tail_start_below(double x) const override {
    const auto zs = ZeroTable::global().below(ZeroKind::Neumann, ZeroTable::neumann_key(dim(), l_), x * (1 + 1e-15));
    if (zs.empty()) throw std::invalid_argument("tail_start_below: no oscillator zero below the cut");
    return zs.back();
  }

 protected:
  // |l H_nu(z) - z H_{nu+1}(z)| with H = J + iY.
  double factor_modulus(double z) const {
    const auto a = detail::bessel_jy(nu_, z);
    const auto b = detail::bessel_jy(nu_ + 1.0, z);
    return std::hypot(l_ * a.j - z * b.j, l_ * a.y - z * b.y);
  }
  int l_;
  double nu_;
};

class NeumannGroundMomentum final : public NeumannMomentumBase {
 public:
  explicit NeumannGroundMomentum(int d) : NeumannMomentumBase(d, 0), c_(std::sqrt(double(d))) {}
  double value(double z) const override { return c_ * bessel_j_scaled(0.5 * dim(), z); }
  double log_abs(double z) const override {
    if (z == 0.0) return std::log(std::fabs(value(0.0)));
    return std::log(c_) + log_abs_radial_kernel(dim(), 1, z) - std::log(z);
  }
  // value = S(z) F(z) with F = -z J_{d/2} and S = -sqrt(d) / z^{d/2+1}
  double tail_amplitude(double z) const override { return -c_ * factor_modulus(z) / std::pow(z, 0.5 * dim() + 1.0); }
  double log_abs_tail_amplitude(double z) const override {
    return std::log(c_ * factor_modulus(z)) - (0.5 * dim() + 1.0) * std::log(z);
  }

 private:
  double c_;
};

class NeumannPosition final : public RadialProfile {
 public:
  NeumannPosition(int d, int l, int n) : RadialProfile(Space::Position, d, false), l_(l) {
    nu_ = l + 0.5 * d - 1.0;
    a_ = neumann_zero(d, l, n);
    const double L = static_cast<double>(l) * (l + d - 2);
    log_c_ = 0.5 * std::log(2.0) + std::log(a_) - 0.5 * std::log(a_ * a_ - L) - log_abs_radial_kernel(d, l, a_);
    c_ = std::exp(log_c_);
  }
  double value(double x) const override { return c_ * radial_kernel(dim(), l_, a_ * x); }
  double log_abs(double x) const override { return log_c_ + log_abs_radial_kernel(dim(), l_, a_ * x); }
  double derivative(double x) const override {
    if (x <= 0.0) return l_ == 1 ? c_ * a_ * std::exp(-nu_ * std::log(2.0) - std::lgamma(nu_ + 1.0)) : 0.0;
    return c_ * a_ * radial_kernel_deriv(dim(), l_, a_ * x);
  }
  double log_abs_derivative(double x) const override {
    if (x <= 0.0) return std::log(std::fabs(derivative(0.0)));
    return log_c_ + std::log(a_) + log_abs_radial_kernel_deriv(dim(), l_, a_ * x);
  }
  std::vector<double> breakpoints(double xmax) const override {
    std::vector<double> pts;
    for (double j : ZeroTable::global().below(ZeroKind::Bessel, ZeroTable::bessel_key(nu_), a_)) pts.push_back(j / a_);
    return merge_points(pts, {}, std::min(xmax, 1.0));
  }

 private:
  int l_;
  double nu_, a_, c_, log_c_;
};

class NeumannMomentum final : public NeumannMomentumBase {
 public:
  NeumannMomentum(int d, int l, int n) : NeumannMomentumBase(d, l) {
    a_ = neumann_zero(d, l, n);
    const double L = static_cast<double>(l) * (l + d - 2);
    c_ = std::sqrt(2.0) * a_ / std::sqrt(a_ * a_ - L);
    // G(z) = z K'(z) vanishes at a with K'(a) = 0; the jet is kept relative to |K(a)|.
    const LogReal k0 = radial_kernel_lr(d, l, a_);
    log_k0_ = k0.logmag;
    jet_ = kernel_jet(d, l, a_, k0.sign, 0.0);
    g1_ = a_ * jet_.k2;
    g2_ = 2.0 * jet_.k2 + a_ * jet_.k3;
    g3_ = 3.0 * jet_.k3 + a_ * jet_.k4;
    singular_ = {a_};
  }
  double value(double z) const override {
    if (std::fabs(z - a_) < kPatch * a_) return std::exp(log_k0_) * quotient_patch(c_, a_, z, g1_, g2_, g3_);
    if (z == 0.0) return 0.0;
    return c_ * z * radial_kernel_deriv(dim(), l_, z) / ((a_ - z) * (a_ + z));
  }
  double log_abs(double z) const override {
    if (std::fabs(z - a_) < kPatch * a_) return log_k0_ + std::log(std::fabs(quotient_patch(c_, a_, z, g1_, g2_, g3_)));
    if (z == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(c_ * z / std::fabs((a_ - z) * (a_ + z))) + log_abs_radial_kernel_deriv(dim(), l_, z);
  }
  double tail_amplitude(double z) const override {
    return c_ * std::pow(z, 1.0 - 0.5 * dim()) * factor_modulus(z) / ((a_ - z) * (a_ + z));
  }
  double log_abs_tail_amplitude(double z) const override {
    return std::log(c_ * factor_modulus(z) / std::fabs((a_ - z) * (a_ + z))) + (1.0 - 0.5 * dim()) * std::log(z);
  }

 private:
  double a_, c_, g1_, g2_, g3_, log_k0_;
  KernelJet jet_;
};

// ----------------------------------------------------------------- Hydrogen

class HydrogenPosition final : public RadialProfile {
 public:
  HydrogenPosition(int d, int n, int l) : RadialProfile(Space::Position, d, true), l_(l) {
    lambda_ = hydrogen_lambda(d, n);
    m_ = n - l - 1;
    eta_ = 2.0 * l + d - 2.0;
    log_n_ = -0.5 * d * std::log(lambda_) +
             0.5 * (std::lgamma(m_ + 1.0) - std::log(4.0 * lambda_) - std::lgamma(n + l + d - 2.0));
    const double tmax = 4.0 * m_ + 2.0 * eta_ + 10.0;
    roots_ = scan_roots([this](double t) { return laguerre(m_, eta_, t); }, 1e-9, tmax, 4000);
  }
  double value(double x) const override {
    const double t = x / lambda_;
    const double p = (l_ == 0) ? 1.0 : std::pow(t, l_);
    return std::exp(log_n_ - 0.5 * t) * p * laguerre(m_, eta_, t);
  }
  double log_abs(double x) const override {
    const double t = x / lambda_;
    const double lag = laguerre(m_, eta_, t);
    if (lag == 0.0 || (l_ > 0 && t == 0.0)) return -kInf;
    return log_n_ - 0.5 * t + (l_ > 0 ? l_ * std::log(t) : 0.0) + std::log(std::fabs(lag));
  }
  double derivative(double x) const override {
    const double t = x / lambda_;
    const double lag = laguerre(m_, eta_, t);
    const double dlag = m_ > 0 ? -laguerre(m_ - 1, eta_ + 1.0, t) : 0.0;
    double poly = -0.5 * lag + dlag;
    double s = (l_ == 0) ? poly : std::pow(t, l_) * poly;
    if (l_ > 0) s += l_ * std::pow(t, l_ - 1) * lag;
    return std::exp(log_n_ - 0.5 * t) * s / lambda_;
  }
  std::vector<double> breakpoints(double xmax) const override {
    std::vector<double> pts;
    for (double t : roots_) pts.push_back(t * lambda_);
    return merge_points(pts, {}, xmax);
  }
  double decay_power() const override { return kInf; }
  double tail_start() const override { return lambda_ * (4.0 * m_ + 2.0 * eta_ + 40.0); }

 private:
  int l_, m_;
  double lambda_, eta_, log_n_;
  std::vector<double> roots_;
};

class HydrogenMomentum final : public RadialProfile {
 public:
  HydrogenMomentum(int d, int n, int l) : RadialProfile(Space::Momentum, d, true), l_(l) {
    lambda_ = hydrogen_lambda(d, n);
    m_ = n - l - 1;
    g_ = l + 0.5 * (d - 1.0);
    log_n_ = 0.5 * d * std::log(2.0 * lambda_) + (2.0 * l + d) * std::log(2.0) +
             0.5 * (std::log(lambda_) + std::lgamma(m_ + 1.0) - std::log(std::numbers::pi) -
                    std::lgamma(n + l + d - 2.0)) +
             std::lgamma(g_);
    for (double t : scan_roots([this](double x) { return gegenbauer(m_, g_, x); }, -1.0 + 1e-12, 1.0 - 1e-12, 4000))
      roots_.push_back(std::sqrt((1.0 - t) / (1.0 + t)) / (2.0 * lambda_));
    std::sort(roots_.begin(), roots_.end());
  }
  double value(double k) const override {
    const double y = 2.0 * lambda_ * k, y2 = y * y;
    const double p = (l_ == 0) ? 1.0 : std::pow(y, l_);
    return std::exp(log_n_ - (l_ + 0.5 * (dim() + 1.0)) * std::log1p(y2)) * p *
           gegenbauer(m_, g_, (1.0 - y2) / (1.0 + y2));
  }
  double log_abs(double k) const override {
    const double y = 2.0 * lambda_ * k, y2 = y * y;
    const double c = gegenbauer(m_, g_, (1.0 - y2) / (1.0 + y2));
    if (c == 0.0 || (l_ > 0 && y == 0.0)) return -kInf;
    return log_n_ - (l_ + 0.5 * (dim() + 1.0)) * std::log1p(y2) + (l_ > 0 ? l_ * std::log(y) : 0.0) + std::log(std::fabs(c));
  }
  std::vector<double> breakpoints(double xmax) const override { return merge_points(roots_, {}, xmax); }
  double decay_power() const override { return 2.0 * l_ + 2.0 * dim() + 2.0; }
  double tail_start() const override {
    const double last = roots_.empty() ? 0.0 : roots_.back();
    return 2.0 * last + 20.0 / (2.0 * lambda_);
  }

 private:
  int l_, m_;
  double lambda_, g_, log_n_;
  std::vector<double> roots_;
};

}  // namespace

// ------------------------------------------------------------ RadialProfile

double RadialProfile::support_end() const { return semi_infinite_ ? kInf : 1.0; }

double RadialProfile::log_abs(double x) const {
  const double v = value(x);
  return v == 0.0 ? -kInf : std::log(std::fabs(v));
}

double RadialProfile::derivative(double) const {
  throw std::logic_error("derivative is provided for position-space profiles only");
}

double RadialProfile::log_abs_derivative(double x) const { return std::log(std::fabs(derivative(x))); }

double RadialProfile::decay_power() const {
  throw std::logic_error("decay_power: profile has compact support");
}

double RadialProfile::tail_amplitude(double) const {
  throw std::logic_error("tail_amplitude: profile is not oscillatory");
}

double RadialProfile::log_abs_tail_amplitude(double x) const { return std::log(std::fabs(tail_amplitude(x))); }

double RadialProfile::tail_start() const { throw std::logic_error("tail_start: profile has compact support"); }

double RadialProfile::tail_start_below(double) const {
  throw std::logic_error("tail_start_below: profile is not oscillatory");
}

// ---------------------------------------------------------------- factories

void SystemSpec::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("system length must be positive");
  if (kind == SystemKind::Hydrogen) {
    if (d < 3) throw std::invalid_argument("hydrogen requires d >= 3");
  } else if (d < 2) {
    throw std::invalid_argument("dots require d >= 2");
  }
}

void validate(const SystemSpec& spec, const QuantumNumbers& qn) {
  spec.validate();
  if (qn.n < 1) throw std::invalid_argument("radial index n must be >= 1");
  if (qn.l < 0) throw std::invalid_argument("orbital index l must be >= 0");
  if (spec.kind == SystemKind::Hydrogen && qn.l > qn.n - 1)
    throw std::invalid_argument("hydrogen requires l <= n - 1");
}

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::DirichletDot: return "dirichlet";
    case SystemKind::NeumannDot: return "neumann";
    case SystemKind::Hydrogen: return "hydrogen";
  }
  return "?";
}

std::string to_string(Space space) { return space == Space::Position ? "position" : "momentum"; }

double hydrogen_lambda(int d, int n) { return 0.5 * (n + 0.5 * (d - 3)); }

double dot_energy(const SystemSpec& spec, const QuantumNumbers& qn) {
  validate(spec, qn);
  if (spec.kind == SystemKind::DirichletDot) {
    const double j = bessel_zero(qn.l + 0.5 * spec.d - 1.0, qn.n);
    return j * j;
  }
  if (spec.kind == SystemKind::NeumannDot) {
    const double a = neumann_zero(spec.d, qn.l, qn.n);
    return a * a;
  }
  throw std::invalid_argument("dot_energy: not a dot system");
}

ProfilePtr dot_position_radial(const SystemSpec& spec, const QuantumNumbers& qn) {
  validate(spec, qn);
  if (spec.kind == SystemKind::DirichletDot) return std::make_shared<DirichletPosition>(spec.d, qn.l, qn.n);
  if (spec.kind == SystemKind::NeumannDot) {
    if (qn.l == 0 && qn.n == 1) return std::make_shared<NeumannGroundPosition>(spec.d);
    return std::make_shared<NeumannPosition>(spec.d, qn.l, qn.n);
  }
  throw std::invalid_argument("dot_position_radial: not a dot system");
}

ProfilePtr dot_momentum_radial(const SystemSpec& spec, const QuantumNumbers& qn) {
  validate(spec, qn);
  if (spec.kind == SystemKind::DirichletDot) return std::make_shared<DirichletMomentum>(spec.d, qn.l, qn.n);
  if (spec.kind == SystemKind::NeumannDot) {
    if (qn.l == 0 && qn.n == 1) return std::make_shared<NeumannGroundMomentum>(spec.d);
    return std::make_shared<NeumannMomentum>(spec.d, qn.l, qn.n);
  }
  throw std::invalid_argument("dot_momentum_radial: not a dot system");
}

ProfilePtr hydrogen_position_radial(const SystemSpec& spec, const QuantumNumbers& qn) {
  validate(spec, qn);
  if (spec.kind != SystemKind::Hydrogen) throw std::invalid_argument("hydrogen_position_radial: not hydrogen");
  return std::make_shared<HydrogenPosition>(spec.d, qn.n, qn.l);
}

ProfilePtr hydrogen_momentum_radial(const SystemSpec& spec, const QuantumNumbers& qn) {
  validate(spec, qn);
  if (spec.kind != SystemKind::Hydrogen) throw std::invalid_argument("hydrogen_momentum_radial: not hydrogen");
  return std::make_shared<HydrogenMomentum>(spec.d, qn.n, qn.l);
}

ProfilePtr radial_profile(const SystemSpec& spec, const QuantumNumbers& qn, Space space) {
  if (spec.kind == SystemKind::Hydrogen)
    return space == Space::Position ? hydrogen_position_radial(spec, qn) : hydrogen_momentum_radial(spec, qn);
  return space == Space::Position ? dot_position_radial(spec, qn) : dot_momentum_radial(spec, qn);
}

double log_angular_density_l0(int d) {
  if (d < 2) throw std::domain_error("angular_density_l0: d >= 2 required");
  return std::lgamma(0.5 * d) - std::log(2.0) - 0.5 * d * std::log(std::numbers::pi);
}

double angular_density_l0(int d) { return std::exp(log_angular_density_l0(d)); }

double fourier_consistency(const SystemSpec& spec, const QuantumNumbers& qn, const std::vector<double>& grid) {
  if (!spec.is_dot()) throw std::invalid_argument("fourier_consistency: dot systems only");
  const auto pos = dot_position_radial(spec, qn);
  const auto mom = dot_momentum_radial(spec, qn);
  const int d = spec.d, l = qn.l;
  double plus = 0.0, minus = 0.0;
  for (double k : grid) {
    IntegrandSpec f;
    f.f = [&](double r) {
      return LogReal::from_double(pos->value(r) * radial_kernel(d, l, k * r) * std::pow(r, d - 1));
    };
    f.points = pos->breakpoints(1.0);
    f.mode = Accumulation::Plain;
    f.abs_floor = 1e-14;
    const double t = integrate_finite(f, 0.0, 1.0, 1e-13).to_double();
    const double phi = mom->value(k);
    plus = std::max(plus, std::fabs(t - phi));
    minus = std::max(minus, std::fabs(t + phi));
  }
  return std::min(plus, minus);
}

void write_profile_csv(std::ostream& out, const RadialProfile& r, const std::vector<double>& xs) {
  out << "x,value\n";
  char buf[80];
  for (double x : xs) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", x, r.value(x));
    out << buf;
  }
}

}  // namespace hyperdot
