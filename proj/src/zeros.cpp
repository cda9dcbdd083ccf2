#include "hyperdot/zeros.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "hyperdot/specfun.hpp"

namespace hyperdot {

namespace {

template <class F, class DF>
double safeguarded_newton(F f, DF df, double lo, double hi, double guess) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw ConvergenceError("zero search: bracket lost its sign change");
  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (flo > 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    double xn = x - fx / df(x);
    if (!std::isfinite(xn) || xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
    if (std::fabs(xn - x) <= 2e-16 * std::fabs(xn) || hi - lo <= 4e-16 * hi) return xn;
    x = xn;
  }
  throw ConvergenceError("zero search: Newton iteration did not converge");
}

// McMahon's large-index expansion.
double mcmahon(double nu, int k) {
  const double mu = 4.0 * nu * nu;
  const double b = (k + 0.5 * nu - 0.25) * std::numbers::pi;
  const double e = 8.0 * b;
  return b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

double next_bessel_zero(double nu, int k, double prev) {
  auto f = [nu](double z) { return bessel_j(nu, z); };
  auto df = [nu](double z) { return bessel_j_deriv(nu, z); };
  const double want = (k % 2 == 1) ? 1.0 : -1.0;  // sign of J just below j_k
  double a;
  double guess = mcmahon(nu, k);
  if (k == 1) {
    a = std::max(nu, 0.5);  // J_nu has no zeros in (0, nu]
    if (nu > 20.0) {
      const double c = std::cbrt(nu);
      guess = nu + 1.8557571 * c + 1.033150 / c;
      const double start = guess - 0.5;
      if (start > a && f(start) > 0.0) a = start;
    }
  } else {
    a = prev + 2.5;  // consecutive zeros are more than 3 apart for nu >= 0
  }
  const double step = (k == 1) ? 0.25 : 0.5;
  double b = a;
  double fa = f(a);
  if (fa * want <= 0.0) throw ConvergenceError("bessel_zero: scan start past the target zero");
  for (int it = 0; it < 100000; ++it) {
    b = a + step;
    const double fb = f(b);
    if (fb * want <= 0.0) break;
    a = b;
    fa = fb;
  }
  const double z = safeguarded_newton(f, df, a, b, guess);
  const double jp = bessel_j_deriv(nu, z);
  if (std::fabs(f(z)) > 1e-12 * std::max(1.0, std::fabs(jp) * z))
    throw ConvergenceError("bessel_zero: residual check failed");
  return z;
}

double neumann_residual_fn(int d, int l, double z) {
  const double nu = l + 0.5 * d - 1.0;
  return l * bessel_j(nu, z) - z * bessel_j(nu + 1.0, z);
}

double next_neumann_zero(int d, int l, int k) {
  const double nu = l + 0.5 * d - 1.0;
  if (l == 0) return k == 1 ? 0.0 : bessel_zero(0.5 * d, k - 1);
  // One derivative zero between consecutive zeros of J_nu; the first lies
  // above sqrt(l(l+d-2)), where the kernel's curvature changes sign.
  const double lo = (k == 1) ? std::sqrt(static_cast<double>(l) * (l + d - 2)) : bessel_zero(nu, k - 1);
  const double hi = bessel_zero(nu, k);
  auto g = [=](double z) { return neumann_residual_fn(d, l, z); };
  auto dg = [=](double z) { return (l * nu / z - z) * bessel_j(nu, z) + (nu - l) * bessel_j(nu + 1.0, z); };
  const double z = safeguarded_newton(g, dg, lo, hi, 0.5 * (lo + hi));
  const double scale = std::max(1.0, std::fabs(dg(z)) * z);
  if (std::fabs(g(z)) > 1e-12 * scale) throw ConvergenceError("neumann_zero: residual check failed");
  return z;
}

bool residual_ok(ZeroKind kind, const std::string& key, int n, double z) {
  if (kind == ZeroKind::Bessel) {
    const double nu = std::stod(key);
    const double jp = bessel_j_deriv(nu, z);
    return std::fabs(bessel_j(nu, z)) <= 1e-11 * std::max(1.0, std::fabs(jp) * z);
  }
  int d = 0, l = 0;
  if (std::sscanf(key.c_str(), "%d:%d", &d, &l) != 2 || d < 2 || l < 0) return false;
  if (l == 0 && n == 1) return z == 0.0;
  const double nu = l + 0.5 * d - 1.0;
  const double dg = (l * nu / z - z) * bessel_j(nu, z) + (nu - l) * bessel_j(nu + 1.0, z);
  return std::fabs(neumann_residual_fn(d, l, z)) <= 1e-11 * std::max(1.0, std::fabs(dg) * z);
}

const char* kind_name(ZeroKind k) { return k == ZeroKind::Bessel ? "bessel" : "neumann"; }

}  // namespace

ZeroTable& ZeroTable::global() {
  static ZeroTable table;
  return table;
}

std::string ZeroTable::bessel_key(double nu) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", nu);
  return buf;
}

std::string ZeroTable::neumann_key(int d, int l) { return std::to_string(d) + ":" + std::to_string(l); }

void ZeroTable::extend(ZeroKind kind, const std::string& key, std::vector<double>& run, int n) const {
  if (kind == ZeroKind::Bessel) {
    const double nu = std::stod(key);
    while (static_cast<int>(run.size()) < n) {
      const int k = static_cast<int>(run.size()) + 1;
      run.push_back(next_bessel_zero(nu, k, run.empty() ? 0.0 : run.back()));
    }
    return;
  }
  int d = 0, l = 0;
  std::sscanf(key.c_str(), "%d:%d", &d, &l);
  while (static_cast<int>(run.size()) < n) {
    const int k = static_cast<int>(run.size()) + 1;
    run.push_back(next_neumann_zero(d, l, k));
  }
}

std::vector<double> ZeroTable::first(ZeroKind kind, const std::string& key, int n) {
  const Key k{static_cast<int>(kind), key};
  std::vector<double> run;
  {
    std::shared_lock lock(mu_);
    auto it = runs_.find(k);
    if (it != runs_.end()) {
      if (static_cast<int>(it->second.size()) >= n) return {it->second.begin(), it->second.begin() + n};
      run = it->second;
    }
  }
  extend(kind, key, run, n);
  {
    std::unique_lock lock(mu_);
    auto& stored = runs_[k];
    if (stored.size() < run.size()) stored = run;
  }
  run.resize(n);
  return run;
}

std::vector<double> ZeroTable::below(ZeroKind kind, const std::string& key, double zmax) {
  int n = 16;
  std::vector<double> run = first(kind, key, n);
  while (run.back() < zmax) {
    n *= 2;
    run = first(kind, key, n);
  }
  std::vector<double> out;
  for (double z : run)
    if (z < zmax) out.push_back(z);
  return out;
}

bool ZeroTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != kHeader) return false;
  std::map<Key, std::vector<double>> loaded;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string kind, key, idx, val;
    if (!std::getline(ss, kind, ',') || !std::getline(ss, key, ',') || !std::getline(ss, idx, ',') ||
        !std::getline(ss, val))
      return false;
    ZeroKind zk;
    if (kind == "bessel") zk = ZeroKind::Bessel;
    else if (kind == "neumann") zk = ZeroKind::Neumann;
    else return false;
    int n;
    double z;
    try {
      std::size_t pos = 0;
      n = std::stoi(idx, &pos);
      if (pos != idx.size()) return false;
      z = std::stod(val, &pos);
      if (pos != val.size()) return false;
      if (zk == ZeroKind::Bessel) (void)std::stod(key);
    } catch (const std::exception&) {
      return false;
    }
    auto& run = loaded[{static_cast<int>(zk), key}];
    if (n != static_cast<int>(run.size()) + 1 || !std::isfinite(z) || z < 0) return false;
    if (!run.empty() && z <= run.back()) return false;
    try {
      if (!residual_ok(zk, key, n, z)) return false;
    } catch (const std::exception&) {
      return false;
    }
    run.push_back(z);
  }
  std::unique_lock lock(mu_);
  for (auto& [k, run] : loaded) {
    auto& stored = runs_[k];
    if (stored.size() < run.size()) stored = std::move(run);
  }
  return true;
}

void ZeroTable::save(const std::string& path) const {
  std::ostringstream out;
  out << kHeader << "\n";
  {
    std::shared_lock lock(mu_);
    char buf[64];
    for (const auto& [k, run] : runs_) {
      const char* kind = kind_name(static_cast<ZeroKind>(k.first));
      for (std::size_t i = 0; i < run.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", run[i]);
        out << kind << ',' << k.second << ',' << (i + 1) << ',' << buf << "\n";
      }
    }
  }
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write zero cache: " + tmp);
    f << out.str();
  }
  std::filesystem::rename(tmp, target);
}

std::size_t ZeroTable::size() const {
  std::shared_lock lock(mu_);
  std::size_t s = 0;
  for (const auto& [k, run] : runs_) s += run.size();
  return s;
}

void ZeroTable::clear() {
  std::unique_lock lock(mu_);
  runs_.clear();
}

}  // namespace hyperdot
