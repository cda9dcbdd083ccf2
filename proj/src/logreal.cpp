#include "hyperdot/logreal.hpp"

#include <cstdio>
#include <stdexcept>

namespace hyperdot {

LogReal LogReal::from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("LogReal: non-finite input");
  if (x == 0.0) return LogReal();
  return LogReal(x > 0 ? 1 : -1, std::log(std::fabs(x)));
}

double LogReal::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(logmag);
}

LogReal LogReal::pow(double p) const {
  if (sign < 0) throw std::domain_error("LogReal::pow of negative value");
  if (sign == 0) {
    if (p > 0) return LogReal();
    if (p == 0) return LogReal(1, 0.0);
    throw std::domain_error("LogReal::pow: zero to negative power");
  }
  return LogReal(1, p * logmag);
}

LogReal operator*(const LogReal& a, const LogReal& b) {
  if (a.sign == 0 || b.sign == 0) return LogReal();
  return LogReal(a.sign * b.sign, a.logmag + b.logmag);
}

LogReal operator/(const LogReal& a, const LogReal& b) {
  if (b.sign == 0) throw std::domain_error("LogReal: division by zero");
  if (a.sign == 0) return LogReal();
  return LogReal(a.sign * b.sign, a.logmag - b.logmag);
}

LogReal operator+(const LogReal& a, const LogReal& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogReal& big = a.logmag >= b.logmag ? a : b;
  const LogReal& small = a.logmag >= b.logmag ? b : a;
  const double r = std::exp(small.logmag - big.logmag);  // in (0, 1]
  if (big.sign == small.sign) return LogReal(big.sign, big.logmag + std::log1p(r));
  if (r == 1.0) return LogReal();
  return LogReal(big.sign, big.logmag + std::log1p(-r));
}

LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

bool abs_less(const LogReal& a, const LogReal& b) {
  if (a.sign == 0) return b.sign != 0;
  if (b.sign == 0) return false;
  return a.logmag < b.logmag;
}

std::string format_e(const LogReal& x, int digits) {
  if (x.sign == 0) return "0";
  const double log10v = x.logmag / std::log(10.0);
  char buf[64];
  if (log10v >= -1.0 && log10v < 3.0) {
    std::snprintf(buf, sizeof buf, "%#.*g", digits, x.to_double());
    return buf;
  }
  // mantissa in [0.1, 1): value = m * 10^e
  long e = static_cast<long>(std::floor(log10v)) + 1;
  double m = std::pow(10.0, log10v - static_cast<double>(e));
  double scale = std::pow(10.0, digits);
  double rounded = std::round(m * scale) / scale;
  if (rounded >= 1.0) {
    rounded /= 10.0;
    ++e;
  }
  std::snprintf(buf, sizeof buf, "%s%.*fE%+ld", x.sign < 0 ? "-" : "", digits, rounded, e);
  return buf;
}

std::string format_e(double x, int digits) { return format_e(LogReal::from_double(x), digits); }

}  // namespace hyperdot
