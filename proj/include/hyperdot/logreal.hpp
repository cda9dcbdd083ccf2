// Signed extended-range real: value = sign * exp(logmag).
#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace hyperdot {

struct LogReal {
  int sign = 0;        // -1, 0 or +1
  double logmag = -std::numeric_limits<double>::infinity();

  LogReal() = default;
  LogReal(int s, double lm) : sign(s), logmag(lm) {
    if (sign == 0 || (std::isinf(logmag) && logmag < 0)) {
      sign = 0;
      logmag = -std::numeric_limits<double>::infinity();
    }
  }

  static LogReal from_double(double x);
  static LogReal from_log(double lm) { return LogReal(1, lm); }
  static LogReal zero() { return LogReal(); }

  double to_double() const;
  bool is_zero() const { return sign == 0; }

  LogReal operator-() const { return LogReal(-sign, logmag); }
  LogReal abs() const { return LogReal(sign != 0 ? 1 : 0, logmag); }
  // x^p for x > 0.
  LogReal pow(double p) const;
};

LogReal operator*(const LogReal& a, const LogReal& b);
LogReal operator/(const LogReal& a, const LogReal& b);
LogReal operator+(const LogReal& a, const LogReal& b);
LogReal operator-(const LogReal& a, const LogReal& b);
inline LogReal& operator+=(LogReal& a, const LogReal& b) { return a = a + b; }
inline LogReal& operator*=(LogReal& a, const LogReal& b) { return a = a * b; }

// Magnitude comparison.
bool abs_less(const LogReal& a, const LogReal& b);

// Table-style E notation: values in [0.1, 1000) print as plain numbers with
// `digits` significant figures, everything else as 0.ddddE±x.
std::string format_e(const LogReal& x, int digits = 5);
std::string format_e(double x, int digits = 5);

}  // namespace hyperdot
