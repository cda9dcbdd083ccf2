#include "hyperdot/report.hpp"

#include <cmath>
#include <cstdio>

namespace hyperdot {

std::string system_label(SystemKind kind) {
  switch (kind) {
    case SystemKind::DirichletDot: return "dirichlet";
    case SystemKind::NeumannDot: return "neumann";
    case SystemKind::Hydrogen: return "hydrogen";
  }
  return "?";
}

std::string format_g(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string measure_csv_row(const MeasureReport& r, int digits) {
  auto f = [digits](double x) { return format_e(x, digits); };
  std::string s = std::to_string(r.spec.d);
  for (const std::string& v : {f(r.s_rho), f(r.s_gamma), f(r.shannon_sum()), f(r.shannon_bound()), f(r.i_rho),
                               f(r.i_gamma), f(r.fisher_product()), format_e(r.o_rho, digits),
                               format_e(r.o_gamma, digits), format_e(r.onicescu_product(), digits)})
    s += "," + v;
  return s;
}

std::string relation_csv_row(const RelationCheck& c, int digits) {
  auto f = [digits](double x) { return format_g(x, digits); };
  return to_string(c.kind) + "," + std::to_string(c.spec.d) + "," + system_label(c.spec.kind) + "," +
         std::to_string(c.qn.n) + "," + std::to_string(c.qn.l) + "," + f(c.alpha) + "," + f(c.beta) + "," +
         f(c.left) + "," + f(c.right) + "," + f(c.slack) + "," + to_string(c.verdict);
}

void write_measure_csv(std::ostream& out, const MeasureReport& r, int digits) {
  out << measure_csv_row(r, digits) << '\n';
}

void write_relation_csv(std::ostream& out, const RelationCheck& c, int digits) {
  out << relation_csv_row(c, digits) << '\n';
}

}  // namespace hyperdot
