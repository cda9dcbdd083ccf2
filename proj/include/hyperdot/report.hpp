// CSV serialization of measure reports and uncertainty-relation checks.
#pragma once

#include <ostream>
#include <string>

#include "hyperdot/measures.hpp"
#include "hyperdot/uncertainty.hpp"

namespace hyperdot {

inline constexpr const char* kMeasureCsvHeader =
    "d,S_rho,S_gamma,S_sum,S_bound,I_rho,I_gamma,I_product,O_rho,O_gamma,O_product";
inline constexpr const char* kRelationCsvHeader = "kind,d,system,n,l,alpha,beta,left,right,slack,verdict";

// "dirichlet", "neumann" or "hydrogen".
std::string system_label(SystemKind kind);

// %.{digits}g, with "inf"/"nan" spelled out.
std::string format_g(double x, int digits = 12);

// Table-style row: every number in 0.xxxxxE±n notation with `digits` significant figures.
std::string measure_csv_row(const MeasureReport& r, int digits = 5);
std::string relation_csv_row(const RelationCheck& c, int digits = 12);

void write_measure_csv(std::ostream& out, const MeasureReport& r, int digits = 5);
void write_relation_csv(std::ostream& out, const RelationCheck& c, int digits = 12);

}  // namespace hyperdot
