#ifndef CREIG_REPORT_HPP
#define CREIG_REPORT_HPP

#include <string>
#include <vector>

#include "creig/analysis.hpp"
#include "creig/augmented.hpp"

namespace creig {

/// One CSV file: a fixed header line plus data lines, no trailing spaces.
struct CsvTable {
  std::string header;
  std::vector<std::string> lines;
};

/// Shortest round-trip-safe decimal form (17 significant digits).
std::string csv_number(double value);

/// Writes header + lines with '\n' endings; throws std::runtime_error on
/// I/O failure.
void write_csv(const CsvTable& table, const std::string& path);

/// Per-iteration trajectory, one line per (iteration, pair):
/// ell,i,lambda,err_a,err_b with i 1-based.
CsvTable algebraic_table(const IterationReport& report);

/// Bound verification rows: mesh_n,i,k,lhs_a,rhs_a,lhs_b,rhs_b,pass
/// with pass rendered PASS/FAIL.
CsvTable bounds_table(const BoundReport& report);

}  // namespace creig

#endif
