#include "creig/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace creig {

std::string csv_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: identical bytes everywhere
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << table.header << '\n';
  for (const auto& line : table.lines) out << line << '\n';
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

CsvTable algebraic_table(const IterationReport& report) {
  CsvTable table;
  table.header = "ell,i,lambda,err_a,err_b";
  for (std::size_t ell = 0; ell < report.eigenvalues.size(); ++ell)
    for (std::size_t i = 0; i < report.err_a.size(); ++i) {
      std::string line = std::to_string(ell);
      line += ',' + std::to_string(i + 1);
      line += ',' + csv_number(report.eigenvalues[ell][i]);
      line += ',' + csv_number(report.err_a[i][ell]);
      line += ',' + csv_number(report.err_b[i][ell]);
      table.lines.push_back(std::move(line));
    }
  return table;
}

CsvTable bounds_table(const BoundReport& report) {
  CsvTable table;
  table.header = "mesh_n,i,k,lhs_a,rhs_a,lhs_b,rhs_b,pass";
  for (const auto& row : report.rows) {
    std::string line = std::to_string(row.mesh_n);
    line += ',' + std::to_string(row.i);
    line += ',' + std::to_string(row.k);
    line += ',' + csv_number(row.lhs_a);
    line += ',' + csv_number(row.rhs_a);
    line += ',' + csv_number(row.lhs_b);
    line += ',' + csv_number(row.rhs_b);
    line += row.pass ? ",PASS" : ",FAIL";
    table.lines.push_back(std::move(line));
  }
  return table;
}

}  // namespace creig
