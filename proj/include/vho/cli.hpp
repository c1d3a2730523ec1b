#pragma once

// Command-line front end. The `vho` executable is a thin wrapper around
// run_cli so the commands can be driven in-process by tests.

#include "vho/config.hpp"
#include "vho/gra.hpp"
#include "vho/table.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace vho {

/// Returns the process exit status: 0 iff every requested output was written.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 4a 4b 4c 4d 4e1 4e 4f
const std::vector<std::string>& figure_ids();

/// (file name, dataset) pairs behind one figure. Throws std::invalid_argument
/// listing the valid ids for an unknown id.
std::vector<std::pair<std::string, Table>> figure_tables(const std::string& id, const Scenario& scenario);

/// One row per (zeta, alternative): grade and 1-based rank.
Table gra_zeta_table(const gra::DecisionMatrix& matrix, const std::vector<double>& zetas);

/// Normalized matrix, coefficients, grades and ranks at full precision.
Table gra_result_table(const gra::DecisionMatrix& matrix, const gra::GraResult& result);

/// Human-readable tables at 4 decimal places.
void print_gra_report(std::ostream& os, const gra::DecisionMatrix& matrix, const gra::GraResult& result);

} // namespace vho
