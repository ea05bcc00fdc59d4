// Figure-style sweeps over cos(alpha) and Table-style iteration output.

#pragma once

#include "qclone/iteration.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qclone {

/// One grid point of the cos(alpha) sweep; every value comes from the
/// simulated channels.
struct SweepRow {
  double cos_alpha = 0;
  double e3_input = 0;
  double e3_local = 0;
  double e3_nonlocal = 0;
  double e2_input = 0;
  double e2_local = 0;
  double e2_nonlocal = 0;
  double f_local = 0;
  double f_nonlocal = 0;
};

inline constexpr const char* kSweepHeader =
    "cos_alpha,e3_input,e3_local,e3_nonlocal,e2_input,e2_local,e2_nonlocal,f_local,f_nonlocal";

SweepRow sweep_row(double cos_alpha);

/// `points` rows with cos(alpha) uniform on [0, 1], endpoints included.
std::vector<SweepRow> compute_sweep(int points);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Human-readable table, 4 decimals, one column per step.
void write_iteration_table(std::ostream& out, const IterationTrace<double>& trace);

void write_iteration_csv(std::ostream& out, const IterationTrace<double>& trace);

}  // namespace qclone
