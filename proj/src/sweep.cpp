#include "qclone/sweep.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace qclone {

SweepRow sweep_row(double cos_alpha) {
  if (!(cos_alpha >= 0.0 && cos_alpha <= 1.0)) {
    throw DomainError("sweep_row: cos(alpha) must lie in [0, 1]");
  }
  const double alpha = std::acos(cos_alpha);
  const auto psi = input_state(alpha);
  const auto rho = DensityMatrix<double>::from_pure(psi);
  const auto local = apply_local_cloning(rho).state();
  const auto nonlocal = apply_nonlocal_cloning(rho).state();

  const auto in = measures(rho);
  const auto lo = measures(local);
  const auto nl = measures(nonlocal);
  return {cos_alpha, in.e3,    lo.e3, nl.e3, in.e2[0], lo.e2[0], nl.e2[0],
          fidelity_pure(psi, local), fidelity_pure(psi, nonlocal)};
}

std::vector<SweepRow> compute_sweep(int points) {
  if (points < 2) throw DomainError("compute_sweep: need at least two points");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    // Pin the last point to exactly 1 so acos stays in range.
    const double x = k + 1 == points ? 1.0 : static_cast<double>(k) / (points - 1);
    rows.push_back(sweep_row(x));
  }
  return rows;
}

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, end);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    const double fields[] = {r.cos_alpha, r.e3_input,    r.e3_local, r.e3_nonlocal, r.e2_input,
                             r.e2_local,  r.e2_nonlocal, r.f_local,  r.f_nonlocal};
    bool first = true;
    for (double v : fields) {
      if (!first) out << ',';
      out << format_number(v);
      first = false;
    }
    out << '\n';
  }
}

void write_iteration_table(std::ostream& out, const IterationTrace<double>& trace) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::left << std::setw(4) << "No" << std::right;
  for (const auto& s : trace.steps) out << std::setw(8) << s.step;
  out << '\n' << std::fixed << std::setprecision(4);
  out << std::left << std::setw(4) << "E3" << std::right;
  for (const auto& s : trace.steps) out << std::setw(8) << s.e3;
  out << '\n' << std::left << std::setw(4) << "E2" << std::right;
  for (const auto& s : trace.steps) out << std::setw(8) << s.e2;
  out << '\n';
  out.flags(flags);
  out.precision(precision);
}

void write_iteration_csv(std::ostream& out, const IterationTrace<double>& trace) {
  out << "step,e3,e2\n";
  for (const auto& s : trace.steps) {
    out << s.step << ',' << format_number(s.e3) << ',' << format_number(s.e2) << '\n';
  }
}

}  // namespace qclone
