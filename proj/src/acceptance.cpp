#include "qclone/acceptance.hpp"

#include "qclone/cloners.hpp"
#include "qclone/entanglement.hpp"
#include "qclone/iteration.hpp"
#include "qclone/random.hpp"
#include "qclone/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qclone {
namespace {

using RhoD = DensityMatrix<double>;

constexpr double kPi = std::numbers::pi;
constexpr int kGridPoints = 201;

// Printed reference values.
constexpr std::array<double, 6> kTableE3{1.0000, 0.3086, 0.0953, 0.0294, 0.0091, 0.0028};
constexpr std::array<double, 6> kTableE2{0.3333, 0.1029, 0.0318, 0.0098, 0.0030, 0.0009};
constexpr double kPrintedCrossLow = 0.33065;
constexpr double kPrintedCrossHigh = 0.95287;
constexpr double kCrossingTol = 1e-4;

std::vector<double> alpha_grid() {
  std::vector<double> g(kGridPoints);
  for (int k = 0; k < kGridPoints; ++k) g[k] = (kPi / 2) * k / (kGridPoints - 1);
  return g;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << std::scientific << v;
  return s.str();
}

// Collects sub-checks of one criterion.
class Gate {
 public:
  Gate(int id, std::string title) {
    result_.id = id;
    result_.title = std::move(title);
  }

  void within(const std::string& what, double residual, double tolerance) {
    const double ratio = tolerance > 0 ? residual / tolerance : residual;
    if (!(ratio <= 1.0)) {  // also catches NaN
      result_.passed = false;
      result_.failures.push_back(what + ": residual " + fmt(residual) + " > " + fmt(tolerance));
    }
    if (!seen_ || !(ratio <= worst_ratio_)) {
      worst_ratio_ = ratio;
      result_.residual = residual;
      result_.tolerance = tolerance;
      seen_ = true;
    }
  }

  void holds(const std::string& what, bool condition) {
    if (!condition) {
      result_.passed = false;
      result_.failures.push_back(what);
    }
  }

  CheckResult finish() { return std::move(result_); }

 private:
  CheckResult result_;
  double worst_ratio_ = 0;
  bool seen_ = false;
};

double max_entry_diff(const CMatrix<double>& a, const CMatrix<double>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

RhoD input_rho(double alpha) { return RhoD::from_pure(input_state(alpha)); }

CheckResult criterion_input_closed_forms() {
  Gate g(1, "input-state closed forms (E3, E2) over 201-point grid");
  double worst = 0;
  for (double a : alpha_grid()) {
    const auto r = measures(input_rho(a));
    const auto cf = closed_form_input_measures(a);
    worst = std::max(worst, std::abs(r.e3 - cf.e3));
    for (double e2 : r.e2) worst = std::max(worst, std::abs(e2 - cf.e2));
  }
  g.within("trace-based vs closed form", worst, tol::state);
  const auto ghz = measures(input_rho(kPi / 4));
  g.within("GHZ E3 = 1", std::abs(ghz.e3 - 1.0), tol::state);
  for (double e2 : ghz.e2) g.within("GHZ E2 = 1/3", std::abs(e2 - 1.0 / 3), tol::state);
  return g.finish();
}

CheckResult criterion_local_oracle() {
  Gate g(2, "local cloning output matrix and GHZ measures");
  double worst = 0;
  double sym = 0;
  for (double a : alpha_grid()) {
    const auto out = apply_local_cloning(input_rho(a));
    worst = std::max(worst, max_entry_diff(out.state().matrix(),
                                           closed_form_local_output(a).matrix()));
    sym = std::max(sym, max_entry_diff(out.originals.matrix(), out.copies.matrix()));
  }
  g.within("simulated vs closed-form output", worst, tol::state);
  g.within("originals == copies", sym, tol::state);
  const auto r = measures(apply_local_cloning(input_rho(kPi / 4)).state());
  g.within("GHZ E3 = 64/729", std::abs(r.e3 - 64.0 / 729), tol::state);
  for (double e2 : r.e2) g.within("GHZ E2 = 16/243", std::abs(e2 - 16.0 / 243), tol::state);
  return g.finish();
}

CheckResult criterion_nonlocal_oracle() {
  Gate g(3, "non-local cloning output matrix, GHZ measures and spectrum");
  double worst = 0;
  double sym = 0;
  for (double a : alpha_grid()) {
    const auto out = apply_nonlocal_cloning(input_rho(a));
    worst = std::max(worst, max_entry_diff(out.state().matrix(),
                                           closed_form_nonlocal_output(a).matrix()));
    sym = std::max(sym, max_entry_diff(out.originals.matrix(), out.copies.matrix()));
  }
  g.within("simulated vs closed-form output", worst, tol::state);
  g.within("originals == copies", sym, tol::state);
  const auto out = apply_nonlocal_cloning(input_rho(kPi / 4)).state();
  const auto r = measures(out);
  g.within("GHZ E3 = 25/81", std::abs(r.e3 - 25.0 / 81), tol::state);
  for (double e2 : r.e2) g.within("GHZ E2 = 25/243", std::abs(e2 - 25.0 / 243), tol::state);
  const auto eig = eig_hermitian(out.matrix());
  double spec = std::abs(eig.values(0) - 11.0 / 18);
  for (Index k = 1; k < 8; ++k) spec = std::max(spec, std::abs(eig.values(k) - 1.0 / 18));
  g.within("eigenvalues {11/18, 1/18 x7}", spec, tol::state);
  return g.finish();
}

CheckResult criterion_measure_curves() {
  Gate g(4, "simulated E3/E2 curves vs closed forms for both cloners");
  double local = 0;
  double nonlocal = 0;
  for (double a : alpha_grid()) {
    const auto rho = input_rho(a);
    const auto lo = measures(apply_local_cloning(rho).state());
    const auto nl = measures(apply_nonlocal_cloning(rho).state());
    const auto lo_cf = closed_form_local_measures(a);
    const auto nl_cf = closed_form_nonlocal_measures(a);
    local = std::max(local, std::abs(lo.e3 - lo_cf.e3));
    nonlocal = std::max(nonlocal, std::abs(nl.e3 - nl_cf.e3));
    for (int p = 0; p < 3; ++p) {
      local = std::max(local, std::abs(lo.e2[p] - lo_cf.e2));
      nonlocal = std::max(nonlocal, std::abs(nl.e2[p] - nl_cf.e2));
    }
  }
  g.within("local curves", local, tol::state);
  g.within("non-local curves", nonlocal, tol::state);
  return g.finish();
}

CheckResult criterion_fidelities() {
  Gate g(5, "fidelities F1(alpha), F2 = 11/18, F2 > F1");
  double f1_res = 0;
  double f2_res = 0;
  bool ordered = true;
  for (double a : alpha_grid()) {
    const auto psi = input_state(a);
    const auto rho = RhoD::from_pure(psi);
    const double f1 = fidelity_pure(psi, apply_local_cloning(rho).state());
    const double f2 = fidelity_pure(psi, apply_nonlocal_cloning(rho).state());
    f1_res = std::max(f1_res, std::abs(f1 - fidelity_local(a)));
    f2_res = std::max(f2_res, std::abs(f2 - fidelity_nonlocal<double>()));
    ordered = ordered && f2 > f1;
  }
  g.within("simulated F1 vs closed form", f1_res, tol::state);
  g.within("simulated F2 vs 11/18", f2_res, tol::state);
  g.holds("F2 > F1 at every grid point", ordered);
  return g.finish();
}

CheckResult criterion_crossings(std::vector<std::string>& notes) {
  Gate g(6, "E2 amplification window for non-local cloning");
  const auto [low, high] = find_e2_crossings<double>();
  g.within("lower root vs printed 0.33065", std::abs(low - kPrintedCrossLow), kCrossingTol);
  g.within("upper root vs printed 0.95287", std::abs(high - kPrintedCrossHigh), kCrossingTol);

  // Sign pattern: amplified outside the window, reduced inside.
  const double probes[] = {low / 2, (low + high) / 2, (high + 1) / 2};
  g.holds("E2 amplified below the lower root", e2_gain_nonlocal(probes[0]) > 0);
  g.holds("E2 reduced between the roots", e2_gain_nonlocal(probes[1]) < 0);
  g.holds("E2 amplified above the upper root", e2_gain_nonlocal(probes[2]) > 0);

  std::ostringstream s;
  s << std::setprecision(8) << "computed E2 crossings at cos(alpha) = " << low << ", " << high
    << " (printed 0.33065, 0.95287; exact cos(2 alpha) = -/+ 3/sqrt(14))";
  notes.push_back(s.str());
  return g.finish();
}

CheckResult criterion_table(std::vector<std::string>& notes) {
  Gate g(7, "iterated non-local cloning of GHZ (Table 1 decay)");
  const auto trace = iterate(kPi / 4, 6);
  for (int k = 0; k <= 5; ++k) {
    g.within("E3 step " + std::to_string(k), std::abs(trace.steps[k].e3 - kTableE3[k]), tol::table);
    g.within("E2 step " + std::to_string(k), std::abs(trace.steps[k].e2 - kTableE2[k]), tol::table);
  }
  bool decreasing = true;
  for (int k = 1; k <= 6; ++k) {
    decreasing = decreasing && trace.steps[k].e3 < trace.steps[k - 1].e3 &&
                 trace.steps[k].e2 < trace.steps[k - 1].e2;
  }
  g.holds("E3, E2 strictly decreasing over steps 0..6", decreasing);
  g.holds("E3(6) < 1e-3", trace.steps[6].e3 < 1e-3);
  g.holds("E2(6) < 1e-3", trace.steps[6].e2 < 1e-3);

  std::ostringstream s;
  s << std::setprecision(6) << "step 6: E3 = " << trace.steps[6].e3 << ", E2 = "
    << trace.steps[6].e2 << " (printed 0.0000 for both)";
  notes.push_back(s.str());

  const double corner = std::real(trace.steps[2].rho.matrix()(0, 0));
  std::ostringstream c;
  c << std::setprecision(12) << "step 2 |000><000| coefficient = " << corner
    << " = 13/54 (printed as 54/13, which is not a probability)";
  notes.push_back(c.str());
  return g.finish();
}

CheckResult criterion_channels(std::uint64_t seed) {
  Gate g(8, "channel properties on 100 random states");
  StateSampler<double> sampler(seed);
  double trace_res = 0;
  double herm_res = 0;
  double min_eig = 0;
  double lin_res = 0;
  double route_res = 0;

  using Channel = std::function<CMatrix<double>(const RhoD&)>;
  const Channel channels[] = {
      [](const RhoD& r) { return apply_local_cloning(r).state().matrix(); },
      [](const RhoD& r) { return apply_nonlocal_cloning(r).state().matrix(); }};

  for (int n = 0; n < 100; ++n) {
    const auto rho1 = sampler.three_qubit_mixed();
    const auto rho2 = sampler.three_qubit_mixed();
    const double p = sampler.uniform(0.0, 1.0);
    const RhoD mix({2, 2, 2}, p * rho1.matrix() + (1 - p) * rho2.matrix());
    for (const auto& channel : channels) {
      const CMatrix<double> out = channel(rho1);
      trace_res = std::max(trace_res, std::abs(out.trace() - 1.0));
      herm_res = std::max(herm_res, hermiticity_residual(out));
      Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(out, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
      const CMatrix<double> lhs = channel(mix);
      const CMatrix<double> rhs = p * out + (1 - p) * channel(rho2);
      lin_res = std::max(lin_res, max_entry_diff(lhs, rhs));
    }
    route_res = std::max(route_res, max_entry_diff(clone_mixed_nonlocal(rho1).matrix(),
                                                   apply_nonlocal_cloning(rho1).state().matrix()));
  }
  g.within("trace preserved", trace_res, tol::state);
  g.within("Hermitian output", herm_res, tol::state);
  g.within("PSD output (negative part)", std::max(0.0, -min_eig), tol::spectral);
  g.within("linearity", lin_res, tol::state);
  g.within("spectral route == direct channel", route_res, tol::state);
  return g.finish();
}

RhoD conjugate_local(const RhoD& rho, const std::array<CMatrix<double>, 3>& u) {
  const CMatrix<double> full = kron(kron(u[0], u[1]), u[2]);
  const CMatrix<double> m = full * rho.matrix() * full.adjoint();
  return RhoD({2, 2, 2}, (m + m.adjoint()) / std::complex<double>(2));
}

CheckResult criterion_measure_properties(std::uint64_t seed) {
  Gate g(9, "measure properties: local-unitary invariance, product zero, range");
  StateSampler<double> sampler(seed + 1);

  double lu_res = 0;
  std::vector<RhoD> subjects{input_rho(kPi / 4), input_rho(0.3),
                             apply_nonlocal_cloning(input_rho(0.7)).state()};
  for (int k = 0; k < 5; ++k) subjects.push_back(sampler.three_qubit_mixed());
  for (int k = 0; k < 5; ++k) subjects.push_back(RhoD::from_pure(sampler.pure({2, 2, 2})));
  for (int n = 0; n < 50; ++n) {
    const std::array<CMatrix<double>, 3> u{sampler.unitary(2), sampler.unitary(2),
                                           sampler.unitary(2)};
    const auto& subject = subjects[static_cast<std::size_t>(n) % subjects.size()];
    const auto before = measures(subject);
    const auto after = measures(conjugate_local(subject, u));
    lu_res = std::max(lu_res, std::abs(before.e3 - after.e3));
    for (int p = 0; p < 3; ++p) lu_res = std::max(lu_res, std::abs(before.e2[p] - after.e2[p]));
  }
  g.within("local-unitary invariance", lu_res, tol::spectral);

  double prod = 0;
  for (int n = 0; n < 100; ++n) {
    const auto r = measures(sampler.three_qubit_product());
    prod = std::max({prod, std::abs(r.e3), r.e2[0], r.e2[1], r.e2[2]});
  }
  g.within("zero on product states", prod, tol::state);

  double lowest = 0;
  double highest = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto r = n % 2 == 0 ? measures(sampler.three_qubit_mixed())
                              : measures(RhoD::from_pure(sampler.pure({2, 2, 2})));
    lowest = std::min({lowest, r.e3, r.e2[0], r.e2[1], r.e2[2]});
    highest = std::max({highest, r.e3, r.e2[0], r.e2[1], r.e2[2]});
  }
  g.holds("measures non-negative", lowest >= 0);
  g.within("measures at most 1", std::max(0.0, highest - 1.0), tol::spectral);
  return g.finish();
}

CheckResult criterion_determinism() {
  Gate g(10, "sweep CSV is byte-identical across runs");
  auto render = [] {
    std::ostringstream s;
    write_sweep_csv(s, compute_sweep(kGridPoints));
    return s.str();
  };
  const std::string first = render();
  const std::string second = render();
  g.holds("identical CSV bytes", first == second);
  g.holds("header + 201 rows", std::count(first.begin(), first.end(), '\n') == kGridPoints + 1);
  return g.finish();
}

void add_notes(std::vector<std::string>& notes) {
  const double a = kPi / 8;
  const auto r = measures(apply_local_cloning(input_rho(a)).state());
  std::ostringstream s;
  s << std::setprecision(10) << "local K333 at alpha = pi/8: computed " << r.k3.k(2, 2, 2)
    << " = -(8/27)cos(2 alpha); printed sign is +";
  notes.push_back(s.str());

  const auto in = closed_form_input_measures(kPi / 4);
  const auto lo = closed_form_local_measures(kPi / 4);
  std::ostringstream p;
  p << std::setprecision(4) << "local retention at GHZ: E3 " << 100 * lo.e3 / in.e3
    << "% (printed 8.76%), E2 " << 100 * lo.e2 / in.e2 << "% (printed 19.8%)";
  notes.push_back(p.str());
}

}  // namespace

bool AcceptanceReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

CheckResult run_criterion(int id, std::uint64_t seed, std::vector<std::string>& notes) {
  switch (id) {
    case 1: return criterion_input_closed_forms();
    case 2: return criterion_local_oracle();
    case 3: return criterion_nonlocal_oracle();
    case 4: return criterion_measure_curves();
    case 5: return criterion_fidelities();
    case 6: return criterion_crossings(notes);
    case 7: return criterion_table(notes);
    case 8: return criterion_channels(seed);
    case 9: return criterion_measure_properties(seed);
    case 10: return criterion_determinism();
    default: throw DomainError("run_criterion: unknown criterion " + std::to_string(id));
  }
}

AcceptanceReport run_acceptance(std::uint64_t seed, std::span<const int> ids) {
  AcceptanceReport report;
  if (ids.empty()) {
    for (int id = 1; id <= kCriterionCount; ++id) {
      report.checks.push_back(run_criterion(id, seed, report.notes));
    }
    add_notes(report.notes);
  } else {
    for (int id : ids) report.checks.push_back(run_criterion(id, seed, report.notes));
  }
  return report;
}

void print_report(std::ostream& out, const AcceptanceReport& report) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << c.id << "  " << c.title;
    if (c.tolerance > 0) out << "  (worst residual " << fmt(c.residual) << ", tol " << fmt(c.tolerance) << ")";
    out << '\n';
    for (const auto& f : c.failures) out << "         - " << f << '\n';
  }
  for (const auto& n : report.notes) out << "[INFO] " << n << '\n';
  const auto passed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const auto& c) { return c.passed; });
  out << passed << '/' << report.checks.size() << " checks passed\n";
}

}  // namespace qclone
