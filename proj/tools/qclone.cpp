// qclone: sweeps, iteration tables and the verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

#include "qclone/acceptance.hpp"
#include "qclone/iteration.hpp"
#include "qclone/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

// Writes `text` to `path`, or to stdout when the path is empty.
bool emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) return false;
  file << text;
  return static_cast<bool>(file.flush());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of three-qubit states under universal quantum cloning"};
  app.require_subcommand(1);

  int points = 201;
  std::string sweep_output;
  auto* sweep = app.add_subcommand("sweep", "E3/E2/fidelity sweep over cos(alpha), as CSV");
  sweep->add_option("--points", points, "grid points on [0, 1]")->check(CLI::Range(2, 1000000));
  sweep->add_option("--output", sweep_output, "CSV path (stdout if omitted)");

  double alpha = std::numbers::pi / 4;
  int steps = 6;
  std::string iterate_output;
  auto* iterate = app.add_subcommand("iterate", "repeated non-local cloning of the input state");
  iterate->add_option("--alpha", alpha, "input-state angle in radians");
  iterate->add_option("--steps", steps, "number of cloning steps")
      ->check(CLI::Range(1, qclone::kMaxIterationSteps));
  iterate->add_option("--output", iterate_output, "CSV path (appended to stdout if omitted)");

  std::uint64_t seed = qclone::kDefaultSeed;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--seed", seed, "seed for randomized property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sweep) {
      std::ostringstream csv;
      qclone::write_sweep_csv(csv, qclone::compute_sweep(points));
      if (!emit(sweep_output, csv.str())) {
        std::cerr << "error: cannot write " << sweep_output << '\n';
        return kExitUsage;
      }
    } else if (*iterate) {
      const auto trace = qclone::iterate(alpha, steps);
      qclone::write_iteration_table(std::cout, trace);
      std::ostringstream csv;
      qclone::write_iteration_csv(csv, trace);
      if (iterate_output.empty()) std::cout << '\n';
      if (!emit(iterate_output, csv.str())) {
        std::cerr << "error: cannot write " << iterate_output << '\n';
        return kExitUsage;
      }
    } else if (*verify) {
      const auto report = qclone::run_acceptance(seed);
      qclone::print_report(std::cout, report);
      return report.all_passed() ? kExitOk : kExitVerifyFailed;
    }
  } catch (const qclone::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
