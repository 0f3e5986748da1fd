#pragma once
// =============================================================================
// report.hpp — machine-readable (JSON) and human-readable reports for the
// command-line tool.  Analytic content is deterministic for a fixed
// (configuration, seed); the `timings` block is the one exception and is
// documented as such.
// =============================================================================

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "baeract/census.hpp"
#include "baeract/lab.hpp"

namespace baeract {

/// One verification line of a report: how many instances were checked and a
/// description of each violation.  `asserted` lines drive the process exit
/// status; report-only lines (asymptotic bounds outside their hypothesis)
/// never fail the run.
struct CheckLine {
  std::uint64_t checked = 0;
  std::vector<std::string> violations;
  bool asserted = true;
};

using CheckMap = std::map<std::string, CheckLine>;

/// Phase timings in milliseconds.  Excluded from determinism guarantees.
using Timings = std::map<std::string, double>;

/// True iff every asserted line has no violations.
[[nodiscard]] bool all_checks_pass(const CheckMap& checks);

/// True iff the enumerated census agrees with the closed-form expectation on
/// every aggregated row, the orbit size, and the regular-member count.
[[nodiscard]] bool census_matches(const Action& A, const Census& C,
                                  const CensusOracle& O);

/// Census report:
/// {q, p, m, d, gram, omega_size, suborbits:[{class, order, length, fix,
///  count}], gamma_r, expected:{...}, order2_split:{...},
///  common_neighbor:{verified, witnesses}, timings}.
[[nodiscard]] std::string census_report_json(const Action& A, const Census& C,
                                             const CensusOracle& O,
                                             const NeighborReport& N,
                                             const Timings& timings);

/// Lab report: {q, seed, trials, checks:{tag:{checked, violations,
/// asserted}}, timings}.
[[nodiscard]] std::string lab_report_json(unsigned q, std::uint64_t seed,
                                          unsigned trials,
                                          const CheckMap& checks,
                                          const Timings& timings);

/// Bound report: series coefficients and values for the given q, the
/// four-part decomposition, and the fixed-suborbit bounds for admissible
/// prime orders.
[[nodiscard]] std::string bounds_report_json(unsigned q, unsigned p,
                                             unsigned m);

/// One-screen human summaries of the same content (for standard error).
[[nodiscard]] std::string census_report_text(const Action& A, const Census& C,
                                             const CensusOracle& O,
                                             const NeighborReport& N);
[[nodiscard]] std::string lab_report_text(unsigned q, std::uint64_t seed,
                                          unsigned trials,
                                          const CheckMap& checks);

/// Writes content atomically: a temporary file in the target's directory,
/// flushed and renamed over the destination.  Throws std::runtime_error on
/// failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace baeract
