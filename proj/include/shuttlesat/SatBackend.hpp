#pragma once

#include "shuttlesat/Cnf.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shuttlesat {

enum class SatVerdict { Sat, Unsat, Unknown };

struct SatResult {
  SatVerdict verdict = SatVerdict::Unknown;
  /// Assignment indexed by variable id (entry 0 unused); valid iff Sat.
  std::vector<bool> model;
};

/// Narrow solving interface so embedded and external DIMACS-based solvers
/// are interchangeable. A backend instance must not be shared across
/// concurrent solves.
class SatBackend {
public:
  virtual ~SatBackend() = default;

  virtual SatResult solve(std::uint32_t variableCount,
                          const std::vector<std::vector<Lit>>& clauses,
                          std::optional<double> timeoutSeconds) = 0;

  virtual std::string name() const = 0;
};

/// The embedded CDCL solver (watched literals, 1UIP learning, VSIDS,
/// phase saving, Luby restarts). Deterministic: identical input yields an
/// identical verdict and model.
std::unique_ptr<SatBackend> makeCdclBackend();

/// Runs an external solver executable on a DIMACS file and parses the
/// SAT-competition style output (exit codes 10/20, "s ..."/"v ..." lines).
std::unique_ptr<SatBackend> makeExternalBackend(std::string executable);

/// External backend per the SHUTTLESAT_SOLVER environment variable when
/// set, embedded CDCL otherwise.
std::unique_ptr<SatBackend> makeDefaultBackend();

} // namespace shuttlesat
