#pragma once

#include "shuttlesat/Problem.hpp"
#include "shuttlesat/Schedule.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shuttlesat {

/// EncodingFaithful mirrors the SAT encoding's rules exactly (arrival-based
/// node counting); Physical counts the nodes a move actually passes over,
/// quantifying the encoding's over-approximation.
enum class ValidationMode { EncodingFaithful, Physical };

struct Violation {
  std::uint32_t time = 0;
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  ValidationMode mode = ValidationMode::EncodingFaithful;
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
};

/// Checks a schedule against the movement rules: initial placement, edge
/// capacities, per-transition movement targets and path emptiness, node
/// crossings, the processing-zone direction rules, and sequence
/// satisfaction. Structurally malformed schedules (wrong dimensions,
/// out-of-range edges) raise std::invalid_argument instead of reporting
/// violations.
ValidationReport validateSchedule(const ProblemInstance& problem,
                                  const Schedule& schedule,
                                  ValidationMode mode);

std::string renderReport(const ValidationReport& report);
std::string serializeReport(const ValidationReport& report);

/// Applies one seeded random perturbation: reassign one chain's edge at
/// one step, swap two chains at one step, or move one satisfaction time.
Schedule mutateSchedule(const Schedule& schedule, std::uint64_t seed);

struct OracleResult {
  /// Minimal horizon, or nullopt when no schedule exists within the cap.
  std::optional<std::uint32_t> minimalT;
  std::uint64_t exploredStates = 0;
  std::optional<Schedule> witness;
};

/// Size guard for the exhaustive search; override to run larger instances
/// deliberately.
struct OracleGuard {
  std::uint32_t maxEdges = 12;
  std::uint32_t maxChains = 3;
  std::uint32_t maxSequence = 4;
  bool enforce = true;
};

/// Ground-truth minimal horizon by breadth-first search over joint states
/// (chain positions plus sequence progress). One transition enumerates
/// every simultaneous move combination permitted by the encoding-faithful
/// rules; progress advances eagerly by at most one element per step.
/// Expands the frontier in parallel when OpenMP is enabled; results are
/// identical to the serial reference.
OracleResult oracleMinimal(const ProblemInstance& problem,
                           std::uint32_t horizonCap, OracleGuard guard = {});

/// Serial reference implementation kept for testing and benchmarking.
OracleResult oracleMinimalSerial(const ProblemInstance& problem,
                                 std::uint32_t horizonCap,
                                 OracleGuard guard = {});

/// All joint successor position vectors of `positions` under the
/// encoding-faithful transition rules, in deterministic order. Exposed for
/// the oracle and for replay-style checks in tests.
std::vector<std::vector<EdgeIndex>>
enumerateJointMoves(const ProblemInstance& problem,
                    const std::vector<EdgeIndex>& positions);

} // namespace shuttlesat
