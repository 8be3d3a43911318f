#pragma once

#include "shuttlesat/Encoder.hpp"
#include "shuttlesat/Problem.hpp"
#include "shuttlesat/SatBackend.hpp"
#include "shuttlesat/Schedule.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shuttlesat {

struct SolveBudget {
  std::optional<double> perHorizonSeconds; // wall clock per horizon
  std::optional<double> totalSeconds;      // wall clock for the whole sweep
  std::uint32_t maxHorizon = 128;
};

enum class HorizonVerdict { Sat, Unsat, Timeout };

struct HorizonRecord {
  std::uint32_t horizon = 0;
  HorizonVerdict verdict = HorizonVerdict::Timeout;
  double encodeSeconds = 0.0;
  double solveSeconds = 0.0;
};

struct FixedResult {
  HorizonVerdict verdict = HorizonVerdict::Timeout;
  std::optional<Schedule> schedule; // present iff Sat
  double encodeSeconds = 0.0;
  double solveSeconds = 0.0;
};

/// Decides "does a valid schedule of exactly `horizon` steps exist?".
/// A Sat answer carries a decoded schedule that has already passed the
/// encoding-faithful validator.
FixedResult solveFixed(const ProblemInstance& problem, std::uint32_t horizon,
                       std::optional<double> timeoutSeconds,
                       SatBackend& backend);

struct SolveOutcome {
  enum class Kind {
    Minimal,          // schedule found; horizon is the exact minimum
    ProvenUnsatUpTo,  // budget ran out; horizon is a proven lower bound
    Exhausted,        // every horizon up to the cap is unsatisfiable
  };
  Kind kind = Kind::Exhausted;
  std::uint32_t horizon = 0;
  std::optional<Schedule> schedule;
  std::vector<HorizonRecord> log;
};

using BackendFactory = std::function<std::unique_ptr<SatBackend>()>;

struct SolveOptions {
  SolveBudget budget;
  /// Start the sweep at T = |S| instead of T = 1. Provably safe: the
  /// sequence constraints force |S| strictly increasing satisfaction
  /// times, so every horizon below |S| is unsatisfiable.
  bool skipBelowSequenceLength = true;
  std::optional<std::uint32_t> startHorizon;
  /// Number of horizons probed concurrently. 1 (the default) probes
  /// sequentially; higher values still report Minimal only once every
  /// smaller horizon has a completed Unsat verdict.
  std::uint32_t parallelHorizons = 1;
};

/// Iterative deepening: probes T = start, start+1, ... and returns the
/// first satisfiable horizon, which is therefore minimal.
SolveOutcome solveMinimal(const ProblemInstance& problem,
                          const SolveOptions& options,
                          const BackendFactory& makeBackend);

/// Machine-readable result document: outcome kind, T-hat or bound, the
/// per-horizon log, and the schedule when one was found.
std::string serializeOutcome(const SolveOutcome& outcome);

/// Writes the instance in DIMACS CNF format ("p cnf V C" header, clauses
/// as zero-terminated signed integers) plus a line-oriented sidecar that
/// maps every variable id back to its meaning.
void exportDimacs(const CnfInstance& cnf, const std::string& cnfPath,
                  const std::string& sidecarPath);

std::string renderDimacs(const CnfInstance& cnf);
std::string renderSidecar(const CnfInstance& cnf);

/// Rebuilds the variable mapping from sidecar text (the "d" header line),
/// so models produced by external solvers can be decoded into schedules.
VarMap parseSidecarVarMap(const std::string& text);

} // namespace shuttlesat
