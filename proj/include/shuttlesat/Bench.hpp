#pragma once

#include "shuttlesat/Problem.hpp"
#include "shuttlesat/Solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shuttlesat {

/// One benchmark configuration: a grid layout, a sequence family, and how
/// many seeded runs to perform.
struct BenchConfig {
  std::string id;
  std::uint32_t m = 2, n = 2, v = 1, h = 5;
  enum class Family { FullRegisterAccess, Qft } family =
      Family::FullRegisterAccess;
  std::uint32_t chains = 6; // for Qft this equals the qubit count
  std::uint32_t qubits = 0;
  std::uint32_t runs = 10;
  std::uint64_t seedBase = 1;
  double perRunSeconds = 300.0;
  std::uint32_t maxHorizon = 128;
};

struct BenchRunRecord {
  std::uint32_t run = 0;
  std::uint64_t seed = 0;
  SolveOutcome::Kind kind = SolveOutcome::Kind::Exhausted;
  std::uint32_t horizon = 0; // minimal T, proven bound, or the cap
  double encodeSeconds = 0.0;
  double solveSeconds = 0.0;
};

struct BenchRow {
  BenchConfig config;
  std::uint32_t memoryEdges = 0;
  std::uint32_t sequenceLength = 0;
  std::vector<BenchRunRecord> records;

  std::uint32_t timeoutCount() const;
  /// Mean minimal horizon over the completed (Minimal) runs.
  std::optional<double> meanMinimalT() const;
  /// Mean encode+solve seconds over the completed runs.
  std::optional<double> meanSeconds() const;
  /// Largest bound proven by every run, for rows without completions.
  std::optional<std::uint32_t> commonProvenBound() const;
};

/// Builds the seeded instance for one run: random placement with seed
/// seedBase + run, and the configured sequence family.
ProblemInstance benchInstance(const BenchConfig& config, std::uint32_t run);

/// Runs every (config, run) job, distributing jobs over `workers` threads
/// when OpenMP is available. Each run owns its solver; rows come back in
/// config order with per-run records in run order, so the output is
/// reproducible regardless of scheduling.
std::vector<BenchRow> runBenchSuite(const std::vector<BenchConfig>& configs,
                                    const BackendFactory& makeBackend,
                                    std::uint32_t workers);

/// All benchmark-table configurations, plus the short aliases
/// racetrack-small, lattice-small and lattice-medium.
const std::vector<BenchConfig>& presetConfigs();
std::optional<BenchConfig> findPreset(const std::string& name);

std::vector<BenchConfig> parseBenchSpecs(const std::string& text);

std::string renderCsv(const std::vector<BenchRow>& rows);
std::string renderTable(const std::vector<BenchRow>& rows);

} // namespace shuttlesat
