#pragma once

#include "shuttlesat/Cnf.hpp"
#include "shuttlesat/Problem.hpp"
#include "shuttlesat/Schedule.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace shuttlesat {

enum class AuxFamily : std::uint8_t {
  Movement,       // move option: (t, chain, from, to)
  Arrival,        // chain arrived at edge this step: (t, edge, chain)
  Cardinality,    // sequential-counter register
  SequenceLater,  // some s-variable of element j is true at time >= t
  SequenceOrder,  // element j satisfied at t with j+1 satisfied later
};

std::string toString(AuxFamily family);

struct AuxVar {
  AuxFamily family;
  std::array<std::uint32_t, 4> args{}; // family-specific indices
};

/// Bijective mapping between problem coordinates and CNF variable ids.
/// Position variables x(t, e, i) come first, sequence variables s(t, j)
/// next, auxiliary gadget variables last.
class VarMap {
public:
  VarMap(std::uint32_t horizon, std::uint32_t edgeCount,
         std::uint32_t chainCount, std::uint32_t sequenceLength)
      : horizon_(horizon), edges_(edgeCount), chains_(chainCount),
        sequence_(sequenceLength) {}

  /// x^t_{e,i}: chain i occupies edge e at time t (t in 0..T).
  Lit x(std::uint32_t t, EdgeIndex e, ChainIndex i) const {
    return static_cast<Lit>(1 + (static_cast<std::uint64_t>(t) * edges_ + e) *
                                    chains_ +
                            i);
  }

  /// s^t_j: sequence element j is executed at time t (t in 1..T).
  Lit s(std::uint32_t t, std::uint32_t j) const {
    return static_cast<Lit>(positionCount() + 1 +
                            static_cast<std::uint64_t>(t - 1) * sequence_ + j);
  }

  std::uint64_t positionCount() const {
    return static_cast<std::uint64_t>(horizon_ + 1) * edges_ * chains_;
  }
  std::uint64_t sequenceCount() const {
    return static_cast<std::uint64_t>(horizon_) * sequence_;
  }
  std::uint32_t firstAuxVariable() const {
    return static_cast<std::uint32_t>(positionCount() + sequenceCount() + 1);
  }

  std::uint32_t horizon() const { return horizon_; }
  std::uint32_t edgeCount() const { return edges_; }
  std::uint32_t chainCount() const { return chains_; }
  std::uint32_t sequenceLength() const { return sequence_; }

  const std::vector<AuxVar>& auxRegistry() const { return aux_; }
  void registerAux(AuxVar aux) { aux_.push_back(aux); }

private:
  std::uint32_t horizon_;
  std::uint32_t edges_;
  std::uint32_t chains_;
  std::uint32_t sequence_;
  std::vector<AuxVar> aux_;
};

struct CnfStats {
  std::size_t initialState = 0;
  std::size_t chainPlacement = 0;
  std::size_t edgeCapacity = 0;
  std::size_t movement = 0;
  std::size_t nodeCrossing = 0;
  std::size_t processingDirection = 0;
  std::size_t sequence = 0;

  std::size_t total() const {
    return initialState + chainPlacement + edgeCapacity + movement +
           nodeCrossing + processingDirection + sequence;
  }
};

struct CnfInstance {
  std::uint32_t variableCount = 0;
  std::vector<std::vector<Lit>> clauses;
  VarMap varmap;
  CnfStats stats;
};

/// Builds the CNF for "problem admits a valid schedule of exactly T steps":
/// initial-state units, per-step validity (exactly-one placement, edge
/// capacities), transition rules (movement, node crossing, processing-zone
/// direction), and the target-sequence constraints. Deterministic: equal
/// inputs produce equal clause lists.
CnfInstance encode(const ProblemInstance& problem, std::uint32_t horizon);

/// Reads a satisfying model back into a schedule. Throws std::logic_error
/// if the model violates the exactly-one invariants (an encoder bug).
Schedule decodeSchedule(const std::vector<bool>& model, const VarMap& varmap);

} // namespace shuttlesat
