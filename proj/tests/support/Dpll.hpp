#pragma once

// Minimal DPLL solver used as an independent reference next to the CDCL
// backend: plain unit propagation and chronological backtracking, no
// learning, no heuristics. Deliberately simple so its verdicts are easy to
// trust on small inputs.

#include <cstdint>
#include <set>
#include <vector>

namespace testsupport {

using Clauses = std::vector<std::vector<std::int32_t>>;

class Dpll {
public:
  Dpll(std::uint32_t variableCount, const Clauses& clauses)
      : clauses_(clauses), assign_(variableCount + 1, 0) {}

  bool satisfiable() { return search(); }

  /// Fixes the first `fixed.size()` variables to the given values and asks
  /// for extension-satisfiability.
  bool satisfiableWith(const std::vector<bool>& fixed) {
    for (std::size_t v = 1; v <= fixed.size(); ++v)
      assign_[v] = fixed[v - 1] ? 1 : -1;
    return search();
  }

  /// Satisfiability under assumption literals (DIMACS convention).
  bool satisfiableAssuming(const std::vector<std::int32_t>& assumptions) {
    for (std::int32_t lit : assumptions) {
      auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      std::int8_t want = lit < 0 ? -1 : 1;
      if (assign_[var] != 0 && assign_[var] != want)
        return false;
      assign_[var] = want;
    }
    return search();
  }

private:
  int value(std::int32_t lit) const {
    int a = assign_[static_cast<std::size_t>(lit < 0 ? -lit : lit)];
    return lit < 0 ? -a : a;
  }

  // Returns false on conflict; appends every propagated variable to trail.
  bool propagate(std::vector<std::uint32_t>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const std::vector<std::int32_t>& clause : clauses_) {
        std::int32_t unassigned = 0;
        int freeCount = 0;
        bool satisfied = false;
        for (std::int32_t lit : clause) {
          int v = value(lit);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++freeCount;
            unassigned = lit;
          }
        }
        if (satisfied)
          continue;
        if (freeCount == 0)
          return false;
        if (freeCount == 1) {
          std::uint32_t var =
              static_cast<std::uint32_t>(unassigned < 0 ? -unassigned : unassigned);
          assign_[var] = unassigned < 0 ? -1 : 1;
          trail.push_back(var);
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    std::vector<std::uint32_t> trail;
    if (!propagate(trail)) {
      undo(trail);
      return false;
    }
    std::uint32_t branch = 0;
    for (std::uint32_t v = 1; v < assign_.size(); ++v)
      if (assign_[v] == 0) {
        branch = v;
        break;
      }
    if (branch == 0) {
      undo(trail);
      return true;
    }
    for (int phase : {1, -1}) {
      assign_[branch] = phase;
      if (search()) {
        assign_[branch] = 0;
        undo(trail);
        return true;
      }
      assign_[branch] = 0;
    }
    undo(trail);
    return false;
  }

  void undo(std::vector<std::uint32_t>& trail) {
    for (std::uint32_t v : trail)
      assign_[v] = 0;
    trail.clear();
  }

  const Clauses& clauses_;
  std::vector<std::int8_t> assign_;
};

inline bool dpllSatisfiable(std::uint32_t variableCount,
                            const Clauses& clauses) {
  return Dpll(variableCount, clauses).satisfiable();
}

/// All assignments of variables 1..projected that extend to a full model.
inline std::set<std::vector<bool>>
projectedModels(std::uint32_t variableCount, const Clauses& clauses,
                std::uint32_t projected) {
  std::set<std::vector<bool>> models;
  std::vector<bool> fixed(projected, false);
  for (std::uint64_t bits = 0; bits < (1ULL << projected); ++bits) {
    for (std::uint32_t v = 0; v < projected; ++v)
      fixed[v] = (bits >> v) & 1;
    Dpll solver(variableCount, clauses);
    if (solver.satisfiableWith(fixed))
      models.insert(fixed);
  }
  return models;
}

/// All assignments of the listed variables that extend to a full model.
inline std::set<std::vector<bool>>
projectedModelsOver(std::uint32_t variableCount, const Clauses& clauses,
                    const std::vector<std::uint32_t>& variables) {
  std::set<std::vector<bool>> models;
  std::vector<std::int32_t> assumptions(variables.size());
  std::vector<bool> bits(variables.size(), false);
  for (std::uint64_t word = 0; word < (1ULL << variables.size()); ++word) {
    for (std::size_t v = 0; v < variables.size(); ++v) {
      bits[v] = (word >> v) & 1;
      assumptions[v] = bits[v] ? static_cast<std::int32_t>(variables[v])
                               : -static_cast<std::int32_t>(variables[v]);
    }
    Dpll solver(variableCount, clauses);
    if (solver.satisfiableAssuming(assumptions))
      models.insert(bits);
  }
  return models;
}

} // namespace testsupport
