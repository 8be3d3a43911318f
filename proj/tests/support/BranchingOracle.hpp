#pragma once

// BFS oracle variant that branches on whether to claim a satisfied
// sequence element instead of advancing eagerly. Exists to check that
// eager advancement never changes the minimal horizon.

#include "shuttlesat/Problem.hpp"
#include "shuttlesat/Verify.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace testsupport {

inline std::optional<std::uint32_t>
branchingOracleMinimal(const shuttlesat::ProblemInstance& problem,
                       std::uint32_t cap) {
  using shuttlesat::EdgeIndex;
  using State = std::pair<std::vector<EdgeIndex>, std::uint32_t>;
  const auto sequenceLength =
      static_cast<std::uint32_t>(problem.sequence.size());
  const EdgeIndex eIn = problem.layout.inboundEdge();

  auto satisfiable = [&](std::uint32_t element,
                         const std::vector<EdgeIndex>& positions) {
    for (shuttlesat::ChainIndex i : problem.sequence.elements[element].chains)
      if (positions[i] != eIn)
        return false;
    return true;
  };

  std::set<State> visited;
  std::vector<State> frontier{{problem.placement, 0}};
  visited.insert(frontier.front());

  for (std::uint32_t depth = 1; depth <= cap && !frontier.empty(); ++depth) {
    std::vector<State> next;
    for (const State& state : frontier) {
      for (std::vector<EdgeIndex>& positions :
           shuttlesat::enumerateJointMoves(problem, state.first)) {
        std::vector<std::uint32_t> progressChoices{state.second};
        if (state.second < sequenceLength &&
            satisfiable(state.second, positions))
          progressChoices.push_back(state.second + 1);
        for (std::uint32_t progress : progressChoices) {
          if (progress == sequenceLength)
            return depth;
          State key{positions, progress};
          if (visited.insert(key).second)
            next.push_back(std::move(key));
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

} // namespace testsupport
