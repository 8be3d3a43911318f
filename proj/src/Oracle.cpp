#include "shuttlesat/Verify.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shuttlesat {

namespace {

struct StateKey {
  std::vector<EdgeIndex> positions;
  std::uint32_t progress = 0;

  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& key) const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ULL;
    };
    for (EdgeIndex e : key.positions)
      mix(e + 1);
    mix(key.progress + 0x9e3779b9ULL);
    return static_cast<std::size_t>(h);
  }
};

struct StateRecord {
  std::vector<EdgeIndex> positions;
  std::uint32_t progress = 0;
  std::uint32_t parent = 0;
};

struct Successor {
  std::vector<EdgeIndex> positions;
  std::uint32_t progress = 0;
};

void checkGuard(const ProblemInstance& problem, const OracleGuard& guard) {
  if (!guard.enforce)
    return;
  if (problem.layout.edgeCount() > guard.maxEdges ||
      problem.chainCount() > guard.maxChains ||
      problem.sequence.size() > guard.maxSequence)
    throw std::invalid_argument(
        "instance exceeds the oracle size guard (|E| <= " +
        std::to_string(guard.maxEdges) + ", |C| <= " +
        std::to_string(guard.maxChains) + ", |S| <= " +
        std::to_string(guard.maxSequence) + "); override the guard to force");
}

bool elementSatisfied(const ProblemInstance& problem, std::uint32_t element,
                      const std::vector<EdgeIndex>& positions) {
  const EdgeIndex eIn = problem.layout.inboundEdge();
  for (ChainIndex i : problem.sequence.elements[element].chains)
    if (positions[i] != eIn)
      return false;
  return true;
}

std::uint32_t advanceProgress(const ProblemInstance& problem,
                              std::uint32_t progress,
                              const std::vector<EdgeIndex>& positions) {
  if (progress < problem.sequence.size() &&
      elementSatisfied(problem, progress, positions))
    return progress + 1;
  return progress;
}

std::vector<Successor> successorsOf(const ProblemInstance& problem,
                                    const StateRecord& state) {
  std::vector<Successor> out;
  for (std::vector<EdgeIndex>& positions :
       enumerateJointMoves(problem, state.positions)) {
    std::uint32_t progress = advanceProgress(problem, state.progress, positions);
    out.push_back(Successor{std::move(positions), progress});
  }
  return out;
}

Schedule buildWitness(const std::vector<StateRecord>& states,
                      std::uint32_t finalIndex, std::uint32_t depth,
                      std::uint32_t sequenceLength) {
  std::vector<std::uint32_t> path;
  for (std::uint32_t idx = finalIndex;; idx = states[idx].parent) {
    path.push_back(idx);
    if (path.size() == static_cast<std::size_t>(depth) + 1)
      break;
  }
  std::reverse(path.begin(), path.end());

  Schedule witness;
  witness.horizon = depth;
  for (std::uint32_t idx : path)
    witness.positions.push_back(states[idx].positions);
  witness.satisfactionTimes.assign(sequenceLength, 0);
  for (std::uint32_t t = 1; t <= depth; ++t) {
    std::uint32_t before = states[path[t - 1]].progress;
    std::uint32_t after = states[path[t]].progress;
    if (after > before)
      witness.satisfactionTimes[before] = t;
  }
  return witness;
}

OracleResult oracleSearch(const ProblemInstance& problem,
                          std::uint32_t horizonCap, const OracleGuard& guard,
                          bool parallel) {
  checkGuard(problem, guard);
  validateProblem(problem);

  const auto sequenceLength =
      static_cast<std::uint32_t>(problem.sequence.size());
  std::vector<StateRecord> states;
  std::unordered_map<StateKey, std::uint32_t, StateKeyHash> visited;

  states.push_back(StateRecord{problem.placement, 0, 0});
  visited.emplace(StateKey{problem.placement, 0}, 0);
  std::uint64_t explored = 1;
  std::vector<std::uint32_t> frontier{0};

  for (std::uint32_t depth = 1; depth <= horizonCap && !frontier.empty();
       ++depth) {
    std::vector<std::vector<Successor>> produced(frontier.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
      for (std::int64_t f = 0;
           f < static_cast<std::int64_t>(frontier.size()); ++f)
        produced[f] = successorsOf(problem, states[frontier[f]]);
    } else {
      for (std::size_t f = 0; f < frontier.size(); ++f)
        produced[f] = successorsOf(problem, states[frontier[f]]);
    }

    // Merge in frontier order so results (including the witness and the
    // explored-state count) are identical with and without parallelism.
    std::vector<std::uint32_t> next;
    for (std::size_t f = 0; f < frontier.size(); ++f) {
      for (Successor& succ : produced[f]) {
        StateKey key{succ.positions, succ.progress};
        if (visited.contains(key))
          continue;
        auto index = static_cast<std::uint32_t>(states.size());
        states.push_back(StateRecord{std::move(succ.positions), succ.progress,
                                     frontier[f]});
        visited.emplace(std::move(key), index);
        ++explored;
        if (succ.progress == sequenceLength) {
          OracleResult result;
          result.minimalT = depth;
          result.exploredStates = explored;
          result.witness =
              buildWitness(states, index, depth, sequenceLength);
          return result;
        }
        next.push_back(index);
      }
    }
    frontier = std::move(next);
  }

  return OracleResult{std::nullopt, explored, std::nullopt};
}

} // namespace

std::vector<std::vector<EdgeIndex>>
enumerateJointMoves(const ProblemInstance& problem,
                    const std::vector<EdgeIndex>& positions) {
  const Layout& layout = problem.layout;
  const auto C = static_cast<ChainIndex>(positions.size());
  const EdgeIndex eIn = layout.inboundEdge();
  const EdgeIndex eOut = layout.outboundEdge();

  std::vector<std::uint32_t> load(layout.edgeCount(), 0);
  for (EdgeIndex e : positions)
    ++load[e];

  // Per-chain move candidates against the pre-move state.
  std::vector<std::vector<EdgeIndex>> candidates(C);
  for (ChainIndex i = 0; i < C; ++i) {
    EdgeIndex src = positions[i];
    std::vector<EdgeIndex>& mine = candidates[i];
    if (src == eOut) {
      mine.push_back(eIn);
      continue;
    }
    if (src == eIn) {
      mine.push_back(eIn);
      for (EdgeIndex n : layout.neighbors(eIn))
        if (n != eIn && n != eOut)
          mine.push_back(n);
      std::sort(mine.begin(), mine.end());
      continue;
    }
    for (EdgeIndex target : layout.extendedNeighbors(src)) {
      if (target == eIn)
        continue; // memory chains may not enter the inbound edge directly
      bool blocked = false;
      for (EdgeIndex onPath : layout.pathEdges(src, target)) {
        std::uint32_t others = load[onPath] - (onPath == src ? 1 : 0);
        if (others > 0) {
          blocked = true;
          break;
        }
      }
      if (!blocked)
        mine.push_back(target);
    }
  }

  std::vector<std::vector<EdgeIndex>> result;
  std::vector<EdgeIndex> chosen(C, 0);
  std::vector<std::uint32_t> newLoad(layout.edgeCount(), 0);
  std::vector<std::uint32_t> crossings(layout.nodeCount(), 0);

  auto expand = [&](auto&& self, ChainIndex i) -> void {
    if (i == C) {
      result.push_back(chosen);
      return;
    }
    for (EdgeIndex dst : candidates[i]) {
      std::uint32_t cap = dst == eIn ? 2 : 1;
      if (newLoad[dst] + 1 > cap)
        continue;
      const bool moved = dst != positions[i];
      const Edge& edge = layout.edge(dst);
      bool crossingOk = true;
      if (moved) {
        for (NodeIndex w : {edge.u, edge.v})
          if (layout.node(w).kind != NodeKind::Processing &&
              crossings[w] != 0) {
            crossingOk = false;
            break;
          }
      }
      if (!crossingOk)
        continue;
      ++newLoad[dst];
      if (moved)
        for (NodeIndex w : {edge.u, edge.v})
          if (layout.node(w).kind != NodeKind::Processing)
            ++crossings[w];
      chosen[i] = dst;
      self(self, i + 1);
      --newLoad[dst];
      if (moved)
        for (NodeIndex w : {edge.u, edge.v})
          if (layout.node(w).kind != NodeKind::Processing)
            --crossings[w];
    }
  };
  expand(expand, 0);
  return result;
}

OracleResult oracleMinimal(const ProblemInstance& problem,
                           std::uint32_t horizonCap, OracleGuard guard) {
  return oracleSearch(problem, horizonCap, guard, true);
}

OracleResult oracleMinimalSerial(const ProblemInstance& problem,
                                 std::uint32_t horizonCap, OracleGuard guard) {
  return oracleSearch(problem, horizonCap, guard, false);
}

} // namespace shuttlesat
