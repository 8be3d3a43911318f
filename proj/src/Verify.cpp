#include "shuttlesat/Verify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace shuttlesat {

using Json = nlohmann::ordered_json;

namespace {

std::string chainName(ChainIndex i) { return "i" + std::to_string(i); }

void checkStructure(const ProblemInstance& problem, const Schedule& schedule) {
  const std::uint32_t C = problem.chainCount();
  if (schedule.positions.size() != schedule.horizon + 1)
    throw std::invalid_argument("schedule has " +
                                std::to_string(schedule.positions.size()) +
                                " position rows for horizon " +
                                std::to_string(schedule.horizon));
  for (const std::vector<EdgeIndex>& row : schedule.positions) {
    if (row.size() != C)
      throw std::invalid_argument("schedule row does not cover every chain");
    for (EdgeIndex e : row)
      if (e >= problem.layout.edgeCount())
        throw std::invalid_argument("schedule references edge " +
                                    std::to_string(e) + " outside the layout");
  }
  if (schedule.satisfactionTimes.size() != problem.sequence.size())
    throw std::invalid_argument(
        "schedule has " + std::to_string(schedule.satisfactionTimes.size()) +
        " satisfaction times for " + std::to_string(problem.sequence.size()) +
        " sequence elements");
}

// Nodes a move from `from` to `to` passes over: the nodes joining
// consecutive edges along the unique shortest path (shared endpoints
// included, since the chain traverses them).
std::vector<NodeIndex> crossedNodes(const Layout& layout, EdgeIndex from,
                                    EdgeIndex to) {
  std::vector<NodeIndex> crossed;
  if (from == to)
    return crossed;
  std::vector<EdgeIndex> walk{from};
  if (layout.inExtendedNeighbors(from, to)) {
    const std::vector<EdgeIndex>& interior = layout.pathEdges(from, to);
    walk.insert(walk.end(), interior.begin(), interior.end());
  }
  walk.push_back(to);
  for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
    const Edge& a = layout.edge(walk[k]);
    const Edge& b = layout.edge(walk[k + 1]);
    for (NodeIndex w : {a.u, a.v})
      if (b.touches(w))
        crossed.push_back(w);
  }
  std::sort(crossed.begin(), crossed.end());
  crossed.erase(std::unique(crossed.begin(), crossed.end()), crossed.end());
  return crossed;
}

} // namespace

ValidationReport validateSchedule(const ProblemInstance& problem,
                                  const Schedule& schedule,
                                  ValidationMode mode) {
  checkStructure(problem, schedule);

  const Layout& layout = problem.layout;
  const std::uint32_t C = problem.chainCount();
  const EdgeIndex eIn = layout.inboundEdge();
  const EdgeIndex eOut = layout.outboundEdge();
  ValidationReport report;
  report.mode = mode;
  auto flag = [&](std::uint32_t t, std::string rule, std::string detail) {
    report.violations.push_back(Violation{t, std::move(rule), std::move(detail)});
  };

  // Initial state must match the problem's placement (interface empty).
  for (ChainIndex i = 0; i < C; ++i)
    if (schedule.positions[0][i] != problem.placement[i])
      flag(0, "initial-state",
           chainName(i) + " starts on edge " +
               std::to_string(schedule.positions[0][i]) + ", expected " +
               std::to_string(problem.placement[i]));

  // Per-step capacities. Exactly-one placement per chain is implied by the
  // schedule representation itself.
  for (std::uint32_t t = 0; t <= schedule.horizon; ++t) {
    std::unordered_map<EdgeIndex, std::uint32_t> load;
    for (ChainIndex i = 0; i < C; ++i)
      ++load[schedule.positions[t][i]];
    for (const auto& [e, count] : load) {
      std::uint32_t cap = e == eIn ? 2 : 1;
      if (count > cap)
        flag(t, "capacity",
             "edge " + std::to_string(e) + " holds " + std::to_string(count) +
                 " chains (capacity " + std::to_string(cap) + ")");
    }
  }

  // Transition rules.
  for (std::uint32_t t = 1; t <= schedule.horizon; ++t) {
    const std::vector<EdgeIndex>& before = schedule.positions[t - 1];
    const std::vector<EdgeIndex>& after = schedule.positions[t];

    for (ChainIndex i = 0; i < C; ++i) {
      EdgeIndex src = before[i];
      EdgeIndex dst = after[i];

      if (src == eOut) {
        if (dst != eIn)
          flag(t, "processing-outbound",
               chainName(i) + " must move from the outbound to the inbound "
                              "edge, went to edge " +
                   std::to_string(dst));
        continue;
      }
      if (src == eIn) {
        bool ok = dst == eIn;
        if (!ok) {
          const std::vector<EdgeIndex>& around = layout.neighbors(eIn);
          ok = dst != eOut &&
               std::binary_search(around.begin(), around.end(), dst);
        }
        if (!ok)
          flag(t, "processing-inbound-exit",
               chainName(i) + " left the inbound edge to non-neighbor edge " +
                   std::to_string(dst));
        continue;
      }

      // Memory-edge sources follow the movement constraint.
      if (dst == eIn) {
        flag(t, "processing-inbound-history",
             chainName(i) + " entered the inbound edge from edge " +
                 std::to_string(src));
        continue;
      }
      if (dst == src)
        continue;
      if (!layout.inExtendedNeighbors(src, dst)) {
        flag(t, "movement-target",
             chainName(i) + " jumped from edge " + std::to_string(src) +
                 " to non-reachable edge " + std::to_string(dst));
        continue;
      }
      for (EdgeIndex blocked : layout.pathEdges(src, dst))
        for (ChainIndex other = 0; other < C; ++other)
          if (other != i && before[other] == blocked)
            flag(t, "movement-path",
                 chainName(i) + " moved " + std::to_string(src) + "->" +
                     std::to_string(dst) + " across edge " +
                     std::to_string(blocked) + " occupied by " +
                     chainName(other));
    }

    // Node-crossing limit.
    std::unordered_map<NodeIndex, std::vector<ChainIndex>> crossings;
    for (ChainIndex i = 0; i < C; ++i) {
      EdgeIndex src = before[i];
      EdgeIndex dst = after[i];
      if (mode == ValidationMode::EncodingFaithful) {
        // Arrival semantics: chain i "passes" both endpoints of its new
        // edge whenever it arrived there from one of its former edges.
        const std::vector<EdgeIndex>& former = layout.formerEdges(dst);
        if (!std::binary_search(former.begin(), former.end(), src))
          continue;
        const Edge& e = layout.edge(dst);
        for (NodeIndex w : {e.u, e.v})
          if (layout.node(w).kind != NodeKind::Processing)
            crossings[w].push_back(i);
      } else {
        for (NodeIndex w : crossedNodes(layout, src, dst))
          if (layout.node(w).kind != NodeKind::Processing)
            crossings[w].push_back(i);
      }
    }
    for (const auto& [node, chains] : crossings) {
      if (chains.size() <= 1)
        continue;
      std::string detail = "node " + std::to_string(node) + " crossed by";
      for (ChainIndex i : chains)
        detail += " " + chainName(i);
      flag(t, "node-crossing", detail);
    }
  }

  // Sequence satisfaction: strictly increasing times in 1..T, with the
  // element's chains together on the inbound edge.
  std::uint32_t previous = 0;
  for (std::size_t j = 0; j < schedule.satisfactionTimes.size(); ++j) {
    std::uint32_t tj = schedule.satisfactionTimes[j];
    if (tj < 1 || tj > schedule.horizon) {
      flag(tj, "sequence-order",
           "element " + std::to_string(j) + " satisfied at t=" +
               std::to_string(tj) + " outside 1.." +
               std::to_string(schedule.horizon));
      continue;
    }
    if (j > 0 && tj <= previous)
      flag(tj, "sequence-order",
           "element " + std::to_string(j) + " not strictly after element " +
               std::to_string(j - 1));
    for (ChainIndex i : problem.sequence.elements[j].chains)
      if (schedule.positions[tj][i] != layout.inboundEdge())
        flag(tj, "sequence-presence",
             "element " + std::to_string(j) + " requires " + chainName(i) +
                 " on the inbound edge");
    previous = tj;
  }

  return report;
}

std::string renderReport(const ValidationReport& report) {
  std::ostringstream out;
  out << "mode: "
      << (report.mode == ValidationMode::EncodingFaithful ? "encoding-faithful"
                                                          : "physical")
      << "\n";
  for (const Violation& v : report.violations)
    out << "t=" << v.time << " [" << v.rule << "] " << v.detail << "\n";
  out << (report.valid() ? "valid" : "invalid: " +
                                         std::to_string(
                                             report.violations.size()) +
                                         " violation(s)")
      << "\n";
  return out.str();
}

std::string serializeReport(const ValidationReport& report) {
  Json doc = Json::object();
  doc["mode"] = report.mode == ValidationMode::EncodingFaithful
                    ? "encoding-faithful"
                    : "physical";
  doc["valid"] = report.valid();
  Json violations = Json::array();
  for (const Violation& v : report.violations) {
    Json item = Json::object();
    item["time"] = v.time;
    item["rule"] = v.rule;
    item["detail"] = v.detail;
    violations.push_back(std::move(item));
  }
  doc["violations"] = std::move(violations);
  return doc.dump(2) + "\n";
}

Schedule mutateSchedule(const Schedule& schedule, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Schedule mutated = schedule;
  const std::uint32_t T = schedule.horizon;
  const auto C = static_cast<std::uint32_t>(schedule.positions.at(0).size());
  std::uint64_t kind = rng.nextBelow(3);
  if (kind == 1 && C < 2)
    kind = 0;
  switch (kind) {
  case 0: { // reassign one chain's edge at one step
    auto t = static_cast<std::uint32_t>(rng.nextBelow(T + 1));
    auto i = static_cast<ChainIndex>(rng.nextBelow(C));
    // The caller knows the layout's edge count; stay within the occupied
    // range plus a margin so most mutations remain structurally valid.
    EdgeIndex maxEdge = 0;
    for (const std::vector<EdgeIndex>& row : schedule.positions)
      for (EdgeIndex e : row)
        maxEdge = std::max(maxEdge, e);
    mutated.positions[t][i] =
        static_cast<EdgeIndex>(rng.nextBelow(maxEdge + 2));
    break;
  }
  case 1: { // swap two chains at one step
    auto t = static_cast<std::uint32_t>(rng.nextBelow(T + 1));
    auto i = static_cast<ChainIndex>(rng.nextBelow(C));
    auto k = static_cast<ChainIndex>(rng.nextBelow(C - 1));
    if (k >= i)
      ++k;
    std::swap(mutated.positions[t][i], mutated.positions[t][k]);
    break;
  }
  default: { // move one satisfaction time
    if (mutated.satisfactionTimes.empty())
      break;
    auto j = static_cast<std::size_t>(
        rng.nextBelow(mutated.satisfactionTimes.size()));
    mutated.satisfactionTimes[j] =
        static_cast<std::uint32_t>(1 + rng.nextBelow(T));
    break;
  }
  }
  return mutated;
}

} // namespace shuttlesat
