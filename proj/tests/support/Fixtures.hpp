#pragma once

// Shared tiny layouts and seeded instance generators for the test suites.

#include "shuttlesat/Layout.hpp"
#include "shuttlesat/Problem.hpp"

#include <cstdint>
#include <vector>

namespace testsupport {

using namespace shuttlesat;

/// A straight street of `sites` memory edges between two junctions, with
/// the processing-zone interface attached at the left end (node 0).
inline Layout lineLayout(std::uint32_t sites) {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  nodes.push_back(Node{NodeKind::Major}); // 0: left junction, interface here
  NodeIndex prev = 0;
  for (std::uint32_t s = 0; s + 1 < sites; ++s) {
    nodes.push_back(Node{NodeKind::Minor});
    edges.push_back(Edge{prev, static_cast<NodeIndex>(nodes.size() - 1),
                         EdgeKind::Memory});
    prev = static_cast<NodeIndex>(nodes.size() - 1);
  }
  nodes.push_back(Node{NodeKind::Major}); // right junction
  edges.push_back(
      Edge{prev, static_cast<NodeIndex>(nodes.size() - 1), EdgeKind::Memory});
  nodes.push_back(Node{NodeKind::Processing});
  auto processing = static_cast<NodeIndex>(nodes.size() - 1);
  edges.push_back(Edge{0, processing, EdgeKind::Outbound});
  edges.push_back(Edge{processing, 0, EdgeKind::Inbound});
  return Layout::explicitGraph(std::move(nodes), std::move(edges));
}

/// Connected 10-edge subgraph of the 3x3 lattice (two corner edges
/// removed), interface at the top-right junction. 12 edges total, exactly
/// the default oracle guard.
inline Layout lattice3x3Subgraph() {
  std::vector<Node> nodes(9, Node{NodeKind::Major});
  nodes.push_back(Node{NodeKind::Processing});
  std::vector<Edge> edges;
  auto mem = [&](NodeIndex u, NodeIndex v) {
    edges.push_back(Edge{u, v, EdgeKind::Memory});
  };
  mem(1, 2); // (0,1) dropped
  mem(3, 4);
  mem(4, 5);
  mem(6, 7);
  mem(7, 8);
  mem(0, 3);
  mem(1, 4);
  mem(2, 5);
  mem(3, 6); // (4,7) dropped
  mem(5, 8);
  edges.push_back(Edge{2, 9, EdgeKind::Outbound});
  edges.push_back(Edge{9, 2, EdgeKind::Inbound});
  return Layout::explicitGraph(std::move(nodes), std::move(edges));
}

/// Seeded tiny instance within the default oracle guard: one of four small
/// layouts, 1..3 chains, sequence of 1..4 singleton/pair elements.
inline ProblemInstance tinyInstance(std::uint64_t seed) {
  SplitMix64 rng(seed);
  Layout layout = [&]() -> Layout {
    switch (rng.nextBelow(4)) {
    case 0:
      return Layout::grid(2, 2, 1, 1);
    case 1:
      return Layout::grid(2, 2, 1, 2);
    case 2:
      return lineLayout(4);
    default:
      return lattice3x3Subgraph();
    }
  }();
  auto chains = static_cast<std::uint32_t>(1 + rng.nextBelow(3));
  std::vector<EdgeIndex> placement =
      randomPlacement(layout, chains, rng.next());
  auto seqLen = static_cast<std::uint32_t>(1 + rng.nextBelow(4));
  Sequence sequence;
  for (std::uint32_t j = 0; j < seqLen; ++j) {
    SequenceElement element;
    auto a = static_cast<ChainIndex>(rng.nextBelow(chains));
    if (chains >= 2 && rng.nextBelow(3) == 0) {
      auto b = static_cast<ChainIndex>(rng.nextBelow(chains - 1));
      if (b >= a)
        ++b;
      element.chains = {std::min(a, b), std::max(a, b)};
    } else {
      element.chains = {a};
    }
    sequence.elements.push_back(std::move(element));
  }
  ProblemInstance problem{std::move(layout), std::move(placement),
                          std::move(sequence), seed,
                          "tiny-" + std::to_string(seed)};
  validateProblem(problem);
  return problem;
}

} // namespace testsupport
