#include "shuttlesat/Layout.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>

namespace shuttlesat {

std::string toString(NodeKind kind) {
  switch (kind) {
  case NodeKind::Major:
    return "major";
  case NodeKind::Minor:
    return "minor";
  case NodeKind::Processing:
    return "processing";
  }
  return "?";
}

std::string toString(EdgeKind kind) {
  switch (kind) {
  case EdgeKind::Memory:
    return "memory";
  case EdgeKind::Inbound:
    return "inbound";
  case EdgeKind::Outbound:
    return "outbound";
  }
  return "?";
}

namespace {

void sortUnique(std::vector<EdgeIndex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool onBoundary(const GridCoord& c, std::uint32_t m, std::uint32_t n) {
  return c.row == 0 || c.row + 1 == m || c.col == 0 || c.col + 1 == n;
}

} // namespace

Layout Layout::grid(std::uint32_t m, std::uint32_t n, std::uint32_t v,
                    std::uint32_t h, std::optional<Attachment> attach) {
  if (m < 2 || n < 2)
    throw std::invalid_argument("grid layout requires m >= 2 and n >= 2");
  if (v < 1 || h < 1)
    throw std::invalid_argument("grid layout requires v >= 1 and h >= 1");

  Attachment att = attach.value_or(Attachment{{0, n - 1}, {0, n - 1}});
  for (const GridCoord& c : {att.exit, att.entry}) {
    if (c.row >= m || c.col >= n)
      throw std::invalid_argument("attachment node outside the grid");
    if (!onBoundary(c, m, n))
      throw std::invalid_argument(
          "attachment node must be a boundary junction");
  }

  Layout layout;
  layout.nodes_.assign(static_cast<std::size_t>(m) * n,
                       Node{NodeKind::Major});

  auto major = [n](std::uint32_t r, std::uint32_t c) -> NodeIndex {
    return r * n + c;
  };

  // One segment of `count` edges between junctions a and b, inserting
  // count-1 minor nodes. Edges run from the lower-indexed junction.
  auto addSegment = [&](NodeIndex a, NodeIndex b, std::uint32_t count) {
    NodeIndex prev = a;
    for (std::uint32_t s = 0; s + 1 < count; ++s) {
      layout.nodes_.push_back(Node{NodeKind::Minor});
      NodeIndex minor = static_cast<NodeIndex>(layout.nodes_.size() - 1);
      layout.edges_.push_back(Edge{prev, minor, EdgeKind::Memory});
      prev = minor;
    }
    layout.edges_.push_back(Edge{prev, b, EdgeKind::Memory});
  };

  // All horizontal segments first, then vertical, both row-major.
  for (std::uint32_t r = 0; r < m; ++r)
    for (std::uint32_t c = 0; c + 1 < n; ++c)
      addSegment(major(r, c), major(r, c + 1), h);
  for (std::uint32_t r = 0; r + 1 < m; ++r)
    for (std::uint32_t c = 0; c < n; ++c)
      addSegment(major(r, c), major(r + 1, c), v);

  layout.memoryEdgeCount_ = static_cast<std::uint32_t>(layout.edges_.size());
  assert(layout.memoryEdgeCount_ == (m - 1) * n * v + m * (n - 1) * h);

  layout.nodes_.push_back(Node{NodeKind::Processing});
  layout.processingNode_ = static_cast<NodeIndex>(layout.nodes_.size() - 1);
  layout.exitNode_ = major(att.exit.row, att.exit.col);
  layout.entryNode_ = major(att.entry.row, att.entry.col);

  layout.outboundEdge_ = static_cast<EdgeIndex>(layout.edges_.size());
  layout.edges_.push_back(
      Edge{layout.exitNode_, layout.processingNode_, EdgeKind::Outbound});
  layout.inboundEdge_ = static_cast<EdgeIndex>(layout.edges_.size());
  layout.edges_.push_back(
      Edge{layout.processingNode_, layout.entryNode_, EdgeKind::Inbound});

  layout.gridParams_ = GridParams{m, n, v, h, att};
  layout.finalize();
  return layout;
}

Layout Layout::explicitGraph(std::vector<Node> nodes,
                             std::vector<Edge> edges) {
  Layout layout;
  layout.nodes_ = std::move(nodes);
  layout.edges_ = std::move(edges);

  if (layout.nodes_.empty() || layout.edges_.empty())
    throw std::invalid_argument("explicit layout must have nodes and edges");

  const auto nodeCount = static_cast<NodeIndex>(layout.nodes_.size());
  std::optional<NodeIndex> processing;
  for (NodeIndex i = 0; i < nodeCount; ++i) {
    if (layout.nodes_[i].kind == NodeKind::Processing) {
      if (processing)
        throw std::invalid_argument("layout must have exactly one processing node");
      processing = i;
    }
  }
  if (!processing)
    throw std::invalid_argument("layout must have exactly one processing node");
  layout.processingNode_ = *processing;

  std::optional<EdgeIndex> inbound;
  std::optional<EdgeIndex> outbound;
  std::uint32_t memoryEdges = 0;
  for (EdgeIndex e = 0; e < layout.edges_.size(); ++e) {
    const Edge& edge = layout.edges_[e];
    if (edge.u >= nodeCount || edge.v >= nodeCount || edge.u == edge.v)
      throw std::invalid_argument("edge " + std::to_string(e) +
                                  " has invalid endpoints");
    switch (edge.kind) {
    case EdgeKind::Memory:
      if (e != memoryEdges)
        throw std::invalid_argument("memory edges must precede interface edges");
      if (edge.touches(layout.processingNode_))
        throw std::invalid_argument(
            "memory edges must not touch the processing node");
      ++memoryEdges;
      break;
    case EdgeKind::Inbound:
      if (inbound)
        throw std::invalid_argument("layout must have exactly one inbound edge");
      inbound = e;
      break;
    case EdgeKind::Outbound:
      if (outbound)
        throw std::invalid_argument("layout must have exactly one outbound edge");
      outbound = e;
      break;
    }
  }
  if (!inbound || !outbound)
    throw std::invalid_argument(
        "layout must have exactly one inbound and one outbound edge");
  layout.inboundEdge_ = *inbound;
  layout.outboundEdge_ = *outbound;
  layout.memoryEdgeCount_ = memoryEdges;
  if (memoryEdges == 0)
    throw std::invalid_argument("layout must have at least one memory edge");

  auto interfaceAnchor = [&](EdgeIndex e, const char* what) -> NodeIndex {
    const Edge& edge = layout.edges_[e];
    if (!edge.touches(layout.processingNode_))
      throw std::invalid_argument(std::string(what) +
                                  " edge must touch the processing node");
    NodeIndex anchor = edge.other(layout.processingNode_);
    if (layout.nodes_[anchor].kind != NodeKind::Major)
      throw std::invalid_argument(std::string(what) +
                                  " edge must attach to a junction");
    return anchor;
  };
  layout.exitNode_ = interfaceAnchor(layout.outboundEdge_, "outbound");
  layout.entryNode_ = interfaceAnchor(layout.inboundEdge_, "inbound");

  // Degree validation must precede finalize(): the junction walks there
  // rely on minor nodes having exactly two incident edges.
  std::vector<std::size_t> degree(nodeCount, 0);
  for (const Edge& edge : layout.edges_) {
    ++degree[edge.u];
    ++degree[edge.v];
  }
  for (NodeIndex i = 0; i < nodeCount; ++i) {
    if (degree[i] == 0)
      throw std::invalid_argument("node " + std::to_string(i) +
                                  " has no incident edges");
    if (layout.nodes_[i].kind == NodeKind::Minor && degree[i] != 2)
      throw std::invalid_argument("minor node " + std::to_string(i) +
                                  " must have degree exactly 2");
    if (layout.nodes_[i].kind == NodeKind::Processing && degree[i] != 2)
      throw std::invalid_argument(
          "processing node must touch exactly the interface edges");
  }

  layout.finalize();

  // Memory subgraph connectivity.
  std::vector<bool> seen(nodeCount, false);
  std::queue<NodeIndex> pending;
  NodeIndex start = layout.edges_[0].u;
  seen[start] = true;
  pending.push(start);
  while (!pending.empty()) {
    NodeIndex cur = pending.front();
    pending.pop();
    for (EdgeIndex e : layout.incident_[cur]) {
      if (layout.edges_[e].kind != EdgeKind::Memory)
        continue;
      NodeIndex next = layout.edges_[e].other(cur);
      if (!seen[next]) {
        seen[next] = true;
        pending.push(next);
      }
    }
  }
  for (EdgeIndex e = 0; e < layout.memoryEdgeCount_; ++e)
    if (!seen[layout.edges_[e].u] || !seen[layout.edges_[e].v])
      throw std::invalid_argument("memory edges must form a connected graph");

  return layout;
}

void Layout::finalize() {
  const auto edgeCount = static_cast<EdgeIndex>(edges_.size());
  incident_.assign(nodes_.size(), {});
  for (EdgeIndex e = 0; e < edgeCount; ++e) {
    incident_[edges_[e].u].push_back(e);
    incident_[edges_[e].v].push_back(e);
  }

  neighborSets_.assign(edgeCount, {});
  for (EdgeIndex e = 0; e < edgeCount; ++e) {
    std::vector<EdgeIndex>& set = neighborSets_[e];
    set.push_back(e);
    for (NodeIndex w : {edges_[e].u, edges_[e].v})
      for (EdgeIndex other : incident_[w])
        set.push_back(other);
    sortUnique(set);
  }

  // Walks from one endpoint of e to the nearest junction, returning the
  // junction plus the edges strictly between e and it, in walk order. The
  // processing node is a dead end: movement through it is governed solely
  // by the processing-zone constraints.
  struct Walk {
    NodeIndex junction;
    std::vector<EdgeIndex> between;
  };
  auto walkToJunction = [&](EdgeIndex e,
                            NodeIndex endpoint) -> std::optional<Walk> {
    Walk walk;
    EdgeIndex prev = e;
    NodeIndex cur = endpoint;
    while (nodes_[cur].kind == NodeKind::Minor) {
      if (walk.between.size() > edges_.size())
        throw std::invalid_argument("segment of minor nodes without junction");
      const std::vector<EdgeIndex>& inc = incident_[cur];
      EdgeIndex next = inc[0] == prev ? inc[1] : inc[0];
      walk.between.push_back(next);
      cur = edges_[next].other(cur);
      prev = next;
    }
    if (nodes_[cur].kind != NodeKind::Major)
      return std::nullopt;
    walk.junction = cur;
    return walk;
  };

  extendedSets_.assign(edgeCount, {});
  paths_.assign(edgeCount, {});
  for (EdgeIndex e = 0; e < edgeCount; ++e) {
    std::vector<std::pair<EdgeIndex, std::vector<EdgeIndex>>> found;
    for (EdgeIndex t : neighborSets_[e])
      found.emplace_back(t, std::vector<EdgeIndex>{});

    auto record = [&](EdgeIndex t, std::vector<EdgeIndex> interior) {
      for (auto& [target, path] : found) {
        if (target != t)
          continue;
        if (interior.size() < path.size()) {
          path = std::move(interior);
        } else if (interior.size() == path.size() && interior != path) {
          // The grid construction never produces ties; explicit layouts
          // that do are rejected rather than tie-broken.
          throw std::logic_error("ambiguous shortest path between edges " +
                                 std::to_string(e) + " and " +
                                 std::to_string(t));
        }
        return;
      }
      found.emplace_back(t, std::move(interior));
    };

    for (NodeIndex endpoint : {edges_[e].u, edges_[e].v}) {
      std::optional<Walk> walk = walkToJunction(e, endpoint);
      if (!walk)
        continue;
      for (EdgeIndex t : incident_[walk->junction]) {
        if (t == e)
          continue;
        std::vector<EdgeIndex> interior = walk->between;
        if (!interior.empty() && interior.back() == t)
          interior.pop_back();
        record(t, std::move(interior));
      }
    }

    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [target, path] : found)
      extendedSets_[e].push_back(target);
    paths_[e] = std::move(found);
  }

  formerSets_.assign(edgeCount, {});
  for (EdgeIndex e = 0; e < edgeCount; ++e)
    for (EdgeIndex t : extendedSets_[e])
      if (t != e)
        formerSets_[t].push_back(e);
  for (EdgeIndex e = 0; e < edgeCount; ++e)
    sortUnique(formerSets_[e]);
}

const std::vector<EdgeIndex>& Layout::neighbors(EdgeIndex e) const {
  return neighborSets_.at(e);
}

const std::vector<EdgeIndex>& Layout::extendedNeighbors(EdgeIndex e) const {
  return extendedSets_.at(e);
}

bool Layout::inExtendedNeighbors(EdgeIndex e, EdgeIndex target) const {
  const std::vector<EdgeIndex>& set = extendedSets_.at(e);
  return std::binary_search(set.begin(), set.end(), target);
}

const std::vector<EdgeIndex>& Layout::pathEdges(EdgeIndex e,
                                                EdgeIndex target) const {
  const auto& entries = paths_.at(e);
  auto it = std::lower_bound(
      entries.begin(), entries.end(), target,
      [](const auto& entry, EdgeIndex t) { return entry.first < t; });
  if (it == entries.end() || it->first != target)
    throw std::domain_error("edge " + std::to_string(target) +
                            " is not an extended neighbor of " +
                            std::to_string(e));
  return it->second;
}

const std::vector<EdgeIndex>& Layout::formerEdges(EdgeIndex e) const {
  return formerSets_.at(e);
}

const std::vector<EdgeIndex>& Layout::sharingEdges(NodeIndex v) const {
  return incident_.at(v);
}

NodeIndex Layout::majorNode(std::uint32_t row, std::uint32_t col) const {
  if (!gridParams_)
    throw std::logic_error("majorNode() requires a grid layout");
  if (row >= gridParams_->m || col >= gridParams_->n)
    throw std::invalid_argument("major node position outside the grid");
  return row * gridParams_->n + col;
}

EdgeIndex Layout::horizontalEdge(std::uint32_t row, std::uint32_t col,
                                 std::uint32_t slot) const {
  if (!gridParams_)
    throw std::logic_error("horizontalEdge() requires a grid layout");
  const GridParams& g = *gridParams_;
  if (row >= g.m || col + 1 >= g.n || slot >= g.h)
    throw std::invalid_argument("horizontal edge position outside the grid");
  return (row * (g.n - 1) + col) * g.h + slot;
}

EdgeIndex Layout::verticalEdge(std::uint32_t row, std::uint32_t col,
                               std::uint32_t slot) const {
  if (!gridParams_)
    throw std::logic_error("verticalEdge() requires a grid layout");
  const GridParams& g = *gridParams_;
  if (row + 1 >= g.m || col >= g.n || slot >= g.v)
    throw std::invalid_argument("vertical edge position outside the grid");
  return g.m * (g.n - 1) * g.h + (row * g.n + col) * g.v + slot;
}

} // namespace shuttlesat
