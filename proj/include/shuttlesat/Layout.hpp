#pragma once

#include "shuttlesat/Types.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace shuttlesat {

struct Node {
  NodeKind kind = NodeKind::Major;
};

struct Edge {
  NodeIndex u = 0;
  NodeIndex v = 0;
  EdgeKind kind = EdgeKind::Memory;

  NodeIndex other(NodeIndex w) const { return w == u ? v : u; }
  bool touches(NodeIndex w) const { return w == u || w == v; }
};

/// Grid position (row, column) of a major node.
struct GridCoord {
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  bool operator==(const GridCoord&) const = default;
};

/// Parameters describing where the processing-zone interface attaches.
/// Both nodes must be boundary junctions of the grid; they may coincide.
struct Attachment {
  GridCoord exit;
  GridCoord entry;
};

/// Undirected graph abstraction of a QCCD memory zone: junctions (major
/// nodes) and trap-site separators (minor nodes) connected by site edges,
/// plus a one-way interface to the processing zone modeled as one outbound
/// and one inbound edge meeting at a single processing node.
///
/// Immutable after construction; all queries are pure and precomputed, so
/// concurrent read access is safe.
class Layout {
public:
  /// Builds the grid layout L(m, n, v, h): an m x n grid of junctions with
  /// v sites per vertical and h sites per horizontal segment, extended by
  /// the outbound/inbound interface edges at `attach` (default: both at the
  /// top-right corner).
  static Layout grid(std::uint32_t m, std::uint32_t n, std::uint32_t v,
                     std::uint32_t h,
                     std::optional<Attachment> attach = std::nullopt);

  /// Builds a layout from explicit node and edge lists (indices are
  /// positional). Validates all structural invariants.
  static Layout explicitGraph(std::vector<Node> nodes, std::vector<Edge> edges);

  std::uint32_t edgeCount() const {
    return static_cast<std::uint32_t>(edges_.size());
  }
  std::uint32_t nodeCount() const {
    return static_cast<std::uint32_t>(nodes_.size());
  }
  std::uint32_t memoryEdgeCount() const { return memoryEdgeCount_; }

  const Node& node(NodeIndex n) const { return nodes_[n]; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  EdgeIndex outboundEdge() const { return outboundEdge_; }
  EdgeIndex inboundEdge() const { return inboundEdge_; }
  NodeIndex exitNode() const { return exitNode_; }
  NodeIndex entryNode() const { return entryNode_; }
  NodeIndex processingNode() const { return processingNode_; }

  bool isMemory(EdgeIndex e) const {
    return edges_[e].kind == EdgeKind::Memory;
  }
  bool isInterface(EdgeIndex e) const { return !isMemory(e); }

  /// N(e): e itself plus every edge sharing a node with e.
  const std::vector<EdgeIndex>& neighbors(EdgeIndex e) const;

  /// N*(e): N(e) plus all edges incident to the nearest junction reached
  /// from each endpoint direction of e. A chain may pass at most one
  /// junction per transition, so nothing beyond those junctions appears.
  const std::vector<EdgeIndex>& extendedNeighbors(EdgeIndex e) const;

  bool inExtendedNeighbors(EdgeIndex e, EdgeIndex target) const;

  /// P(e, e*): interior edges strictly between e and e* on the unique
  /// shortest path. Empty when the two edges share a node (or coincide).
  /// Throws std::domain_error when e* is not in N*(e).
  const std::vector<EdgeIndex>& pathEdges(EdgeIndex e, EdgeIndex target) const;

  /// F(e): every edge (other than e itself) from which a chain could have
  /// arrived at e in one transition, i.e. {e' != e : e in N*(e')}.
  const std::vector<EdgeIndex>& formerEdges(EdgeIndex e) const;

  /// Sh(v): all edges incident to node v.
  const std::vector<EdgeIndex>& sharingEdges(NodeIndex v) const;

  /// Grid parameters when constructed via grid(); nullopt for explicit
  /// layouts.
  struct GridParams {
    std::uint32_t m = 0, n = 0, v = 0, h = 0;
    Attachment attach;
  };
  const std::optional<GridParams>& gridParams() const { return gridParams_; }

  /// Memory edges in a grid layout can be addressed by their position:
  /// horizontal segment (row, col, slot) or vertical segment (row, col,
  /// slot), slot counted from the lower-indexed junction.
  EdgeIndex horizontalEdge(std::uint32_t row, std::uint32_t col,
                           std::uint32_t slot) const;
  EdgeIndex verticalEdge(std::uint32_t row, std::uint32_t col,
                         std::uint32_t slot) const;
  NodeIndex majorNode(std::uint32_t row, std::uint32_t col) const;

private:
  Layout() = default;

  void finalize();

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::uint32_t memoryEdgeCount_ = 0;
  EdgeIndex outboundEdge_ = 0;
  EdgeIndex inboundEdge_ = 0;
  NodeIndex exitNode_ = 0;
  NodeIndex entryNode_ = 0;
  NodeIndex processingNode_ = 0;
  std::optional<GridParams> gridParams_;

  // Precomputed query tables, index-aligned with edges_/nodes_.
  std::vector<std::vector<EdgeIndex>> incident_;
  std::vector<std::vector<EdgeIndex>> neighborSets_;
  std::vector<std::vector<EdgeIndex>> extendedSets_;
  std::vector<std::vector<EdgeIndex>> formerSets_;
  // Per edge, (target, interior path) pairs sorted by target.
  std::vector<std::vector<std::pair<EdgeIndex, std::vector<EdgeIndex>>>> paths_;
};

} // namespace shuttlesat
