#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "picg/random.hpp"

namespace picg {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph with dense vertex ids 0..n-1.
///
/// Parallel edges are kept as distinct entries so each one can be selected
/// and subdivided on its own. Loops are rejected unless the graph was created
/// with allow_loops (only collapsed preferential-attachment output uses them);
/// a loop contributes 2 to its vertex's degree.
///
/// Besides the edge list the graph keeps a flat endpoint array (entries 2i and
/// 2i+1 are the ends of edge i) for constant-time degree-proportional
/// sampling, and per-vertex neighbour lists for adjacency queries.
class MultiGraph {
 public:
  explicit MultiGraph(std::size_t vertices = 0, bool allow_loops = false);

  VertexId add_vertex();
  EdgeIndex add_edge(VertexId u, VertexId v);

  /// Replaces edge (u,v) by the path u-w-v through a new vertex w. Edge `e`
  /// becomes (u,w) and (w,v) is appended. Returns w.
  VertexId subdivide_edge(EdgeIndex e);

  std::size_t vertex_count() const { return degree_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool allow_loops() const { return allow_loops_; }

  std::uint32_t degree(VertexId v) const { return degree_.at(v); }
  std::span<const std::uint32_t> degrees() const { return degree_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  std::span<const VertexId> endpoints() const { return endpoints_; }
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_.at(v); }

  /// True when at least one edge joins the distinct vertices u and v.
  bool adjacent(VertexId u, VertexId v) const;

  /// Number of unordered distinct pairs {u,v} joined by at least one edge.
  std::size_t adjacent_pair_count() const { return adjacent_pairs_; }

  /// Recounts degrees, endpoints, adjacency and the pair counter from the
  /// edge list. Returns false on any mismatch or forbidden loop.
  bool verify_invariants() const;

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    return a.allow_loops_ == b.allow_loops_ && a.degree_.size() == b.degree_.size() &&
           a.edges_ == b.edges_;
  }

 private:
  void check_vertex(VertexId v) const;
  void link(VertexId u, VertexId v);
  void unlink(VertexId u, VertexId v);

  bool allow_loops_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degree_;
  std::vector<VertexId> endpoints_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t adjacent_pairs_ = 0;
};

enum class KernelKind {
  uniform_vertex,
  degree_proportional_vertex,
  uniform_pair,
  uniform_nonadjacent_pair,
  uniform_edge,
};

struct SelectionKernel {
  KernelKind kind = KernelKind::uniform_vertex;
  friend bool operator==(const SelectionKernel&, const SelectionKernel&) = default;
};

std::string_view kernel_name(KernelKind kind);
std::optional<KernelKind> parse_kernel_name(std::string_view name);

bool selects_vertex(KernelKind kind);
bool selects_pair(KernelKind kind);

struct SelectedVertex {
  VertexId id = 0;
  friend bool operator==(const SelectedVertex&, const SelectedVertex&) = default;
};

/// Unordered pair, stored with u < v.
struct SelectedPair {
  VertexId u = 0;
  VertexId v = 0;
  friend bool operator==(const SelectedPair&, const SelectedPair&) = default;
};

struct SelectedEdge {
  EdgeIndex index = 0;
  friend bool operator==(const SelectedEdge&, const SelectedEdge&) = default;
};

using LeftElement = std::variant<SelectedVertex, SelectedPair, SelectedEdge>;

/// Whether the kernel has anything to select on g.
bool kernel_applicable(const MultiGraph& g, SelectionKernel k);

/// Draws one left element according to the kernel's law. Throws NoLeftElement
/// when the kernel's precondition does not hold on g.
LeftElement sample_left_element(const MultiGraph& g, SelectionKernel k, RandomStream& rng);

/// Degree-proportional vertex via prefix sums over the degree array. Same law
/// as the endpoint-array route used by sample_left_element; kept as a second
/// route for cross-checking.
VertexId sample_vertex_by_degree_prefix(const MultiGraph& g, RandomStream& rng);

enum class GraphProperty { connected, biconnected, two_edge_connected };

std::string_view property_name(GraphProperty p);

struct StructureReport {
  bool connected = false;
  std::size_t articulation_points = 0;
  std::size_t bridges = 0;
};

/// One iterative depth-first traversal with low-link values, O(n + m).
/// Loops are ignored; parallel edges are told apart by edge index so a
/// doubled edge is never reported as a bridge.
StructureReport analyze_structure(const MultiGraph& g);

bool check_property(const MultiGraph& g, GraphProperty p);

std::map<std::uint32_t, std::size_t> degree_histogram(const MultiGraph& g);

void write_edge_list_csv(const MultiGraph& g, std::ostream& out);
void write_pajek(const MultiGraph& g, std::ostream& out);

/// Reads a `u,v` edge list. The vertex count is max id + 1 unless a larger
/// `vertices` is given.
MultiGraph read_edge_list_csv(std::istream& in, std::size_t vertices = 0, bool allow_loops = false);

}  // namespace picg
