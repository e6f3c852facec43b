#include "picg/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "picg/errors.hpp"

namespace picg {

MultiGraph::MultiGraph(std::size_t vertices, bool allow_loops)
    : allow_loops_(allow_loops), degree_(vertices, 0), adjacency_(vertices) {}

VertexId MultiGraph::add_vertex() {
  degree_.push_back(0);
  adjacency_.emplace_back();
  return static_cast<VertexId>(degree_.size() - 1);
}

void MultiGraph::check_vertex(VertexId v) const {
  if (v >= degree_.size()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range (n=" +
                            std::to_string(degree_.size()) + ")");
  }
}

bool MultiGraph::adjacent(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return false;
  const auto& a = adjacency_[u];
  const auto& b = adjacency_[v];
  if (a.size() <= b.size()) return std::find(a.begin(), a.end(), v) != a.end();
  return std::find(b.begin(), b.end(), u) != b.end();
}

void MultiGraph::link(VertexId u, VertexId v) {
  if (u != v && !adjacent(u, v)) ++adjacent_pairs_;
  adjacency_[u].push_back(v);
  if (u != v) adjacency_[v].push_back(u);
}

void MultiGraph::unlink(VertexId u, VertexId v) {
  auto drop = [](std::vector<VertexId>& list, VertexId x) {
    auto it = std::find(list.begin(), list.end(), x);
    if (it == list.end()) throw std::logic_error("adjacency list out of sync");
    *it = list.back();
    list.pop_back();
  };
  drop(adjacency_[u], v);
  if (u != v) {
    drop(adjacency_[v], u);
    if (!adjacent(u, v)) --adjacent_pairs_;
  }
}

EdgeIndex MultiGraph::add_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v && !allow_loops_) {
    throw std::invalid_argument("loop at vertex " + std::to_string(u) + " in a loopless graph");
  }
  link(u, v);
  edges_.push_back({u, v});
  endpoints_.push_back(u);
  endpoints_.push_back(v);
  ++degree_[u];
  ++degree_[v];
  return static_cast<EdgeIndex>(edges_.size() - 1);
}

VertexId MultiGraph::subdivide_edge(EdgeIndex e) {
  if (e >= edges_.size()) throw std::out_of_range("edge index out of range");
  const Edge old = edges_[e];
  const VertexId w = add_vertex();
  unlink(old.u, old.v);
  edges_[e] = {old.u, w};
  endpoints_[2 * static_cast<std::size_t>(e) + 1] = w;
  link(old.u, w);
  --degree_[old.v];
  ++degree_[w];
  add_edge(w, old.v);
  return w;
}

bool MultiGraph::verify_invariants() const {
  const std::size_t n = degree_.size();
  if (adjacency_.size() != n || endpoints_.size() != 2 * edges_.size()) return false;
  std::vector<std::uint32_t> recount(n, 0);
  std::vector<std::vector<VertexId>> adj(n);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto [u, v] = edges_[i];
    if (u >= n || v >= n) return false;
    if (u == v && !allow_loops_) return false;
    if (endpoints_[2 * i] != u || endpoints_[2 * i + 1] != v) return false;
    ++recount[u];
    ++recount[v];
    adj[u].push_back(v);
    if (u != v) adj[v].push_back(u);
  }
  if (recount != degree_) return false;
  const std::size_t degree_sum = std::accumulate(degree_.begin(), degree_.end(), std::size_t{0});
  if (degree_sum != 2 * edges_.size()) return false;
  std::size_t pairs = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto expected = adj[v];
    auto actual = adjacency_[v];
    std::sort(expected.begin(), expected.end());
    std::sort(actual.begin(), actual.end());
    if (expected != actual) return false;
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    for (VertexId x : expected) {
      if (x > v) ++pairs;
    }
  }
  return pairs == adjacent_pairs_;
}

// Kernels -------------------------------------------------------------------

std::string_view kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::uniform_vertex: return "uniform_vertex";
    case KernelKind::degree_proportional_vertex: return "degree_proportional";
    case KernelKind::uniform_pair: return "uniform_pair";
    case KernelKind::uniform_nonadjacent_pair: return "uniform_nonadjacent_pair";
    case KernelKind::uniform_edge: return "uniform_edge";
  }
  return "?";
}

std::optional<KernelKind> parse_kernel_name(std::string_view name) {
  for (auto k : {KernelKind::uniform_vertex, KernelKind::degree_proportional_vertex,
                 KernelKind::uniform_pair, KernelKind::uniform_nonadjacent_pair,
                 KernelKind::uniform_edge}) {
    if (kernel_name(k) == name) return k;
  }
  return std::nullopt;
}

bool selects_vertex(KernelKind kind) {
  return kind == KernelKind::uniform_vertex || kind == KernelKind::degree_proportional_vertex;
}

bool selects_pair(KernelKind kind) {
  return kind == KernelKind::uniform_pair || kind == KernelKind::uniform_nonadjacent_pair;
}

namespace {

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

SelectedPair draw_pair(std::size_t n, RandomStream& rng) {
  auto u = static_cast<VertexId>(rng.uniform_below(n));
  auto v = static_cast<VertexId>(rng.uniform_below(n - 1));
  if (v >= u) ++v;
  return {std::min(u, v), std::max(u, v)};
}

SelectedPair draw_nonadjacent_pair(const MultiGraph& g, RandomStream& rng) {
  const std::size_t n = g.vertex_count();
  // Rejection from the uniform pair law; if that keeps failing on a dense
  // graph, fall back to explicit enumeration. Both branches are uniform over
  // the non-adjacent pairs, so the mixture is too.
  constexpr int kAttempts = 64;
  for (int i = 0; i < kAttempts; ++i) {
    const SelectedPair p = draw_pair(n, rng);
    if (!g.adjacent(p.u, p.v)) return p;
  }
  std::vector<SelectedPair> free_pairs;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (!g.adjacent(u, v)) free_pairs.push_back({u, v});
    }
  }
  if (free_pairs.empty()) throw NoLeftElement("no non-adjacent vertex pair");
  return free_pairs[rng.uniform_below(free_pairs.size())];
}

}  // namespace

bool kernel_applicable(const MultiGraph& g, SelectionKernel k) {
  const std::size_t n = g.vertex_count();
  switch (k.kind) {
    case KernelKind::uniform_vertex: return n >= 1;
    case KernelKind::degree_proportional_vertex: return !g.endpoints().empty();
    case KernelKind::uniform_pair: return n >= 2;
    case KernelKind::uniform_nonadjacent_pair:
      return n >= 2 && g.adjacent_pair_count() < pair_count(n);
    case KernelKind::uniform_edge: return g.edge_count() >= 1;
  }
  return false;
}

LeftElement sample_left_element(const MultiGraph& g, SelectionKernel k, RandomStream& rng) {
  if (!kernel_applicable(g, k)) {
    throw NoLeftElement(std::string("kernel ") + std::string(kernel_name(k.kind)) +
                        " has nothing to select");
  }
  switch (k.kind) {
    case KernelKind::uniform_vertex:
      return SelectedVertex{static_cast<VertexId>(rng.uniform_below(g.vertex_count()))};
    case KernelKind::degree_proportional_vertex: {
      const auto ends = g.endpoints();
      return SelectedVertex{ends[rng.uniform_below(ends.size())]};
    }
    case KernelKind::uniform_pair: return draw_pair(g.vertex_count(), rng);
    case KernelKind::uniform_nonadjacent_pair: return draw_nonadjacent_pair(g, rng);
    case KernelKind::uniform_edge:
      return SelectedEdge{static_cast<EdgeIndex>(rng.uniform_below(g.edge_count()))};
  }
  throw std::logic_error("unhandled kernel");
}

VertexId sample_vertex_by_degree_prefix(const MultiGraph& g, RandomStream& rng) {
  const auto deg = g.degrees();
  const std::uint64_t total = std::accumulate(deg.begin(), deg.end(), std::uint64_t{0});
  if (total == 0) throw NoLeftElement("degree-proportional selection on an edgeless graph");
  std::uint64_t target = rng.uniform_below(total);
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (target < deg[v]) return static_cast<VertexId>(v);
    target -= deg[v];
  }
  throw std::logic_error("prefix sampling overran degree array");
}

// Structure -----------------------------------------------------------------

std::string_view property_name(GraphProperty p) {
  switch (p) {
    case GraphProperty::connected: return "connected";
    case GraphProperty::biconnected: return "biconnected";
    case GraphProperty::two_edge_connected: return "two_edge_connected";
  }
  return "?";
}

StructureReport analyze_structure(const MultiGraph& g) {
  const std::size_t n = g.vertex_count();
  StructureReport report;
  if (n == 0) return report;

  // CSR adjacency carrying edge ids, loops dropped.
  std::vector<std::size_t> offset(n + 1, 0);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    ++offset[e.u + 1];
    ++offset[e.v + 1];
  }
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  struct Arc {
    VertexId to;
    EdgeIndex id;
  };
  std::vector<Arc> arcs(offset[n]);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (e.u == e.v) continue;
      arcs[fill[e.u]++] = {e.v, static_cast<EdgeIndex>(i)};
      arcs[fill[e.v]++] = {e.u, static_cast<EdgeIndex>(i)};
    }
  }

  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, kUnseen), low(n, 0), next_arc(n, 0);
  std::vector<EdgeIndex> parent_edge(n, 0);
  std::vector<bool> is_cut(n, false);
  std::vector<VertexId> stack;
  std::size_t clock = 0;
  std::size_t components = 0;

  for (VertexId root = 0; root < n; ++root) {
    if (disc[root] != kUnseen) continue;
    ++components;
    std::size_t root_children = 0;
    disc[root] = low[root] = clock++;
    next_arc[root] = offset[root];
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      if (next_arc[u] < offset[u + 1]) {
        const Arc a = arcs[next_arc[u]++];
        if (u != root && a.id == parent_edge[u]) continue;
        if (disc[a.to] == kUnseen) {
          parent_edge[a.to] = a.id;
          disc[a.to] = low[a.to] = clock++;
          next_arc[a.to] = offset[a.to];
          stack.push_back(a.to);
          if (u == root) ++root_children;
        } else {
          low[u] = std::min(low[u], disc[a.to]);
        }
        continue;
      }
      stack.pop_back();
      if (stack.empty()) break;
      const VertexId parent = stack.back();
      low[parent] = std::min(low[parent], low[u]);
      if (low[u] > disc[parent]) ++report.bridges;
      if (parent != root && low[u] >= disc[parent]) is_cut[parent] = true;
    }
    if (root_children > 1) is_cut[root] = true;
  }
  report.connected = components == 1;
  report.articulation_points = static_cast<std::size_t>(std::count(is_cut.begin(), is_cut.end(), true));
  return report;
}

bool check_property(const MultiGraph& g, GraphProperty p) {
  const StructureReport s = analyze_structure(g);
  const std::size_t n = g.vertex_count();
  switch (p) {
    case GraphProperty::connected: return s.connected;
    case GraphProperty::biconnected: return n > 2 && s.connected && s.articulation_points == 0;
    case GraphProperty::two_edge_connected: return n > 1 && s.connected && s.bridges == 0;
  }
  return false;
}

std::map<std::uint32_t, std::size_t> degree_histogram(const MultiGraph& g) {
  std::map<std::uint32_t, std::size_t> hist;
  for (std::uint32_t d : g.degrees()) ++hist[d];
  return hist;
}

// Export --------------------------------------------------------------------

void write_edge_list_csv(const MultiGraph& g, std::ostream& out) {
  out << "u,v\n";
  for (const Edge& e : g.edges()) out << e.u << ',' << e.v << '\n';
}

void write_pajek(const MultiGraph& g, std::ostream& out) {
  out << "*Vertices " << g.vertex_count() << '\n';
  for (std::size_t i = 1; i <= g.vertex_count(); ++i) out << i << " \"v" << i << "\"\n";
  out << "*Edges\n";
  for (const Edge& e : g.edges()) out << (e.u + 1) << ' ' << (e.v + 1) << '\n';
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

VertexId parse_id(std::string_view s, std::size_t line) {
  s = trim(s);
  VertexId value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::runtime_error("edge list line " + std::to_string(line) + ": bad vertex id '" +
                             std::string(s) + "'");
  }
  return value;
}

}  // namespace

MultiGraph read_edge_list_csv(std::istream& in, std::size_t vertices, bool allow_loops) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = vertices;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (line_no == 1 && row == "u,v") continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) {
      throw std::runtime_error("edge list line " + std::to_string(line_no) + ": expected u,v");
    }
    const Edge e{parse_id(row.substr(0, comma), line_no), parse_id(row.substr(comma + 1), line_no)};
    n = std::max<std::size_t>(n, std::max(e.u, e.v) + std::size_t{1});
    edges.push_back(e);
  }
  MultiGraph g(n, allow_loops);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

}  // namespace picg
