#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "picg/graph.hpp"
#include "picg/random.hpp"

namespace picg {

enum class RuleKind { add_pendant, add_edge, subdivide_edge, attach_triangle, pa_attach };

std::string_view rule_kind_name(RuleKind kind);
std::optional<RuleKind> parse_rule_kind(std::string_view name);

struct RuleDelta {
  int vertices = 0;
  int edges = 0;
};

/// (Δn, Δm) of one application: pendant (1,1), edge (0,1), subdivision
/// (1,1), triangle (2,3), preferential attachment (1,1).
RuleDelta rule_delta(RuleKind kind);

/// Whether a kernel of that kind can feed a rule of that kind.
bool kernel_compatible(RuleKind rule, KernelKind kernel);

struct Rule {
  std::string name;
  RuleKind kind = RuleKind::add_pendant;
  SelectionKernel kernel;
  double weight = 1.0;

  int delta_n() const { return rule_delta(kind).vertices; }
  int delta_m() const { return rule_delta(kind).edges; }

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct BasisEntry {
  std::string name;
  MultiGraph graph;
  double weight = 1.0;

  friend bool operator==(const BasisEntry&, const BasisEntry&) = default;
};

/// Executable probabilistic inductive class: weighted basis graphs, weighted
/// rules, and a selection kernel per rule.
///
/// Weights are stored exactly as written; the probability of an entry is its
/// weight over the sum, so a model written as 1/3, 1/3, 1/3 samples exactly
/// uniformly and re-serializes to the same text.
struct PicgModel {
  std::string name;
  std::vector<BasisEntry> basis;
  std::vector<Rule> rules;

  double rule_probability(std::size_t i) const;
  double basis_probability(std::size_t i) const;

  /// Human-readable problems; empty when the model is usable.
  std::vector<std::string> validation_errors() const;

  friend bool operator==(const PicgModel&, const PicgModel&) = default;
};

/// B1 (one vertex), B2 (triangle), PA(m) (two vertices, m parallel edges).
/// Accepts "B1", "B2", "PA" and "PA(m)"; throws UnknownBasis otherwise.
MultiGraph basis_graph(std::string_view name);
MultiGraph pa_basis(std::size_t parallel_edges);

bool applicable(const MultiGraph& g, const Rule& r);

struct StepRecord {
  std::size_t step = 0;  // 1-based
  std::size_t rule = 0;  // index into PicgModel::rules
  LeftElement left;
  std::vector<VertexId> created;
  int dn = 0;
  int dm = 0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct GrowthTrace {
  std::uint64_t seed = 0;
  std::string model_name;
  std::size_t basis_index = 0;
  std::size_t initial_vertices = 0;
  std::size_t initial_edges = 0;
  std::vector<StepRecord> steps;
};

/// Applies `r` to g with a left element drawn from the rule's kernel.
/// Throws NotApplicable when the kernel has nothing to select.
StepRecord apply_rule(MultiGraph& g, const Rule& r, RandomStream& rng);

/// Applies `r` at a given left element.
StepRecord apply_rule_at(MultiGraph& g, const Rule& r, const LeftElement& left);

struct StopCondition {
  enum class Kind { steps, vertices };
  Kind kind = Kind::steps;
  std::size_t value = 0;

  static StopCondition after_steps(std::size_t t) { return {Kind::steps, t}; }
  /// Stops after the step that first brings the order to at least n.
  static StopCondition at_vertices(std::size_t n) { return {Kind::vertices, n}; }

  friend bool operator==(const StopCondition&, const StopCondition&) = default;
};

/// Read-only hook called after every step (and once for the basis graph with
/// a null record). Must not touch the random stream.
using StepObserver = std::function<void(const MultiGraph&, const StepRecord*)>;

struct GrowResult {
  MultiGraph graph;
  GrowthTrace trace;
};

/// Runs the generative process: draw a basis graph, then repeatedly draw a
/// rule and apply it. A drawn rule that cannot be applied is replaced by a
/// draw from the applicable rules with renormalized weights. Deterministic in
/// (model, stop, seed). Throws Stuck when no rule applies.
GrowResult grow(const PicgModel& model, StopCondition stop, std::uint64_t seed,
                const StepObserver& observer = {});

/// Same process driven by an existing stream.
GrowResult grow_with(const PicgModel& model, StopCondition stop, RandomStream& rng,
                     const StepObserver& observer = {});

/// Merges the vertices created at steps (j-1)m+1 .. jm into one vertex per
/// block, keeping the basis vertices. Edges inside a block become loops.
/// Throws BadBlockSize unless the trace length is a multiple of m.
MultiGraph collapse_pa(const MultiGraph& g, const GrowthTrace& trace, std::size_t m_pa);

/// `t,rule,left,dn,dm` with left rendered as `v`, `u-v` or `e<index>`.
void write_trace_csv(const GrowthTrace& trace, const PicgModel& model, std::ostream& out);

std::string format_left_element(const LeftElement& left);

/// Properties every graph of the class is guaranteed to have: each basis
/// graph has the property and each rule preserves it.
std::vector<GraphProperty> inherited_properties(const PicgModel& model);

/// Whether applying a rule of this kind to a graph with property p always
/// yields a graph with property p.
bool rule_preserves(RuleKind kind, GraphProperty p);

}  // namespace picg
