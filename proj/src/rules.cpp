#include "picg/rules.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "picg/errors.hpp"

namespace picg {

std::string_view rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::add_pendant: return "add_pendant";
    case RuleKind::add_edge: return "add_edge";
    case RuleKind::subdivide_edge: return "subdivide_edge";
    case RuleKind::attach_triangle: return "attach_triangle";
    case RuleKind::pa_attach: return "pa_attach";
  }
  return "?";
}

std::optional<RuleKind> parse_rule_kind(std::string_view name) {
  for (auto k : {RuleKind::add_pendant, RuleKind::add_edge, RuleKind::subdivide_edge,
                 RuleKind::attach_triangle, RuleKind::pa_attach}) {
    if (rule_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

RuleDelta rule_delta(RuleKind kind) {
  switch (kind) {
    case RuleKind::add_pendant: return {1, 1};
    case RuleKind::add_edge: return {0, 1};
    case RuleKind::subdivide_edge: return {1, 1};
    case RuleKind::attach_triangle: return {2, 3};
    case RuleKind::pa_attach: return {1, 1};
  }
  return {};
}

bool kernel_compatible(RuleKind rule, KernelKind kernel) {
  switch (rule) {
    case RuleKind::add_pendant:
    case RuleKind::attach_triangle: return selects_vertex(kernel);
    case RuleKind::add_edge: return selects_pair(kernel);
    case RuleKind::subdivide_edge: return kernel == KernelKind::uniform_edge;
    case RuleKind::pa_attach: return kernel == KernelKind::degree_proportional_vertex;
  }
  return false;
}

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double total_weight(const auto& entries) {
  double sum = 0.0;
  for (const auto& e : entries) sum += e.weight;
  return sum;
}

}  // namespace

double PicgModel::rule_probability(std::size_t i) const {
  return rules.at(i).weight / total_weight(rules);
}

double PicgModel::basis_probability(std::size_t i) const {
  return basis.at(i).weight / total_weight(basis);
}

std::vector<std::string> PicgModel::validation_errors() const {
  std::vector<std::string> errors;
  if (basis.empty()) errors.emplace_back("basis is empty");
  if (rules.empty()) errors.emplace_back("model has no rules");
  for (const auto& b : basis) {
    if (!(b.weight > 0.0) || !std::isfinite(b.weight)) {
      errors.push_back("basis graph " + b.name + " has non-positive probability");
    }
    if (b.graph.vertex_count() == 0) errors.push_back("basis graph " + b.name + " has no vertices");
    if (b.graph.allow_loops()) errors.push_back("basis graph " + b.name + " allows loops");
  }
  for (const auto& r : rules) {
    if (!(r.weight > 0.0) || !std::isfinite(r.weight)) {
      errors.push_back("rule " + r.name + " has non-positive probability");
    }
    if (!kernel_compatible(r.kind, r.kernel.kind)) {
      errors.push_back("rule " + r.name + ": kernel " + std::string(kernel_name(r.kernel.kind)) +
                       " cannot select for " + std::string(rule_kind_name(r.kind)));
    }
  }
  if (!basis.empty() && std::abs(total_weight(basis) - 1.0) > 1e-9) {
    errors.push_back("basis weights sum to " + short_number(total_weight(basis)));
  }
  if (!rules.empty() && std::abs(total_weight(rules) - 1.0) > 1e-9) {
    errors.push_back("rule weights sum to " + short_number(total_weight(rules)));
  }
  return errors;
}

MultiGraph pa_basis(std::size_t parallel_edges) {
  if (parallel_edges == 0) throw UnknownBasis("PA basis needs at least one edge");
  MultiGraph g(2);
  for (std::size_t i = 0; i < parallel_edges; ++i) g.add_edge(0, 1);
  return g;
}

MultiGraph basis_graph(std::string_view name) {
  if (name == "B1") return MultiGraph(1);
  if (name == "B2") {
    MultiGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    return g;
  }
  if (name == "PA") return pa_basis(1);
  if (name.size() > 4 && name.starts_with("PA(") && name.back() == ')') {
    const auto digits = name.substr(3, name.size() - 4);
    std::size_t m = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && m >= 1) return pa_basis(m);
  }
  throw UnknownBasis("unknown basis graph '" + std::string(name) + "'");
}

bool applicable(const MultiGraph& g, const Rule& r) { return kernel_applicable(g, r.kernel); }

StepRecord apply_rule_at(MultiGraph& g, const Rule& r, const LeftElement& left) {
  StepRecord rec;
  rec.left = left;
  const std::size_t n0 = g.vertex_count();
  const std::size_t m0 = g.edge_count();
  auto vertex_of = [&]() {
    const auto* v = std::get_if<SelectedVertex>(&left);
    if (!v) throw NotApplicable("rule " + r.name + " needs a vertex left element");
    return v->id;
  };
  switch (r.kind) {
    case RuleKind::add_pendant:
    case RuleKind::pa_attach: {
      const VertexId v = vertex_of();
      const VertexId w = g.add_vertex();
      g.add_edge(v, w);
      rec.created = {w};
      break;
    }
    case RuleKind::add_edge: {
      const auto* p = std::get_if<SelectedPair>(&left);
      if (!p) throw NotApplicable("rule " + r.name + " needs a vertex-pair left element");
      g.add_edge(p->u, p->v);
      break;
    }
    case RuleKind::subdivide_edge: {
      const auto* e = std::get_if<SelectedEdge>(&left);
      if (!e) throw NotApplicable("rule " + r.name + " needs an edge left element");
      rec.created = {g.subdivide_edge(e->index)};
      break;
    }
    case RuleKind::attach_triangle: {
      const VertexId v = vertex_of();
      const VertexId w1 = g.add_vertex();
      const VertexId w2 = g.add_vertex();
      g.add_edge(v, w1);
      g.add_edge(v, w2);
      g.add_edge(w1, w2);
      rec.created = {w1, w2};
      break;
    }
  }
  rec.dn = static_cast<int>(g.vertex_count() - n0);
  rec.dm = static_cast<int>(g.edge_count() - m0);
  return rec;
}

StepRecord apply_rule(MultiGraph& g, const Rule& r, RandomStream& rng) {
  if (!applicable(g, r)) {
    throw NotApplicable("rule " + r.name + " (" + std::string(rule_kind_name(r.kind)) +
                        ") has no left element in the current graph");
  }
  return apply_rule_at(g, r, sample_left_element(g, r.kernel, rng));
}

namespace {

std::size_t draw_weighted(std::span<const double> weights, RandomStream& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double target = rng.uniform01() * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last = i;
    acc += weights[i];
    if (target < acc) return i;
  }
  return last;
}

bool stop_reached(const MultiGraph& g, StopCondition stop, std::size_t steps) {
  if (stop.kind == StopCondition::Kind::steps) return steps >= stop.value;
  return g.vertex_count() >= stop.value;
}

}  // namespace

GrowResult grow_with(const PicgModel& model, StopCondition stop, RandomStream& rng,
                     const StepObserver& observer) {
  if (model.basis.empty() || model.rules.empty()) {
    throw std::invalid_argument("model needs at least one basis graph and one rule");
  }
  if (stop.kind == StopCondition::Kind::vertices) {
    std::size_t largest = 0;
    for (const auto& b : model.basis) largest = std::max(largest, b.graph.vertex_count());
    if (stop.value < largest) {
      throw std::invalid_argument("vertex target " + std::to_string(stop.value) +
                                  " is below the basis order " + std::to_string(largest));
    }
    const bool adds_vertices = std::any_of(model.rules.begin(), model.rules.end(),
                                           [](const Rule& r) { return r.delta_n() > 0; });
    if (!adds_vertices) throw std::invalid_argument("no rule adds vertices; vertex target unreachable");
  }

  std::vector<double> weights(model.basis.size());
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = model.basis[i].weight;
  const std::size_t basis_index = draw_weighted(weights, rng);

  GrowResult result{model.basis[basis_index].graph, {}};
  MultiGraph& g = result.graph;
  GrowthTrace& trace = result.trace;
  trace.model_name = model.name;
  trace.basis_index = basis_index;
  trace.initial_vertices = g.vertex_count();
  trace.initial_edges = g.edge_count();
  if (observer) observer(g, nullptr);

  std::vector<double> rule_weights(model.rules.size());
  std::vector<double> applicable_weights(model.rules.size());
  for (std::size_t i = 0; i < rule_weights.size(); ++i) rule_weights[i] = model.rules[i].weight;

  while (!stop_reached(g, stop, trace.steps.size())) {
    bool all = true;
    bool any = false;
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
      const bool ok = applicable(g, model.rules[i]);
      applicable_weights[i] = ok ? rule_weights[i] : 0.0;
      all = all && ok;
      any = any || ok;
    }
    if (!any) {
      throw Stuck("no rule of model " + model.name + " applies after " +
                  std::to_string(trace.steps.size()) + " steps");
    }
    const std::size_t chosen = draw_weighted(all ? rule_weights : applicable_weights, rng);
    StepRecord rec = apply_rule(g, model.rules[chosen], rng);
    rec.rule = chosen;
    rec.step = trace.steps.size() + 1;
    trace.steps.push_back(std::move(rec));
    if (observer) observer(g, &trace.steps.back());
  }
  return result;
}

GrowResult grow(const PicgModel& model, StopCondition stop, std::uint64_t seed,
                const StepObserver& observer) {
  RandomStream rng(seed);
  GrowResult result = grow_with(model, stop, rng, observer);
  result.trace.seed = seed;
  return result;
}

MultiGraph collapse_pa(const MultiGraph& g, const GrowthTrace& trace, std::size_t m_pa) {
  if (m_pa == 0) throw BadBlockSize("block size must be positive");
  if (trace.steps.size() % m_pa != 0) {
    throw BadBlockSize("trace of " + std::to_string(trace.steps.size()) +
                       " steps is not a multiple of " + std::to_string(m_pa));
  }
  const std::size_t base = trace.initial_vertices;
  std::vector<VertexId> target(g.vertex_count());
  for (std::size_t v = 0; v < base; ++v) target[v] = static_cast<VertexId>(v);
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto block = static_cast<VertexId>(base + k / m_pa);
    for (VertexId w : trace.steps[k].created) target.at(w) = block;
  }
  MultiGraph out(base + trace.steps.size() / m_pa, /*allow_loops=*/true);
  for (const Edge& e : g.edges()) out.add_edge(target.at(e.u), target.at(e.v));
  return out;
}

std::string format_left_element(const LeftElement& left) {
  if (const auto* v = std::get_if<SelectedVertex>(&left)) return std::to_string(v->id);
  if (const auto* p = std::get_if<SelectedPair>(&left)) {
    return std::to_string(p->u) + "-" + std::to_string(p->v);
  }
  return "e" + std::to_string(std::get<SelectedEdge>(left).index);
}

void write_trace_csv(const GrowthTrace& trace, const PicgModel& model, std::ostream& out) {
  out << "t,rule,left,dn,dm\n";
  for (const StepRecord& s : trace.steps) {
    out << s.step << ',' << model.rules.at(s.rule).name << ',' << format_left_element(s.left) << ','
        << s.dn << ',' << s.dm << '\n';
  }
}

bool rule_preserves(RuleKind kind, GraphProperty p) {
  switch (kind) {
    case RuleKind::add_edge:
    case RuleKind::subdivide_edge: return true;
    case RuleKind::add_pendant:
    case RuleKind::pa_attach: return p == GraphProperty::connected;
    case RuleKind::attach_triangle: return p != GraphProperty::biconnected;
  }
  return false;
}

std::vector<GraphProperty> inherited_properties(const PicgModel& model) {
  std::vector<GraphProperty> out;
  for (auto p : {GraphProperty::connected, GraphProperty::biconnected,
                 GraphProperty::two_edge_connected}) {
    const bool basis_ok = std::all_of(model.basis.begin(), model.basis.end(),
                                      [&](const BasisEntry& b) { return check_property(b.graph, p); });
    const bool rules_ok = std::all_of(model.rules.begin(), model.rules.end(),
                                      [&](const Rule& r) { return rule_preserves(r.kind, p); });
    if (basis_ok && rules_ok) out.push_back(p);
  }
  return out;
}

}  // namespace picg
