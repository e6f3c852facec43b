#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <sstream>

#include "picg/errors.hpp"
#include "picg/presets.hpp"
#include "picg/rules.hpp"

using namespace picg;

namespace {

Rule make_rule(RuleKind kind, KernelKind kernel) { return Rule{"x", kind, {kernel}, 1.0}; }

std::size_t degree_sum(const MultiGraph& g) {
  const auto d = g.degrees();
  return std::accumulate(d.begin(), d.end(), std::size_t{0});
}

}  // namespace

TEST_CASE("basis graphs") {
  const MultiGraph b1 = basis_graph("B1");
  CHECK(b1.vertex_count() == 1);
  CHECK(b1.edge_count() == 0);

  const MultiGraph b2 = basis_graph("B2");
  CHECK(b2.vertex_count() == 3);
  CHECK(b2.edge_count() == 3);
  for (auto d : b2.degrees()) CHECK(d == 2);

  const MultiGraph pa = basis_graph("PA(1)");
  CHECK(pa.vertex_count() == 2);
  CHECK(pa.edge_count() == 1);
  CHECK(basis_graph("PA") == pa);
  CHECK(basis_graph("PA(4)").edge_count() == 4);

  CHECK_THROWS_AS(basis_graph("B3"), UnknownBasis);
  CHECK_THROWS_AS(basis_graph("PA(0)"), UnknownBasis);
  CHECK_THROWS_AS(basis_graph("PA(x)"), UnknownBasis);
}

TEST_CASE("rule deltas and kernel compatibility") {
  CHECK(rule_delta(RuleKind::add_pendant).vertices == 1);
  CHECK(rule_delta(RuleKind::add_pendant).edges == 1);
  CHECK(rule_delta(RuleKind::add_edge).vertices == 0);
  CHECK(rule_delta(RuleKind::add_edge).edges == 1);
  CHECK(rule_delta(RuleKind::subdivide_edge).vertices == 1);
  CHECK(rule_delta(RuleKind::attach_triangle).vertices == 2);
  CHECK(rule_delta(RuleKind::attach_triangle).edges == 3);
  CHECK(rule_delta(RuleKind::pa_attach).edges == 1);

  CHECK(kernel_compatible(RuleKind::add_pendant, KernelKind::degree_proportional_vertex));
  CHECK_FALSE(kernel_compatible(RuleKind::add_pendant, KernelKind::uniform_edge));
  CHECK(kernel_compatible(RuleKind::add_edge, KernelKind::uniform_nonadjacent_pair));
  CHECK_FALSE(kernel_compatible(RuleKind::add_edge, KernelKind::uniform_vertex));
  CHECK(kernel_compatible(RuleKind::subdivide_edge, KernelKind::uniform_edge));
  CHECK_FALSE(kernel_compatible(RuleKind::subdivide_edge, KernelKind::uniform_pair));
  CHECK(kernel_compatible(RuleKind::pa_attach, KernelKind::degree_proportional_vertex));
  CHECK_FALSE(kernel_compatible(RuleKind::pa_attach, KernelKind::uniform_vertex));
}

TEST_CASE("applicability") {
  const MultiGraph b1 = basis_graph("B1");
  CHECK_FALSE(applicable(b1, make_rule(RuleKind::add_edge, KernelKind::uniform_pair)));
  CHECK(applicable(b1, make_rule(RuleKind::add_pendant, KernelKind::uniform_vertex)));
  CHECK_FALSE(applicable(b1, make_rule(RuleKind::subdivide_edge, KernelKind::uniform_edge)));
  CHECK_FALSE(applicable(b1, make_rule(RuleKind::pa_attach, KernelKind::degree_proportional_vertex)));
  const MultiGraph b2 = basis_graph("B2");
  CHECK(applicable(b2, make_rule(RuleKind::subdivide_edge, KernelKind::uniform_edge)));
  CHECK_FALSE(applicable(b2, make_rule(RuleKind::add_edge, KernelKind::uniform_nonadjacent_pair)));
  CHECK(applicable(b2, make_rule(RuleKind::add_edge, KernelKind::uniform_pair)));
}

TEST_CASE("applying rules") {
  RandomStream rng(3);

  SUBCASE("subdividing a triangle edge gives a 4-cycle") {
    MultiGraph g = basis_graph("B2");
    const StepRecord s = apply_rule(g, make_rule(RuleKind::subdivide_edge, KernelKind::uniform_edge), rng);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 4);
    for (auto d : g.degrees()) CHECK(d == 2);
    CHECK(s.dn == 1);
    CHECK(s.dm == 1);
    CHECK(s.created == std::vector<VertexId>{3});
    CHECK(check_property(g, GraphProperty::biconnected));
  }

  SUBCASE("triangle attachment on K3") {
    MultiGraph g = basis_graph("B2");
    const Rule r = make_rule(RuleKind::attach_triangle, KernelKind::uniform_vertex);
    const StepRecord s = apply_rule_at(g, r, SelectedVertex{1});
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 6);
    CHECK(g.degree(1) == 4);
    CHECK(g.degree(3) == 2);
    CHECK(g.degree(4) == 2);
    CHECK(g.adjacent(3, 4));
    CHECK(s.created == std::vector<VertexId>{3, 4});
    CHECK(s.dn == 2);
    CHECK(s.dm == 3);
  }

  SUBCASE("pendant on a single vertex gives a 2-path") {
    MultiGraph g = basis_graph("B1");
    apply_rule(g, make_rule(RuleKind::add_pendant, KernelKind::uniform_vertex), rng);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
  }

  SUBCASE("add_edge joins the chosen pair") {
    MultiGraph g = basis_graph("B2");
    apply_rule_at(g, make_rule(RuleKind::add_edge, KernelKind::uniform_pair), SelectedPair{0, 2});
    CHECK(g.edge_count() == 4);
    CHECK(g.degree(0) == 3);
    CHECK(g.degree(2) == 3);
    CHECK(g.degree(1) == 2);
  }

  SUBCASE("inapplicable rules throw") {
    MultiGraph g = basis_graph("B1");
    CHECK_THROWS_AS(apply_rule(g, make_rule(RuleKind::add_edge, KernelKind::uniform_pair), rng), NotApplicable);
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 0);
  }
}

TEST_CASE("first steps of the presets") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GrowResult c = grow(preset(PresetKind::connected, PresetParams::connected(0.5)), StopCondition::after_steps(1), seed);
    CHECK(c.graph.vertex_count() == 2);
    CHECK(c.graph.edge_count() == 1);
    const GrowResult p = grow(preset(PresetKind::pa, PresetParams::pa()), StopCondition::after_steps(1), seed);
    CHECK(p.graph.vertex_count() == 3);
    CHECK(p.graph.edge_count() == 2);
  }
  const GrowResult v = grow(preset(PresetKind::two_vertex_connected, PresetParams::two_vertex_connected(0.5)),
                            StopCondition::after_steps(0), 1);
  CHECK(v.graph == basis_graph("B2"));
  CHECK(v.trace.steps.empty());
}

TEST_CASE("traces reconcile with the final graph") {
  const PresetKind kinds[] = {PresetKind::pa, PresetKind::connected, PresetKind::two_vertex_connected,
                              PresetKind::two_edge_connected};
  const PresetParams params[] = {PresetParams::pa(), PresetParams::connected(0.3),
                                 PresetParams::two_vertex_connected(0.6), PresetParams::two_edge_connected(0.2, 0.3)};
  for (int k = 0; k < 4; ++k) {
    const PicgModel model = preset(kinds[k], params[k]);
    const GrowResult res = grow(model, StopCondition::after_steps(500), 99 + k);
    std::size_t n = res.trace.initial_vertices, m = res.trace.initial_edges;
    for (std::size_t i = 0; i < res.trace.steps.size(); ++i) {
      const StepRecord& s = res.trace.steps[i];
      CHECK(s.step == i + 1);
      CHECK(s.dn == model.rules[s.rule].delta_n());
      CHECK(s.dm == model.rules[s.rule].delta_m());
      CHECK(s.created.size() == static_cast<std::size_t>(s.dn));
      n += s.dn;
      m += s.dm;
    }
    CHECK(n == res.graph.vertex_count());
    CHECK(m == res.graph.edge_count());
    CHECK(res.graph.verify_invariants());
  }
}

TEST_CASE("growth is deterministic in (model, stop, seed)") {
  const PicgModel model = preset(PresetKind::two_edge_connected, PresetParams::two_edge_connected(0.3, 0.3));
  const GrowResult a = grow(model, StopCondition::after_steps(2000), 12345);
  const GrowResult b = grow(model, StopCondition::after_steps(2000), 12345);
  const GrowResult c = grow(model, StopCondition::after_steps(2000), 12346);
  CHECK(a.graph == b.graph);
  CHECK(a.trace.steps == b.trace.steps);
  CHECK_FALSE(a.graph == c.graph);
}

TEST_CASE("size laws of the presets") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::size_t t : {0u, 1u, 7u, 300u}) {
      CHECK(grow(preset(PresetKind::connected, PresetParams::connected(0.4)), StopCondition::after_steps(t), seed)
                .graph.edge_count() == t);
      CHECK(grow(preset(PresetKind::two_vertex_connected, PresetParams::two_vertex_connected(0.4)),
                 StopCondition::after_steps(t), seed)
                .graph.edge_count() == t + 3);
      const GrowResult pa = grow(preset(PresetKind::pa, PresetParams::pa()), StopCondition::after_steps(t), seed);
      CHECK(pa.graph.vertex_count() == t + 2);
      CHECK(pa.graph.edge_count() == t + 1);
    }
  }
}

TEST_CASE("vertex stop halts at the first step reaching the target") {
  const PicgModel model = preset(PresetKind::two_edge_connected, PresetParams::two_edge_connected(0.2, 0.2));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::size_t before_last = 0;
    const GrowResult res = grow(model, StopCondition::at_vertices(200), seed,
                                [&](const MultiGraph& g, const StepRecord* s) {
                                  if (s != nullptr && g.vertex_count() < 200) before_last = g.vertex_count();
                                });
    CHECK(res.graph.vertex_count() >= 200);
    CHECK(res.graph.vertex_count() <= 201);
    CHECK(before_last < 200);
  }
  CHECK_THROWS_AS(grow(model, StopCondition::at_vertices(2), 1), std::invalid_argument);
  PicgModel edges_only{"e", {{"B2", basis_graph("B2"), 1.0}}, {make_rule(RuleKind::add_edge, KernelKind::uniform_pair)}};
  CHECK_THROWS_AS(grow(edges_only, StopCondition::at_vertices(10), 1), std::invalid_argument);
}

TEST_CASE("a model with no applicable rule is stuck") {
  PicgModel m{"stuck", {{"B1", basis_graph("B1"), 1.0}}, {make_rule(RuleKind::subdivide_edge, KernelKind::uniform_edge)}};
  CHECK_THROWS_AS(grow(m, StopCondition::after_steps(3), 1), Stuck);
  CHECK(grow(m, StopCondition::after_steps(0), 1).graph.vertex_count() == 1);
}

TEST_CASE("simple variant never creates parallel edges") {
  PicgModel m = preset(PresetKind::connected, PresetParams::connected(0.3));
  m.rules[1].kernel.kind = KernelKind::uniform_nonadjacent_pair;
  const GrowResult res = grow(m, StopCondition::after_steps(3000), 77);
  CHECK(res.graph.adjacent_pair_count() == res.graph.edge_count());
}

TEST_CASE("rule preservation table") {
  CHECK(rule_preserves(RuleKind::add_pendant, GraphProperty::connected));
  CHECK_FALSE(rule_preserves(RuleKind::add_pendant, GraphProperty::two_edge_connected));
  CHECK(rule_preserves(RuleKind::subdivide_edge, GraphProperty::biconnected));
  CHECK(rule_preserves(RuleKind::attach_triangle, GraphProperty::two_edge_connected));
  CHECK_FALSE(rule_preserves(RuleKind::attach_triangle, GraphProperty::biconnected));
  using P = std::vector<GraphProperty>;
  CHECK(inherited_properties(preset(PresetKind::connected, PresetParams::connected(0.5))) == P{GraphProperty::connected});
  const P two_v = inherited_properties(preset(PresetKind::two_vertex_connected, PresetParams::two_vertex_connected(0.5)));
  CHECK(std::find(two_v.begin(), two_v.end(), GraphProperty::biconnected) != two_v.end());
  const P two_e = inherited_properties(preset(PresetKind::two_edge_connected, PresetParams::two_edge_connected(0.3, 0.3)));
  CHECK(std::find(two_e.begin(), two_e.end(), GraphProperty::two_edge_connected) != two_e.end());
  CHECK(std::find(two_e.begin(), two_e.end(), GraphProperty::biconnected) == two_e.end());
}

TEST_CASE("class properties hold after every step of long runs") {
  struct Case {
    PresetKind kind;
    PresetParams params;
    GraphProperty property;
  };
  const Case cases[] = {
      {PresetKind::connected, PresetParams::connected(0.5), GraphProperty::connected},
      {PresetKind::two_vertex_connected, PresetParams::two_vertex_connected(0.5), GraphProperty::biconnected},
      {PresetKind::two_edge_connected, PresetParams::two_edge_connected(1.0 / 3, 1.0 / 3), GraphProperty::two_edge_connected},
      {PresetKind::pa, PresetParams::pa(), GraphProperty::connected},
  };
  for (const Case& c : cases) {
    std::size_t checked = 0, failed = 0;
    grow(preset(c.kind, c.params), StopCondition::after_steps(1000), 4242, [&](const MultiGraph& g, const StepRecord*) {
      ++checked;
      if (!check_property(g, c.property)) ++failed;
    });
    CHECK(checked == 1001);
    CHECK(failed == 0);
  }
}

TEST_CASE("attaching a triangle breaks biconnectivity") {
  MultiGraph g = basis_graph("B2");
  apply_rule_at(g, make_rule(RuleKind::attach_triangle, KernelKind::uniform_vertex), SelectedVertex{0});
  CHECK(check_property(g, GraphProperty::two_edge_connected));
  CHECK_FALSE(check_property(g, GraphProperty::biconnected));
}

TEST_CASE("PA collapse") {
  const PicgModel pa = preset(PresetKind::pa, PresetParams::pa());

  SUBCASE("block size one is the identity") {
    const GrowResult res = grow(pa, StopCondition::after_steps(50), 5);
    const MultiGraph c = collapse_pa(res.graph, res.trace, 1);
    CHECK(c.vertex_count() == res.graph.vertex_count());
    CHECK(std::equal(c.edges().begin(), c.edges().end(), res.graph.edges().begin(), res.graph.edges().end()));
  }

  SUBCASE("two steps into one vertex") {
    // Either the second step attaches to the first new vertex (internal edge, loop) or to a basis vertex.
    bool saw_loop = false, saw_plain = false;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const GrowResult res = grow(pa, StopCondition::after_steps(2), seed);
      const MultiGraph c = collapse_pa(res.graph, res.trace, 2);
      REQUIRE(c.vertex_count() == 3);
      CHECK(c.allow_loops());
      CHECK(degree_sum(c) == degree_sum(res.graph));
      const bool loop = std::any_of(c.edges().begin(), c.edges().end(), [](const Edge& e) { return e.u == e.v; });
      if (loop) {
        saw_loop = true;
        CHECK(c.degree(2) == 3);  // external edge plus the loop counted twice
      } else {
        saw_plain = true;
        CHECK(c.degree(2) == 2);
      }
      CHECK(c.verify_invariants());
    }
    CHECK(saw_loop);
    CHECK(saw_plain);
  }

  SUBCASE("degree sum is preserved for larger blocks") {
    const GrowResult res = grow(pa, StopCondition::after_steps(300), 8);
    for (std::size_t m : {1u, 2u, 3u, 5u, 10u}) {
      const MultiGraph c = collapse_pa(res.graph, res.trace, m);
      CHECK(c.vertex_count() == 2 + 300 / m);
      CHECK(c.edge_count() == res.graph.edge_count());
      CHECK(degree_sum(c) == degree_sum(res.graph));
    }
  }

  SUBCASE("block size must divide the step count") {
    const GrowResult res = grow(pa, StopCondition::after_steps(7), 1);
    CHECK_THROWS_AS(collapse_pa(res.graph, res.trace, 2), BadBlockSize);
    CHECK_THROWS_AS(collapse_pa(res.graph, res.trace, 0), BadBlockSize);
  }
}

TEST_CASE("trace CSV") {
  const PicgModel m = preset(PresetKind::two_edge_connected, PresetParams::two_edge_connected(0.3, 0.3));
  const GrowResult res = grow(m, StopCondition::after_steps(20), 3);
  std::ostringstream out;
  write_trace_csv(res.trace, m, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,rule,left,dn,dm");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.rfind(std::to_string(rows) + ",R", 0) == 0);
  }
  CHECK(rows == 20);
  CHECK(format_left_element(SelectedPair{2, 5}) == "2-5");
  CHECK(format_left_element(SelectedEdge{4}) == "e4");
  CHECK(format_left_element(SelectedVertex{7}) == "7");
}

TEST_CASE("model validation messages") {
  PicgModel m = preset(PresetKind::connected, PresetParams::connected(0.5));
  CHECK(m.validation_errors().empty());
  m.rules[0].weight = 0.6;
  m.rules[1].weight = 0.6;
  const auto errors = m.validation_errors();
  REQUIRE(errors.size() == 1);
  CHECK(errors[0] == "rule weights sum to 1.2");
}

TEST_CASE("preset parameters") {
  const PicgModel c = preset(PresetKind::connected, PresetParams::connected(0.5));
  REQUIRE(c.rules.size() == 2);
  CHECK(c.rule_probability(0) == 0.5);
  CHECK(c.rule_probability(1) == 0.5);
  const PicgModel e = preset(PresetKind::two_edge_connected, PresetParams::two_edge_connected(1.0 / 3, 1.0 / 3));
  REQUIRE(e.rules.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(e.rule_probability(i) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK_THROWS_AS(preset(PresetKind::connected, PresetParams::connected(0.0)), BadParams);
  CHECK_THROWS_AS(preset(PresetKind::connected, PresetParams::connected(1.0)), BadParams);
  CHECK_THROWS_AS(preset(PresetKind::two_edge_connected, PresetParams::two_edge_connected(0.5, 0.5)), BadParams);
  CHECK_THROWS_AS(preset(PresetKind::pa, PresetParams::pa(0)), BadParams);
  CHECK(preset(PresetKind::pa, PresetParams::pa(3)).basis[0].graph.edge_count() == 3);
  CHECK(parse_preset_name("two_edge_connected") == PresetKind::two_edge_connected);
  CHECK_FALSE(parse_preset_name("nope").has_value());
}
