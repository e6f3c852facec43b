#include "picg/presets.hpp"

#include <cmath>
#include <string>

#include "picg/errors.hpp"

namespace picg {

std::string_view preset_name(PresetKind kind) {
  switch (kind) {
    case PresetKind::pa: return "pa";
    case PresetKind::connected: return "connected";
    case PresetKind::two_vertex_connected: return "two_vertex_connected";
    case PresetKind::two_edge_connected: return "two_edge_connected";
  }
  return "?";
}

std::optional<PresetKind> parse_preset_name(std::string_view name) {
  for (auto k : {PresetKind::pa, PresetKind::connected, PresetKind::two_vertex_connected,
                 PresetKind::two_edge_connected}) {
    if (preset_name(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

bool open_unit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

}  // namespace

void check_preset_params(PresetKind kind, const PresetParams& p) {
  const std::string name(preset_name(kind));
  switch (kind) {
    case PresetKind::pa:
      if (p.m_pa < 1) throw BadParams("pa: m_pa must be at least 1");
      return;
    case PresetKind::connected:
    case PresetKind::two_vertex_connected:
      if (!open_unit(p.q)) throw BadParams(name + ": q must lie in (0,1)");
      if (std::abs(p.q + p.r - 1.0) > 1e-12) throw BadParams(name + ": r must equal 1 - q");
      return;
    case PresetKind::two_edge_connected:
      if (!open_unit(p.q) || !open_unit(p.r)) throw BadParams(name + ": q and r must lie in (0,1)");
      if (!(p.q + p.r < 1.0)) throw BadParams(name + ": q + r must be below 1");
      return;
  }
}

PresetParams preset_params_from_list(PresetKind kind, std::span<const double> values) {
  const std::string name(preset_name(kind));
  auto want = [&](std::size_t count) {
    if (values.size() != count) {
      throw BadParams(name + " takes " + std::to_string(count) + " parameter(s), got " +
                      std::to_string(values.size()));
    }
  };
  PresetParams p;
  switch (kind) {
    case PresetKind::pa:
      if (values.size() > 1) throw BadParams("pa takes at most one parameter (m_pa)");
      if (!values.empty()) {
        const double m = values[0];
        if (!(m >= 1.0) || m != std::floor(m) || m > 1e6) {
          throw BadParams("pa: m_pa must be a positive integer");
        }
        p = PresetParams::pa(static_cast<std::size_t>(m));
      } else {
        p = PresetParams::pa();
      }
      break;
    case PresetKind::connected:
      want(1);
      p = PresetParams::connected(values[0]);
      break;
    case PresetKind::two_vertex_connected:
      want(1);
      p = PresetParams::two_vertex_connected(values[0]);
      break;
    case PresetKind::two_edge_connected:
      want(2);
      p = PresetParams::two_edge_connected(values[0], values[1]);
      break;
  }
  check_preset_params(kind, p);
  return p;
}

PicgModel preset(PresetKind kind, const PresetParams& p) {
  check_preset_params(kind, p);
  auto rule = [](std::string name, RuleKind k, KernelKind sel, double w) {
    return Rule{std::move(name), k, SelectionKernel{sel}, w};
  };
  PicgModel m;
  m.name = std::string(preset_name(kind));
  switch (kind) {
    case PresetKind::pa:
      m.basis.push_back({p.m_pa == 1 ? "PA" : "PA(" + std::to_string(p.m_pa) + ")",
                         pa_basis(p.m_pa), 1.0});
      m.rules.push_back(rule("pa", RuleKind::pa_attach, KernelKind::degree_proportional_vertex, 1.0));
      break;
    case PresetKind::connected:
      m.basis.push_back({"B1", basis_graph("B1"), 1.0});
      m.rules.push_back(rule("R1", RuleKind::add_pendant, KernelKind::uniform_vertex, p.q));
      m.rules.push_back(rule("R2", RuleKind::add_edge, KernelKind::uniform_pair, p.r));
      break;
    case PresetKind::two_vertex_connected:
      m.basis.push_back({"B2", basis_graph("B2"), 1.0});
      m.rules.push_back(rule("R2", RuleKind::add_edge, KernelKind::uniform_pair, p.q));
      m.rules.push_back(rule("R3", RuleKind::subdivide_edge, KernelKind::uniform_edge, p.r));
      break;
    case PresetKind::two_edge_connected:
      m.basis.push_back({"B2", basis_graph("B2"), 1.0});
      m.rules.push_back(rule("R2", RuleKind::add_edge, KernelKind::uniform_pair, p.q));
      m.rules.push_back(rule("R3", RuleKind::subdivide_edge, KernelKind::uniform_edge, p.r));
      m.rules.push_back(rule("R4", RuleKind::attach_triangle, KernelKind::uniform_vertex, p.s()));
      break;
  }
  return m;
}

}  // namespace picg
