#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "picg/rules.hpp"

namespace picg {

/// The four models studied: preferential attachment on PA(m), connected
/// graphs on B1 with {R1, R2}, 2-vertex-connected graphs on B2 with {R2, R3},
/// and 2-edge-connected graphs on B2 with {R2, R3, R4}.
enum class PresetKind { pa, connected, two_vertex_connected, two_edge_connected };

std::string_view preset_name(PresetKind kind);
std::optional<PresetKind> parse_preset_name(std::string_view name);

/// Rule probabilities of a preset. `q` is the first rule's probability and
/// `r` the second's; for the two-rule models r = 1 - q, and the
/// 2-edge-connected model has s = 1 - q - r for the triangle rule.
struct PresetParams {
  double q = 0.0;
  double r = 0.0;
  std::size_t m_pa = 1;

  double s() const { return 1.0 - q - r; }

  static PresetParams connected(double q) { return {q, 1.0 - q, 1}; }
  static PresetParams two_vertex_connected(double q) { return {q, 1.0 - q, 1}; }
  static PresetParams two_edge_connected(double q, double r) { return {q, r, 1}; }
  static PresetParams pa(std::size_t m_pa = 1) { return {0.0, 0.0, m_pa}; }
};

/// Throws BadParams unless the parameters are inside the model's open simplex.
void check_preset_params(PresetKind kind, const PresetParams& params);

/// Builds a preset from its positional parameter list: connected [q],
/// two_vertex_connected [q], two_edge_connected [q, r], pa [] or [m_pa].
PresetParams preset_params_from_list(PresetKind kind, std::span<const double> values);

PicgModel preset(PresetKind kind, const PresetParams& params);

}  // namespace picg
