#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "picg/rules.hpp"

namespace picg {

// Model description language (.picg files):
//
//   model <name>
//   basis {
//     graph <name> prob <p> { vertices <k> edges <u>-<v> ... }
//   }
//   rules {
//     rule <name> kind <rule kind> prob <p> select <kernel> [simple]
//   }
//
// Tokens are whitespace separated; braces also delimit themselves. `#`
// comments run to the end of the line. Probabilities are decimals or
// fractions a/b. `simple` on an add_edge rule restricts it to non-adjacent
// pairs.

struct SourcePosition {
  std::size_t line = 0;
  std::size_t column = 0;
};

enum class DiagnosticKind { parse_error, validation_error };

struct Diagnostic {
  DiagnosticKind kind = DiagnosticKind::parse_error;
  SourcePosition position;
  std::string message;

  /// `file:line:col: error: message`
  std::string format(std::string_view file) const;
};

struct ParseResult {
  std::optional<PicgModel> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

/// Parses and validates. On any diagnostic the model is absent.
ParseResult parse_model(std::string_view text);

/// Canonical text; parse_model(serialize_model(m)) reproduces m exactly.
std::string serialize_model(const PicgModel& model);

}  // namespace picg
