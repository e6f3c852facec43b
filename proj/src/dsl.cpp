#include "picg/dsl.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace picg {

std::string Diagnostic::format(std::string_view file) const {
  std::ostringstream out;
  out << file << ':' << position.line << ':' << position.column << ": "
      << (kind == DiagnosticKind::parse_error ? "parse error" : "validation error") << ": "
      << message;
  return out.str();
}

namespace {

constexpr std::size_t kMaxBasisVertices = 10'000'000;

struct Token {
  std::string text;
  SourcePosition pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (is_space(c)) {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (c == '{' || c == '}') {
      tokens.push_back({std::string(1, c), {line, col}});
      ++col;
      ++i;
      continue;
    }
    const std::size_t start = i;
    const SourcePosition pos{line, col};
    while (i < src.size() && !is_space(src[i]) && src[i] != '{' && src[i] != '}' && src[i] != '#') {
      ++i;
      ++col;
    }
    tokens.push_back({std::string(src.substr(start, i - start)), pos});
  }
  // End marker sits just past the last token, so "end of input" errors point
  // at the line the text stopped on rather than a blank line after it.
  SourcePosition end{1, 1};
  if (!tokens.empty()) end = {tokens.back().pos.line, tokens.back().pos.column + tokens.back().text.size()};
  tokens.push_back({"", end});
  return tokens;
}

struct ParseFailure {
  Diagnostic diagnostic;
};

bool parse_decimal(std::string_view s, double& out) {
  if (s.empty() || s.front() == '+' || s.front() == '-') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_count(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.' || c == '(' || c == ')';
    if (!ok) return false;
  }
  return true;
}

// Positions of the tokens validation may point at.
struct GraphSource {
  SourcePosition name, prob, vertices;
  std::vector<SourcePosition> edges;
};

struct RuleSource {
  SourcePosition name, prob, kernel;
  std::optional<SourcePosition> simple;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  PicgModel parse() {
    PicgModel model;
    expect_keyword("model");
    model.name = expect_name("model name");

    basis_pos_ = expect_keyword("basis").pos;
    expect_symbol("{");
    while (peek().text == "graph") model.basis.push_back(parse_graph());
    expect_symbol("}", "expected 'graph' or '}' in basis block");

    rules_pos_ = expect_keyword("rules").pos;
    expect_symbol("{");
    while (peek().text == "rule") model.rules.push_back(parse_rule());
    expect_symbol("}", "expected 'rule' or '}' in rules block");

    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after rules block");
    return model;
  }

  std::vector<Diagnostic> validate(const PicgModel& model) const {
    std::vector<Diagnostic> out;
    auto report = [&](SourcePosition pos, std::string msg) {
      out.push_back({DiagnosticKind::validation_error, pos, std::move(msg)});
    };

    if (model.basis.empty()) report(basis_pos_, "basis is empty");
    if (model.rules.empty()) report(rules_pos_, "model has no rules");

    std::set<std::string> names;
    double basis_sum = 0.0;
    for (std::size_t i = 0; i < model.basis.size(); ++i) {
      const auto& b = model.basis[i];
      const auto& src = graph_sources_[i];
      if (!names.insert("graph:" + b.name).second) report(src.name, "duplicate graph name '" + b.name + "'");
      if (!(b.weight > 0.0)) report(src.prob, "probability of graph '" + b.name + "' must be positive");
      basis_sum += b.weight;
    }
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
      const auto& r = model.rules[i];
      const auto& src = rule_sources_[i];
      if (!names.insert("rule:" + r.name).second) report(src.name, "duplicate rule name '" + r.name + "'");
      if (!(r.weight > 0.0)) report(src.prob, "probability of rule '" + r.name + "' must be positive");
      if (src.simple && r.kind != RuleKind::add_edge) {
        report(*src.simple, "'simple' only applies to add_edge rules");
      } else if (!kernel_compatible(r.kind, r.kernel.kind)) {
        report(src.kernel, "kernel " + std::string(kernel_name(r.kernel.kind)) + " cannot select for " +
                               std::string(rule_kind_name(r.kind)));
      }
    }
    if (!model.basis.empty() && std::abs(basis_sum - 1.0) > 1e-9) {
      report(basis_pos_, "basis weights sum to " + short_number(basis_sum));
    }
    if (!model.rules.empty()) {
      double rule_sum = 0.0;
      for (const auto& r : model.rules) rule_sum += r.weight;
      if (std::abs(rule_sum - 1.0) > 1e-9) report(rules_pos_, "rule weights sum to " + short_number(rule_sum));
    }
    for (const auto& issue : graph_issues_) out.push_back(issue);
    return out;
  }

 private:
  static std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
  }

  const Token& peek() const { return tokens_[cursor_]; }
  bool at_end() const { return cursor_ + 1 >= tokens_.size(); }

  const Token& advance() {
    const Token& t = tokens_[cursor_];
    if (!at_end()) ++cursor_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, std::string message) const {
    throw ParseFailure{{DiagnosticKind::parse_error, t.pos, std::move(message)}};
  }

  std::string describe(const Token& t) const {
    return t.text.empty() && &t == &tokens_.back() ? std::string("end of input") : "'" + t.text + "'";
  }

  const Token& expect_keyword(std::string_view kw) {
    const Token& t = advance();
    if (t.text != kw) fail(t, "expected '" + std::string(kw) + "', found " + describe(t));
    return t;
  }

  void expect_symbol(std::string_view sym, std::string_view message = {}) {
    const Token& t = advance();
    if (t.text != sym) {
      fail(t, message.empty() ? "expected '" + std::string(sym) + "', found " + describe(t)
                              : std::string(message) + ", found " + describe(t));
    }
  }

  std::string expect_name(std::string_view what) {
    const Token& t = advance();
    if (!valid_name(t.text)) fail(t, "expected " + std::string(what) + ", found " + describe(t));
    return t.text;
  }

  double expect_probability(SourcePosition& where) {
    const Token& t = advance();
    where = t.pos;
    const std::string_view s = t.text;
    double value = 0.0;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
      double num = 0.0, den = 0.0;
      if (!parse_decimal(s.substr(0, slash), num) || !parse_decimal(s.substr(slash + 1), den)) {
        fail(t, "malformed fraction " + describe(t));
      }
      if (den == 0.0) fail(t, "zero denominator in " + describe(t));
      value = num / den;
    } else if (!parse_decimal(s, value)) {
      fail(t, "expected probability, found " + describe(t));
    }
    return value;
  }

  BasisEntry parse_graph() {
    GraphSource src;
    expect_keyword("graph");
    src.name = peek().pos;
    BasisEntry entry;
    entry.name = expect_name("graph name");
    expect_keyword("prob");
    entry.weight = expect_probability(src.prob);
    expect_symbol("{");
    expect_keyword("vertices");
    const Token& count_tok = advance();
    src.vertices = count_tok.pos;
    std::size_t vertices = 0;
    if (!parse_count(count_tok.text, vertices)) fail(count_tok, "expected vertex count, found " + describe(count_tok));
    if (vertices == 0 || vertices > kMaxBasisVertices) {
      graph_issues_.push_back({DiagnosticKind::validation_error, count_tok.pos,
                               "graph '" + entry.name + "' must have between 1 and " +
                                   std::to_string(kMaxBasisVertices) + " vertices"});
      vertices = std::min<std::size_t>(std::max<std::size_t>(vertices, 1), kMaxBasisVertices);
    }
    entry.graph = MultiGraph(vertices);
    if (peek().text == "edges") {
      advance();
      while (peek().text != "}" && !at_end()) {
        const Token& e = advance();
        const auto dash = e.text.find('-');
        std::size_t u = 0, v = 0;
        if (dash == std::string::npos || !parse_count(std::string_view(e.text).substr(0, dash), u) ||
            !parse_count(std::string_view(e.text).substr(dash + 1), v)) {
          fail(e, "expected edge u-v, found " + describe(e));
        }
        if (u >= vertices || v >= vertices) {
          graph_issues_.push_back({DiagnosticKind::validation_error, e.pos,
                                   "edge " + e.text + " references a vertex outside 0.." +
                                       std::to_string(vertices - 1)});
        } else if (u == v) {
          graph_issues_.push_back({DiagnosticKind::validation_error, e.pos, "loop " + e.text + " in basis graph"});
        } else {
          entry.graph.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
        }
        src.edges.push_back(e.pos);
      }
    }
    expect_symbol("}", "expected 'edges' or '}' in graph body");
    graph_sources_.push_back(src);
    return entry;
  }

  Rule parse_rule() {
    RuleSource src;
    expect_keyword("rule");
    src.name = peek().pos;
    Rule rule;
    rule.name = expect_name("rule name");
    expect_keyword("kind");
    const Token& kind_tok = advance();
    const auto kind = parse_rule_kind(kind_tok.text);
    if (!kind) fail(kind_tok, "unknown rule kind " + describe(kind_tok));
    rule.kind = *kind;
    expect_keyword("prob");
    rule.weight = expect_probability(src.prob);
    expect_keyword("select");
    const Token& kernel_tok = advance();
    src.kernel = kernel_tok.pos;
    const auto kernel = parse_kernel_name(kernel_tok.text);
    if (!kernel) fail(kernel_tok, "unknown selection kernel " + describe(kernel_tok));
    rule.kernel.kind = *kernel;
    if (peek().text == "simple") {
      src.simple = advance().pos;
      if (rule.kernel.kind == KernelKind::uniform_pair) {
        rule.kernel.kind = KernelKind::uniform_nonadjacent_pair;
      } else if (rule.kernel.kind != KernelKind::uniform_nonadjacent_pair) {
        fail(tokens_[cursor_ - 1], "'simple' requires select uniform_pair");
      }
    }
    rule_sources_.push_back(src);
    return rule;
  }

  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
  SourcePosition basis_pos_, rules_pos_;
  std::vector<GraphSource> graph_sources_;
  std::vector<RuleSource> rule_sources_;
  std::vector<Diagnostic> graph_issues_;
};

std::string exact_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ParseResult parse_model(std::string_view text) {
  ParseResult result;
  Parser parser(text);
  PicgModel model;
  try {
    model = parser.parse();
  } catch (const ParseFailure& f) {
    result.diagnostics.push_back(f.diagnostic);
    return result;
  }
  result.diagnostics = parser.validate(model);
  if (result.diagnostics.empty()) result.model = std::move(model);
  return result;
}

std::string serialize_model(const PicgModel& model) {
  std::ostringstream out;
  out << "model " << model.name << "\n";
  out << "basis {\n";
  for (const auto& b : model.basis) {
    out << "  graph " << b.name << " prob " << exact_number(b.weight) << " { vertices "
        << b.graph.vertex_count();
    if (b.graph.edge_count() > 0) {
      out << " edges";
      for (const Edge& e : b.graph.edges()) out << ' ' << e.u << '-' << e.v;
    }
    out << " }\n";
  }
  out << "}\n";
  out << "rules {\n";
  for (const auto& r : model.rules) {
    out << "  rule " << r.name << " kind " << rule_kind_name(r.kind) << " prob " << exact_number(r.weight)
        << " select ";
    if (r.kernel.kind == KernelKind::uniform_nonadjacent_pair) {
      out << kernel_name(KernelKind::uniform_pair) << " simple";
    } else {
      out << kernel_name(r.kernel.kind);
    }
    out << "\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace picg
