#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "picg/analytics.hpp"
#include "picg/csv.hpp"
#include "picg/dsl.hpp"
#include "picg/ensemble.hpp"
#include "picg/errors.hpp"
#include "picg/presets.hpp"

namespace picg::cli {

namespace {

// Reported as exit status 2.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadedModel {
  PicgModel model;
  std::optional<PresetKind> preset_kind;
  PresetParams params;
};

double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  std::size_t used = 0;
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(text);
      const std::string den_text = text.substr(slash + 1);
      const double den = std::stod(den_text, &used);
      if (used != den_text.size() || den == 0.0) throw std::invalid_argument(text);
      return num / den;
    }
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw FlagError("bad number '" + text + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PicgError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// `preset:name[:p1[:p2]]` or a .picg file.
LoadedModel load_model(const std::string& spec, std::ostream& err) {
  LoadedModel loaded;
  if (spec.rfind("preset:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(7));
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.empty()) throw FlagError("preset name missing in '" + spec + "'");
    const auto kind = parse_preset_name(parts[0]);
    if (!kind) throw FlagError("unknown preset '" + parts[0] + "'");
    std::vector<double> values;
    for (std::size_t i = 1; i < parts.size(); ++i) values.push_back(parse_number(parts[i]));
    loaded.preset_kind = kind;
    loaded.params = preset_params_from_list(*kind, values);
    loaded.model = preset(*kind, loaded.params);
    return loaded;
  }
  const ParseResult parsed = parse_model(read_file(spec));
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics) err << d.format(spec) << '\n';
    throw PicgError("model '" + spec + "' is invalid");
  }
  loaded.model = *parsed.model;
  return loaded;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PICG_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw FlagError(std::string("PICG_SEED is not an unsigned integer: '") + env + "'");
  }
  throw FlagError("a seed is required (--seed or PICG_SEED)");
}

StopCondition resolve_stop(const std::optional<std::size_t>& steps, const std::optional<std::size_t>& vertices) {
  if (steps.has_value() == vertices.has_value()) throw FlagError("give exactly one of --steps and --vertices");
  return steps ? StopCondition::after_steps(*steps) : StopCondition::at_vertices(*vertices);
}

// Writes to `path`, or to `out` for "" and "-".
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw PicgError("cannot write '" + path + "'");
  write(file);
  if (!file) throw PicgError("write to '" + path + "' failed");
}

std::string cell(double x) { return format_double(x); }

void write_degree_table(const LoadedModel& m, long d_max, std::ostream& out) {
  if (!m.preset_kind) throw PicgError("degree predictors need a preset model");
  const PresetKind kind = *m.preset_kind;
  const Distribution series = degree_distribution_series(kind, m.params, std::max(d_max, 2L));
  out << "d,paper,corrected,series\n";
  for (long d = 0; d <= d_max; ++d) {
    out << d << ',' << cell(degree_distribution_paper(kind, m.params, d)) << ','
        << cell(degree_distribution_corrected(kind, m.params, d)) << ',' << cell(series.at(d)) << '\n';
  }
}

void write_order_table(const LoadedModel& m, std::size_t t, std::ostream& out) {
  const Distribution exact = order_distribution_exact(m.model, t);
  if (!m.preset_kind) {
    out << "n,exact\n";
    for (long n = exact.offset; n <= exact.max_value(); ++n) out << n << ',' << cell(exact.at(n)) << '\n';
    return;
  }
  const PresetKind kind = *m.preset_kind;
  out << "n,paper,corrected,exact\n";
  for (long n = exact.offset; n <= exact.max_value(); ++n) {
    out << n << ',' << cell(order_distribution_paper(kind, t, m.params, n, TwoEdgeCoefficient::printed)) << ','
        << cell(order_distribution_paper(kind, t, m.params, n, TwoEdgeCoefficient::multinomial)) << ','
        << cell(exact.at(n)) << '\n';
  }
}

void write_size_table(const LoadedModel& m, std::size_t t, std::ostream& out) {
  const Distribution exact = size_distribution(m.model, t);
  std::optional<long> printed;  // point mass of the published size laws
  if (m.preset_kind) {
    const long tl = static_cast<long>(t);
    switch (*m.preset_kind) {
      case PresetKind::connected: printed = tl; break;
      case PresetKind::two_vertex_connected: printed = tl + 3; break;
      case PresetKind::pa: printed = tl + static_cast<long>(m.params.m_pa); break;
      case PresetKind::two_edge_connected: break;
    }
  }
  out << (printed ? "m,paper,exact\n" : "m,exact\n");
  for (long v = exact.offset; v <= exact.max_value(); ++v) {
    out << v << ',';
    if (printed) out << cell(v == *printed ? 1.0 : 0.0) << ',';
    out << cell(exact.at(v)) << '\n';
  }
}

Distribution read_distribution(const CsvTable& table, int value_column) {
  if (table.rows.empty()) throw PicgError("distribution table has no rows");
  std::vector<std::pair<long, double>> points;
  for (const auto& row : table.rows) {
    if (row[value_column].empty()) continue;
    points.emplace_back(std::stol(row[0]), std::stod(row[value_column]));
  }
  if (points.empty()) throw PicgError("column " + table.header[value_column] + " is empty");
  std::sort(points.begin(), points.end());
  Distribution d{points.front().first,
                 std::vector<double>(static_cast<std::size_t>(points.back().first - points.front().first + 1), 0.0)};
  for (const auto& [v, p] : points) d.probs[static_cast<std::size_t>(v - d.offset)] += p;
  return d;
}

CsvTable read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PicgError("cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grow and analyse probabilistic inductive classes of graphs", "picg"};
  app.require_subcommand(1);

  std::string model_spec;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> steps, vertices;
  std::string out_path, trace_path, report_path, comparison_path, format = "edgelist";
  std::size_t runs = 1, jobs = 1, check_period = 100, t = 0;
  long d_max = 50;
  bool check_invariants = false;
  std::string what, empirical_path, predicted_path;

  auto* grow_cmd = app.add_subcommand("grow", "Grow one graph");
  grow_cmd->add_option("--model", model_spec, "Model file or preset:name[:p1[:p2]]")->required();
  grow_cmd->add_option("--steps", steps, "Number of rule applications");
  grow_cmd->add_option("--vertices", vertices, "Stop once the graph has this many vertices");
  grow_cmd->add_option("--seed", seed, "Random seed (falls back to PICG_SEED)");
  grow_cmd->add_option("--out", out_path, "Output path (default stdout)");
  grow_cmd->add_option("--format", format, "edgelist or pajek")->check(CLI::IsMember({"edgelist", "pajek"}));
  grow_cmd->add_option("--trace", trace_path, "Write the growth trace CSV here");

  auto* ens_cmd = app.add_subcommand("ensemble", "Grow an ensemble and summarise degree densities");
  ens_cmd->add_option("--model", model_spec)->required();
  ens_cmd->add_option("--runs", runs)->required()->check(CLI::PositiveNumber);
  ens_cmd->add_option("--steps", steps);
  ens_cmd->add_option("--vertices", vertices);
  ens_cmd->add_option("--seed", seed);
  ens_cmd->add_option("--report", report_path, "Degree summary CSV")->required();
  ens_cmd->add_flag("--check-invariants", check_invariants, "Monitor the class properties during growth");
  ens_cmd->add_option("--check-period", check_period, "Steps between structural checks")->check(CLI::PositiveNumber);
  ens_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  ens_cmd->add_option("--comparison", comparison_path, "Comparison against the degree predictors (presets)");
  ens_cmd->add_option("--dmax", d_max, "Largest degree of the predictor tables");

  auto* predict_cmd = app.add_subcommand("predict", "Tabulate predictors and exact oracles");
  predict_cmd->add_option("--model", model_spec)->required();
  predict_cmd->add_option("--what", what)->required()->check(CLI::IsMember({"degree", "order", "size", "rates"}));
  predict_cmd->add_option("--t", t, "Step count for order and size");
  predict_cmd->add_option("--dmax", d_max, "Largest degree");
  predict_cmd->add_option("--out", out_path);

  auto* compare_cmd = app.add_subcommand("compare", "Compare an empirical table with predictor columns");
  compare_cmd->add_option("--empirical", empirical_path)->required();
  compare_cmd->add_option("--predicted", predicted_path)->required();
  compare_cmd->add_option("--out", out_path);

  auto* validate_cmd = app.add_subcommand("validate", "Parse and check a model file");
  validate_cmd->add_option("--model", model_spec)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "picg: " << e.what() << '\n';
    return 2;
  }

  try {
    if (grow_cmd->parsed()) {
      const LoadedModel m = load_model(model_spec, err);
      const StopCondition stop = resolve_stop(steps, vertices);
      const GrowResult grown = grow(m.model, stop, resolve_seed(seed));
      emit(out_path, out, [&](std::ostream& os) {
        if (format == "pajek") {
          write_pajek(grown.graph, os);
        } else {
          write_edge_list_csv(grown.graph, os);
        }
      });
      if (!trace_path.empty()) emit(trace_path, out, [&](std::ostream& os) { write_trace_csv(grown.trace, m.model, os); });
    } else if (ens_cmd->parsed()) {
      const LoadedModel m = load_model(model_spec, err);
      const StopCondition stop = resolve_stop(steps, vertices);
      EnsembleOptions options;
      options.jobs = jobs;
      options.check_invariants = check_invariants;
      options.check_period = check_period;
      const EnsembleStats stats = run_ensemble(m.model, runs, stop, resolve_seed(seed), options);
      emit(report_path, out, [&](std::ostream& os) { write_ensemble_csv(stats, os); });
      if (!comparison_path.empty()) {
        if (!m.preset_kind) throw PicgError("--comparison needs a preset model");
        const FigureComparison cmp = compare_with_predictors(stats, *m.preset_kind, m.params, std::max(d_max, 200L));
        emit(comparison_path, out, [&](std::ostream& os) { write_comparison_csv({{"paper", cmp.paper}, {"corrected", cmp.corrected}}, os); });
      }
    } else if (predict_cmd->parsed()) {
      const LoadedModel m = load_model(model_spec, err);
      if (d_max < 0) throw FlagError("--dmax must be non-negative");
      emit(out_path, out, [&](std::ostream& os) {
        if (what == "degree") {
          write_degree_table(m, d_max, os);
        } else if (what == "order") {
          write_order_table(m, t, os);
        } else if (what == "size") {
          write_size_table(m, t, os);
        } else {
          const RatePair rates = rate_limits(m.model);
          os << "dn,dm\n" << cell(rates.dn) << ',' << cell(rates.dm) << '\n';
        }
      });
    } else if (compare_cmd->parsed()) {
      const CsvTable empirical = read_table(empirical_path);
      const CsvTable predicted = read_table(predicted_path);
      int emp_col = empirical.column("mean");
      if (emp_col < 0) emp_col = empirical.column("p");
      if (emp_col < 0) emp_col = 1;
      if (empirical.header.size() < 2 || predicted.header.size() < 2) {
        throw PicgError("tables need a support column and at least one probability column");
      }
      const Distribution emp = read_distribution(empirical, emp_col);
      std::vector<std::pair<std::string, ComparisonMetrics>> rows;
      for (std::size_t c = 1; c < predicted.header.size(); ++c) {
        rows.emplace_back(predicted.header[c], compare_distributions(emp, read_distribution(predicted, static_cast<int>(c))));
      }
      emit(out_path, out, [&](std::ostream& os) { write_comparison_csv(rows, os); });
    } else if (validate_cmd->parsed()) {
      const ParseResult parsed = parse_model(read_file(model_spec));
      for (const auto& d : parsed.diagnostics) err << d.format(model_spec) << '\n';
      return parsed.ok() ? 0 : 1;
    }
  } catch (const FlagError& e) {
    err << "picg: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "picg: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace picg::cli
