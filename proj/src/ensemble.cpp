#include "picg/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "picg/csv.hpp"
#include "picg/errors.hpp"

namespace picg {

namespace {

// Calls body(i) for i in [0, count) on up to `jobs` threads. Each index is
// handled exactly once; the first exception is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, std::size_t jobs, Body&& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

// Type-7 sample quantile of sorted values.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.size() == 1) return sorted.front();
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void check_all(const MultiGraph& g, const std::vector<GraphProperty>& properties, std::size_t step) {
  for (GraphProperty p : properties) {
    if (!check_property(g, p)) {
      throw InvariantViolation("graph after step " + std::to_string(step) + " is not " +
                               std::string(property_name(p)));
    }
  }
}

}  // namespace

StepObserver make_structure_monitor(std::vector<GraphProperty> properties, std::size_t period,
                                    std::size_t* check_counter) {
  period = std::max<std::size_t>(period, 1);
  return [properties = std::move(properties), period, check_counter](const MultiGraph& g, const StepRecord* rec) {
    const std::size_t step = rec ? rec->step : 0;
    if (step % period != 0) return;
    check_all(g, properties, step);
    if (check_counter) ++*check_counter;
  };
}

Distribution EnsembleStats::mean_density() const {
  if (degrees.empty()) return {};
  Distribution d{0, std::vector<double>(degrees.back().degree + std::size_t{1}, 0.0)};
  for (const auto& s : degrees) d.probs[s.degree] = s.mean;
  return d;
}

double EnsembleStats::mean_degree() const { return mean_density().mean(); }

EnsembleStats aggregate_runs(std::vector<RunSummary> runs, StopCondition stop) {
  std::sort(runs.begin(), runs.end(), [](const RunSummary& a, const RunSummary& b) { return a.index < b.index; });
  EnsembleStats stats;
  stats.runs = runs.size();
  stats.stop = stop;

  std::set<std::uint32_t> seen;
  for (const auto& r : runs) {
    for (const auto& [d, count] : r.histogram) seen.insert(d);
  }
  for (std::uint32_t d : seen) {
    std::vector<double> densities;
    densities.reserve(runs.size());
    for (const auto& r : runs) {
      const auto it = r.histogram.find(d);
      const double count = it == r.histogram.end() ? 0.0 : static_cast<double>(it->second);
      densities.push_back(count / static_cast<double>(r.vertices));
    }
    std::sort(densities.begin(), densities.end());
    double sum = 0.0;
    for (double x : densities) sum += x;
    stats.degrees.push_back({d, densities.front(), quantile(densities, 0.25), quantile(densities, 0.5),
                             quantile(densities, 0.75), densities.back(), sum / static_cast<double>(densities.size())});
  }
  stats.per_run = std::move(runs);
  return stats;
}

EnsembleStats run_ensemble(const PicgModel& model, std::size_t runs, StopCondition stop, std::uint64_t master_seed,
                           const EnsembleOptions& options) {
  if (runs == 0) throw std::invalid_argument("ensemble needs at least one run");
  const std::vector<GraphProperty> properties =
      options.check_invariants ? inherited_properties(model) : std::vector<GraphProperty>{};
  std::vector<RunSummary> results(runs);
  parallel_for(runs, options.jobs, [&](std::size_t k) {
    RunSummary& out = results[k];
    out.index = k;
    out.seed = derive_seed(master_seed, k);
    StepObserver monitor;
    if (!properties.empty()) monitor = make_structure_monitor(properties, options.check_period, &out.structure_checks);
    const GrowResult grown = grow(model, stop, out.seed, monitor);
    if (!properties.empty()) {
      check_all(grown.graph, properties, grown.trace.steps.size());
      ++out.structure_checks;
    }
    out.steps = grown.trace.steps.size();
    out.vertices = grown.graph.vertex_count();
    out.edges = grown.graph.edge_count();
    out.histogram = degree_histogram(grown.graph);
  });
  return aggregate_runs(std::move(results), stop);
}

ComparisonMetrics compare_distributions(const Distribution& empirical, const Distribution& predicted) {
  constexpr double kTolerance = 1e-6;
  if (!empirical.is_normalized(kTolerance)) throw NotNormalized("empirical distribution does not sum to 1");
  if (!predicted.is_normalized(kTolerance)) throw NotNormalized("predicted distribution does not sum to 1");
  ComparisonMetrics out;
  const long lo = std::min(empirical.offset, predicted.offset);
  const long hi = std::max(empirical.max_value(), predicted.max_value());
  double sum = 0.0;
  for (long v = lo; v <= hi; ++v) {
    const double diff = std::abs(empirical.at(v) - predicted.at(v));
    sum += diff;
    out.max_abs_dev = std::max(out.max_abs_dev, diff);
  }
  out.tv = std::min(1.0, 0.5 * sum);
  out.mean_emp = empirical.mean();
  out.mean_pred = predicted.mean();
  return out;
}

std::vector<TrajectoryPoint> trajectory(const PicgModel& model, std::span<const std::size_t> checkpoints,
                                        std::size_t runs, std::uint64_t master_seed, std::size_t jobs) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw std::invalid_argument("trajectory checkpoints must be ascending");
  }
  if (runs == 0) throw std::invalid_argument("trajectory needs at least one run");
  const std::size_t horizon = checkpoints.empty() ? 0 : checkpoints.back();
  // per_run[k][c] = (n, m) of run k at checkpoint c
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per_run(runs);
  parallel_for(runs, jobs, [&](std::size_t k) {
    const GrowResult grown = grow(model, StopCondition::after_steps(horizon), derive_seed(master_seed, k));
    std::size_t n = grown.trace.initial_vertices;
    std::size_t m = grown.trace.initial_edges;
    std::size_t step = 0;
    for (std::size_t c : checkpoints) {
      for (; step < c; ++step) {
        n += static_cast<std::size_t>(grown.trace.steps[step].dn);
        m += static_cast<std::size_t>(grown.trace.steps[step].dm);
      }
      per_run[k].emplace_back(n, m);
    }
  });
  std::vector<TrajectoryPoint> out;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    TrajectoryPoint p{checkpoints[c], 0.0, 0.0};
    for (std::size_t k = 0; k < runs; ++k) {
      p.mean_vertices += static_cast<double>(per_run[k][c].first);
      p.mean_edges += static_cast<double>(per_run[k][c].second);
    }
    p.mean_vertices /= static_cast<double>(runs);
    p.mean_edges /= static_cast<double>(runs);
    out.push_back(p);
  }
  return out;
}

void write_ensemble_csv(const EnsembleStats& stats, std::ostream& out) {
  out << "degree,min,q1,median,q3,max,mean\n";
  for (const auto& s : stats.degrees) {
    out << s.degree << ',' << format_double(s.min) << ',' << format_double(s.q1) << ',' << format_double(s.median)
        << ',' << format_double(s.q3) << ',' << format_double(s.max) << ',' << format_double(s.mean) << '\n';
  }
}

void write_comparison_csv(const std::vector<std::pair<std::string, ComparisonMetrics>>& rows, std::ostream& out) {
  out << "predictor,tv,max_abs_dev,mean_emp,mean_pred\n";
  for (const auto& [name, m] : rows) {
    out << name << ',' << format_double(m.tv) << ',' << format_double(m.max_abs_dev) << ','
        << format_double(m.mean_emp) << ',' << format_double(m.mean_pred) << '\n';
  }
}

FigureComparison compare_with_predictors(const EnsembleStats& stats, PresetKind kind, const PresetParams& params,
                                         long d_max) {
  const Distribution empirical = stats.mean_density();
  FigureComparison out;
  out.paper = compare_distributions(empirical, tabulate_degree_law(DegreeLaw::paper, kind, params, d_max));
  out.corrected = compare_distributions(empirical, tabulate_degree_law(DegreeLaw::corrected, kind, params, d_max));
  const RatePair rates = rate_limits(preset(kind, params));
  out.rate_mean_degree = 2.0 * rates.dm / rates.dn;
  return out;
}

}  // namespace picg
