#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "picg/analytics.hpp"
#include "picg/rules.hpp"

namespace picg {

/// Outcome of one seeded growth.
struct RunSummary {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::map<std::uint32_t, std::size_t> histogram;
  std::size_t structure_checks = 0;
};

/// Five-number summary and mean of one degree's density across runs.
struct DegreeSummary {
  std::uint32_t degree = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

struct EnsembleStats {
  std::size_t runs = 0;
  StopCondition stop;
  std::vector<DegreeSummary> degrees;  // ascending degree
  std::vector<RunSummary> per_run;     // ascending run index

  /// Mean density per degree on 0..max degree.
  Distribution mean_density() const;
  double mean_degree() const;
};

struct EnsembleOptions {
  std::size_t jobs = 1;
  bool check_invariants = false;
  /// Monitors run on the basis graph, every `check_period` steps, and on the
  /// final graph.
  std::size_t check_period = 100;
};

/// Builds a read-only observer that checks the given properties on the basis
/// graph and then every `period` steps. Throws InvariantViolation.
StepObserver make_structure_monitor(std::vector<GraphProperty> properties, std::size_t period,
                                    std::size_t* check_counter = nullptr);

/// Runs `runs` independent growths; run k uses the seed derive_seed(master, k).
/// Results do not depend on `jobs`.
EnsembleStats run_ensemble(const PicgModel& model, std::size_t runs, StopCondition stop, std::uint64_t master_seed,
                           const EnsembleOptions& options = {});

/// Summaries from per-run results, independent of their order.
EnsembleStats aggregate_runs(std::vector<RunSummary> runs, StopCondition stop);

struct ComparisonMetrics {
  double tv = 0.0;
  double max_abs_dev = 0.0;
  double mean_emp = 0.0;
  double mean_pred = 0.0;
};

/// Total variation distance and friends over the union of supports. Throws
/// NotNormalized unless both inputs sum to 1 within 1e-6.
ComparisonMetrics compare_distributions(const Distribution& empirical, const Distribution& predicted);

struct TrajectoryPoint {
  std::size_t step = 0;
  double mean_vertices = 0.0;
  double mean_edges = 0.0;
};

/// Ensemble means of (n, m) at ascending step checkpoints.
std::vector<TrajectoryPoint> trajectory(const PicgModel& model, std::span<const std::size_t> checkpoints,
                                        std::size_t runs, std::uint64_t master_seed, std::size_t jobs = 1);

/// `degree,min,q1,median,q3,max,mean`
void write_ensemble_csv(const EnsembleStats& stats, std::ostream& out);

/// `predictor,tv,max_abs_dev,mean_emp,mean_pred`
void write_comparison_csv(const std::vector<std::pair<std::string, ComparisonMetrics>>& rows, std::ostream& out);

/// Comparison of a preset ensemble against the published and the corrected
/// degree laws, plus the mean degree implied by the rate limits.
struct FigureComparison {
  ComparisonMetrics paper;
  ComparisonMetrics corrected;
  double rate_mean_degree = 0.0;  // 2 dm / dn
};

FigureComparison compare_with_predictors(const EnsembleStats& stats, PresetKind kind, const PresetParams& params,
                                         long d_max = 200);

}  // namespace picg
