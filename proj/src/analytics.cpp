#include "picg/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "picg/errors.hpp"

namespace picg {

double Distribution::at(long value) const {
  if (value < offset || value > max_value()) return 0.0;
  return probs[static_cast<std::size_t>(value - offset)];
}

double Distribution::total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

double Distribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) m += static_cast<double>(offset + static_cast<long>(i)) * probs[i];
  return m;
}

bool Distribution::is_normalized(double tol) const {
  return std::all_of(probs.begin(), probs.end(), [](double p) { return p >= 0.0; }) &&
         std::abs(total() - 1.0) <= tol;
}

RatePair rate_limits(const PicgModel& model) {
  RatePair rates;
  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    const double p = model.rule_probability(i);
    rates.dn += p * model.rules[i].delta_n();
    rates.dm += p * model.rules[i].delta_m();
  }
  return rates;
}

// Dynamic programming oracle ----------------------------------------------------

namespace {

struct RuleStep {
  int dn;
  int dm;
  double p;
  KernelKind kernel;
};

bool applicable_at(KernelKind k, long n, long m) {
  switch (k) {
    case KernelKind::uniform_vertex: return n >= 1;
    case KernelKind::degree_proportional_vertex: return m >= 1;
    case KernelKind::uniform_pair: return n >= 2;
    case KernelKind::uniform_nonadjacent_pair: return n >= 2 && m < n * (n - 1) / 2;
    case KernelKind::uniform_edge: return m >= 1;
  }
  return false;
}

std::vector<RuleStep> rule_steps(const PicgModel& model) {
  std::vector<RuleStep> steps;
  bool uses_simple = false;
  bool allows_parallel = false;
  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    const Rule& r = model.rules[i];
    steps.push_back({r.delta_n(), r.delta_m(), model.rule_probability(i), r.kernel.kind});
    uses_simple = uses_simple || r.kernel.kind == KernelKind::uniform_nonadjacent_pair;
    allows_parallel = allows_parallel || r.kernel.kind == KernelKind::uniform_pair;
  }
  for (const auto& b : model.basis) {
    allows_parallel = allows_parallel || b.graph.adjacent_pair_count() != b.graph.edge_count();
  }
  if (uses_simple && allows_parallel) {
    throw std::invalid_argument(
        "exact distribution: non-adjacent pair selection is only determined by (n, m) on simple graphs");
  }
  return steps;
}

Distribution convolve(const Distribution& dist, const std::vector<std::pair<int, double>>& kernel, int max_shift) {
  Distribution out{dist.offset, std::vector<double>(dist.probs.size() + static_cast<std::size_t>(max_shift), 0.0)};
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    const double p = dist.probs[i];
    if (p == 0.0) continue;
    for (const auto& [shift, w] : kernel) out.probs[i + static_cast<std::size_t>(shift)] += p * w;
  }
  return out;
}

// Drops exact zeros at both ends (shift-only kernels leave them behind).
void trim(Distribution& d) {
  std::size_t lo = 0, hi = d.probs.size();
  while (lo < hi && d.probs[lo] == 0.0) ++lo;
  while (hi > lo && d.probs[hi - 1] == 0.0) --hi;
  if (lo == hi) return;
  d.probs = std::vector<double>(d.probs.begin() + static_cast<long>(lo), d.probs.begin() + static_cast<long>(hi));
  d.offset += static_cast<long>(lo);
}

Distribution marginal(const JointDistribution& joint, bool first) {
  long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
  for (const auto& [key, p] : joint) {
    const long v = first ? key.first : key.second;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  Distribution d{lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 0.0)};
  for (const auto& [key, p] : joint) d.probs[static_cast<std::size_t>((first ? key.first : key.second) - lo)] += p;
  return d;
}

struct DpResult {
  std::optional<JointDistribution> joint;
  Distribution order;
  Distribution size;
};

DpResult run_dp(const PicgModel& model, std::size_t t, bool keep_joint) {
  if (model.basis.empty() || model.rules.empty()) throw std::invalid_argument("model has no basis or no rules");
  const std::vector<RuleStep> steps = rule_steps(model);
  const bool monotone = std::none_of(steps.begin(), steps.end(), [](const RuleStep& s) {
    return s.kernel == KernelKind::uniform_nonadjacent_pair;
  });

  JointDistribution joint;
  for (std::size_t i = 0; i < model.basis.size(); ++i) {
    const auto& g = model.basis[i].graph;
    joint[{static_cast<long>(g.vertex_count()), static_cast<long>(g.edge_count())}] += model.basis_probability(i);
  }

  auto all_applicable = [&](long n, long m) {
    return std::all_of(steps.begin(), steps.end(), [&](const RuleStep& s) { return applicable_at(s.kernel, n, m); });
  };

  std::size_t step = 0;
  for (; step < t; ++step) {
    if (!keep_joint && monotone &&
        std::all_of(joint.begin(), joint.end(), [&](const auto& kv) { return all_applicable(kv.first.first, kv.first.second); })) {
      break;
    }
    JointDistribution next;
    for (const auto& [state, p] : joint) {
      const auto [n, m] = state;
      double total = 0.0;
      for (const auto& s : steps) {
        if (applicable_at(s.kernel, n, m)) total += s.p;
      }
      if (total <= 0.0) {
        throw Stuck("no rule applies in state n=" + std::to_string(n) + ", m=" + std::to_string(m));
      }
      for (const auto& s : steps) {
        if (applicable_at(s.kernel, n, m)) next[{n + s.dn, m + s.dm}] += p * s.p / total;
      }
    }
    joint = std::move(next);
  }

  DpResult result{std::nullopt, marginal(joint, true), marginal(joint, false)};
  if (step < t) {
    // Every rule is applicable from here on: rule choice is i.i.d.
    std::vector<std::pair<int, double>> dn_kernel, dm_kernel;
    int max_dn = 0, max_dm = 0;
    for (const auto& s : steps) {
      dn_kernel.emplace_back(s.dn, s.p);
      dm_kernel.emplace_back(s.dm, s.p);
      max_dn = std::max(max_dn, s.dn);
      max_dm = std::max(max_dm, s.dm);
    }
    for (; step < t; ++step) {
      result.order = convolve(result.order, dn_kernel, max_dn);
      result.size = convolve(result.size, dm_kernel, max_dm);
    }
    trim(result.order);
    trim(result.size);
  }
  if (keep_joint) result.joint = std::move(joint);
  return result;
}

}  // namespace

JointDistribution joint_distribution_exact(const PicgModel& model, std::size_t t) {
  return *run_dp(model, t, true).joint;
}

Distribution order_distribution_exact(const PicgModel& model, std::size_t t) {
  return run_dp(model, t, false).order;
}

Distribution size_distribution(const PicgModel& model, std::size_t t) {
  return run_dp(model, t, false).size;
}

double expected_order(const PicgModel& model, std::size_t t) { return order_distribution_exact(model, t).mean(); }

double expected_size(const PicgModel& model, std::size_t t) { return size_distribution(model, t).mean(); }

// Closed forms ----------------------------------------------------------------

double binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (long i = 1; i <= k; ++i) result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  return result;
}

double log_binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

namespace {

// exp(log C(n,k) + sum e_i log b_i), zero when the binomial vanishes.
double term(double log_coeff, std::initializer_list<std::pair<long, double>> powers) {
  if (std::isinf(log_coeff)) return 0.0;
  double log_value = log_coeff;
  for (const auto& [exponent, base] : powers) {
    if (exponent < 0) return 0.0;
    if (exponent == 0) continue;
    log_value += static_cast<double>(exponent) * std::log(base);
  }
  return std::exp(log_value);
}

}  // namespace

double order_distribution_paper(PresetKind kind, std::size_t steps, const PresetParams& params, long n,
                                TwoEdgeCoefficient form) {
  check_preset_params(kind, params);
  const long t = static_cast<long>(steps);
  const double q = params.q, r = params.r, s = params.s();
  switch (kind) {
    case PresetKind::pa: return n == t + 2 ? 1.0 : 0.0;
    case PresetKind::connected:
      if (n <= 1) return 0.0;
      return term(log_binomial(t - 1, t - n + 1), {{n - 2, q}, {t - n + 1, r}});
    case PresetKind::two_vertex_connected:
      if (n <= 2) return 0.0;
      return term(log_binomial(t, t - n + 3), {{n - 3, r}, {t - n + 3, q}});
    case PresetKind::two_edge_connected: {
      if (n <= 2) return 0.0;
      double sum = 0.0;
      for (long j = n / 2; j <= n - 2; ++j) {
        const double log_a = form == TwoEdgeCoefficient::printed ? log_binomial(2 * j - n + 2, n - j - 2)
                                                                 : log_binomial(j - 1, n - j - 2);
        if (std::isinf(log_a)) continue;
        sum += term(log_a + log_binomial(t, t - j + 1), {{t - j + 1, q}, {2 * j - n + 1, r}, {n - j - 2, s}});
      }
      return sum;
    }
  }
  return 0.0;
}

double expected_order_paper(PresetKind kind, std::size_t steps, const PresetParams& params) {
  check_preset_params(kind, params);
  const double t = static_cast<double>(steps);
  const double q = params.q, r = params.r, s = params.s();
  switch (kind) {
    case PresetKind::pa: return t + 2.0;
    case PresetKind::connected: return (t - 1.0) * q + 2.0 - (t + 1.0) * std::pow(q, t - 1.0);
    case PresetKind::two_vertex_connected:
      return t * r + 3.0 - (t + 1.0) * t * (t - 1.0) / 2.0 * q * q * std::pow(r, t - 2.0) -
             (t + 2.0) * t * q * std::pow(r, t - 1.0) - (t - 3.0) * std::pow(r, t);
    case PresetKind::two_edge_connected: return 3.0 + t * (r + 2.0 * s);
  }
  return 0.0;
}

// Degree laws -------------------------------------------------------------------

TwoRootSeries::TwoRootSeries(double b, double a0, double a1, double a2) : scale_(b / a0) {
  if (!(a0 > 0.0)) throw std::invalid_argument("TwoRootSeries: leading coefficient must be positive");
  const double disc = a1 * a1 + 4.0 * a0 * a2;
  if (disc < 0.0) throw std::invalid_argument("TwoRootSeries: complex roots");
  const double root = std::sqrt(disc);
  if (root <= 1e-12 * (std::abs(a1) + a0)) {
    repeated_ = true;
    rho1_ = rho2_ = a1 / (2.0 * a0);
    return;
  }
  rho1_ = (a1 + root) / (2.0 * a0);
  rho2_ = (a1 - root) / (2.0 * a0);
  w1_ = (a1 + root) * b / (2.0 * a0 * root);
  w2_ = -(a1 - root) * b / (2.0 * a0 * root);
}

double TwoRootSeries::coefficient(long k) const {
  if (k < 0) return 0.0;
  const double kd = static_cast<double>(k);
  if (repeated_) return scale_ * (kd + 1.0) * std::pow(rho1_, kd);
  return w1_ * std::pow(rho1_, kd) + w2_ * std::pow(rho2_, kd);
}

double TwoRootSeries::tail_bound(long k) const {
  const double next = static_cast<double>(k + 1);
  if (repeated_) {
    const double x = std::abs(rho1_);
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    return std::abs(scale_) * std::pow(x, next) * ((next + 1.0) - next * x) / ((1.0 - x) * (1.0 - x));
  }
  double bound = 0.0;
  for (auto [w, rho] : {std::pair{w1_, rho1_}, std::pair{w2_, rho2_}}) {
    const double x = std::abs(rho);
    if (w == 0.0 || x == 0.0) continue;
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    bound += std::abs(w) * std::pow(x, next) / (1.0 - x);
  }
  return bound;
}

namespace {

void require_degree_law(PresetKind kind, const PresetParams& params) {
  check_preset_params(kind, params);
  if (kind == PresetKind::pa) throw BadParams("no degree law is derived for the pa model");
}

TwoRootSeries paper_two_edge_series(const PresetParams& p) {
  const double s = p.s();
  return TwoRootSeries(p.r + 2.0 * s, 1.0 + 2.0 * s, p.q, s);
}

TwoRootSeries corrected_two_edge_series(const PresetParams& p) {
  const double s = p.s();
  return TwoRootSeries(p.r + 2.0 * s, 1.0 + 2.0 * s + p.q, 2.0 * p.q, s);
}

}  // namespace

double degree_distribution_paper(PresetKind kind, const PresetParams& params, long d) {
  require_degree_law(kind, params);
  const double q = params.q, r = params.r;
  switch (kind) {
    case PresetKind::connected: return d >= 1 ? q / std::pow(1.0 + q, static_cast<double>(d)) : 0.0;
    case PresetKind::two_vertex_connected: return d >= 2 ? r * std::pow(q, static_cast<double>(d - 2)) : 0.0;
    case PresetKind::two_edge_connected: return d >= 2 ? paper_two_edge_series(params).coefficient(d - 2) : 0.0;
    case PresetKind::pa: break;
  }
  return 0.0;
}

Distribution degree_distribution_series(PresetKind kind, const PresetParams& params, long d_max) {
  require_degree_law(kind, params);
  if (d_max < 2) throw BadParams("series oracle needs d_max >= 2");
  const double q = params.q, r = params.r, s = params.s();
  Distribution out{0, std::vector<double>(static_cast<std::size_t>(d_max + 1), 0.0)};
  auto& p = out.probs;
  switch (kind) {
    case PresetKind::connected:
      // (1+q) g_k = g_{k-1} + q [k = 1], g_0 = 0
      for (long k = 1; k <= d_max; ++k) {
        p[k] = (p[k - 1] + (k == 1 ? q : 0.0)) / (1.0 + q);
      }
      break;
    case PresetKind::two_vertex_connected:
      // c_k = q c_{k-1}, c_0 = r, p_{k+2} = c_k
      p[2] = r;
      for (long d = 3; d <= d_max; ++d) p[d] = q * p[d - 1];
      break;
    case PresetKind::two_edge_connected: {
      // (1+2s) c_k = q c_{k-1} + s c_{k-2}, c_0 = (r+2s)/(1+2s)
      const double a0 = 1.0 + 2.0 * s;
      p[2] = (r + 2.0 * s) / a0;
      for (long d = 3; d <= d_max; ++d) p[d] = (q * p[d - 1] + s * (d >= 4 ? p[d - 2] : 0.0)) / a0;
      break;
    }
    case PresetKind::pa: break;
  }
  return out;
}

double degree_distribution_corrected(PresetKind kind, const PresetParams& params, long d) {
  require_degree_law(kind, params);
  const double q = params.q, r = params.r;
  switch (kind) {
    case PresetKind::connected:
      // 2 p_d = q [d = 1] + (2 - q) p_{d-1}
      return d >= 1 ? q / 2.0 * std::pow((2.0 - q) / 2.0, static_cast<double>(d - 1)) : 0.0;
    case PresetKind::two_vertex_connected: {
      // (r + 2q) p_d = r [d = 2] + 2q p_{d-1}
      const double denom = r + 2.0 * q;
      return d >= 2 ? r / denom * std::pow(2.0 * q / denom, static_cast<double>(d - 2)) : 0.0;
    }
    case PresetKind::two_edge_connected:
      // (1 + 2s + q) p_d = (r + 2s) [d = 2] + 2q p_{d-1} + s p_{d-2}
      return d >= 2 ? corrected_two_edge_series(params).coefficient(d - 2) : 0.0;
    case PresetKind::pa: break;
  }
  return 0.0;
}

Distribution tabulate_degree_law(DegreeLaw law, PresetKind kind, const PresetParams& params, long d_max) {
  require_degree_law(kind, params);
  Distribution out{0, std::vector<double>(static_cast<std::size_t>(std::max(d_max, 0L) + 1), 0.0)};
  for (long d = 0; d <= d_max; ++d) {
    out.probs[static_cast<std::size_t>(d)] = law == DegreeLaw::paper ? degree_distribution_paper(kind, params, d)
                                                                     : degree_distribution_corrected(kind, params, d);
  }
  return out;
}

double degree_law_tail_bound(DegreeLaw law, PresetKind kind, const PresetParams& params, long d_max) {
  require_degree_law(kind, params);
  const double q = params.q, r = params.r;
  const double dm = static_cast<double>(d_max);
  switch (kind) {
    case PresetKind::connected:
      return law == DegreeLaw::paper ? std::pow(1.0 / (1.0 + q), dm) : std::pow((2.0 - q) / 2.0, dm);
    case PresetKind::two_vertex_connected:
      if (d_max < 2) return 1.0;
      return law == DegreeLaw::paper ? std::pow(q, dm - 1.0) : std::pow(2.0 * q / (r + 2.0 * q), dm - 1.0);
    case PresetKind::two_edge_connected:
      if (d_max < 2) return 1.0;
      return (law == DegreeLaw::paper ? paper_two_edge_series(params) : corrected_two_edge_series(params))
          .tail_bound(d_max - 2);
    case PresetKind::pa: break;
  }
  return 1.0;
}

void write_distribution_csv(const Distribution& dist, std::string_view value_column, std::ostream& out) {
  out << value_column << ",p\n";
  char buf[40];
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", dist.probs[i]);
    out << dist.offset + static_cast<long>(i) << ',' << buf << '\n';
  }
}

}  // namespace picg
