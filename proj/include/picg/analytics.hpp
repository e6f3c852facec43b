#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "picg/presets.hpp"
#include "picg/rules.hpp"

namespace picg {

/// Probability vector over the integers offset, offset+1, ...
struct Distribution {
  long offset = 0;
  std::vector<double> probs;

  double at(long value) const;
  long max_value() const { return offset + static_cast<long>(probs.size()) - 1; }
  double total() const;
  double mean() const;
  bool is_normalized(double tol = 1e-12) const;

  static Distribution point_mass(long value) { return {value, {1.0}}; }
};

/// Expected change per step: dn = sum r_i dn_i, dm = sum r_i dm_i.
struct RatePair {
  double dn = 0.0;
  double dm = 0.0;
};

RatePair rate_limits(const PicgModel& model);

// Exact distributions by forward dynamic programming ----------------------
//
// The state is the pair (order, size). Rule applicability depends only on
// that pair for every kernel (for non-adjacent pairs only when the model
// cannot create parallel edges), and a rule that cannot be applied is
// replaced by a renormalized draw among the applicable ones, exactly as in
// grow(). Once every reachable state admits every rule the marginals evolve
// independently and the recursion drops to one dimension.

using JointDistribution = std::map<std::pair<long, long>, double>;

JointDistribution joint_distribution_exact(const PicgModel& model, std::size_t t);
Distribution order_distribution_exact(const PicgModel& model, std::size_t t);
Distribution size_distribution(const PicgModel& model, std::size_t t);
double expected_order(const PicgModel& model, std::size_t t);
double expected_size(const PicgModel& model, std::size_t t);

// Printed closed forms -------------------------------------------------------

/// Coefficient of the 2-edge-connected order law. `printed` is
/// C(2j-n+2, n-j-2) as published; `multinomial` is C(j-1, n-j-2), the count
/// of R3/R4 orderings among j-1 vertex-adding steps.
enum class TwoEdgeCoefficient { printed, multinomial };

/// Binomial coefficient as a double, zero outside 0 <= k <= n.
double binomial(long n, long k);

/// Natural log of C(n, k) via lgamma; -inf outside the support.
double log_binomial(long n, long k);

/// P(order = n after t steps) from the published closed-form order laws. Zero
/// outside the stated support (n <= 1 connected, n <= 2 for B2 models).
double order_distribution_paper(PresetKind kind, std::size_t t, const PresetParams& params, long n,
                                TwoEdgeCoefficient form = TwoEdgeCoefficient::printed);

/// Published expectation formulas, evaluated verbatim. The 2-edge-connected
/// model has no printed closed form; its entry is the general linear solution
/// E_t = E_0 + t * dn.
double expected_order_paper(PresetKind kind, std::size_t t, const PresetParams& params);

// Degree laws ----------------------------------------------------------------

/// Coefficients c_k of b / (a0 - a1 z - a2 z^2) in closed form by partial
/// fractions over the two roots of the reflected denominator, using the
/// confluent form (k+1) rho^k when the roots coincide.
class TwoRootSeries {
 public:
  TwoRootSeries(double b, double a0, double a1, double a2);

  double coefficient(long k) const;
  double root1() const { return rho1_; }
  double root2() const { return rho2_; }
  bool repeated_root() const { return repeated_; }

  /// Upper bound on sum_{k > K} |c_k|.
  double tail_bound(long k) const;

 private:
  double scale_;
  double rho1_ = 0.0, rho2_ = 0.0;
  double w1_ = 0.0, w2_ = 0.0;
  bool repeated_ = false;
};

/// Mean-field stationary laws as published: connected q/(1+q)^d (d >= 1),
/// 2-vertex-connected r q^(d-2) (d >= 2), 2-edge-connected a1 rho1^(d-2) +
/// a2 rho2^(d-2) (d >= 2). The pa model has no derived law: BadParams.
double degree_distribution_paper(PresetKind kind, const PresetParams& params, long d);

/// Coefficients of the published generating functions by their linear
/// recurrences, p_0..p_dmax, independent of the closed forms.
Distribution degree_distribution_series(PresetKind kind, const PresetParams& params, long d_max);

/// Stationary law of the same rate equation with both endpoints of an added
/// edge gaining a degree. Its mean is 2 dm / dn.
double degree_distribution_corrected(PresetKind kind, const PresetParams& params, long d);

/// Tabulates a degree law on 0..d_max.
enum class DegreeLaw { paper, corrected };
Distribution tabulate_degree_law(DegreeLaw law, PresetKind kind, const PresetParams& params, long d_max);

/// Upper bound on the mass of a degree law beyond d_max.
double degree_law_tail_bound(DegreeLaw law, PresetKind kind, const PresetParams& params, long d_max);

/// `header,p` table, one row per support value, 17 significant digits.
void write_distribution_csv(const Distribution& dist, std::string_view value_column, std::ostream& out);

}  // namespace picg
