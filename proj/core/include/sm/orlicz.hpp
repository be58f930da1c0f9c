#ifndef SM_ORLICZ_HPP
#define SM_ORLICZ_HPP

#include <string>
#include <vector>

#include "sm/rational.hpp"

namespace sm {

/// Parameters (tau, r, p) of the exponent representation
/// M(tau^k) = tau^(r*k + (p-r)*ones(k)). Requires 0 < tau < 1 and 1 < r < p.
struct OrliczParams {
  Rat tau;
  Rat r;
  Rat p;
  bool operator==(const OrliczParams& o) const {
    return tau == o.tau && r == o.r && p == o.p;
  }
};

enum class ParamVerdict { Valid, Invalid, Indeterminate };

/// Checks the two chord-slope inequalities
///   tau^(r-1) (1 - tau^p) <= 1 - tau^r   and
///   tau^(p-1) (1 - tau^r) <= 1 - tau^p
/// in floating arithmetic. Valid/Invalid only when the margin is clear;
/// near-boundary parameters come back Indeterminate.
ParamVerdict validate_params(const OrliczParams& params, double margin = 1e-9);

/// 0/1 sequence stored sparsely by its zero positions; positions are
/// 1-based and the horizon bounds the defined length. Supports horizons far
/// beyond anything materializable (positions are big integers).
class Pattern {
 public:
  static Pattern from_zeros(std::vector<Int> zeros, Int horizon);
  static Pattern all_ones(Int horizon);

  const std::vector<Int>& zero_positions() const { return zeros_; }
  const Int& horizon() const { return horizon_; }

  /// Number of zeros at positions <= k (0 <= k <= horizon).
  Int zero_count(const Int& k) const;
  /// Cumulative ones count: k - zero_count(k).
  Int ones(const Int& k) const;
  bool is_zero_at(const Int& k) const;

  /// Text run-length encoding `<bit>x<count>,...` covering [1, horizon].
  std::string to_rle() const;
  static Pattern from_rle(const std::string& text);

  bool operator==(const Pattern& o) const {
    return zeros_ == o.zeros_ && horizon_ == o.horizon_;
  }

 private:
  Pattern(std::vector<Int> zeros, Int horizon)
      : zeros_(std::move(zeros)), horizon_(std::move(horizon)) {}
  std::vector<Int> zeros_;  // sorted, strictly increasing, within [1, horizon]
  Int horizon_;
};

/// Shift-minimality: sum_{i<=n} rho(i) <= sum_{i=k+1}^{k+n} rho(i) for all
/// windows inside the horizon. Verified sparsely over zero-index pairs
/// (a, b): the condition is equivalent to z_{b-a+1} <= z_b - z_a + 1.
struct ShiftReport {
  bool ok = true;
  Int window_start;  // k of the first violating window
  Int window_len;    // n of the first violating window
};
ShiftReport check_shift_minimality(const Pattern& pattern);

/// Direct dense check of the same inequality, for cross-validation at
/// small horizons (throws if horizon exceeds the cap).
ShiftReport check_shift_minimality_exhaustive(const Pattern& pattern,
                                              long horizon_cap = 1 << 12);

/// Pattern with zeros exactly at the given positions n_1 < n_2 < ...,
/// requiring n_1 = 1 and strictly increasing differences; validates the
/// shift-minimality inequality over the horizon.
Pattern single_space_pattern(const std::vector<Int>& positions,
                             const Int& horizon);

/// Orlicz function coded by a pattern: M(tau^k) = tau^e(k) with
/// e(k) = r*k + (p-r)*ones(k), extended piecewise linearly, M(1) = 1.
class OrliczFunction {
 public:
  OrliczFunction(OrliczParams params, Pattern pattern);

  const OrliczParams& params() const { return params_; }
  const Pattern& pattern() const { return pattern_; }

  /// Exact exponent e(k) for 0 <= k <= horizon.
  Rat exponent_at(const Int& k) const;
  /// Linear interpolation between breakpoints tau^k; t in (0, 1].
  double eval(double t) const;

 private:
  OrliczParams params_;
  Pattern pattern_;
};

enum class CompareResult { LE, GE, EQ, Incomparable };

struct CompareReport {
  CompareResult rel = CompareResult::EQ;
  /// Position where ones_i > ones_j strictly (M_i strictly below); set when
  /// the relation has a strict LE component.
  Int below_witness;
  /// Position where ones_i < ones_j strictly.
  Int above_witness;
};

/// Exact pointwise order of two Orlicz functions over shared breakpoints:
/// LE iff ones_i(k) >= ones_j(k) for every k <= horizon. Pure integer
/// comparisons at the zero events; no floating arithmetic.
CompareReport pointwise_compare(const OrliczFunction& mi,
                                const OrliczFunction& mj);

/// Exponent gap d(k) = (p - r) * (ones_i(k) - ones_j(k)); the value ratio
/// M_i(tau^k) / M_j(tau^k) equals tau^d(k).
Rat ratio_gap(const OrliczFunction& mi, const OrliczFunction& mj, const Int& k);

/// Least d such that tau^((p-r) d) < 2^(-k), decided by exact integer
/// comparison (ties push d up, the inequality is strict).
long domination_zero_count(const OrliczParams& params, long k);

/// Luxemburg norm inf{rho > 0 : sum M(|a_n| / rho) <= 1} by bisection over
/// the bracket [max |a_n|, sum |a_n|].
double luxemburg_norm(const OrliczFunction& m, const std::vector<double>& a,
                      double tol = 1e-9);

struct Delta2Report {
  Rat max_exponent_difference;  // max over k of e(k+1) - e(k); always <= p
  double implied_constant;      // segment-ratio bound 2 * tau^(-max diff)
};
Delta2Report delta2_check(const OrliczFunction& m);

}  // namespace sm

#endif  // SM_ORLICZ_HPP
