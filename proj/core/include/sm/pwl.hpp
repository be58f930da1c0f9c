#ifndef SM_PWL_HPP
#define SM_PWL_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "sm/rational.hpp"

namespace sm {

/// Piecewise-linear, concave, strictly increasing function on [1, x_max]
/// with exact rational breakpoints. When `normalized` is set the function
/// additionally coincides with the identity on [1, 2] (breakpoints 1 and 2
/// are present with values 1 and 2 and unit slope between them), which is
/// the shape all growth functions in this library share.
class PwlFunction {
 public:
  /// Validates all invariants and throws InvariantError on failure.
  /// Breakpoints must start at 1, be strictly increasing, values strictly
  /// increasing, chord slopes nonincreasing, and domain_end > 1.
  static PwlFunction create(std::vector<Rat> breakpoints, std::vector<Rat> values,
                            bool normalized = true);

  /// The identity function on [1, 2]: the common seed of every construction.
  static PwlFunction identity_seed();

  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<Rat>& values() const { return ys_; }
  const Rat& domain_end() const { return xs_.back(); }
  bool normalized() const { return normalized_; }
  std::size_t segment_count() const { return xs_.size() - 1; }

  /// Exact linear interpolation; throws DomainError outside [1, x_max].
  Rat eval(const Rat& x) const;

  /// Slope of the final segment. By concavity this is the best uniform c
  /// with eval(x) >= eval(x-h) + c*h over the whole domain.
  Rat final_slope() const;

  /// Appends one breakpoint; the caller is responsible for keeping the
  /// concavity and monotonicity invariants (they are re-checked).
  PwlFunction with_appended(const Rat& x, const Rat& y) const;

 private:
  PwlFunction(std::vector<Rat> xs, std::vector<Rat> ys, bool normalized)
      : xs_(std::move(xs)), ys_(std::move(ys)), normalized_(normalized) {}

  std::vector<Rat> xs_;
  std::vector<Rat> ys_;
  bool normalized_;
};

struct SubmultViolation {
  Rat x;
  Rat y;
  /// eval(x)*eval(y) - eval(x*y); negative for a violation.
  Rat defect;
};

struct SubmultReport {
  bool ok = true;
  std::vector<SubmultViolation> violations;
  std::size_t pairs_checked = 0;
};

/// Samples g(x,y) = S(x)S(y) - S(xy) >= 0 over the critical candidate set
/// (breakpoints, pairwise breakpoint quotients) augmented with a
/// deterministic log-uniform grid, all in exact rational arithmetic.
/// Violations are reported sorted by (x, y). `threads` > 1 splits the pair
/// loop; the result does not depend on the thread count.
SubmultReport check_submultiplicative(const PwlFunction& f,
                                      int grid_per_axis = 256,
                                      std::size_t max_violations = 32,
                                      int threads = 1);

/// CSV with header "x,S(x)" and exact "p/q" rationals; round-trips exactly.
std::string pwl_to_csv(const PwlFunction& f);
PwlFunction pwl_from_csv(std::istream& in);
PwlFunction pwl_from_csv_string(const std::string& text);

}  // namespace sm

#endif  // SM_PWL_HPP
