#ifndef SM_SUBMULT_HPP
#define SM_SUBMULT_HPP

#include <vector>

#include "sm/pwl.hpp"
#include "sm/rational.hpp"

namespace sm {

/// Largest safe slowdown slope bound for extending f from [1,n0] to
/// [1,n0^2]: eps0 = min(c/n0, S(n0)/n0^2) with c the final-segment slope.
/// Any extension slope strictly below eps0 preserves submultiplicativity.
Rat slowdown_epsilon0(const PwlFunction& f);

/// Extends f to [1, n0^2] with a single linear segment of slope eps.
/// Requires 0 < eps < slowdown_epsilon0(f).
PwlFunction extend_slow(const PwlFunction& f, const Rat& eps);

/// Repeated slow extension (squaring the domain each step, truncating the
/// final step at N0) with geometrically halved ordinate budgets, so that
/// eval(result, N0) < eval(f, n0) + eps. Requires N0 > domain_end, eps > 0.
PwlFunction extend_slow_to(const PwlFunction& f, const Rat& N0, const Rat& eps);

struct FastExtension {
  PwlFunction fn;
  /// True when the slope-eps segment already reached 3K/2 by 2*n1 and the
  /// extension stopped there with value >= 3K/2 (instead of = 3K/2).
  bool early_stop = false;
  Rat eps;  // slope of the speedup segment
};

/// Speedup step: two slowdown extensions (to n1 = n0^2 and beyond, with
/// slope eps = eps0/2 of the extended function), then the slope-eps segment
/// is continued to the unique N0 with value exactly 3K/2, K = eval(f, n0).
/// Requires K >= 2.
FastExtension extend_fast(const PwlFunction& f);

/// Iterates extend_fast until the final value exceeds M.
PwlFunction extend_fast_to(const PwlFunction& f, const Rat& M,
                           int* iterations = nullptr);

struct FamilyRequest {
  std::vector<int> subset;  // A, 1-based indices, ascending
  long target = 0;          // N
  Int witness;              // integer abscissa n
  Rat ratio;                // min_{j not in A} S_j(n) / max_{i in A} S_i(n)
};

struct FamilyOptions {
  /// Hard cap on the bit length of any function's domain_end. Iterated
  /// speedup extensions quadruple this length per step, so large request
  /// bounds exhaust any cap; construction throws ResourceError when hit.
  std::size_t max_domain_bits = std::size_t(1) << 21;
  /// Grid resolution for the optional post-construction submultiplicativity
  /// check of every family member (0 disables the check).
  int verify_grid = 0;
};

/// Family of submultiplicative functions on a common domain, pairwise
/// incomparable up to the constants recorded in the request log.
struct FamilyState {
  std::vector<PwlFunction> functions;
  std::vector<FamilyRequest> request_log;
  /// Integer abscissae at which ratios were certified; reused as witness
  /// candidates for later requests and by diagram builders.
  std::vector<Int> witness_pool;
};

/// Serves every request (A, N) with nonempty proper A of {1..m} and
/// N in {1..request_bound}, in order (N ascending, then |A| ascending, then
/// lexicographic). Each served request carries an exact integer witness n
/// with S_j(n) > N * max_{i in A} S_i(n) for all j outside A.
FamilyState build_incomparable_family(int m, int request_bound,
                                      const FamilyOptions& options = {});

/// CSV per function plus a JSON request log, written to the given directory.
void export_family(const FamilyState& family, const std::string& directory);

}  // namespace sm

#endif  // SM_SUBMULT_HPP
