#ifndef SM_LORENTZ_HPP
#define SM_LORENTZ_HPP

#include <string>
#include <vector>

#include "sm/domination.hpp"
#include "sm/pwl.hpp"
#include "sm/rational.hpp"
#include "sm/submult.hpp"

namespace sm {

/// Finite nonincreasing weight sequence with w(1) = 1 and its cumulative
/// sums S(n) = sum_{i<=n} w(i).
class WeightSeq {
 public:
  static WeightSeq create(std::vector<Rat> weights, Rat p);

  const std::vector<Rat>& weights() const { return w_; }
  const std::vector<Rat>& sums() const { return sums_; }
  const Rat& p() const { return p_; }
  std::size_t horizon() const { return w_.size(); }
  /// S(n) for 1 <= n <= horizon.
  const Rat& fundamental(std::size_t n) const { return sums_[n - 1]; }

 private:
  WeightSeq(std::vector<Rat> w, std::vector<Rat> sums, Rat p)
      : w_(std::move(w)), sums_(std::move(sums)), p_(std::move(p)) {}
  std::vector<Rat> w_;
  std::vector<Rat> sums_;
  Rat p_;
};

/// Differences w(n) = f(n) - f(n-1) of a concave increasing f with f(1)=1
/// (and S(0)=0), so the partial sums reproduce f at integers exactly.
WeightSeq weights_from_fundamental(const PwlFunction& f, std::size_t horizon,
                                   const Rat& p);

/// Exact weighted norm for p = 1: sum of the nonincreasing rearrangement
/// of |a| against w.
Rat lorentz_norm_p1(const WeightSeq& ws, const std::vector<Rat>& a);

/// (sum a*_n^p w(n))^(1/p) in floating arithmetic (general p >= 1).
double lorentz_norm(const WeightSeq& ws, const std::vector<double>& a);

/// Options for powerset_diagram witness extraction.
struct PowersetOptions {
  long threshold = 1;  // required incomparability ratio
};

/// Domination matrix over the nonempty subsets A of {1..n} (plus a top
/// lp node when p > 1), using the fundamental functions of the family:
/// subset inclusion gives constant-1 domination; for A not contained in B
/// the request log supplies an abscissa m with
/// max_{i in A} S_i(m) > threshold * max_{i in B} S_i(m).
DominationMatrix powerset_diagram(const FamilyState& family, int n,
                                  const Rat& p, long threshold);

/// Subset-node labels in the order used by powerset_diagram.
std::vector<std::string> powerset_labels(int n, bool with_top);

}  // namespace sm

#endif  // SM_LORENTZ_HPP
