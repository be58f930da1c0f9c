#ifndef SM_LATTICE_HPP
#define SM_LATTICE_HPP

#include <string>
#include <utility>
#include <vector>

#include "sm/domination.hpp"

namespace sm {

/// Finite lattice given by named elements and a validated order relation:
/// reflexive, antisymmetric, transitive, every pair has a unique join and
/// meet, and a global minimum exists.
class FiniteLattice {
 public:
  /// Builds the reflexive-transitive closure of the cover relation and
  /// validates all lattice axioms; errors name the offending pair.
  static FiniteLattice from_covers(std::vector<std::string> names,
                                   const std::vector<std::pair<int, int>>& covers);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool leq(int i, int j) const { return leq_[i][j]; }
  int minimum() const { return minimum_; }

  int join(int i, int j) const { return join_[i][j]; }
  int meet(int i, int j) const { return meet_[i][j]; }
  /// Join over a nonempty index set.
  int join_all(const std::vector<int>& indices) const;

  /// Down-set {i : e_i <= e_j}, ascending; always contains the minimum
  /// and j itself.
  std::vector<int> down_set(int j) const;

  std::string to_json() const;

  /// Empty placeholder; only from_covers / parse_lattice yield usable values.
  FiniteLattice() = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<int>> join_;
  std::vector<std::vector<int>> meet_;
  int minimum_ = -1;
};

/// Parses the JSON document {"elements": [names], "covers": [[a, b], ...]}
/// where covers may reference elements by name or by listed index and the
/// minimum need not be element 0 (it is detected).
FiniteLattice parse_lattice(const std::string& json_text);
FiniteLattice parse_lattice_file(const std::string& path);

/// Standard generators.
FiniteLattice power_set_lattice(int n);  // subsets of {1..n}, minimum = {}
FiniteLattice chain_lattice(int n);      // total order on n elements
FiniteLattice m3_lattice();              // diamond: bottom, 3 atoms, top
FiniteLattice n5_lattice();              // pentagon (non-modular)

struct IsoReport {
  bool ok = true;
  int i = -1, j = -1;  // first violating pair when !ok
};

/// Checks leq(i, j) <=> D.dominates(mapping[i], mapping[j]) for all pairs.
IsoReport is_order_isomorphic(const FiniteLattice& lattice,
                              const DominationMatrix& matrix,
                              const std::vector<int>& mapping);

}  // namespace sm

#endif  // SM_LATTICE_HPP
