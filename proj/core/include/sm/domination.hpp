#ifndef SM_DOMINATION_HPP
#define SM_DOMINATION_HPP

#include <string>
#include <vector>

#include "sm/rational.hpp"

namespace sm {

/// Evidence for one ordered pair (i, j) of a domination relation:
/// either "i is dominated by j with this constant" or an explicit
/// divergence witness showing the domination fails.
struct DominationEvidence {
  bool dominates = false;
  Rat constant;   // valid when dominates
  Int witness_m;  // abscissa / block length of the divergence witness
  Rat ratio;      // certified ratio at the witness
};

/// Pairwise domination relation over labeled norms. entry(i, j) answers
/// "is node i dominated by node j?" together with its evidence.
class DominationMatrix {
 public:
  DominationMatrix() = default;
  explicit DominationMatrix(std::vector<std::string> labels)
      : labels_(std::move(labels)),
        entries_(labels_.size(),
                 std::vector<DominationEvidence>(labels_.size())) {}

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  DominationEvidence& entry(std::size_t i, std::size_t j) {
    return entries_[i][j];
  }
  const DominationEvidence& entry(std::size_t i, std::size_t j) const {
    return entries_[i][j];
  }
  bool dominates(std::size_t i, std::size_t j) const {
    return entries_[i][j].dominates;
  }

  std::string to_json() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<DominationEvidence>> entries_;
};

}  // namespace sm

#endif  // SM_DOMINATION_HPP
