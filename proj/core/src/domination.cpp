#include "sm/domination.hpp"

#include <nlohmann/json.hpp>

namespace sm {

std::string DominationMatrix::to_json() const {
  nlohmann::json doc;
  doc["nodes"] = labels_;
  nlohmann::json relation = nlohmann::json::array();
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      const DominationEvidence& e = entries_[i][j];
      nlohmann::json item{{"from", labels_[i]}, {"to", labels_[j]}};
      if (e.dominates) {
        item["dominated"] = true;
        item["constant"] = rat_str(e.constant);
      } else {
        item["dominated"] = false;
        item["witness_m"] = e.witness_m.get_str();
        item["ratio"] = rat_str(e.ratio);
      }
      relation.push_back(std::move(item));
    }
  }
  doc["relation"] = std::move(relation);
  return doc.dump(2);
}

}  // namespace sm
