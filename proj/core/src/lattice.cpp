#include "sm/lattice.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sm/errors.hpp"

namespace sm {

namespace {

std::string pair_str(const std::vector<std::string>& names, int i, int j) {
  return "(" + names[i] + ", " + names[j] + ")";
}

}  // namespace

FiniteLattice FiniteLattice::from_covers(
    std::vector<std::string> names,
    const std::vector<std::pair<int, int>>& covers) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw ParameterError("lattice needs at least one element");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (names[i] == names[j])
        throw ParameterError("duplicate element name: " + names[i]);

  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [a, b] : covers) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw ParameterError("cover references an unknown element index");
    leq[a][b] = true;
  }
  // Reflexive-transitive closure (Warshall).
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq[i][k])
        for (int j = 0; j < n; ++j)
          if (leq[k][j]) leq[i][j] = true;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j] && leq[j][i])
        throw ParameterError("order is not antisymmetric at " +
                             pair_str(names, i, j));

  auto bound_of = [&](int i, int j, bool upper) {
    // Least upper bound / greatest lower bound; -1 when absent or ambiguous.
    std::vector<int> bounds;
    for (int c = 0; c < n; ++c) {
      bool ok = upper ? (leq[i][c] && leq[j][c]) : (leq[c][i] && leq[c][j]);
      if (ok) bounds.push_back(c);
    }
    for (int c : bounds) {
      bool extremal = true;
      for (int d : bounds)
        if (upper ? !leq[c][d] : !leq[d][c]) {
          extremal = false;
          break;
        }
      if (extremal) return c;
    }
    return -1;
  };

  FiniteLattice lattice;
  lattice.join_.assign(n, std::vector<int>(n, -1));
  lattice.meet_.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      lattice.join_[i][j] = bound_of(i, j, true);
      if (lattice.join_[i][j] < 0)
        throw ParameterError("no least upper bound for " + pair_str(names, i, j));
      lattice.meet_[i][j] = bound_of(i, j, false);
      if (lattice.meet_[i][j] < 0)
        throw ParameterError("no greatest lower bound for " +
                             pair_str(names, i, j));
    }

  int minimum = -1;
  for (int i = 0; i < n; ++i) {
    bool below_all = true;
    for (int j = 0; j < n; ++j)
      if (!leq[i][j]) {
        below_all = false;
        break;
      }
    if (below_all) {
      minimum = i;
      break;
    }
  }
  if (minimum < 0) throw ParameterError("lattice has no minimum element");

  lattice.names_ = std::move(names);
  lattice.leq_ = std::move(leq);
  lattice.minimum_ = minimum;
  return lattice;
}

int FiniteLattice::join_all(const std::vector<int>& indices) const {
  if (indices.empty()) throw ParameterError("join over an empty set");
  int acc = indices[0];
  for (std::size_t i = 1; i < indices.size(); ++i) acc = join(acc, indices[i]);
  return acc;
}

std::vector<int> FiniteLattice::down_set(int j) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(size()); ++i)
    if (leq_[i][j]) out.push_back(i);
  return out;
}

std::string FiniteLattice::to_json() const {
  nlohmann::json doc;
  doc["elements"] = names_;
  nlohmann::json covers = nlohmann::json::array();
  const int n = static_cast<int>(size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !leq_[i][j]) continue;
      bool is_cover = true;  // no k strictly between i and j
      for (int k = 0; k < n && is_cover; ++k)
        if (k != i && k != j && leq_[i][k] && leq_[k][j]) is_cover = false;
      if (is_cover) covers.push_back({names_[i], names_[j]});
    }
  doc["covers"] = std::move(covers);
  return doc.dump(2);
}

FiniteLattice parse_lattice(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("lattice JSON parse error: ") + e.what());
  }
  if (!doc.contains("elements") || !doc["elements"].is_array())
    throw ParameterError("lattice JSON needs an 'elements' array");
  std::vector<std::string> names;
  for (const auto& item : doc["elements"]) names.push_back(item.get<std::string>());

  auto index_of = [&](const nlohmann::json& ref) -> int {
    if (ref.is_number_integer()) return ref.get<int>();
    const std::string name = ref.get<std::string>();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    throw ParameterError("cover references unknown element '" + name + "'");
  };

  std::vector<std::pair<int, int>> covers;
  if (doc.contains("covers"))
    for (const auto& cover : doc["covers"]) {
      if (!cover.is_array() || cover.size() != 2)
        throw ParameterError("each cover must be a pair [a, b]");
      covers.emplace_back(index_of(cover[0]), index_of(cover[1]));
    }
  return FiniteLattice::from_covers(std::move(names), covers);
}

FiniteLattice parse_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open lattice file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_lattice(buffer.str());
}

FiniteLattice power_set_lattice(int n) {
  if (n < 0 || n > 16) throw ParameterError("power_set_lattice supports 0..16");
  const int count = 1 << n;
  std::vector<std::string> names;
  for (int mask = 0; mask < count; ++mask) {
    std::ostringstream name;
    name << "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) {
        if (!first) name << ",";
        name << (i + 1);
        first = false;
      }
    name << "}";
    names.push_back(name.str());
  }
  std::vector<std::pair<int, int>> covers;
  for (int mask = 0; mask < count; ++mask)
    for (int i = 0; i < n; ++i)
      if (!(mask & (1 << i))) covers.emplace_back(mask, mask | (1 << i));
  return FiniteLattice::from_covers(std::move(names), covers);
}

FiniteLattice chain_lattice(int n) {
  if (n < 1) throw ParameterError("chain_lattice requires n >= 1");
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i) {
    names.push_back("c" + std::to_string(i));
    if (i > 0) covers.emplace_back(i - 1, i);
  }
  return FiniteLattice::from_covers(std::move(names), covers);
}

FiniteLattice m3_lattice() {
  return FiniteLattice::from_covers(
      {"bot", "a", "b", "c", "top"},
      {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}

FiniteLattice n5_lattice() {
  // bot < a < top, bot < b < c < top, with a incomparable to b and c.
  return FiniteLattice::from_covers({"bot", "a", "b", "c", "top"},
                                    {{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}});
}

IsoReport is_order_isomorphic(const FiniteLattice& lattice,
                              const DominationMatrix& matrix,
                              const std::vector<int>& mapping) {
  if (lattice.size() != matrix.size() || mapping.size() != lattice.size())
    throw ParameterError("lattice, matrix, and mapping sizes must agree");
  for (int i = 0; i < static_cast<int>(lattice.size()); ++i)
    for (int j = 0; j < static_cast<int>(lattice.size()); ++j)
      if (lattice.leq(i, j) != matrix.dominates(mapping[i], mapping[j]))
        return {false, i, j};
  return {};
}

}  // namespace sm
