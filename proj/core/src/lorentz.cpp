#include "sm/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sm/errors.hpp"

namespace sm {

WeightSeq WeightSeq::create(std::vector<Rat> weights, Rat p) {
  if (weights.empty()) throw ParameterError("WeightSeq needs at least one weight");
  if (weights.front() != 1)
    throw InvariantError("WeightSeq requires w(1) = 1");
  if (p < 1) throw ParameterError("WeightSeq exponent must satisfy p >= 1");
  std::vector<Rat> sums;
  sums.reserve(weights.size());
  Rat acc(0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0)
      throw InvariantError("WeightSeq weights must be positive (index " +
                           std::to_string(i + 1) + ")");
    if (i > 0 && weights[i] > weights[i - 1])
      throw InvariantError("WeightSeq weights must be nonincreasing (index " +
                           std::to_string(i + 1) + ")");
    acc += weights[i];
    sums.push_back(acc);
  }
  return WeightSeq(std::move(weights), std::move(sums), std::move(p));
}

WeightSeq weights_from_fundamental(const PwlFunction& f, std::size_t horizon,
                                   const Rat& p) {
  if (horizon == 0) throw ParameterError("horizon must be positive");
  if (Rat(static_cast<unsigned long>(horizon)) > f.domain_end())
    throw DomainError("horizon " + std::to_string(horizon) +
                      " exceeds the function domain [1," +
                      rat_str(f.domain_end()) + "]");
  if (f.eval(Rat(1)) != 1)
    throw InvariantError("fundamental function must satisfy S(1) = 1");
  std::vector<Rat> w;
  w.reserve(horizon);
  Rat prev(0);  // S(0) = 0
  for (std::size_t n = 1; n <= horizon; ++n) {
    Rat cur = f.eval(Rat(static_cast<unsigned long>(n)));
    w.push_back(cur - prev);
    prev = cur;
  }
  return WeightSeq::create(std::move(w), p);
}

Rat lorentz_norm_p1(const WeightSeq& ws, const std::vector<Rat>& a) {
  std::vector<Rat> abs;
  abs.reserve(a.size());
  for (const Rat& v : a) abs.push_back(v < 0 ? Rat(-v) : v);
  std::sort(abs.begin(), abs.end(), std::greater<Rat>());
  while (!abs.empty() && abs.back() == 0) abs.pop_back();
  if (abs.size() > ws.horizon())
    throw DomainError("vector support exceeds the weight horizon");
  Rat out(0);
  for (std::size_t n = 0; n < abs.size(); ++n) out += abs[n] * ws.weights()[n];
  return out;
}

double lorentz_norm(const WeightSeq& ws, const std::vector<double>& a) {
  std::vector<double> abs;
  abs.reserve(a.size());
  for (double v : a) abs.push_back(std::fabs(v));
  std::sort(abs.begin(), abs.end(), std::greater<double>());
  while (!abs.empty() && abs.back() == 0.0) abs.pop_back();
  if (abs.size() > ws.horizon())
    throw DomainError("vector support exceeds the weight horizon");
  double p = to_double(ws.p());
  double acc = 0.0;
  for (std::size_t n = 0; n < abs.size(); ++n)
    acc += std::pow(abs[n], p) * to_double(ws.weights()[n]);
  return std::pow(acc, 1.0 / p);
}

namespace {

std::vector<std::vector<int>> nonempty_subsets_sorted(int n) {
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return subsets;
}

std::string subset_label(const std::vector<int>& s) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << ",";
    out << s[i];
  }
  out << "}";
  return out.str();
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Rat max_fundamental(const FamilyState& family, const std::vector<int>& subset,
                    const Int& m) {
  Rat x(m);
  Rat best(0);
  for (int i : subset) {
    Rat v = family.functions[i - 1].eval(x);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

std::vector<std::string> powerset_labels(int n, bool with_top) {
  std::vector<std::string> labels;
  for (const auto& s : nonempty_subsets_sorted(n)) labels.push_back(subset_label(s));
  if (with_top) labels.push_back("ell_p");
  return labels;
}

DominationMatrix powerset_diagram(const FamilyState& family, int n,
                                  const Rat& p, long threshold) {
  if (n < 1) throw ParameterError("powerset_diagram requires n >= 1");
  if (static_cast<std::size_t>(n) > family.functions.size())
    throw ParameterError("family has fewer than n members");
  if (p < 1) throw ParameterError("powerset_diagram requires p >= 1");
  if (threshold < 1) throw ParameterError("threshold must be >= 1");

  const auto subsets = nonempty_subsets_sorted(n);
  const bool with_top = p > 1;
  DominationMatrix matrix(powerset_labels(n, with_top));
  const std::size_t top = subsets.size();  // index of the lp node, if present

  // Divergence witness for "A is not dominated by B within the threshold":
  // a logged request for B certifies S_j(m) > N * max_{i in B} S_i(m) for
  // every j outside B; any j in A \ B then pushes max over A past the bound.
  auto witness_against = [&](const std::vector<int>& b) -> const FamilyRequest* {
    for (const FamilyRequest& req : family.request_log)
      if (req.target >= threshold && req.subset == b) return &req;
    return nullptr;
  };

  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (std::size_t j = 0; j < subsets.size(); ++j) {
      DominationEvidence& e = matrix.entry(i, j);
      if (subset_of(subsets[i], subsets[j])) {
        e.dominates = true;
        e.constant = 1;
      } else {
        const FamilyRequest* req = witness_against(subsets[j]);
        if (!req)
          throw InsufficientWitnessError(
              "no logged request covers (A=" + subset_label(subsets[j]) +
              ", N=" + std::to_string(threshold) + ")");
        e.dominates = false;
        e.witness_m = req->witness;
        e.ratio = max_fundamental(family, subsets[i], req->witness) /
                  max_fundamental(family, subsets[j], req->witness);
      }
    }
  }

  if (with_top) {
    // The lp node dominates every subset node with constant 1 (the weighted
    // rearranged sum is at most the plain lp sum since w <= 1), and no
    // subset node dominates it: at the far end of the common domain the
    // fundamental functions are vanishingly small next to m itself.
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      matrix.entry(i, top) = {true, Rat(1), Int(0), Rat(0)};

      DominationEvidence& e = matrix.entry(top, i);
      double pd = to_double(p);
      bool found = false;
      std::vector<Int> candidates;
      candidates.push_back(floor_rat(family.functions[0].domain_end()));
      for (auto it = family.witness_pool.rbegin();
           it != family.witness_pool.rend(); ++it)
        candidates.push_back(*it);
      for (const Int& m : candidates) {
        Rat power_ratio = Rat(m) / max_fundamental(family, subsets[i], m);
        double norm_ratio = std::pow(to_double(power_ratio), 1.0 / pd);
        if (norm_ratio > static_cast<double>(threshold)) {
          e = {false, Rat(0), m, power_ratio};
          found = true;
          break;
        }
      }
      if (!found)
        throw InsufficientWitnessError(
            "no abscissa separates the lp node from " + subset_label(subsets[i]));
    }
    matrix.entry(top, top) = {true, Rat(1), Int(0), Rat(0)};
  }
  return matrix;
}

}  // namespace sm
