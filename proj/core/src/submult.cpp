#include "sm/submult.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sm/errors.hpp"

namespace sm {

Rat slowdown_epsilon0(const PwlFunction& f) {
  const Rat& n0 = f.domain_end();
  if (n0 < 2) throw InvariantError("slowdown_epsilon0 requires n0 >= 2");
  Rat c = f.final_slope();
  Rat k = f.eval(n0);
  Rat a = c / n0;
  Rat b = k / (n0 * n0);
  return a < b ? a : b;
}

PwlFunction extend_slow(const PwlFunction& f, const Rat& eps) {
  Rat eps0 = slowdown_epsilon0(f);
  if (eps <= 0 || eps >= eps0)
    throw ParameterError("extend_slow: eps=" + rat_str(eps) +
                         " must lie strictly inside (0," + rat_str(eps0) + ")");
  const Rat& n0 = f.domain_end();
  Rat n1 = n0 * n0;
  return f.with_appended(n1, f.eval(n0) + eps * (n1 - n0));
}

PwlFunction extend_slow_to(const PwlFunction& f, const Rat& N0,
                           const Rat& eps) {
  if (N0 <= f.domain_end())
    throw ParameterError("extend_slow_to: N0=" + rat_str(N0) +
                         " must exceed the current domain end");
  if (eps <= 0) throw ParameterError("extend_slow_to: eps must be positive");
  PwlFunction cur = f;
  Rat budget = eps / 2;  // ordinate budget for the current step
  while (cur.domain_end() < N0) {
    Rat n = cur.domain_end();
    Rat square = n * n;
    Rat next_end = square < N0 ? square : N0;
    Rat safe = slowdown_epsilon0(cur) / 2;
    Rat budget_slope = budget / (next_end - n);
    Rat slope = safe < budget_slope ? safe : budget_slope;
    cur = cur.with_appended(next_end, cur.eval(n) + slope * (next_end - n));
    budget /= 2;
  }
  return cur;
}

FastExtension extend_fast(const PwlFunction& f) {
  const Rat& n0 = f.domain_end();
  Rat big_k = f.eval(n0);
  if (big_k < 2)
    throw ParameterError("extend_fast requires S(n0) >= 2, got " +
                         rat_str(big_k));
  // First slowdown to n1 = n0^2, then a second slowdown segment of slope
  // eps = eps0/2 of the extended function carries the growth.
  PwlFunction f1 = extend_slow(f, slowdown_epsilon0(f) / 2);
  Rat n1 = f1.domain_end();
  Rat s1 = f1.eval(n1);
  Rat eps = slowdown_epsilon0(f1) / 2;
  Rat target = Rat(3) * big_k / 2;

  Rat val_at_2n1 = s1 + eps * n1;
  if (val_at_2n1 >= target) {
    return {f1.with_appended(2 * n1, val_at_2n1), true, eps};
  }
  Rat N0 = n1 + (target - s1) / eps;
  // The case analysis for x in [1,2] needs eps*y <= S(y) up to N0, which
  // follows from K/eps >= N0; recheck it on the exact values.
  if (big_k / eps < N0)
    throw InvariantError("extend_fast: guard K/eps >= N0 failed");
  return {f1.with_appended(N0, target), false, eps};
}

PwlFunction extend_fast_to(const PwlFunction& f, const Rat& M,
                           int* iterations) {
  PwlFunction cur = f;
  int count = 0;
  while (cur.eval(cur.domain_end()) <= M) {
    cur = extend_fast(cur).fn;
    ++count;
  }
  if (iterations) *iterations = count;
  return cur;
}

namespace {

std::vector<std::vector<int>> proper_nonempty_subsets(int m) {
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < m; ++i)
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

void guard_bits(const PwlFunction& f, const FamilyOptions& options) {
  std::size_t bits =
      std::max(rat_bits(f.domain_end()), rat_bits(f.values().back()));
  if (bits > options.max_domain_bits) {
    std::ostringstream msg;
    msg << "incomparable-family construction exceeded the domain-size budget ("
        << bits << " bits > " << options.max_domain_bits
        << "); iterated speedup extensions quadruple the abscissa bit length "
           "per 3/2 growth step, so large ratio targets are unreachable";
    throw ResourceError(msg.str());
  }
}

// Ratio min_{j not in A} S_j(n) / max_{i in A} S_i(n) at an integer abscissa.
Rat family_ratio(const std::vector<PwlFunction>& fns,
                 const std::vector<int>& subset, const Int& n) {
  Rat x(n);
  Rat max_in(0), min_out(-1);
  std::vector<bool> in(fns.size() + 1, false);
  for (int i : subset) in[i] = true;
  for (std::size_t i = 1; i <= fns.size(); ++i) {
    Rat v = fns[i - 1].eval(x);
    if (in[i]) {
      if (v > max_in) max_in = v;
    } else if (min_out < 0 || v < min_out) {
      min_out = v;
    }
  }
  return min_out / max_in;
}

}  // namespace

FamilyState build_incomparable_family(int m, int request_bound,
                                      const FamilyOptions& options) {
  if (m < 2) throw ParameterError("build_incomparable_family requires m >= 2");
  if (request_bound < 1)
    throw ParameterError("build_incomparable_family requires request_bound >= 1");

  FamilyState state;
  state.functions.assign(m, PwlFunction::identity_seed());
  state.witness_pool.push_back(Int(2));

  const auto subsets = proper_nonempty_subsets(m);
  for (int target = 1; target <= request_bound; ++target) {
    for (const auto& subset : subsets) {
      // A previously certified abscissa may already witness this request.
      bool served = false;
      for (auto it = state.witness_pool.rbegin();
           it != state.witness_pool.rend(); ++it) {
        Rat ratio = family_ratio(state.functions, subset, *it);
        if (ratio > target) {
          state.request_log.push_back({subset, target, *it, ratio});
          served = true;
          break;
        }
      }
      if (served) continue;

      // Extension round: speed up every function outside A, keep A slow,
      // then pad everyone to a common integer domain end.
      std::vector<bool> in(m + 1, false);
      for (int i : subset) in[i] = true;
      const std::vector<PwlFunction> before = state.functions;
      std::vector<PwlFunction> work = state.functions;
      for (int attempt = 0;; ++attempt) {
        if (attempt > 256)
          throw ResourceError("incomparable-family round failed to converge");
        for (int j = 1; j <= m; ++j) {
          if (in[j]) continue;
          work[j - 1] = extend_fast(work[j - 1]).fn;
          guard_bits(work[j - 1], options);
        }
        Rat common_end(ceil_rat(
            std::max_element(work.begin(), work.end(),
                             [](const PwlFunction& a, const PwlFunction& b) {
                               return a.domain_end() < b.domain_end();
                             })
                ->domain_end()));
        std::vector<PwlFunction> padded;
        padded.reserve(m);
        for (int j = 1; j <= m; ++j) {
          const PwlFunction& base = in[j] ? before[j - 1] : work[j - 1];
          padded.push_back(base.domain_end() < common_end
                               ? extend_slow_to(base, common_end, Rat(1))
                               : base);
          guard_bits(padded.back(), options);
        }
        Int witness = ceil_rat(common_end);
        Rat ratio = family_ratio(padded, subset, witness);
        if (ratio > target) {
          state.functions = std::move(padded);
          state.witness_pool.push_back(witness);
          state.request_log.push_back({subset, target, witness, ratio});
          break;
        }
      }
    }
  }

  if (options.verify_grid > 0) {
    for (int j = 0; j < m; ++j) {
      SubmultReport report =
          check_submultiplicative(state.functions[j], options.verify_grid);
      if (!report.ok)
        throw InvariantError("family member " + std::to_string(j + 1) +
                             " failed the submultiplicativity check");
    }
  }
  return state;
}

void export_family(const FamilyState& family, const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  for (std::size_t i = 0; i < family.functions.size(); ++i) {
    std::ofstream out(fs::path(directory) /
                      ("S" + std::to_string(i + 1) + ".csv"));
    out << pwl_to_csv(family.functions[i]);
  }
  nlohmann::json log = nlohmann::json::array();
  for (const auto& req : family.request_log) {
    log.push_back({{"A", req.subset},
                   {"N", req.target},
                   {"witness_n", req.witness.get_str()},
                   {"ratio", rat_str(req.ratio)}});
  }
  std::ofstream out(fs::path(directory) / "request_log.json");
  out << log.dump(2) << "\n";
}

}  // namespace sm
