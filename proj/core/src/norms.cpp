#include "sm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sm/errors.hpp"

namespace sm {

double SymNorm::const_block(long m) const {
  if (m < 1) throw ParameterError("const_block requires m >= 1");
  return eval(std::vector<double>(static_cast<std::size_t>(m), 1.0));
}

namespace {

class LpNorm final : public SymNorm {
 public:
  explicit LpNorm(double q) : q_(q) {
    if (q < 1.0) throw ParameterError("lp_norm requires q >= 1");
  }
  double eval(const std::vector<double>& a) const override {
    double acc = 0.0;
    for (double v : a) acc += std::pow(std::fabs(v), q_);
    return std::pow(acc, 1.0 / q_);
  }
  std::string label() const override {
    std::ostringstream out;
    out << "lp(" << q_ << ")";
    return out.str();
  }

 private:
  double q_;
};

class LorentzSymNorm final : public SymNorm {
 public:
  LorentzSymNorm(WeightSeq ws, std::string label)
      : ws_(std::move(ws)), label_(std::move(label)) {}
  double eval(const std::vector<double>& a) const override {
    return lorentz_norm(ws_, a);
  }
  std::string label() const override {
    return label_.empty() ? "lorentz(p=" + rat_str(ws_.p()) + ")" : label_;
  }

 private:
  WeightSeq ws_;
  std::string label_;
};

class OrliczSymNorm final : public SymNorm {
 public:
  OrliczSymNorm(OrliczFunction m, std::string label, double tol)
      : m_(std::move(m)), label_(std::move(label)), tol_(tol) {}
  double eval(const std::vector<double>& a) const override {
    bool all_zero = true;
    for (double v : a)
      if (v != 0.0) all_zero = false;
    if (all_zero) return 0.0;
    return luxemburg_norm(m_, a, tol_);
  }
  std::string label() const override {
    return label_.empty() ? "orlicz" : label_;
  }

 private:
  OrliczFunction m_;
  std::string label_;
  double tol_;
};

class MaxCombo final : public SymNorm {
 public:
  explicit MaxCombo(std::vector<NormPtr> norms) : norms_(std::move(norms)) {
    if (norms_.empty()) throw ParameterError("max_combo needs at least one norm");
  }
  double eval(const std::vector<double>& a) const override {
    double best = 0.0;
    for (const NormPtr& n : norms_) best = std::max(best, n->eval(a));
    return best;
  }
  std::string label() const override {
    std::string out = "max(";
    for (std::size_t i = 0; i < norms_.size(); ++i)
      out += (i ? "," : "") + norms_[i]->label();
    return out + ")";
  }

 private:
  std::vector<NormPtr> norms_;
};

class WeightedSumCombo final : public SymNorm {
 public:
  WeightedSumCombo(std::vector<double> inverse_constants,
                   std::vector<NormPtr> norms)
      : inv_(std::move(inverse_constants)), norms_(std::move(norms)) {}
  double eval(const std::vector<double>& a) const override {
    double acc = 0.0;
    for (std::size_t i = 0; i < norms_.size(); ++i)
      acc += inv_[i] * norms_[i]->eval(a);
    return acc;
  }
  std::string label() const override { return "weighted_sum"; }

 private:
  std::vector<double> inv_;
  std::vector<NormPtr> norms_;
};

class LpSumCombo final : public SymNorm {
 public:
  LpSumCombo(std::vector<double> c, std::vector<NormPtr> norms, double p)
      : c_(std::move(c)), norms_(std::move(norms)), p_(p) {
    // Exact collapse when a single component carries the whole weight.
    if (c_[0] == 0.0) {
      int nonzero = -1;
      for (std::size_t j = 1; j < c_.size(); ++j)
        if (c_[j] != 0.0) {
          if (nonzero >= 0 || c_[j] != 1.0) return;
          nonzero = static_cast<int>(j);
        }
      collapse_ = nonzero;
    }
  }
  double eval(const std::vector<double>& a) const override {
    if (collapse_ >= 0) return norms_[collapse_ - 1]->eval(a);
    double acc = 0.0;
    for (std::size_t j = 1; j < c_.size(); ++j)
      if (c_[j] != 0.0)
        acc += std::pow(c_[j], p_) * std::pow(norms_[j - 1]->eval(a), p_);
    if (c_[0] != 0.0) {
      double lp = 0.0;
      for (double v : a) lp += std::pow(std::fabs(v), p_);
      acc += std::pow(c_[0], p_) * lp;
    }
    return std::pow(acc, 1.0 / p_);
  }
  std::string label() const override { return "lp_sum"; }

 private:
  std::vector<double> c_;
  std::vector<NormPtr> norms_;
  double p_;
  int collapse_ = -1;
};

}  // namespace

NormPtr lp_norm(double q) { return std::make_shared<LpNorm>(q); }

NormPtr lorentz_sym_norm(WeightSeq ws, std::string label) {
  return std::make_shared<LorentzSymNorm>(std::move(ws), std::move(label));
}

NormPtr orlicz_sym_norm(OrliczFunction m, std::string label, double tol) {
  return std::make_shared<OrliczSymNorm>(std::move(m), std::move(label), tol);
}

NormPtr max_combo(std::vector<NormPtr> norms) {
  return std::make_shared<MaxCombo>(std::move(norms));
}

NormPtr weighted_sum_combo(const std::vector<double>& constants,
                           std::vector<NormPtr> norms) {
  if (constants.size() != norms.size() || norms.empty())
    throw ParameterError("weighted_sum_combo needs one constant per norm");
  std::vector<double> inv;
  double total = 0.0;
  for (double cn : constants) {
    if (cn <= 0.0) throw ParameterError("weighted_sum_combo constants must be positive");
    inv.push_back(1.0 / cn);
    total += 1.0 / cn;
  }
  if (total > 1.0 + 1e-12)
    throw ParameterError("weighted_sum_combo requires sum C_n^-1 <= 1");
  return std::make_shared<WeightedSumCombo>(std::move(inv), std::move(norms));
}

NormPtr sup_family_norm(const std::vector<NormPtr>& norms,
                        const std::vector<int>& A) {
  if (A.empty()) throw ParameterError("sup_family_norm needs a nonempty index set");
  std::vector<NormPtr> picked;
  for (int i : A) {
    if (i < 0 || i >= static_cast<int>(norms.size()))
      throw ParameterError("sup_family_norm index out of range");
    picked.push_back(norms[i]);
  }
  return std::make_shared<MaxCombo>(std::move(picked));
}

NormPtr lp_sum_combine(const std::vector<double>& c,
                       std::vector<NormPtr> norms, double p) {
  if (p < 1.0) throw ParameterError("lp_sum_combine requires p >= 1");
  if (c.size() != norms.size() + 1)
    throw ParameterError("lp_sum_combine needs c_0 plus one c_j per norm");
  double total = 0.0;
  for (double cj : c) {
    if (cj < 0.0) throw ParameterError("lp_sum_combine coefficients must be >= 0");
    total += std::pow(cj, p);
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw ParameterError("lp_sum_combine requires sum c_j^p = 1");
  return std::make_shared<LpSumCombo>(c, std::move(norms), p);
}

std::optional<GapWitness> find_gap_witness(const std::vector<NormPtr>& norms,
                                           const std::vector<int>& F,
                                           double threshold, long max_m) {
  if (norms.empty()) throw ParameterError("find_gap_witness needs norms");
  std::vector<int> all(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) all[i] = static_cast<int>(i);
  NormPtr r_all = sup_family_norm(norms, all);
  NormPtr r_f = sup_family_norm(norms, F);
  for (long m = 1; m <= max_m; ++m) {
    double top = r_all->const_block(m);
    double bottom = r_f->const_block(m);
    if (bottom > 0.0 && top > threshold * bottom)
      return GapWitness{m, top / bottom};
  }
  return std::nullopt;
}

DominationEstimate estimate_domination(const SymNorm& na, const SymNorm& nb,
                                       const SamplerOptions& options) {
  DominationEstimate out;
  auto consider = [&](const std::vector<double>& a) {
    if (out.diverged) return;
    double bottom = nb.eval(a);
    if (bottom <= 0.0) return;
    double ratio = na.eval(a) / bottom;
    if (ratio > out.constant) {
      out.constant = ratio;
      out.witness = a;
    }
    if (ratio > options.cap) out.diverged = true;
  };
  for (int m = 1; m <= options.max_block; ++m)
    consider(std::vector<double>(m, 1.0));
  for (double q : {0.5, 0.75}) {
    std::vector<double> a;
    double v = 1.0;
    for (int i = 0; i < options.random_length; ++i, v *= q) a.push_back(v);
    consider(a);
  }
  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < options.random_vectors; ++t) {
    std::vector<double> a(options.random_length);
    for (double& v : a)
      v = (t % 2 == 0) ? (unif(rng) < 0.5 ? -1.0 : 1.0) : unif(rng);
    consider(a);
  }
  return out;
}

LpSumClassification classify_lp_sum(const std::vector<double>& c,
                                    const std::vector<double>& p_list) {
  if (c.size() != p_list.size())
    throw ParameterError("classify_lp_sum needs one coefficient per exponent");
  if (c.empty()) throw ParameterError("classify_lp_sum needs coefficients");
  for (std::size_t i = 1; i < p_list.size(); ++i)
    if (p_list[i] <= p_list[i - 1])
      throw ParameterError("classify_lp_sum exponents must increase");
  int index = -1;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) {
      index = static_cast<int>(i);
      break;
    }
  if (index < 0) throw ParameterError("classify_lp_sum needs a nonzero coefficient");
  LpSumClassification out;
  out.index = index;
  out.lower = c[index];  // keeping only the beta component loses factor c_beta
  out.upper = 1.0;       // ||.||_q <= ||.||_p for p <= q bounds the rest
  return out;
}

SumClassification classify_sum_spreading_model(
    const EncoderState& state, const std::vector<double>& c,
    const std::vector<ComponentKind>& kinds,
    const std::vector<double>& equivalence_constants) {
  const FiniteLattice& lattice = state.lattice;
  const std::size_t n = lattice.size();
  if (c.size() != n || kinds.size() != n)
    throw ParameterError("classification needs one entry per lattice element");
  if (!equivalence_constants.empty() && equivalence_constants.size() != n)
    throw ParameterError("equivalence constants size mismatch");
  const double p = to_double(state.params.p);
  double total = 0.0;
  for (double cj : c) total += std::pow(std::fabs(cj), p);
  if (std::fabs(total - 1.0) > 1e-9)
    throw ParameterError("coefficients must be lp-normalized");

  std::vector<int> b;
  for (std::size_t j = 0; j < n; ++j)
    if (static_cast<int>(j) != lattice.minimum() && c[j] != 0.0 &&
        kinds[j] == ComponentKind::BasisEquivalent)
      b.push_back(static_cast<int>(j));

  SumClassification out;
  if (b.empty()) {
    out.j0 = lattice.minimum();
    out.is_lp_node = true;
    out.lower = out.upper = 1.0;
    return out;
  }

  const int j0 = lattice.join_all(b);
  // Assert the join realizes the minimal ones table over B exactly, at all
  // zero events of the patterns involved.
  std::vector<Int> events = state.zeros[j0];
  for (int j : b)
    events.insert(events.end(), state.zeros[j].begin(), state.zeros[j].end());
  events.push_back(state.horizon);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  Pattern join_pattern = state.pattern(j0);
  for (const Int& z : events) {
    Int best = state.pattern(b[0]).ones(z);
    for (std::size_t i = 1; i < b.size(); ++i) {
      Int cur = state.pattern(b[i]).ones(z);
      if (cur < best) best = cur;
    }
    if (best != join_pattern.ones(z))
      throw InvariantError("join does not realize the minimal ones table at " +
                           z.get_str());
  }

  out.j0 = j0;
  double mass = 0.0;
  for (int j : b) mass += std::pow(std::fabs(c[j]), p);
  out.upper = std::pow(to_double(state.params.tau), -2.0 * p) *
              std::pow(mass, 1.0 / p);
  double cmin = 1.0;
  for (int j : b)
    if (!equivalence_constants.empty())
      cmin = std::min(cmin, equivalence_constants[j]);
  out.lower = cmin / static_cast<double>(b.size());
  return out;
}

}  // namespace sm
