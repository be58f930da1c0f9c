#include "sm/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sm/errors.hpp"

namespace sm {

namespace {

void require_params_domain(const OrliczParams& params) {
  if (params.tau <= 0 || params.tau >= 1)
    throw ParameterError("OrliczParams requires 0 < tau < 1");
  if (params.r <= 1 || params.p <= params.r)
    throw ParameterError("OrliczParams requires 1 < r < p");
}

}  // namespace

ParamVerdict validate_params(const OrliczParams& params, double margin) {
  require_params_domain(params);
  const double tau = to_double(params.tau);
  const double r = to_double(params.r);
  const double p = to_double(params.p);
  const double tr = std::pow(tau, r);
  const double tp = std::pow(tau, p);
  // tau^(r-1)(1 - tau^p) <= 1 - tau^r  and  tau^(p-1)(1 - tau^r) <= 1 - tau^p
  const double slack1 = (1.0 - tr) - std::pow(tau, r - 1.0) * (1.0 - tp);
  const double slack2 = (1.0 - tp) - std::pow(tau, p - 1.0) * (1.0 - tr);
  if (slack1 >= margin && slack2 >= margin) return ParamVerdict::Valid;
  if (slack1 <= -margin || slack2 <= -margin) return ParamVerdict::Invalid;
  return ParamVerdict::Indeterminate;
}

Pattern Pattern::from_zeros(std::vector<Int> zeros, Int horizon) {
  if (horizon < 1) throw ParameterError("Pattern horizon must be >= 1");
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (zeros[i] < 1 || zeros[i] > horizon)
      throw ParameterError("zero position outside [1, horizon]");
    if (i > 0 && zeros[i] <= zeros[i - 1])
      throw ParameterError("zero positions must be strictly increasing");
  }
  return Pattern(std::move(zeros), std::move(horizon));
}

Pattern Pattern::all_ones(Int horizon) {
  return from_zeros({}, std::move(horizon));
}

Int Pattern::zero_count(const Int& k) const {
  if (k < 0 || k > horizon_)
    throw DomainError("position " + k.get_str() + " outside [0, horizon]");
  auto it = std::upper_bound(zeros_.begin(), zeros_.end(), k);
  return Int(static_cast<unsigned long>(it - zeros_.begin()));
}

Int Pattern::ones(const Int& k) const { return Int(k - zero_count(k)); }

bool Pattern::is_zero_at(const Int& k) const {
  return std::binary_search(zeros_.begin(), zeros_.end(), k);
}

std::string Pattern::to_rle() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](char bit, const Int& count) {
    if (count <= 0) return;
    if (!first) out << ",";
    out << bit << "x" << count.get_str();
    first = false;
  };
  Int pos(1);
  std::size_t i = 0;
  while (i < zeros_.size()) {
    if (zeros_[i] > pos) {
      emit('1', Int(zeros_[i] - pos));
      pos = zeros_[i];
    }
    Int run(0);
    while (i < zeros_.size() && zeros_[i] == pos + run) ++run, ++i;
    emit('0', run);
    pos += run;
  }
  emit('1', Int(horizon_ - pos + 1));
  return out.str();
}

Pattern Pattern::from_rle(const std::string& text) {
  std::vector<Int> zeros;
  Int pos(1);
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.size() < 3 || (token[0] != '0' && token[0] != '1') ||
        token[1] != 'x')
      throw ParameterError("malformed RLE token: " + token);
    Int count(token.substr(2));
    if (count < 1) throw ParameterError("RLE run length must be positive");
    if (token[0] == '0')
      for (Int i(0); i < count; ++i) zeros.push_back(Int(pos + i));
    pos += count;
  }
  if (pos <= 1) throw ParameterError("empty RLE pattern");
  return from_zeros(std::move(zeros), Int(pos - 1));
}

ShiftReport check_shift_minimality(const Pattern& pattern) {
  const auto& z = pattern.zero_positions();
  // Prefix [1, n] must contain at least as many zeros as any window of
  // length n. The minimal window holding zeros z_a..z_b has length
  // z_b - z_a + 1, so the condition reduces to z_{b-a+1} <= z_b - z_a + 1.
  for (std::size_t a = 0; a < z.size(); ++a) {
    for (std::size_t b = a; b < z.size(); ++b) {
      if (z[b - a] > z[b] - z[a] + 1) {
        ShiftReport report;
        report.ok = false;
        report.window_start = Int(z[a] - 1);
        report.window_len = Int(z[b] - z[a] + 1);
        return report;
      }
    }
  }
  return {};
}

ShiftReport check_shift_minimality_exhaustive(const Pattern& pattern,
                                              long horizon_cap) {
  if (pattern.horizon() > horizon_cap)
    throw ResourceError("horizon too large for the dense shift check");
  long h = static_cast<long>(pattern.horizon().get_si());
  std::vector<long> prefix(h + 1, 0);  // cumulative ones
  for (long i = 1; i <= h; ++i)
    prefix[i] = prefix[i - 1] + (pattern.is_zero_at(Int(i)) ? 0 : 1);
  for (long n = 1; n <= h; ++n)
    for (long k = 0; k + n <= h; ++k)
      if (prefix[n] > prefix[k + n] - prefix[k]) {
        ShiftReport report;
        report.ok = false;
        report.window_start = Int(k);
        report.window_len = Int(n);
        return report;
      }
  return {};
}

Pattern single_space_pattern(const std::vector<Int>& positions,
                             const Int& horizon) {
  if (positions.empty() || positions.front() != 1)
    throw ParameterError("zero positions must start at n_1 = 1");
  for (std::size_t i = 2; i < positions.size(); ++i)
    if (positions[i] - positions[i - 1] <= positions[i - 1] - positions[i - 2])
      throw ParameterError(
          "zero-position differences must be strictly increasing (index " +
          std::to_string(i + 1) + ")");
  std::vector<Int> zeros;
  for (const Int& n : positions)
    if (n <= horizon) zeros.push_back(n);
  Pattern pattern = Pattern::from_zeros(std::move(zeros), horizon);
  ShiftReport shift = check_shift_minimality(pattern);
  if (!shift.ok)
    throw InvariantError("shift-minimality fails for window at k=" +
                         shift.window_start.get_str());
  return pattern;
}

OrliczFunction::OrliczFunction(OrliczParams params, Pattern pattern)
    : params_(std::move(params)), pattern_(std::move(pattern)) {
  require_params_domain(params_);
}

Rat OrliczFunction::exponent_at(const Int& k) const {
  if (k < 0 || k > pattern_.horizon())
    throw DomainError("exponent index outside [0, horizon]");
  return Rat(params_.r * Rat(k) + (params_.p - params_.r) * Rat(pattern_.ones(k)));
}

double OrliczFunction::eval(double t) const {
  if (!(t > 0.0) || t > 1.0)
    throw DomainError("Orlicz eval requires t in (0, 1]");
  if (t == 1.0) return 1.0;
  const double tau = to_double(params_.tau);
  long k = static_cast<long>(std::floor(std::log(t) / std::log(tau)));
  if (k < 0) k = 0;
  while (std::pow(tau, static_cast<double>(k)) < t && k > 0) --k;
  while (std::pow(tau, static_cast<double>(k + 1)) > t) ++k;
  if (Int(k + 1) > pattern_.horizon())
    throw DomainError("Orlicz eval: horizon exhausted at t=" +
                      std::to_string(t));
  const double x1 = std::pow(tau, static_cast<double>(k));
  const double x0 = std::pow(tau, static_cast<double>(k + 1));
  const double y1 = std::pow(tau, to_double(exponent_at(Int(k))));
  const double y0 = std::pow(tau, to_double(exponent_at(Int(k + 1))));
  return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
}

namespace {

void require_compatible(const OrliczFunction& a, const OrliczFunction& b) {
  if (!(a.params() == b.params()))
    throw ParameterError("Orlicz comparison requires identical parameters");
  if (a.pattern().horizon() != b.pattern().horizon())
    throw ParameterError("Orlicz comparison requires identical horizons");
}

}  // namespace

CompareReport pointwise_compare(const OrliczFunction& mi,
                                const OrliczFunction& mj) {
  require_compatible(mi, mj);
  // ones_i - ones_j changes only at zero positions of either pattern and is
  // constant in between, so checking at those events decides every k.
  std::vector<Int> events = mi.pattern().zero_positions();
  events.insert(events.end(), mj.pattern().zero_positions().begin(),
                mj.pattern().zero_positions().end());
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  CompareReport report;
  bool seen_below = false, seen_above = false;
  for (const Int& k : events) {
    Int diff = mi.pattern().ones(k) - mj.pattern().ones(k);
    if (diff > 0 && !seen_below) {
      seen_below = true;
      report.below_witness = k;
    } else if (diff < 0 && !seen_above) {
      seen_above = true;
      report.above_witness = k;
    }
  }
  if (seen_below && seen_above)
    report.rel = CompareResult::Incomparable;
  else if (seen_below)
    report.rel = CompareResult::LE;
  else if (seen_above)
    report.rel = CompareResult::GE;
  else
    report.rel = CompareResult::EQ;
  return report;
}

Rat ratio_gap(const OrliczFunction& mi, const OrliczFunction& mj,
              const Int& k) {
  require_compatible(mi, mj);
  if (k < 0 || k > mi.pattern().horizon())
    throw DomainError("ratio_gap index outside [0, horizon]");
  return Rat((mi.params().p - mi.params().r) *
             Rat(mi.pattern().ones(k) - mj.pattern().ones(k)));
}

long domination_zero_count(const OrliczParams& params, long k) {
  require_params_domain(params);
  if (k < 1) throw ParameterError("domination_zero_count requires k >= 1");
  Rat q = params.p - params.r;  // exponent step per zero, > 0
  const Int& a = q.get_num();
  const Int& b = q.get_den();
  const Int& u = params.tau.get_num();
  const Int& v = params.tau.get_den();
  // tau^(q d) < 2^(-k)  <=>  u^(a d) * 2^(k b) < v^(a d), all exact.
  unsigned long step = a.get_ui();
  unsigned long shift = static_cast<unsigned long>(k) * b.get_ui();
  Int u_pow(1), v_pow(1), u_step, v_step;
  mpz_pow_ui(u_step.get_mpz_t(), u.get_mpz_t(), step);
  mpz_pow_ui(v_step.get_mpz_t(), v.get_mpz_t(), step);
  for (long d = 1;; ++d) {
    u_pow *= u_step;
    v_pow *= v_step;
    Int lhs;
    mpz_mul_2exp(lhs.get_mpz_t(), u_pow.get_mpz_t(), shift);
    if (lhs < v_pow) return d;
  }
}

double luxemburg_norm(const OrliczFunction& m, const std::vector<double>& a,
                      double tol) {
  if (tol <= 0) throw ParameterError("luxemburg_norm requires tol > 0");
  double lo = 0.0, hi = 0.0;
  for (double v : a) {
    double av = std::fabs(v);
    lo = std::max(lo, av);
    hi += av;
  }
  if (lo == 0.0) throw ParameterError("luxemburg_norm of the zero vector");
  if (lo == hi) return lo;  // single nonzero coordinate: M(1) = 1

  auto level = [&](double rho) {
    double sum = 0.0;
    for (double v : a) {
      double av = std::fabs(v);
      if (av > 0.0) sum += m.eval(av / rho);
    }
    return sum;
  };
  // level is continuous and decreasing; level(lo) >= M(1) = 1 and
  // level(hi) <= sum |a_n|/hi = 1 by convexity with M(0)=0, M(1)=1.
  double rho = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    rho = 0.5 * (lo + hi);
    double s = level(rho);
    if (std::fabs(s - 1.0) <= tol) return rho;
    if (s > 1.0)
      lo = rho;
    else
      hi = rho;
  }
  return rho;
}

Delta2Report delta2_check(const OrliczFunction& m) {
  // e(k+1) - e(k) = r + (p - r) * eta(k+1), so the max difference is p as
  // soon as some position carries a one, and r otherwise.
  const bool has_one =
      Int(static_cast<unsigned long>(m.pattern().zero_positions().size())) <
      m.pattern().horizon();
  Delta2Report report;
  report.max_exponent_difference = has_one ? m.params().p : m.params().r;
  report.implied_constant =
      2.0 * std::pow(to_double(m.params().tau),
                     -to_double(report.max_exponent_difference));
  return report;
}

}  // namespace sm
