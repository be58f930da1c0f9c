#include "sm/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <istream>
#include <sstream>

#include "sm/errors.hpp"

namespace sm {

namespace {

void validate(const std::vector<Rat>& xs, const std::vector<Rat>& ys,
              bool normalized) {
  if (xs.size() < 2 || xs.size() != ys.size())
    throw InvariantError("PwlFunction needs at least two breakpoints");
  if (xs.front() != 1)
    throw InvariantError("PwlFunction domain must start at 1");
  if (xs.back() <= 1)
    throw InvariantError("degenerate domain: x_max must exceed 1");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] <= xs[i - 1])
      throw InvariantError("breakpoints not strictly increasing at index " +
                           std::to_string(i));
    if (ys[i] <= ys[i - 1])
      throw InvariantError("values not strictly increasing at index " +
                           std::to_string(i));
  }
  Rat prev_slope;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    Rat slope = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
    if (i > 1 && slope > prev_slope)
      throw InvariantError("chord slopes increase at index " +
                           std::to_string(i) + ": concavity violated");
    prev_slope = slope;
  }
  if (normalized) {
    if (ys.front() != 1)
      throw InvariantError("normalized function must have S(1)=1");
    if (xs.back() < 2)
      throw InvariantError("normalized function must reach x=2");
    // S(x)=x must hold exactly on [1,2]: every breakpoint up to 2 lies on
    // y=x, and the segment spanning 2 passes through (2,2).
    std::size_t k = 0;
    for (; k < xs.size() && xs[k] <= 2; ++k)
      if (ys[k] != xs[k])
        throw InvariantError("normalized function must be the identity on [1,2]");
    if (k < xs.size() && xs[k - 1] < 2) {
      Rat at2 = ys[k - 1] + (ys[k] - ys[k - 1]) / (xs[k] - xs[k - 1]) *
                                (Rat(2) - xs[k - 1]);
      if (at2 != 2)
        throw InvariantError("normalized function must satisfy S(2)=2");
    }
  }
}

}  // namespace

PwlFunction PwlFunction::create(std::vector<Rat> breakpoints,
                                std::vector<Rat> values, bool normalized) {
  validate(breakpoints, values, normalized);
  return PwlFunction(std::move(breakpoints), std::move(values), normalized);
}

PwlFunction PwlFunction::identity_seed() {
  return PwlFunction({Rat(1), Rat(2)}, {Rat(1), Rat(2)}, true);
}

Rat PwlFunction::eval(const Rat& x) const {
  if (x < xs_.front() || x > xs_.back())
    throw DomainError("eval: x=" + rat_str(x) + " outside [1," +
                      rat_str(xs_.back()) + "]");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t hi = std::min<std::size_t>(it - xs_.begin(), xs_.size() - 1);
  std::size_t lo = hi - 1;
  return ys_[lo] + (ys_[hi] - ys_[lo]) / (xs_[hi] - xs_[lo]) * (x - xs_[lo]);
}

Rat PwlFunction::final_slope() const {
  std::size_t n = xs_.size();
  return (ys_[n - 1] - ys_[n - 2]) / (xs_[n - 1] - xs_[n - 2]);
}

PwlFunction PwlFunction::with_appended(const Rat& x, const Rat& y) const {
  std::vector<Rat> xs = xs_;
  std::vector<Rat> ys = ys_;
  xs.push_back(x);
  ys.push_back(y);
  validate(xs, ys, normalized_);
  return PwlFunction(std::move(xs), std::move(ys), normalized_);
}

namespace {

std::vector<Rat> candidate_abscissae(const PwlFunction& f, int grid_per_axis) {
  const Rat& xmax = f.domain_end();
  std::vector<Rat> cand = f.breakpoints();
  // Cell boundaries of g(x,y) in each variable also arise where x*y crosses a
  // breakpoint, i.e. at quotients of breakpoints.
  const auto& bp = f.breakpoints();
  for (const Rat& a : bp)
    for (const Rat& b : bp) {
      if (b == 0) continue;
      Rat q = a / b;
      if (q >= 1 && q <= xmax) cand.push_back(q);
    }
  if (grid_per_axis > 0) {
    const double lmax = std::log(to_double(xmax));
    for (int i = 1; i < grid_per_axis; ++i) {
      double v = std::exp(lmax * i / grid_per_axis);
      Rat r = rat_from_double(v);
      if (r > 1 && r < xmax) cand.push_back(r);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  return cand;
}

}  // namespace

SubmultReport check_submultiplicative(const PwlFunction& f, int grid_per_axis,
                                      std::size_t max_violations, int threads) {
  const Rat& xmax = f.domain_end();
  std::vector<Rat> cand = candidate_abscissae(f, grid_per_axis);
  std::vector<Rat> vals(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) vals[i] = f.eval(cand[i]);

  auto scan = [&](std::size_t begin, std::size_t end) {
    SubmultReport part;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i; j < cand.size(); ++j) {
        Rat xy = cand[i] * cand[j];
        if (xy > xmax) break;  // cand sorted, larger j only grows xy
        ++part.pairs_checked;
        Rat defect = vals[i] * vals[j] - f.eval(xy);
        if (defect < 0)
          part.violations.push_back({cand[i], cand[j], defect});
      }
    }
    return part;
  };

  SubmultReport report;
  if (threads <= 1) {
    report = scan(0, cand.size());
  } else {
    std::vector<std::future<SubmultReport>> parts;
    std::size_t chunk = (cand.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::size_t b = std::min<std::size_t>(t * chunk, cand.size());
      std::size_t e = std::min<std::size_t>(b + chunk, cand.size());
      parts.push_back(std::async(std::launch::async, scan, b, e));
    }
    for (auto& p : parts) {
      SubmultReport part = p.get();
      report.pairs_checked += part.pairs_checked;
      report.violations.insert(report.violations.end(), part.violations.begin(),
                               part.violations.end());
    }
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const SubmultViolation& a, const SubmultViolation& b) {
              return a.x != b.x ? a.x < b.x : a.y < b.y;
            });
  if (report.violations.size() > max_violations)
    report.violations.resize(max_violations);
  report.ok = report.violations.empty();
  return report;
}

std::string pwl_to_csv(const PwlFunction& f) {
  std::ostringstream out;
  out << "x,S(x)\n";
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i)
    out << rat_str(f.breakpoints()[i]) << "," << rat_str(f.values()[i]) << "\n";
  return out.str();
}

PwlFunction pwl_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,S(x)", 0) != 0)
    throw ParameterError("PwlFunction CSV must start with header 'x,S(x)'");
  std::vector<Rat> xs, ys;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParameterError("malformed PwlFunction CSV row: " + line);
    xs.push_back(parse_rat(line.substr(0, comma)));
    ys.push_back(parse_rat(line.substr(comma + 1)));
  }
  bool normalized = xs.size() >= 2 && xs.front() == 1 && ys.front() == 1;
  if (normalized) {
    PwlFunction probe = PwlFunction::create(xs, ys, false);
    normalized = probe.domain_end() >= 2 && probe.eval(2) == 2 &&
                 probe.eval(Rat(3, 2)) == Rat(3, 2);
  }
  return PwlFunction::create(std::move(xs), std::move(ys), normalized);
}

PwlFunction pwl_from_csv_string(const std::string& text) {
  std::istringstream in(text);
  return pwl_from_csv(in);
}

}  // namespace sm
