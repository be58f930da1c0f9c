#include "sm/encoder.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sm/errors.hpp"

namespace sm {

namespace {

std::vector<int> non_minimum_elements(const FiniteLattice& lattice) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(lattice.size()); ++i)
    if (i != lattice.minimum()) out.push_back(i);
  return out;
}

Int count_upto(const std::vector<Int>& zeros, const Int& k) {
  auto it = std::upper_bound(zeros.begin(), zeros.end(), k);
  return Int(static_cast<unsigned long>(it - zeros.begin()));
}

Int ones_upto(const std::vector<Int>& zeros, const Int& k) {
  return Int(k - count_upto(zeros, k));
}

Int next_power_of_two_above(const Int& n) {
  Int out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, mpz_sizeinbase(n.get_mpz_t(), 2));
  return out;
}

bool is_power_of_two(const Int& n) {
  return n > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

}  // namespace

Pattern EncoderState::pattern(int element) const {
  return Pattern::from_zeros(zeros.at(element), horizon);
}

OrliczFunction EncoderState::orlicz(int element) const {
  return OrliczFunction(params, pattern(element));
}

EncoderState encoder_init(const FiniteLattice& lattice,
                          const OrliczParams& params) {
  if (validate_params(params) != ParamVerdict::Valid)
    throw ParameterError("encoder requires parameters that validate as Valid");
  EncoderState state;
  state.lattice = lattice;
  state.params = params;
  state.zeros.assign(lattice.size(), {});
  for (int j : non_minimum_elements(lattice)) state.zeros[j].push_back(Int(1));
  state.horizon = 1;
  state.checkpoints.push_back(Int(1));
  return state;
}

std::vector<ScheduleItem> request_schedule(const FiniteLattice& lattice,
                                           int depth) {
  if (depth < 1) throw ParameterError("request_schedule requires depth >= 1");
  const std::vector<int> elems = non_minimum_elements(lattice);
  const int m = static_cast<int>(elems.size());
  std::vector<ScheduleItem> schedule;
  for (int s = 2; s <= depth + 1; ++s)
    for (int j = 1; j <= std::min(m, s - 1); ++j)
      schedule.push_back({s - j, elems[j - 1]});
  return schedule;
}

void apply_domination(EncoderState& state, long k, const std::vector<int>& A) {
  if (k < 1) throw ParameterError("apply_domination requires eps = 2^-k < 1");
  if (A.empty()) throw ParameterError("apply_domination requires nonempty A");
  const FiniteLattice& lattice = state.lattice;
  const int n = static_cast<int>(lattice.size());

  std::vector<int> a_full = A;
  for (int i : a_full)
    if (i < 0 || i >= n) throw ParameterError("A references an unknown element");
  a_full.push_back(lattice.minimum());
  std::sort(a_full.begin(), a_full.end());
  a_full.erase(std::unique(a_full.begin(), a_full.end()), a_full.end());
  const int join = lattice.join_all(a_full);
  if (a_full != lattice.down_set(join))
    throw ParameterError("A must be the down-set of a lattice element");

  if (state.checkpoints.empty() || state.checkpoints.back() != state.horizon)
    throw InvariantError("apply_domination requires the horizon to be a checkpoint");

  std::vector<bool> in_a(n, false);
  for (int i : a_full) in_a[i] = true;
  std::vector<int> a_side, comp;  // both exclude the minimum
  for (int i : non_minimum_elements(lattice))
    (in_a[i] ? a_side : comp).push_back(i);

  DominationRecord record;
  record.k = k;
  record.element = join;

  if (comp.empty()) {
    // A covers every non-minimum element: extend by one all-ones position.
    state.horizon += 1;
    state.checkpoints.push_back(state.horizon);
    record.trivial = true;
    record.m_pos = state.horizon;
    record.n1 = state.horizon;
    state.request_log.push_back(std::move(record));
    return;
  }

  const long d = domination_zero_count(state.params, k);
  // Step 1: d zeros on consecutive powers of two for everyone outside A.
  Int pos = next_power_of_two_above(state.horizon);
  Int m_pos;
  for (long step = 0; step < d; ++step) {
    for (int i : comp) state.zeros[i].push_back(pos);
    m_pos = pos;
    pos *= 2;
  }
  // Step 2: d rebalancing zeros for the A side.
  Int last;
  for (long step = 0; step < d; ++step) {
    for (int i : a_side) state.zeros[i].push_back(pos);
    last = pos;
    pos *= 2;
  }
  const Int n1 = Int(2 * last);
  state.horizon = n1;
  state.checkpoints.push_back(n1);

  // Exact postconditions: separation by d at m_pos, balance at n1.
  for (int i : a_full)
    for (int c : comp)
      if (ones_upto(state.zeros[i], m_pos) - ones_upto(state.zeros[c], m_pos) <
          d)
        throw InvariantError("separation gap below d after domination step");
  const std::vector<int> non_min = non_minimum_elements(lattice);
  for (std::size_t i = 1; i < non_min.size(); ++i)
    if (ones_upto(state.zeros[non_min[i]], n1) !=
        ones_upto(state.zeros[non_min[0]], n1))
      throw InvariantError("patterns unbalanced at the new checkpoint");

  record.d = d;
  record.m_pos = m_pos;
  record.n1 = n1;
  state.request_log.push_back(std::move(record));
}

EncoderState run_encoder(const FiniteLattice& lattice,
                         const OrliczParams& params, int depth) {
  EncoderState state = encoder_init(lattice, params);
  for (const ScheduleItem& item : request_schedule(lattice, depth))
    apply_domination(state, item.k, lattice.down_set(item.element));
  return state;
}

PropertiesReport verify_properties(const EncoderState& state) {
  PropertiesReport report;
  const FiniteLattice& lattice = state.lattice;
  const int n = static_cast<int>(lattice.size());
  auto fail = [&](bool& flag, const std::string& message) {
    flag = false;
    report.ok = false;
    report.failures.push_back(message);
  };

  // Structural invariants: zeros on powers of two, minimum all ones.
  for (int j = 0; j < n; ++j)
    for (const Int& z : state.zeros[j])
      if (!is_power_of_two(z))
        fail(report.prop_i, "zero off the power-of-two grid in pattern " +
                                lattice.names()[j]);
  // (i): the minimum pattern has no zeros, so its exponent is p*k for all k.
  if (!state.zeros[lattice.minimum()].empty())
    fail(report.prop_i, "minimum pattern is not all ones");

  // Balance at every checkpoint.
  const std::vector<int> non_min = non_minimum_elements(lattice);
  for (const Int& cp : state.checkpoints)
    for (std::size_t i = 1; i < non_min.size(); ++i)
      if (ones_upto(state.zeros[non_min[i]], cp) !=
          ones_upto(state.zeros[non_min[0]], cp)) {
        fail(report.balanced,
             "unbalanced checkpoint at position " + cp.get_str());
        break;
      }

  // (ii): pointwise order equals the lattice order, plus logged divergence
  // witnesses for every unrelated ordered pair.
  std::vector<OrliczFunction> fns;
  fns.reserve(n);
  for (int j = 0; j < n; ++j) fns.push_back(state.orlicz(j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CompareReport cmp = pointwise_compare(fns[i], fns[j]);
      const bool le =
          cmp.rel == CompareResult::LE || cmp.rel == CompareResult::EQ;
      if (le != lattice.leq(i, j)) {
        fail(report.prop_ii,
             "pointwise order disagrees with the lattice at (" +
                 lattice.names()[i] + ", " + lattice.names()[j] + ")");
        continue;
      }
      if (lattice.leq(i, j)) continue;
      for (const DominationRecord& r : state.request_log) {
        if (r.trivial) continue;
        bool applicable = (j == lattice.minimum()) || (r.element == j);
        if (!applicable) continue;
        const Int& at = (j == lattice.minimum()) ? r.n1 : r.m_pos;
        Int gap = ones_upto(state.zeros[j], at) - ones_upto(state.zeros[i], at);
        if (gap < r.d)
          fail(report.prop_ii, "missing divergence gap for (" +
                                   lattice.names()[i] + ", " +
                                   lattice.names()[j] + ") at request k=" +
                                   std::to_string(r.k));
      }
    }

  // (iii)/(iv): over every nonempty subset F, the max zero count (= min
  // ones count) coincides with that of join(F) at every event position.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    const int j0 = lattice.join_all(subset);
    std::vector<Int> events = state.zeros[j0];
    for (int i : subset)
      events.insert(events.end(), state.zeros[i].begin(), state.zeros[i].end());
    events.push_back(state.horizon);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    for (const Int& z : events) {
      Int best(0);
      for (int i : subset) {
        Int c = count_upto(state.zeros[i], z);
        if (c > best) best = c;
      }
      if (best != count_upto(state.zeros[j0], z)) {
        std::ostringstream msg;
        msg << "join property fails for subset mask " << mask
            << " at position " << z.get_str();
        fail(report.prop_iii, msg.str());
        report.prop_iv = false;
        break;
      }
    }
  }
  return report;
}

DominationMatrix encoder_domination_matrix(const EncoderState& state) {
  const FiniteLattice& lattice = state.lattice;
  const int n = static_cast<int>(lattice.size());
  std::vector<std::string> labels;
  for (const std::string& name : lattice.names()) labels.push_back("M[" + name + "]");
  DominationMatrix matrix(std::move(labels));

  std::vector<OrliczFunction> fns;
  fns.reserve(n);
  for (int j = 0; j < n; ++j) fns.push_back(state.orlicz(j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CompareReport cmp = pointwise_compare(fns[i], fns[j]);
      DominationEvidence& e = matrix.entry(i, j);
      if (cmp.rel == CompareResult::LE || cmp.rel == CompareResult::EQ) {
        e.dominates = true;
        e.constant = 1;
      } else {
        e.dominates = false;
        for (const DominationRecord& r : state.request_log) {
          if (r.trivial) continue;
          if (j != lattice.minimum() && r.element != j) continue;
          const Int& at = (j == lattice.minimum()) ? r.n1 : r.m_pos;
          Int gap =
              ones_upto(state.zeros[j], at) - ones_upto(state.zeros[i], at);
          if (gap >= r.d) {
            e.witness_m = at;
            e.ratio = Rat(gap);  // ones gap; the value ratio is tau^((p-r)*gap)
            break;
          }
        }
      }
    }
  return matrix;
}

std::string encoder_state_to_json(const EncoderState& state) {
  nlohmann::json doc;
  doc["lattice"] = nlohmann::json::parse(state.lattice.to_json());
  doc["params"] = {{"tau", rat_str(state.params.tau)},
                   {"r", rat_str(state.params.r)},
                   {"p", rat_str(state.params.p)}};
  doc["horizon"] = state.horizon.get_str();
  nlohmann::json patterns = nlohmann::json::array();
  for (std::size_t j = 0; j < state.zeros.size(); ++j) {
    nlohmann::json zero_positions = nlohmann::json::array();
    for (const Int& z : state.zeros[j]) zero_positions.push_back(z.get_str());
    patterns.push_back({{"element", state.lattice.names()[j]},
                        {"rle", state.pattern(static_cast<int>(j)).to_rle()},
                        {"zero_positions", std::move(zero_positions)}});
  }
  doc["patterns"] = std::move(patterns);
  nlohmann::json checkpoints = nlohmann::json::array();
  for (const Int& cp : state.checkpoints) checkpoints.push_back(cp.get_str());
  doc["checkpoints"] = std::move(checkpoints);
  nlohmann::json log = nlohmann::json::array();
  for (const DominationRecord& r : state.request_log)
    log.push_back({{"k", r.k},
                   {"element", state.lattice.names()[r.element]},
                   {"d", r.d},
                   {"trivial", r.trivial},
                   {"m_pos", r.m_pos.get_str()},
                   {"n1", r.n1.get_str()}});
  doc["request_log"] = std::move(log);
  return doc.dump(2);
}

EncoderState encoder_state_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("encoder JSON parse error: ") + e.what());
  }
  EncoderState state;
  try {
  state.lattice = parse_lattice(doc.at("lattice").dump());
  state.params = {parse_rat(doc.at("params").at("tau").get<std::string>()),
                  parse_rat(doc.at("params").at("r").get<std::string>()),
                  parse_rat(doc.at("params").at("p").get<std::string>())};
  state.horizon = Int(doc.at("horizon").get<std::string>());

  auto element_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < state.lattice.names().size(); ++i)
      if (state.lattice.names()[i] == name) return static_cast<int>(i);
    throw ParameterError("unknown element in encoder bundle: " + name);
  };

  state.zeros.assign(state.lattice.size(), {});
  for (const auto& item : doc.at("patterns")) {
    const int j = element_index(item.at("element").get<std::string>());
    for (const auto& z : item.at("zero_positions"))
      state.zeros[j].push_back(Int(z.get<std::string>()));
    // Cross-check the RLE rendering against the explicit zero positions.
    Pattern from_rle = Pattern::from_rle(item.at("rle").get<std::string>());
    if (!(from_rle == Pattern::from_zeros(state.zeros[j], state.horizon)))
      throw ParameterError("RLE and zero positions disagree for element " +
                           item.at("element").get<std::string>());
  }
  for (const auto& cp : doc.at("checkpoints"))
    state.checkpoints.push_back(Int(cp.get<std::string>()));
  for (const auto& item : doc.at("request_log")) {
    DominationRecord r;
    r.k = item.at("k").get<long>();
    r.element = element_index(item.at("element").get<std::string>());
    r.d = item.at("d").get<long>();
    r.trivial = item.at("trivial").get<bool>();
    r.m_pos = Int(item.at("m_pos").get<std::string>());
    r.n1 = Int(item.at("n1").get<std::string>());
    state.request_log.push_back(std::move(r));
  }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed encoder bundle: ") + e.what());
  }
  return state;
}

}  // namespace sm
