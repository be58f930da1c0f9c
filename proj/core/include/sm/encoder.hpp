#ifndef SM_ENCODER_HPP
#define SM_ENCODER_HPP

#include <string>
#include <vector>

#include "sm/domination.hpp"
#include "sm/lattice.hpp"
#include "sm/orlicz.hpp"

namespace sm {

/// One served (eps, A)-domination request, eps = 2^(-k), A = down_set(element).
struct DominationRecord {
  long k = 0;       // eps = 2^(-k)
  int element = 0;  // lattice element whose down-set was dominated
  long d = 0;       // zeros placed per side (0 for the trivial full-set case)
  bool trivial = false;
  Int m_pos;  // end of the separation block: ratio certified at tau^m_pos
  Int n1;     // new horizon (a checkpoint)
};

/// Growing family of patterns rho_j, one per lattice element; the pattern
/// of the minimum element stays all ones and every other pattern starts
/// with a zero at position 1. All zeros live on powers of two.
struct EncoderState {
  FiniteLattice lattice;
  OrliczParams params;
  std::vector<std::vector<Int>> zeros;  // per element, sorted ascending
  Int horizon;
  std::vector<Int> checkpoints;
  std::vector<DominationRecord> request_log;

  Pattern pattern(int element) const;
  OrliczFunction orlicz(int element) const;
};

/// Horizon 1; all-ones pattern for the minimum, a zero at position 1 for
/// every other element; position 1 is the first checkpoint. Parameters
/// must validate as Valid.
EncoderState encoder_init(const FiniteLattice& lattice,
                          const OrliczParams& params);

struct ScheduleItem {
  long k = 0;       // eps = 2^(-k)
  int element = 0;  // A = down_set(element)
};

/// Diagonal enumeration of (k, j) over k >= 1 and the non-minimum elements
/// j (1-based in ascending index order): all pairs with k + j <= depth + 1,
/// ordered by k + j ascending then j ascending.
std::vector<ScheduleItem> request_schedule(const FiniteLattice& lattice,
                                           int depth);

/// One (eps, A)-domination with eps = 2^(-k) and A given as a set of
/// element indices that must be a down-set (the minimum may be omitted).
/// Separates A from its complement by d zeros, rebalances with d zeros on
/// the A side, pads to the next power of two, and verifies the certified
/// ratio and the balance exactly.
void apply_domination(EncoderState& state, long k, const std::vector<int>& A);

/// init + apply_domination over the full schedule.
EncoderState run_encoder(const FiniteLattice& lattice,
                         const OrliczParams& params, int depth);

struct PropertiesReport {
  bool ok = true;
  bool prop_i = true;    // exponent of the minimum pattern is p*k
  bool prop_ii = true;   // pointwise order == lattice order, with witnesses
  bool prop_iii = true;  // min ones over F == ones of join(F), all F
  bool prop_iv = true;   // pointwise max over B is attained by join(B)
  bool balanced = true;  // equal ones counts at every checkpoint
  std::vector<std::string> failures;  // human-readable, with first witness
};

/// Exact verification of properties (i)-(iv) plus the balance invariant,
/// entirely over integer events (no floating arithmetic).
PropertiesReport verify_properties(const EncoderState& state);

/// Domination matrix over the encoded Orlicz functions (constant 1 in the
/// <= direction; logged separation witnesses otherwise). Node i maps to
/// lattice element i.
DominationMatrix encoder_domination_matrix(const EncoderState& state);

/// JSON bundle {lattice, params, patterns (RLE), horizon, checkpoints,
/// request_log}; import reproduces verification results bit-exactly.
std::string encoder_state_to_json(const EncoderState& state);
EncoderState encoder_state_from_json(const std::string& text);

}  // namespace sm

#endif  // SM_ENCODER_HPP
