#ifndef SM_NORMS_HPP
#define SM_NORMS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sm/encoder.hpp"
#include "sm/lorentz.hpp"
#include "sm/orlicz.hpp"

namespace sm {

/// Evaluable symmetric sequence norm (absolutely homogeneous and invariant
/// under permutations of the coefficients).
class SymNorm {
 public:
  virtual ~SymNorm() = default;
  virtual double eval(const std::vector<double>& a) const = 0;
  virtual std::string label() const = 0;
  /// Norm of the constant block 1^m.
  double const_block(long m) const;
};

using NormPtr = std::shared_ptr<const SymNorm>;

NormPtr lp_norm(double q);
NormPtr lorentz_sym_norm(WeightSeq ws, std::string label = "");
NormPtr orlicz_sym_norm(OrliczFunction m, std::string label = "",
                        double tol = 1e-9);

/// Pointwise maximum of the given norms; dominates each input with
/// constant 1.
NormPtr max_combo(std::vector<NormPtr> norms);

/// W(a) = sum_n C_n^{-1} ||a||_n with sum C_n^{-1} <= 1; then
/// ||a||_n <= C_n W(a) for every n.
NormPtr weighted_sum_combo(const std::vector<double>& constants,
                           std::vector<NormPtr> norms);

/// Pointwise sup over the subfamily indexed by A.
NormPtr sup_family_norm(const std::vector<NormPtr>& norms,
                        const std::vector<int>& A);

/// [sum_j c_j^p ||a||_j^p + c_0^p sum |a_i|^p]^(1/p) with c = (c_0..c_k),
/// c_j pairing with norms[j-1]; requires sum c_j^p = 1 within 1e-12.
/// When c_0 = 0 and a single c_j = 1 the component norm is returned exactly.
NormPtr lp_sum_combine(const std::vector<double>& c,
                       std::vector<NormPtr> norms, double p);

struct GapWitness {
  long m = 0;        // block length of the witness 1^m
  double ratio = 0;  // R_all(1^m) / R_F(1^m)
};

/// Searches constant blocks 1^m, m <= max_m, for
/// sup_all(a) > threshold * sup_F(a); returns the first hit or nullopt.
std::optional<GapWitness> find_gap_witness(const std::vector<NormPtr>& norms,
                                           const std::vector<int>& F,
                                           double threshold, long max_m);

struct DominationEstimate {
  bool diverged = false;
  double constant = 0;           // max observed ||a||_A / ||a||_B
  std::vector<double> witness;   // sample achieving the max / the divergence
};

struct SamplerOptions {
  unsigned seed = 0;
  int max_block = 64;      // constant blocks 1^m, m <= max_block
  int random_vectors = 64; // seeded +/-1 and uniform vectors
  int random_length = 32;
  double cap = 1e6;        // ratio beyond which divergence is declared
};

/// Lower-bound estimate of the best C with ||a||_A <= C ||a||_B over the
/// structured sample families (constant blocks, geometric decay q = 1/2 and
/// 3/4, seeded random vectors).
DominationEstimate estimate_domination(const SymNorm& na, const SymNorm& nb,
                                       const SamplerOptions& options = {});

struct LpSumClassification {
  int index = 0;   // least beta with c_beta != 0
  double lower = 0;  // c_beta <= combined / ell_{p_beta}
  double upper = 1;
};

/// For an lp-sum descriptor over exponents p_list (increasing, p_list[0] the
/// base exponent) with coefficients c (c[beta] pairing with p_list[beta]),
/// returns the least supported index with the sandwich constants.
LpSumClassification classify_lp_sum(const std::vector<double>& c,
                                    const std::vector<double>& p_list);

enum class ComponentKind { BasisEquivalent, LpCase };

struct SumClassification {
  int j0 = 0;          // lattice element realizing the spreading model
  bool is_lp_node = false;  // B was empty: the minimum / ell_p node
  double lower = 0;
  double upper = 0;
};

/// Classification of an lp-sum over an encoded lattice: B collects the
/// supported basis-equivalent components; j0 = join(B), asserted to have
/// the minimal ones table over B exactly; sandwich constants
/// [c_min/|B|, tau^(-2p) * (sum_{j in B} c_j^p)^(1/p)].
SumClassification classify_sum_spreading_model(
    const EncoderState& state, const std::vector<double>& c,
    const std::vector<ComponentKind>& kinds,
    const std::vector<double>& equivalence_constants = {});

}  // namespace sm

#endif  // SM_NORMS_HPP
