#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "oqsim/circuit.hpp"
#include "oqsim/qftlib.hpp"
#include "oqsim/statevec.hpp"

namespace oqsim {

struct AddResult {
  std::uint64_t sum = 0;        // n+1 bits
  std::vector<int> carries;     // c_0 .. c_n
};

/// Ripple addition via c_{i+1} = MAJ(a_i, b_i, c_i), s_i = a_i ^ b_i ^ c_i.
AddResult exact_add(std::uint64_t a, std::uint64_t b, int n);

/// Carry-cutoff adder: carry into position i is the carry-out of adding only
/// the k-bit slices below i with zero carry-in (full prefix when i <= k).
std::uint64_t windowed_add(std::uint64_t a, std::uint64_t b, int n, int k);

/// Longest distance a generated carry travels (number of positions from its
/// generator to the last position it affects). windowed_add(k) is exact on
/// (a, b) iff this does not exceed k.
int longest_carry_chain(std::uint64_t a, std::uint64_t b, int n);

/// Average squared error of the windowed adder viewed as a permutation
/// |a>|b>|anc> -> |a>|s mod 2^n>|anc ^ s_n>; mismatching inputs contribute 2,
/// so this equals 2 * Pr[windowed != exact]. Exhaustive; 2n <= 24.
double adder_avg_error(int n, int k);
double adder_avg_error_sampled(int n, int k, int samples, std::uint64_t seed);

using QftBuilder = std::function<Circuit(int)>;
QftBuilder make_qft_builder(QftVariant v, int m);

/// Sequence of circuit / permutation / diagonal segments over a fixed-width
/// register. Permutations and diagonals model classically-known arithmetic
/// exactly; circuits carry the parts whose approximation error we study.
class HybridOp {
 public:
  explicit HybridOp(int n) : n_(n) {}
  int num_qubits() const { return n_; }
  int qft_instances() const { return qft_instances_; }

  void push_circuit(Circuit c);
  void push_qft_instance(Circuit c);  // like push_circuit, counted
  void push_permutation(Permutation p);
  void push_diagonal(std::function<cplx(std::uint64_t)> d);
  void push_op(HybridOp other);  // splices other's segments onto this op

  /// Applies all segments. The state may be wider than the op; the op acts on
  /// the low qubits. ctrl < 0 for unconditional, otherwise a control qubit
  /// outside the op's range.
  Statevector apply(Statevector s, int ctrl = -1) const;
  HybridOp inverse() const;

 private:
  struct Segment;
  int n_;
  int qft_instances_ = 0;
  std::vector<Segment> segments_;
};

struct HybridOp::Segment {
  enum class Kind { Gates, Perm, Diag } kind;
  Circuit gates{1};
  std::optional<Permutation> perm;
  std::function<cplx(std::uint64_t)> diag;
};

/// In-place modular multiplication |y>|0>|0> -> |cy mod N>|0>|0> for y < N,
/// built from controlled modular additions in the Fourier basis. Register
/// layout: y in [0, n_bits), accumulator in [n_bits, 2*n_bits+1), comparison
/// ancilla at 2*n_bits+1. Every QFT instance comes from qft_builder.
HybridOp modmul_circuit(std::uint64_t c, std::uint64_t N, int n_bits, const QftBuilder& qb);

struct FactoringConfig {
  std::uint64_t N = 15;
  std::uint64_t g = 7;
  int t = 0;  // counting bits; 0 means 2*ceil(log2 N)
  int m = 0;  // block size for the multiplier QFTs; 0 means exact
  QftVariant variant = QftVariant::Exact;
  std::optional<std::uint64_t> r_rand;
};

struct PeriodFindingResult {
  double p_success = 0.0;
  std::vector<double> distribution;        // outcome probabilities, 2^t entries
  std::map<std::uint64_t, int> histogram;  // sampled outcomes (trials > 0)
  int total_qubits = 0;
};

/// Phase estimation over t counting qubits with controlled modular
/// multiplications (repeated squaring of g); the multipliers' internal QFTs
/// use cfg.variant, the final counting-register transform is always exact.
/// Computes the exact outcome distribution and the exact success probability
/// of the continued-fraction post-processing; optionally samples `trials`
/// outcomes.
PeriodFindingResult period_finding_experiment(const FactoringConfig& cfg, int trials,
                                              std::uint64_t seed);

/// Continued-fraction step: true if outcome/2^t recovers a period that yields
/// a nontrivial factor of N (denominators up to N, multiples {1, 2}).
bool outcome_recovers_factor(std::uint64_t outcome, int t, std::uint64_t g, std::uint64_t N);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod);

}  // namespace oqsim
