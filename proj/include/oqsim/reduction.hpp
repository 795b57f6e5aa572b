#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oqsim/circuit.hpp"
#include "oqsim/qftlib.hpp"
#include "oqsim/statevec.hpp"

namespace oqsim {

/// Shift-and-phase-gradient unitary on dimension 2^n:
///   V(r1, r2) |x> = exp(2*pi*i r2 x / 2^n) |(x + r1) mod 2^n>
/// (phase evaluated on the pre-shift x; the opposite order differs by a
/// global phase that matters for the conjugation identity below).
struct WeylOp {
  int n = 0;
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
};

Statevector weyl_apply(Statevector s, const WeylOp& op);
Statevector weyl_apply_adjoint(Statevector s, const WeylOp& op);

// The cascade circuits put the transform output in carry-reversed wire order.
// Composing with a free index bit-reversal gives the transform on ordinary
// binary labels, which is the form the Weyl identities and the reductions
// below are stated in. No gates are added; this is a relabeling.
Statevector apply_fourier(Statevector s, const Circuit& qft_circuit);
Statevector apply_fourier_adjoint(Statevector s, const Circuit& qft_circuit);

/// Entrywise max deviation of QFT * V(r1,r2)^dag * QFT^dag from V(r2, -r1),
/// by column simulation with the exact QFT.
double weyl_conjugation_check(int n, std::uint64_t r1, std::uint64_t r2);

/// Entrywise max deviation of (1/2^{2n}) sum_{r1,r2} V |psi><psi| V^dag from
/// I / 2^n (the property making the uniform Weyl group a 1-design). n <= 5.
double weyl_one_design_check(const Statevector& psi);

struct ReductionConfig {
  int n = 0;
  int m = 1;        // block size of the wrapped circuit
  int samples = 1;  // draw count where sampling applies
  std::uint64_t seed = 0;
};

/// One randomized-wrapping draw: V(r1,r2), the blocked log-depth QFT circuit,
/// then V(r2,-r1). The shift/phase pair is simulated as permutation+diagonal;
/// compiled log-depth adders are a known construction and are costed
/// analytically, not emitted as gates.
std::pair<Statevector, WeylOp> randomized_reduced_apply(const Statevector& input,
                                                        const ReductionConfig& cfg,
                                                        std::mt19937_64& rng);

/// Exact expectation of the per-draw squared error over the whole Weyl group
/// (2^{2n} draws). n <= 8.
double expected_error_exact(const Statevector& input, const ReductionConfig& cfg);

/// Monte-Carlo counterpart; returns (mean, stderr) over cfg.samples draws.
std::pair<double, double> expected_error_sampled(const Statevector& input,
                                                 const ReductionConfig& cfg);

/// Derandomized wrapping: prepares (1/sqrt(k)) sum_i |i> (x) |psi> with
/// k = 2^{2n} and i = r1*2^n + r2 (row-major), applies controlled-V, the QFT
/// circuit on the target, and controlled-V^hat^dag. Returns the joint state on
/// 3n qubits, target register in the low bits. n <= 5.
Statevector purified_apply(const Statevector& input, const ReductionConfig& cfg);

/// |(U' - I (x) U)(uniform (x) psi)|^2 for the purified wrapping above.
double purified_error(const Statevector& input, const ReductionConfig& cfg);

/// Controlled phase gradient on 2n qubits (|x> in [0,n), |z> in [n,2n)):
/// diagonal approximation of |x>|z> -> exp(2*pi*i x z / 2^n)|x>|z> keeping the
/// m largest dyadic terms per qubit, scheduled in m disjoint bands.
Circuit controlled_phase_gradient(int n, int m);

/// Exact operator-norm error of the built diagonal against the ideal one,
/// derived from the circuit's own gate list and evaluated over all 2^{2n}
/// index pairs. 2n <= 26.
double cpg_operator_norm_error(const Circuit& cpg, int n);

}  // namespace oqsim
