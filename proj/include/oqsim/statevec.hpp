#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "oqsim/circuit.hpp"

namespace oqsim {

using cplx = std::complex<double>;

/// Dense amplitude vector over n qubits, qubit 0 = least significant bit of
/// the index. Good for up to ~20 qubits.
class Statevector {
 public:
  explicit Statevector(int n);  // |0...0>
  static Statevector basis_state(int n, std::uint64_t x);

  int num_qubits() const { return n_; }
  std::uint64_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amps() const { return amps_; }
  std::vector<cplx>& amps() { return amps_; }
  cplx amp(std::uint64_t i) const { return amps_[i]; }
  double norm_sq() const;

 private:
  int n_;
  std::vector<cplx> amps_;
};

/// Bijection on {0..2^n-1}, checked at construction.
class Permutation {
 public:
  static Permutation from_map(int n, std::vector<std::uint64_t> map);
  static Permutation from_function(int n, const std::function<std::uint64_t(std::uint64_t)>& f);
  static Permutation identity(int n);
  /// Index bit-reversal of the field [begin, end), other bits untouched.
  static Permutation bit_reversal(int n, int begin, int end);

  int num_qubits() const { return n_; }
  std::uint64_t operator()(std::uint64_t x) const { return map_[x]; }
  Permutation inverse() const;

 private:
  Permutation(int n, std::vector<std::uint64_t> map) : n_(n), map_(std::move(map)) {}
  int n_;
  std::vector<std::uint64_t> map_;
};

// Transformations are value-in, value-out; pass by value and move to chain
// without copies. Internally the kernels mutate in place with stride loops.
Statevector apply_gate(Statevector s, const Gate& g);
Statevector apply_circuit(Statevector s, const Circuit& c);
/// amps'[perm(x)] = amps[x].
Statevector apply_permutation(Statevector s, const Permutation& p);

/// Same operations restricted to the subspace where qubit `ctrl` is 1.
/// `ctrl` must not collide with the gate qubits.
Statevector apply_gate_controlled(Statevector s, const Gate& g, int ctrl);

/// Applies a circuit that lives on the low qubits of a wider register
/// (state may have more qubits than the circuit). ctrl < 0 for unconditional.
Statevector apply_embedded(Statevector s, const Circuit& c, int ctrl = -1);

/// Sum over x of |a[x] - b[x]|^2. Global phase counts; range [0, 4] for unit
/// vectors.
double error_norm_sq(const Statevector& a, const Statevector& b);

std::uint64_t reverse_bits(std::uint64_t x, int width);

}  // namespace oqsim
