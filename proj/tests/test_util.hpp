#pragma once

#include <random>

#include "oqsim/circuit.hpp"
#include "oqsim/statevec.hpp"

namespace oqsim::testing {

inline double max_amp_diff(const Statevector& a, const Statevector& b) {
  double r = 0;
  for (std::uint64_t i = 0; i < a.dim(); ++i) r = std::max(r, std::abs(a.amp(i) - b.amp(i)));
  return r;
}

inline double max_column_diff(const Circuit& a, const Circuit& b) {
  const int n = a.num_qubits();
  double r = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
    r = std::max(r, max_amp_diff(apply_circuit(Statevector::basis_state(n, x), a),
                                 apply_circuit(Statevector::basis_state(n, x), b)));
  return r;
}

inline Circuit random_circuit(int n, int gates, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Circuit c(n);
  for (int i = 0; i < gates; ++i) {
    const int q0 = static_cast<int>(rng() % n);
    int q1 = static_cast<int>(rng() % n);
    if (q1 == q0) q1 = (q1 + 1) % n;
    const DyadicPhase ph{static_cast<std::int64_t>(rng() % 31) - 15, static_cast<int>(rng() % 6)};
    switch (rng() % 5) {
      case 0: c.append(Gate::h(q0)); break;
      case 1: c.append(Gate::x(q0)); break;
      case 2: c.append(Gate::phase_gate(q0, ph)); break;
      case 3: c.append(Gate::cphase(q0, q1, ph)); break;
      default: c.append(Gate::swap(q0, q1)); break;
    }
  }
  return c;
}

inline Statevector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Statevector s(n);
  double norm = 0;
  for (auto& a : s.amps()) {
    a = {gauss(rng), gauss(rng)};
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (auto& a : s.amps()) a /= norm;
  return s;
}

}  // namespace oqsim::testing
