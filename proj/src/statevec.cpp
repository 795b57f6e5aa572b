#include "oqsim/statevec.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace oqsim {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

Statevector::Statevector(int n) : n_(n) {
  if (n < 1 || n > 30) throw std::invalid_argument("unsupported qubit count");
  amps_.assign(std::uint64_t{1} << n, cplx{});
  amps_[0] = 1.0;
}

Statevector Statevector::basis_state(int n, std::uint64_t x) {
  Statevector s(n);
  if (x >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[x] = 1.0;
  return s;
}

double Statevector::norm_sq() const {
  double r = 0;
  for (const cplx& a : amps_) r += std::norm(a);
  return r;
}

std::uint64_t reverse_bits(std::uint64_t x, int width) {
  std::uint64_t r = 0;
  for (int i = 0; i < width; ++i) r |= ((x >> i) & 1u) << (width - 1 - i);
  return r;
}

Permutation Permutation::from_map(int n, std::vector<std::uint64_t> map) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (map.size() != dim) throw std::invalid_argument("permutation has wrong size");
  std::vector<bool> seen(dim, false);
  for (std::uint64_t v : map) {
    if (v >= dim || seen[v]) throw std::invalid_argument("mapping is not a bijection");
    seen[v] = true;
  }
  return Permutation(n, std::move(map));
}

Permutation Permutation::from_function(int n,
                                       const std::function<std::uint64_t(std::uint64_t)>& f) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<std::uint64_t> map(dim);
  for (std::uint64_t x = 0; x < dim; ++x) map[x] = f(x);
  return from_map(n, std::move(map));
}

Permutation Permutation::identity(int n) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<std::uint64_t> map(dim);
  for (std::uint64_t x = 0; x < dim; ++x) map[x] = x;
  return Permutation(n, std::move(map));
}

Permutation Permutation::bit_reversal(int n, int begin, int end) {
  const int w = end - begin;
  const std::uint64_t field = ((std::uint64_t{1} << w) - 1) << begin;
  return from_function(n, [=](std::uint64_t x) {
    const std::uint64_t v = (x & field) >> begin;
    return (x & ~field) | (reverse_bits(v, w) << begin);
  });
}

Permutation Permutation::inverse() const {
  std::vector<std::uint64_t> inv(map_.size());
  for (std::uint64_t x = 0; x < map_.size(); ++x) inv[map_[x]] = x;
  return Permutation(n_, std::move(inv));
}

namespace {

void check_gate(const Gate& g, int n) {
  if (g.q0 < 0 || g.q0 >= n) throw std::out_of_range("gate qubit out of range");
  if (g.two_qubit()) {
    if (g.q1 < 0 || g.q1 >= n) throw std::out_of_range("gate qubit out of range");
    if (g.q0 == g.q1) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  }
}

// Iterates base indices whose `bit` is 0, optionally restricted to ctrl=1;
// ctrl < 0 means unconditional.
template <typename F>
void for_pairs(std::uint64_t dim, std::uint64_t bit, std::int64_t cbit, F&& f) {
  for (std::uint64_t base = 0; base < dim; base += 2 * bit)
    for (std::uint64_t i = base; i < base + bit; ++i) {
      if (cbit >= 0 && !(i & static_cast<std::uint64_t>(cbit))) continue;
      f(i);
    }
}

void apply_gate_impl(std::vector<cplx>& a, int n, const Gate& g, int ctrl) {
  check_gate(g, n);
  std::int64_t cbit = -1;
  if (ctrl >= 0) {
    if (ctrl >= n || ctrl == g.q0 || (g.two_qubit() && ctrl == g.q1))
      throw std::invalid_argument("bad control qubit");
    cbit = std::int64_t{1} << ctrl;
  }
  const std::uint64_t dim = a.size();
  const std::uint64_t b0 = std::uint64_t{1} << g.q0;
  switch (g.kind) {
    case GateKind::H:
      for_pairs(dim, b0, cbit, [&](std::uint64_t i) {
        const cplx x = a[i], y = a[i | b0];
        a[i] = (x + y) * kInvSqrt2;
        a[i | b0] = (x - y) * kInvSqrt2;
      });
      break;
    case GateKind::X:
      for_pairs(dim, b0, cbit, [&](std::uint64_t i) { std::swap(a[i], a[i | b0]); });
      break;
    case GateKind::Phase: {
      const cplx ph = std::polar(1.0, g.phase.radians());
      for_pairs(dim, b0, cbit, [&](std::uint64_t i) { a[i | b0] *= ph; });
      break;
    }
    case GateKind::CPhase: {
      const cplx ph = std::polar(1.0, g.phase.radians());
      const std::uint64_t b1 = std::uint64_t{1} << g.q1;
      for_pairs(dim, b0, cbit, [&](std::uint64_t i) {
        if (i & b1) a[i | b0] *= ph;
      });
      break;
    }
    case GateKind::Swap: {
      const std::uint64_t b1 = std::uint64_t{1} << g.q1;
      for_pairs(dim, b0, cbit, [&](std::uint64_t i) {
        if (!(i & b1)) std::swap(a[i | b0], a[i | b1]);
      });
      break;
    }
  }
}

}  // namespace

Statevector apply_gate(Statevector s, const Gate& g) {
  apply_gate_impl(s.amps(), s.num_qubits(), g, -1);
  return s;
}

Statevector apply_gate_controlled(Statevector s, const Gate& g, int ctrl) {
  apply_gate_impl(s.amps(), s.num_qubits(), g, ctrl);
  return s;
}

Statevector apply_circuit(Statevector s, const Circuit& c) {
  if (c.num_qubits() != s.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  for (const Gate& g : c.gates()) apply_gate_impl(s.amps(), s.num_qubits(), g, -1);
  return s;
}

Statevector apply_embedded(Statevector s, const Circuit& c, int ctrl) {
  if (c.num_qubits() > s.num_qubits()) throw std::invalid_argument("circuit wider than state");
  for (const Gate& g : c.gates()) apply_gate_impl(s.amps(), s.num_qubits(), g, ctrl);
  return s;
}

Statevector apply_permutation(Statevector s, const Permutation& p) {
  if (p.num_qubits() != s.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  std::vector<cplx> out(s.dim());
  const auto& in = s.amps();
  for (std::uint64_t x = 0; x < in.size(); ++x) out[p(x)] = in[x];
  s.amps() = std::move(out);
  return s;
}

double error_norm_sq(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  double r = 0;
  for (std::uint64_t i = 0; i < a.dim(); ++i) r += std::norm(a.amp(i) - b.amp(i));
  return r;
}

}  // namespace oqsim
