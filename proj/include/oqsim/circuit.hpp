#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oqsim {

/// Rotation angle 2*pi * num / 2^exp, stored exactly. All angles produced by
/// the builders in this project are of this form; exact storage makes
/// inverse() and structural equality exact and keeps the text format lossless.
struct DyadicPhase {
  std::int64_t num = 0;
  int exp = 0;

  double radians() const;
  DyadicPhase negated() const { return {-num, exp}; }
  bool operator==(const DyadicPhase&) const = default;
};

enum class GateKind { H, Phase, CPhase, Swap, X };

struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;  // second qubit for CPhase/Swap, otherwise -1
  DyadicPhase phase{};

  static Gate h(int q) { return {GateKind::H, q}; }
  static Gate x(int q) { return {GateKind::X, q}; }
  static Gate phase_gate(int q, DyadicPhase p) { return {GateKind::Phase, q, -1, p}; }
  static Gate cphase(int a, int b, DyadicPhase p) { return {GateKind::CPhase, a, b, p}; }
  static Gate swap(int a, int b) { return {GateKind::Swap, a, b}; }

  bool two_qubit() const { return kind == GateKind::CPhase || kind == GateKind::Swap; }
  bool operator==(const Gate&) const = default;
};

/// Ordered gate list over a fixed qubit count. Immutable once built; the
/// builders below return circuits by value.
class Circuit {
 public:
  explicit Circuit(int n);

  int num_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  void append(const Gate& g);
  void append(const Circuit& other);  // qubit counts must match

  bool operator==(const Circuit&) const = default;

 private:
  int n_;
  std::vector<Gate> gates_;
};

/// Greedy layering: each gate goes in the earliest layer after the last layer
/// touching any of its qubits. Returns the layer count.
int depth(const Circuit& c);

/// Max |q1 - q0| over two-qubit gates; 0 if there are none.
int locality(const Circuit& c);

/// Gates reversed with angles negated. H, Swap, X are self-inverse.
Circuit inverse(const Circuit& c);

/// Diagonal circuit of CPhase gates whose accumulated phase on a basis state
/// is exp(2*pi*i * X*Y / 2^denom_exp), where Y is the integer held in
/// [lo_begin, lo_end) and X the integer held in [hi_begin, hi_end), both with
/// ascending bit weight. Gates whose angle is a multiple of 2*pi are omitted.
/// n is the qubit count of the produced circuit.
Circuit block_phase_rotation(int n, int lo_begin, int lo_end, int hi_begin, int hi_end,
                             int denom_exp);

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// Text exchange format. First line `QUBITS n`, then one gate per line:
///   H 0
///   X 2
///   P 1 k/e        (Phase, angle 2*pi*k/2^e)
///   CP 0,3 k/e
///   SWAP 1,2
/// `#` starts a comment. export_text emits the canonical form; round-trips
/// are exact because angles are stored as dyadic pairs.
std::string export_text(const Circuit& c);
Circuit parse_text(std::string_view text);

}  // namespace oqsim
