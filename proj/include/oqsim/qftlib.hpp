#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oqsim/circuit.hpp"
#include "oqsim/statevec.hpp"

namespace oqsim {

/// Partition of n qubits into blocks of size m, block 0 least significant;
/// only the last block may be narrower.
struct BlockLayout {
  int n = 0;
  int m = 0;
  std::vector<std::pair<int, int>> blocks;  // [begin, end)

  static BlockLayout make(int n, int m);
  int count() const { return static_cast<int>(blocks.size()); }
  int width(int i) const { return blocks[i].second - blocks[i].first; }
  std::uint64_t block_value(std::uint64_t x, int i) const;
};

enum class QftVariant { Exact, Coppersmith, BlockedLinear, Optimistic, OptimisticAlt };

QftVariant variant_from_name(const std::string& name);
std::string variant_name(QftVariant v);

/// Column x of the transform the cascade circuits implement: output qubit i
/// carries the binary fraction 0.x_i x_{i+1} ... x_{n-1}, i.e.
///   amp[y] = 2^{-n/2} * exp(2*pi*i * rev(x)*y / 2^n).
Statevector reference_qft_state(int n, std::uint64_t x);

/// Standard linear-depth cascade: for i ascending, H(i) then CPhase(i, i+k)
/// with angle 2*pi/2^{k+1}. No terminal swap layer.
Circuit exact_qft(int n);

/// exact_qft with every controlled phase of dyadic exponent > m removed.
Circuit coppersmith_aqft(int n, int m);

/// Blockwise linear-depth approximation: local QFT per block, then the phase
/// rotation coupling it to the next block. Keeps exactly the intra-block and
/// adjacent-block gates of exact_qft; exact whenever there are at most two
/// blocks.
Circuit blocked_aqft(int n, int m);

/// Log-depth variant: QFT on even blocks, even couplings, QFT on odd blocks
/// together with inverse QFT on even blocks, odd couplings, QFT on even
/// blocks. No ancillas; locality at most 2m-1.
Circuit optimistic_qft(int n, int m);

/// Same unitary built from plain QFT blocks only: double-width QFTs over even
/// pairs, inverse QFT on every block, double-width QFTs over odd pairs (plus
/// lone single-block QFTs where a pair partner is missing).
Circuit optimistic_qft_alt(int n, int m);

Circuit build_qft(QftVariant v, int n, int m);

/// Smallest m with 2^m >= n^2/eps, clamped to [1, n]. Domain (0, 1].
int block_size_for(int n, double eps);

/// Copy of `c` acting on qubits [offset, offset + c.n) of an n-qubit circuit.
Circuit offset_qubits(const Circuit& c, int offset, int n);

}  // namespace oqsim
