#include "oqsim/qftlib.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oqsim {

BlockLayout BlockLayout::make(int n, int m) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (m < 1 || m > n) throw std::invalid_argument("block size out of range");
  BlockLayout l{n, m, {}};
  for (int lo = 0; lo < n; lo += m) l.blocks.emplace_back(lo, std::min(lo + m, n));
  return l;
}

std::uint64_t BlockLayout::block_value(std::uint64_t x, int i) const {
  const auto [lo, hi] = blocks[i];
  return (x >> lo) & ((std::uint64_t{1} << (hi - lo)) - 1);
}

QftVariant variant_from_name(const std::string& name) {
  if (name == "exact") return QftVariant::Exact;
  if (name == "coppersmith") return QftVariant::Coppersmith;
  if (name == "blocked") return QftVariant::BlockedLinear;
  if (name == "optimistic") return QftVariant::Optimistic;
  if (name == "optimistic-alt") return QftVariant::OptimisticAlt;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

std::string variant_name(QftVariant v) {
  switch (v) {
    case QftVariant::Exact: return "exact";
    case QftVariant::Coppersmith: return "coppersmith";
    case QftVariant::BlockedLinear: return "blocked";
    case QftVariant::Optimistic: return "optimistic";
    case QftVariant::OptimisticAlt: return "optimistic-alt";
  }
  return "?";
}

Statevector reference_qft_state(int n, std::uint64_t x) {
  Statevector s(n);
  const std::uint64_t dim = s.dim();
  if (x >= dim) throw std::out_of_range("basis index out of range");
  // Phase bookkeeping in exact dyadic integers: qubit i contributes
  // M[i]/2^n = (2^i * rev(x)) mod 2^n to the fraction.
  const std::uint64_t rx = reverse_bits(x, n);
  std::vector<std::uint64_t> M(n);
  for (int i = 0; i < n; ++i) M[i] = (rx << i) & (dim - 1);
  std::vector<cplx> phasor(dim);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(dim);
  for (std::uint64_t k = 0; k < dim; ++k) phasor[k] = std::polar(1.0, w * static_cast<double>(k));
  const double scale = std::pow(2.0, -0.5 * n);
  std::vector<std::uint64_t> T(dim, 0);
  auto& a = s.amps();
  a[0] = scale;
  for (std::uint64_t y = 1; y < dim; ++y) {
    const int low = std::countr_zero(y);
    T[y] = (T[y & (y - 1)] + M[low]) & (dim - 1);
    a[y] = scale * phasor[T[y]];
  }
  return s;
}

namespace {

void append_cascade(Circuit& c, int lo, int hi, int max_exp) {
  for (int q = lo; q < hi; ++q) {
    c.append(Gate::h(q));
    for (int k = 1; q + k < hi; ++k) {
      if (k + 1 > max_exp) break;
      c.append(Gate::cphase(q, q + k, {1, k + 1}));
    }
  }
}

// Phase coupling between consecutive blocks: exactly the adjacent-block gates
// of the exact cascade, CPhase(lo a, hi b) with angle 2*pi/2^{w_lo + b - a + 1}.
// Banded emission keeps the greedy depth at max block width.
void append_coupling(Circuit& c, std::pair<int, int> lo, std::pair<int, int> hi) {
  const int wl = lo.second - lo.first;
  const int wh = hi.second - hi.first;
  const int bands = std::max(wl, wh);
  for (int t = 0; t < bands; ++t)
    for (int a = 0; a < wl; ++a) {
      const int b = (t - a + 2 * bands) % bands;
      if (b >= wh) continue;
      c.append(Gate::cphase(lo.first + a, hi.first + b, {1, wl + b - a + 1}));
    }
}

}  // namespace

Circuit exact_qft(int n) {
  Circuit c(n);
  append_cascade(c, 0, n, n);
  return c;
}

Circuit coppersmith_aqft(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("block size out of range");
  Circuit c(n);
  append_cascade(c, 0, n, m);
  return c;
}

Circuit blocked_aqft(int n, int m) {
  const BlockLayout l = BlockLayout::make(n, m);
  Circuit c(n);
  for (int i = 0; i < l.count(); ++i) {
    append_cascade(c, l.blocks[i].first, l.blocks[i].second, n);
    if (i + 1 < l.count()) append_coupling(c, l.blocks[i], l.blocks[i + 1]);
  }
  return c;
}

Circuit optimistic_qft(int n, int m) {
  const BlockLayout l = BlockLayout::make(n, m);
  const int B = l.count();
  if (B == 1) return exact_qft(n);
  Circuit c(n);
  auto local_qft = [&](int i) {
    Circuit q(n);
    append_cascade(q, l.blocks[i].first, l.blocks[i].second, n);
    return q;
  };
  for (int i = 0; i < B; i += 2) c.append(local_qft(i));
  for (int i = 0; i + 1 < B; i += 2) append_coupling(c, l.blocks[i], l.blocks[i + 1]);
  for (int i = 1; i < B; i += 2) c.append(local_qft(i));
  for (int i = 0; i < B; i += 2) c.append(inverse(local_qft(i)));
  for (int i = 1; i + 1 < B; i += 2) append_coupling(c, l.blocks[i], l.blocks[i + 1]);
  for (int i = 0; i < B; i += 2) c.append(local_qft(i));
  return c;
}

Circuit optimistic_qft_alt(int n, int m) {
  const BlockLayout l = BlockLayout::make(n, m);
  const int B = l.count();
  if (B == 1) return exact_qft(n);
  Circuit c(n);
  auto lone = [&](int i) { append_cascade(c, l.blocks[i].first, l.blocks[i].second, n); };
  auto pair_qft = [&](int i) { append_cascade(c, l.blocks[i].first, l.blocks[i + 1].second, n); };
  for (int i = 0; i < B; i += 2) {
    if (i + 1 < B) pair_qft(i);
    else lone(i);
  }
  for (int i = 0; i < B; ++i) {
    Circuit q(n);
    append_cascade(q, l.blocks[i].first, l.blocks[i].second, n);
    c.append(inverse(q));
  }
  lone(0);  // block 0 is never the upper member of an odd pair
  for (int i = 1; i < B; i += 2) {
    if (i + 1 < B) pair_qft(i);
    else lone(i);
  }
  return c;
}

Circuit build_qft(QftVariant v, int n, int m) {
  switch (v) {
    case QftVariant::Exact: return exact_qft(n);
    case QftVariant::Coppersmith: return coppersmith_aqft(n, m);
    case QftVariant::BlockedLinear: return blocked_aqft(n, m);
    case QftVariant::Optimistic: return optimistic_qft(n, m);
    case QftVariant::OptimisticAlt: return optimistic_qft_alt(n, m);
  }
  throw std::invalid_argument("unknown variant");
}

int block_size_for(int n, double eps) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("eps out of (0, 1]");
  const double target = static_cast<double>(n) * n;
  int m = 1;
  while (m < 64 && std::ldexp(eps, m) < target * (1.0 - 1e-12)) ++m;
  return std::min(m, n);
}

Circuit offset_qubits(const Circuit& c, int offset, int n) {
  Circuit out(n);
  for (Gate g : c.gates()) {
    g.q0 += offset;
    if (g.two_qubit()) g.q1 += offset;
    out.append(g);
  }
  return out;
}

}  // namespace oqsim
