#include "oqsim/reduction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oqsim/errmetrics.hpp"

namespace oqsim {

namespace {

std::vector<cplx> phasor_table(std::uint64_t dim) {
  std::vector<cplx> t(dim);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(dim);
  for (std::uint64_t k = 0; k < dim; ++k) t[k] = std::polar(1.0, w * static_cast<double>(k));
  return t;
}

}  // namespace

Statevector weyl_apply(Statevector s, const WeylOp& op) {
  if (op.n != s.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  const std::uint64_t dim = s.dim();
  const auto ph = phasor_table(dim);
  std::vector<cplx> out(dim);
  for (std::uint64_t x = 0; x < dim; ++x)
    out[(x + op.r1) & (dim - 1)] = ph[(op.r2 * x) & (dim - 1)] * s.amp(x);
  s.amps() = std::move(out);
  return s;
}

Statevector weyl_apply_adjoint(Statevector s, const WeylOp& op) {
  if (op.n != s.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  const std::uint64_t dim = s.dim();
  const auto ph = phasor_table(dim);
  std::vector<cplx> out(dim);
  for (std::uint64_t z = 0; z < dim; ++z)
    out[z] = std::conj(ph[(op.r2 * z) & (dim - 1)]) * s.amp((z + op.r1) & (dim - 1));
  s.amps() = std::move(out);
  return s;
}

Statevector apply_fourier(Statevector s, const Circuit& qft_circuit) {
  const int n = s.num_qubits();
  s = apply_permutation(std::move(s), Permutation::bit_reversal(n, 0, n));
  return apply_circuit(std::move(s), qft_circuit);
}

Statevector apply_fourier_adjoint(Statevector s, const Circuit& qft_circuit) {
  const int n = s.num_qubits();
  s = apply_circuit(std::move(s), inverse(qft_circuit));
  return apply_permutation(std::move(s), Permutation::bit_reversal(n, 0, n));
}

double weyl_conjugation_check(int n, std::uint64_t r1, std::uint64_t r2) {
  if (n > 10) throw ResourceLimitError("conjugation check limited to n <= 10");
  const Circuit qft = exact_qft(n);
  const std::uint64_t dim = std::uint64_t{1} << n;
  double dev = 0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    Statevector lhs = Statevector::basis_state(n, x);
    lhs = apply_fourier_adjoint(std::move(lhs), qft);
    lhs = weyl_apply_adjoint(std::move(lhs), {n, r1, r2});
    lhs = apply_fourier(std::move(lhs), qft);
    const std::uint64_t neg_r1 = (dim - r1 % dim) & (dim - 1);
    const Statevector rhs = weyl_apply(Statevector::basis_state(n, x), {n, r2, neg_r1});
    for (std::uint64_t y = 0; y < dim; ++y) dev = std::max(dev, std::abs(lhs.amp(y) - rhs.amp(y)));
  }
  return dev;
}

double weyl_one_design_check(const Statevector& psi) {
  const int n = psi.num_qubits();
  if (n > 5) throw ResourceLimitError("1-design check limited to n <= 5");
  const std::uint64_t dim = psi.dim();
  std::vector<cplx> acc(dim * dim, cplx{});
  for (std::uint64_t r1 = 0; r1 < dim; ++r1)
    for (std::uint64_t r2 = 0; r2 < dim; ++r2) {
      const Statevector v = weyl_apply(psi, {n, r1, r2});
      for (std::uint64_t i = 0; i < dim; ++i)
        for (std::uint64_t j = 0; j < dim; ++j) acc[i * dim + j] += v.amp(i) * std::conj(v.amp(j));
    }
  const double scale = 1.0 / static_cast<double>(dim * dim);
  double dev = 0;
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint64_t j = 0; j < dim; ++j) {
      const cplx want = i == j ? cplx{1.0 / static_cast<double>(dim), 0} : cplx{};
      dev = std::max(dev, std::abs(acc[i * dim + j] * scale - want));
    }
  return dev;
}

namespace {

Statevector wrapped_apply(const Statevector& input, const Circuit& tilde_qft, const WeylOp& v) {
  const int n = input.num_qubits();
  const std::uint64_t dim = input.dim();
  Statevector s = weyl_apply(input, v);
  s = apply_fourier(std::move(s), tilde_qft);
  const std::uint64_t neg_r1 = (dim - v.r1 % dim) & (dim - 1);
  return weyl_apply(std::move(s), {n, v.r2, neg_r1});
}

}  // namespace

std::pair<Statevector, WeylOp> randomized_reduced_apply(const Statevector& input,
                                                        const ReductionConfig& cfg,
                                                        std::mt19937_64& rng) {
  const int n = input.num_qubits();
  if (cfg.n != n) throw std::invalid_argument("qubit count mismatch");
  const std::uint64_t mask = input.dim() - 1;
  const WeylOp v{n, rng() & mask, rng() & mask};
  const Circuit tilde = optimistic_qft(n, std::min(cfg.m, n));
  return {wrapped_apply(input, tilde, v), v};
}

double expected_error_exact(const Statevector& input, const ReductionConfig& cfg) {
  const int n = input.num_qubits();
  if (cfg.n != n) throw std::invalid_argument("qubit count mismatch");
  if (n > 8) throw ResourceLimitError("exact expectation limited to n <= 8");
  const Circuit tilde = optimistic_qft(n, std::min(cfg.m, n));
  const Circuit qft = exact_qft(n);
  const Statevector target = apply_fourier(input, qft);
  const std::uint64_t dim = input.dim();
  double sum = 0;
  for (std::uint64_t r1 = 0; r1 < dim; ++r1)
    for (std::uint64_t r2 = 0; r2 < dim; ++r2)
      sum += error_norm_sq(wrapped_apply(input, tilde, {n, r1, r2}), target);
  return sum / static_cast<double>(dim * dim);
}

std::pair<double, double> expected_error_sampled(const Statevector& input,
                                                 const ReductionConfig& cfg) {
  const int n = input.num_qubits();
  if (cfg.n != n) throw std::invalid_argument("qubit count mismatch");
  if (cfg.samples < 2) throw std::invalid_argument("need at least two samples");
  const Circuit tilde = optimistic_qft(n, std::min(cfg.m, n));
  const Circuit qft = exact_qft(n);
  const Statevector target = apply_fourier(input, qft);
  std::mt19937_64 rng(cfg.seed);
  const std::uint64_t mask = input.dim() - 1;
  std::vector<double> errs(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i) {
    const WeylOp v{n, rng() & mask, rng() & mask};
    errs[i] = error_norm_sq(wrapped_apply(input, tilde, v), target);
  }
  double mean = 0;
  for (double e : errs) mean += e;
  mean /= cfg.samples;
  double var = 0;
  for (double e : errs) var += (e - mean) * (e - mean);
  var /= (cfg.samples - 1);
  return {mean, std::sqrt(var / cfg.samples)};
}

namespace {

// Applies V(r1,r2) (or its adjoint-parameter partner) to the target slice of
// every control value i = r1*2^n + r2 of the joint state.
template <typename ParamFn>
void controlled_weyl(std::vector<cplx>& amps, int n, const std::vector<cplx>& ph, ParamFn params) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<cplx> slice(dim);
  for (std::uint64_t i = 0; i < dim * dim; ++i) {
    const auto [r1, r2] = params(i / dim, i % dim);
    cplx* base = amps.data() + i * dim;
    for (std::uint64_t x = 0; x < dim; ++x)
      slice[(x + r1) & (dim - 1)] = ph[(r2 * x) & (dim - 1)] * base[x];
    std::copy(slice.begin(), slice.end(), base);
  }
}

}  // namespace

Statevector purified_apply(const Statevector& input, const ReductionConfig& cfg) {
  const int n = input.num_qubits();
  if (cfg.n != n) throw std::invalid_argument("qubit count mismatch");
  if (n > 5) throw ResourceLimitError("purified wrapping limited to n <= 5");
  const std::uint64_t dim = input.dim();
  const std::uint64_t k = dim * dim;
  Statevector joint(3 * n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  for (std::uint64_t i = 0; i < k; ++i)
    for (std::uint64_t x = 0; x < dim; ++x) joint.amps()[i * dim + x] = scale * input.amp(x);

  const auto ph = phasor_table(dim);
  controlled_weyl(joint.amps(), n, ph,
                  [](std::uint64_t r1, std::uint64_t r2) { return std::pair{r1, r2}; });
  joint = apply_permutation(std::move(joint), Permutation::bit_reversal(3 * n, 0, n));
  joint = apply_embedded(std::move(joint), optimistic_qft(n, std::min(cfg.m, n)));
  controlled_weyl(joint.amps(), n, ph, [dim](std::uint64_t r1, std::uint64_t r2) {
    return std::pair{r2, (dim - r1 % dim) & (dim - 1)};
  });
  return joint;
}

double purified_error(const Statevector& input, const ReductionConfig& cfg) {
  const int n = input.num_qubits();
  const Statevector joint = purified_apply(input, cfg);
  const Statevector target = apply_fourier(input, exact_qft(n));
  const std::uint64_t dim = input.dim();
  const std::uint64_t k = dim * dim;
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  double err = 0;
  for (std::uint64_t i = 0; i < k; ++i)
    for (std::uint64_t x = 0; x < dim; ++x)
      err += std::norm(joint.amp(i * dim + x) - scale * target.amp(x));
  return err;
}

Circuit controlled_phase_gradient(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("block size out of range");
  Circuit c(2 * n);
  // Band e holds gates of angle 2*pi/2^e between x_j and z_{n-e-j}; gates in a
  // band are disjoint, so the greedy depth is the band count m.
  for (int e = 1; e <= m; ++e)
    for (int j = 0; j < n; ++j) {
      const int k = n - e - j;
      if (k < 0 || k >= n) continue;
      c.append(Gate::cphase(j, n + k, {1, e}));
    }
  return c;
}

double cpg_operator_norm_error(const Circuit& cpg, int n) {
  if (2 * n > 26) throw ResourceLimitError("diagonal check limited to 2n <= 26");
  if (cpg.num_qubits() != 2 * n) throw std::invalid_argument("circuit width mismatch");
  // Reconstruct which dyadic terms of x*z/2^n the circuit keeps.
  std::vector<std::uint64_t> kept(n, 0);
  for (const Gate& g : cpg.gates()) {
    if (g.kind != GateKind::CPhase) throw std::invalid_argument("not a phase-gradient circuit");
    const int j = std::min(g.q0, g.q1);
    const int k = std::max(g.q0, g.q1) - n;
    if (j < 0 || j >= n || k < 0 || k >= n || g.phase.num != 1 || g.phase.exp != n - j - k)
      throw std::invalid_argument("not a phase-gradient circuit");
    kept[j] |= std::uint64_t{1} << k;
  }
  std::vector<std::uint64_t> dropped(n);
  for (int j = 0; j < n; ++j) {
    // terms with j + k >= n are multiples of 2*pi and carry no gate
    const std::uint64_t nontrivial = (std::uint64_t{1} << (n - j)) - 1;
    dropped[j] = nontrivial & ~kept[j];
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  const double w = std::numbers::pi / static_cast<double>(dim);
  double worst = 0;
  for (std::uint64_t z = 0; z < dim; ++z) {
    for (std::uint64_t x = 0; x < dim; ++x) {
      std::uint64_t d = 0;
      std::uint64_t bits = x;
      while (bits) {
        const int j = std::countr_zero(bits);
        bits &= bits - 1;
        d += (z & dropped[j]) << j;
      }
      if (d) worst = std::max(worst, 2.0 * std::abs(std::sin(w * static_cast<double>(d))));
    }
  }
  return worst;
}

}  // namespace oqsim
