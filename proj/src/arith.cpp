#include "oqsim/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "oqsim/errmetrics.hpp"

namespace oqsim {

AddResult exact_add(std::uint64_t a, std::uint64_t b, int n) {
  AddResult r;
  r.carries.assign(n + 1, 0);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    const int ai = (a >> i) & 1, bi = (b >> i) & 1;
    r.sum |= static_cast<std::uint64_t>(ai ^ bi ^ c) << i;
    c = (ai + bi + c >= 2) ? 1 : 0;  // MAJ
    r.carries[i + 1] = c;
  }
  r.sum |= static_cast<std::uint64_t>(c) << n;
  return r;
}

std::uint64_t windowed_add(std::uint64_t a, std::uint64_t b, int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("window out of range");
  std::uint64_t s = 0;
  for (int i = 0; i <= n; ++i) {
    const int lo = std::max(0, i - k);
    const std::uint64_t mask = (std::uint64_t{1} << (i - lo)) - 1;
    const std::uint64_t wa = (a >> lo) & mask, wb = (b >> lo) & mask;
    const int c = (wa + wb) >> (i - lo) ? 1 : 0;
    if (i == n) {
      s |= static_cast<std::uint64_t>(c) << n;
    } else {
      const int ai = (a >> i) & 1, bi = (b >> i) & 1;
      s |= static_cast<std::uint64_t>(ai ^ bi ^ c) << i;
    }
  }
  return s;
}

int longest_carry_chain(std::uint64_t a, std::uint64_t b, int n) {
  int best = 0;
  for (int g = 0; g < n; ++g) {
    if (!((a >> g) & (b >> g) & 1)) continue;  // carry generated at g
    int len = 1;
    while (g + len < n && (((a ^ b) >> (g + len)) & 1)) ++len;
    best = std::max(best, len);
  }
  return best;
}

double adder_avg_error(int n, int k) {
  if (2 * n > 24) throw ResourceLimitError("exhaustive adder metric capped at 2n = 24");
  std::uint64_t mismatches = 0;
  const std::uint64_t lim = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < lim; ++a)
    for (std::uint64_t b = 0; b < lim; ++b)
      if (windowed_add(a, b, n, k) != exact_add(a, b, n).sum) ++mismatches;
  return 2.0 * static_cast<double>(mismatches) / static_cast<double>(lim * lim);
}

double adder_avg_error_sampled(int n, int k, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need samples");
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::uint64_t mismatches = 0;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t a = rng() & mask, b = rng() & mask;
    if (windowed_add(a, b, n, k) != exact_add(a, b, n).sum) ++mismatches;
  }
  return 2.0 * static_cast<double>(mismatches) / samples;
}

QftBuilder make_qft_builder(QftVariant v, int m) {
  return [v, m](int nq) { return build_qft(v, nq, std::min(std::max(m, 1), nq)); };
}

void HybridOp::push_circuit(Circuit c) {
  if (c.num_qubits() != n_) throw std::invalid_argument("segment width mismatch");
  segments_.push_back({Segment::Kind::Gates, std::move(c), std::nullopt, {}});
}

void HybridOp::push_qft_instance(Circuit c) {
  push_circuit(std::move(c));
  ++qft_instances_;
}

void HybridOp::push_permutation(Permutation p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("segment width mismatch");
  segments_.push_back({Segment::Kind::Perm, Circuit(1), std::move(p), {}});
}

void HybridOp::push_diagonal(std::function<cplx(std::uint64_t)> d) {
  segments_.push_back({Segment::Kind::Diag, Circuit(1), std::nullopt, std::move(d)});
}

void HybridOp::push_op(HybridOp other) {
  if (other.n_ != n_) throw std::invalid_argument("op width mismatch");
  qft_instances_ += other.qft_instances_;
  for (auto& seg : other.segments_) segments_.push_back(std::move(seg));
}

Statevector HybridOp::apply(Statevector s, int ctrl) const {
  if (s.num_qubits() < n_) throw std::invalid_argument("state narrower than op");
  if (ctrl >= 0 && ctrl < n_) throw std::invalid_argument("control inside op range");
  const std::uint64_t dim = s.dim();
  const std::uint64_t sub = std::uint64_t{1} << n_;
  const std::uint64_t cbit = ctrl >= 0 ? std::uint64_t{1} << ctrl : 0;
  for (const Segment& seg : segments_) {
    switch (seg.kind) {
      case Segment::Kind::Gates:
        s = apply_embedded(std::move(s), seg.gates, ctrl);
        break;
      case Segment::Kind::Perm: {
        std::vector<cplx> out(dim);
        const auto& in = s.amps();
        const Permutation& p = *seg.perm;
        for (std::uint64_t i = 0; i < dim; ++i) {
          if (cbit && !(i & cbit)) {
            out[i] = in[i];
          } else {
            out[(i & ~(sub - 1)) | p(i & (sub - 1))] = in[i];
          }
        }
        s.amps() = std::move(out);
        break;
      }
      case Segment::Kind::Diag: {
        auto& a = s.amps();
        for (std::uint64_t i = 0; i < dim; ++i) {
          if (cbit && !(i & cbit)) continue;
          a[i] *= seg.diag(i & (sub - 1));
        }
        break;
      }
    }
  }
  return s;
}

HybridOp HybridOp::inverse() const {
  HybridOp inv(n_);
  inv.qft_instances_ = qft_instances_;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    switch (it->kind) {
      case Segment::Kind::Gates:
        inv.segments_.push_back({Segment::Kind::Gates, oqsim::inverse(it->gates), std::nullopt, {}});
        break;
      case Segment::Kind::Perm:
        inv.segments_.push_back({Segment::Kind::Perm, Circuit(1), it->perm->inverse(), {}});
        break;
      case Segment::Kind::Diag: {
        auto d = it->diag;
        inv.segments_.push_back({Segment::Kind::Diag, Circuit(1), std::nullopt,
                                 [d](std::uint64_t x) { return std::conj(d(x)); }});
        break;
      }
    }
  }
  return inv;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(mod), nr = static_cast<std::int64_t>(a % mod);
  while (nr) {
    const std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::invalid_argument("not invertible");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(mod) : t);
}

namespace {

// Modular adder into the accumulator, Fourier-basis additions with a sign
// ancilla. Values are added through diagonals of the form
// exp(-2*pi*i * v * rev(w) / 2^W) sandwiched between the builder's inverse
// QFT and QFT (that sandwich is the shift |w> -> |w+v>).
struct ModAdderContext {
  int n;          // value register width
  int acc_w;      // n + 1
  std::uint64_t N;
  int total;      // 2n + 2
  Circuit acc_qft{1};
  std::vector<std::uint64_t> rev_acc;  // rev over acc_w bits
};

std::function<cplx(std::uint64_t)> phi_add_diag(const ModAdderContext& ctx, std::uint64_t v,
                                                bool negate, int ctrl_bit) {
  const int n = ctx.n, acc_w = ctx.acc_w;
  const std::uint64_t dimW = std::uint64_t{1} << acc_w;
  const double w0 = 2.0 * std::numbers::pi / static_cast<double>(dimW);
  const auto rev = ctx.rev_acc;
  return [=](std::uint64_t idx) -> cplx {
    if (ctrl_bit >= 0 && !((idx >> ctrl_bit) & 1)) return 1.0;
    const std::uint64_t w = (idx >> n) & (dimW - 1);
    double phase = -w0 * static_cast<double>((v * rev[w]) & (dimW - 1));
    if (negate) phase = -phase;
    return std::polar(1.0, phase);
  };
}

void push_acc_enter(HybridOp& op, const ModAdderContext& ctx) {
  op.push_qft_instance(inverse(ctx.acc_qft));
}
void push_acc_exit(HybridOp& op, const ModAdderContext& ctx) {
  op.push_qft_instance(ctx.acc_qft);
}

// acc <- (acc + a) mod N when the control bit is 1; requires acc < N, a < N.
void push_ctrl_modadd(HybridOp& op, const ModAdderContext& ctx, std::uint64_t a, int ctrl_bit) {
  const int msb = ctx.n + ctx.acc_w - 1;
  const int anc = ctx.total - 1;
  const std::uint64_t msb_bit = std::uint64_t{1} << msb;
  const std::uint64_t anc_bit = std::uint64_t{1} << anc;
  auto flip_anc_if = [&](bool on_set) {
    return Permutation::from_function(ctx.total, [=](std::uint64_t x) {
      const bool set = (x & msb_bit) != 0;
      return set == on_set ? x ^ anc_bit : x;
    });
  };
  push_acc_enter(op, ctx);
  op.push_diagonal(phi_add_diag(ctx, a, false, ctrl_bit));
  op.push_diagonal(phi_add_diag(ctx, ctx.N, true, -1));
  push_acc_exit(op, ctx);
  op.push_permutation(flip_anc_if(true));
  push_acc_enter(op, ctx);
  op.push_diagonal(phi_add_diag(ctx, ctx.N, false, anc));
  op.push_diagonal(phi_add_diag(ctx, a, true, ctrl_bit));
  push_acc_exit(op, ctx);
  op.push_permutation(flip_anc_if(false));
  push_acc_enter(op, ctx);
  op.push_diagonal(phi_add_diag(ctx, a, false, ctrl_bit));
  push_acc_exit(op, ctx);
}

// acc <- (acc + c*y) mod N, controlled bitwise on the y register.
void push_cmult(HybridOp& op, const ModAdderContext& ctx, std::uint64_t c) {
  for (int j = 0; j < ctx.n; ++j)
    push_ctrl_modadd(op, ctx, c * ((std::uint64_t{1} << j) % ctx.N) % ctx.N, j);
}

}  // namespace

HybridOp modmul_circuit(std::uint64_t c, std::uint64_t N, int n_bits, const QftBuilder& qb) {
  if (N < 2 || N >= (std::uint64_t{1} << n_bits)) throw std::invalid_argument("modulus width mismatch");
  if (std::gcd(c % N, N) != 1) throw std::invalid_argument("multiplier not coprime to modulus");
  if (2 * n_bits + 2 > 26) throw ResourceLimitError("multiplier register too wide");
  ModAdderContext ctx;
  ctx.n = n_bits;
  ctx.acc_w = n_bits + 1;
  ctx.N = N;
  ctx.total = 2 * n_bits + 2;
  ctx.acc_qft = offset_qubits(qb(ctx.acc_w), n_bits, ctx.total);
  ctx.rev_acc.resize(std::uint64_t{1} << ctx.acc_w);
  for (std::uint64_t w = 0; w < ctx.rev_acc.size(); ++w) ctx.rev_acc[w] = reverse_bits(w, ctx.acc_w);

  HybridOp op(ctx.total);
  push_cmult(op, ctx, c % N);
  // swap y with the low n bits of the accumulator
  const std::uint64_t ymask = (std::uint64_t{1} << n_bits) - 1;
  op.push_permutation(Permutation::from_function(ctx.total, [=](std::uint64_t x) {
    const std::uint64_t y = x & ymask;
    const std::uint64_t a = (x >> n_bits) & ymask;
    return (x & ~(ymask | (ymask << n_bits))) | a | (y << n_bits);
  }));
  HybridOp uncompute(ctx.total);
  push_cmult(uncompute, ctx, mod_inverse(c % N, N));
  op.push_op(uncompute.inverse());
  return op;
}

PeriodFindingResult period_finding_experiment(const FactoringConfig& cfg, int trials,
                                              std::uint64_t seed) {
  const std::uint64_t N = cfg.N, g = cfg.g;
  if (N < 3 || N % 2 == 0) throw std::invalid_argument("modulus must be odd and > 2");
  if (g < 2 || g >= N || std::gcd(g, N) != 1) throw std::invalid_argument("base must be coprime, 1 < g < N");
  int n_bits = 1;
  while ((std::uint64_t{1} << n_bits) <= N) ++n_bits;
  const int t = cfg.t > 0 ? cfg.t : 2 * n_bits;
  const int work = 2 * n_bits + 2;
  const int total = work + t;
  if (total > 19) throw ResourceLimitError("register too wide for desk scale");
  if (cfg.r_rand && (*cfg.r_rand % N == 0 || std::gcd(*cfg.r_rand % N, N) != 1))
    throw std::invalid_argument("r_rand must be coprime to the modulus");

  const QftBuilder qb = make_qft_builder(cfg.variant, cfg.m);
  const std::uint64_t r0 = cfg.r_rand ? *cfg.r_rand % N : 1;

  Statevector s = Statevector::basis_state(total, r0);
  for (int j = 0; j < t; ++j) s = apply_gate(std::move(s), Gate::h(work + j));
  for (int j = 0; j < t; ++j) {
    const HybridOp mult = modmul_circuit(mod_pow(g, std::uint64_t{1} << j, N), N, n_bits, qb);
    s = mult.apply(std::move(s), work + j);
  }
  // exact inverse transform on the counting register (inverse cascade plus
  // outcome bit reversal)
  s = apply_embedded(std::move(s), offset_qubits(inverse(exact_qft(t)), work, total));
  s = apply_permutation(std::move(s), Permutation::bit_reversal(total, work, total));

  PeriodFindingResult res;
  res.total_qubits = total;
  const std::uint64_t outcomes = std::uint64_t{1} << t;
  const std::uint64_t work_dim = std::uint64_t{1} << work;
  res.distribution.assign(outcomes, 0.0);
  for (std::uint64_t o = 0; o < outcomes; ++o) {
    double p = 0;
    for (std::uint64_t x = 0; x < work_dim; ++x) p += std::norm(s.amp((o << work) | x));
    res.distribution[o] = p;
  }
  double p_success = 0;
  for (std::uint64_t o = 0; o < outcomes; ++o)
    if (res.distribution[o] > 0 && outcome_recovers_factor(o, t, g, N)) p_success += res.distribution[o];
  res.p_success = p_success;

  if (trials > 0) {
    std::mt19937_64 rng(seed);
    std::vector<double> cdf(outcomes);
    double acc = 0;
    for (std::uint64_t o = 0; o < outcomes; ++o) cdf[o] = (acc += res.distribution[o]);
    for (int i = 0; i < trials; ++i) {
      const double u = std::ldexp(static_cast<double>(rng() >> 11), -53) * acc;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      res.histogram[static_cast<std::uint64_t>(it - cdf.begin())]++;
    }
  }
  return res;
}

bool outcome_recovers_factor(std::uint64_t outcome, int t, std::uint64_t g, std::uint64_t N) {
  // convergents of outcome / 2^t with denominators capped at N
  std::uint64_t num = outcome, den = std::uint64_t{1} << t;
  std::uint64_t h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  std::vector<std::uint64_t> denominators;
  while (den != 0) {
    const std::uint64_t a = num / den;
    const std::uint64_t r = num % den;
    const std::uint64_t h = a * h1 + h2, k = a * k1 + k2;
    if (k > N) break;
    denominators.push_back(k);
    h2 = h1; h1 = h;
    k2 = k1; k1 = k;
    num = den; den = r;
  }
  for (std::uint64_t d : denominators) {
    for (std::uint64_t mult : {std::uint64_t{1}, std::uint64_t{2}}) {
      const std::uint64_t r = d * mult;
      if (r == 0 || r > N) continue;
      if (mod_pow(g, r, N) != 1 || r % 2 != 0) continue;
      const std::uint64_t y = mod_pow(g, r / 2, N);
      if (y == N - 1) continue;
      for (const std::uint64_t f : {std::gcd(y + 1, N), std::gcd(y + N - 1, N)})
        if (f > 1 && f < N) return true;
    }
  }
  return false;
}

}  // namespace oqsim
