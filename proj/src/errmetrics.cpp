#include "oqsim/errmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "oqsim/qftlib.hpp"

namespace oqsim {

ColumnOracle column_oracle(const Circuit& c) {
  const int n = c.num_qubits();
  return [c, n](std::uint64_t x) { return apply_circuit(Statevector::basis_state(n, x), c); };
}

double ErrorReport::per_state_max() const {
  double r = 0;
  for (double e : per_state) r = std::max(r, e);
  return r;
}

ErrorReport frobenius_error_avg(const ColumnOracle& test, const ColumnOracle& reference, int n) {
  if (n > 14) throw ResourceLimitError("exhaustive metric capped at n = 14; use the sampled estimator");
  const std::uint64_t dim = std::uint64_t{1} << n;
  ErrorReport rep;
  rep.n = n;
  rep.per_state.resize(dim);
  for (std::uint64_t x = 0; x < dim; ++x) rep.per_state[x] = error_norm_sq(test(x), reference(x));
  double sum = 0;
  for (double e : rep.per_state) sum += e;  // fixed index order
  rep.avg_frobenius = sum / static_cast<double>(dim);
  return rep;
}

ErrorReport frobenius_error_avg(const Circuit& test, const ColumnOracle& reference) {
  return frobenius_error_avg(column_oracle(test), reference, test.num_qubits());
}

std::pair<double, double> frobenius_error_sampled(const Circuit& test, const ColumnOracle& reference,
                                                  int samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const int n = test.num_qubits();
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::mt19937_64 rng(seed);
  const auto test_col = column_oracle(test);
  std::vector<double> errs(samples);
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t x = rng() & mask;
    errs[i] = error_norm_sq(test_col(x), reference(x));
  }
  double mean = 0;
  for (double e : errs) mean += e;
  mean /= samples;
  double var = 0;
  for (double e : errs) var += (e - mean) * (e - mean);
  var /= (samples - 1);
  return {mean, std::sqrt(var / samples)};
}

SubspaceReport subspace_error(const Circuit& test, const ColumnOracle& reference,
                              const std::vector<std::uint64_t>& states) {
  if (states.empty()) throw std::invalid_argument("empty state list");
  {
    auto sorted = states;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("states must be distinct");
  }
  const auto full = frobenius_error_avg(test, reference);
  SubspaceReport rep;
  rep.states = states;
  double sum = 0;
  for (std::uint64_t x : states) sum += full.per_state.at(x);
  rep.mu = sum / static_cast<double>(states.size());
  rep.epsilon = full.avg_frobenius;
  rep.dim_bound = rep.mu > 0 ? static_cast<double>(full.per_state.size()) * rep.epsilon / rep.mu
                             : std::numeric_limits<double>::infinity();
  return rep;
}

std::int64_t lee_distance(std::int64_t z, int m) {
  const std::int64_t mod = std::int64_t{1} << m;
  const std::int64_t r = ((z % mod) + mod) % mod;
  return std::min(r, mod - r);
}

std::vector<cplx> qpe_wraparound_profile(int m, std::uint64_t X, double frac) {
  const std::uint64_t dim = std::uint64_t{1} << m;
  if (X >= dim) throw std::out_of_range("X out of range");
  if (!(frac >= 0.0 && frac < 1.0)) throw std::out_of_range("frac out of [0, 1)");
  Statevector s(m);
  const double scale = std::pow(2.0, -0.5 * m);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(dim);
  const double phi = static_cast<double>(X) + frac;
  for (std::uint64_t y = 0; y < dim; ++y)
    s.amps()[y] = std::polar(scale, w * phi * static_cast<double>(y));
  s = apply_circuit(std::move(s), inverse(exact_qft(m)));
  // The cascade leaves the estimate in reversed bit order; relabel so the
  // result is indexed by X' directly.
  std::vector<cplx> alpha(dim);
  for (std::uint64_t xp = 0; xp < dim; ++xp) alpha[xp] = s.amp(reverse_bits(xp, m));
  return alpha;
}

namespace {

// Diagonal phase of the coupling between two m-bit blocks, as emitted by the
// builders: exp(2*pi*i * rev(hi) * lo / 2^{2m}).
std::uint64_t coupling_numerator(std::uint64_t lo, std::uint64_t hi, int m) {
  const std::uint64_t mask = (std::uint64_t{1} << (2 * m)) - 1;
  return (reverse_bits(hi, m) * lo) & mask;
}

}  // namespace

double commutation_gap(int m) {
  if (m < 1 || m > 5) throw ResourceLimitError("commutation gap limited to m <= 5");
  const std::uint64_t dim = std::uint64_t{1} << m;
  const std::uint64_t dim2 = dim * dim;
  const Circuit qft = exact_qft(m);
  const Circuit qft_inv = inverse(qft);
  std::vector<cplx> phasor(dim2);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(dim2);
  for (std::uint64_t k = 0; k < dim2; ++k) phasor[k] = std::polar(1.0, w * static_cast<double>(k));

  // For basis input |Y>|X>|Z>:
  //   W |Y,X,Z>  = phasor[rev(X) Y] |Y> (x) u |Z>,  u = QFT^-1 D_Z QFT |X>,
  //   W'|Y,X,Z>  = |Y> (x) D'_Y u (x) |Z>,          D'_Y[v] = phasor[rev(v) Y],
  // where D_Z[v] = phasor[rev(Z) v]. The squared difference therefore splits
  // per basis state of the middle block.
  double gap = 0;
  for (std::uint64_t X = 0; X < dim; ++X) {
    for (std::uint64_t Z = 0; Z < dim; ++Z) {
      Statevector u = apply_circuit(Statevector::basis_state(m, X), qft);
      for (std::uint64_t v = 0; v < dim; ++v) u.amps()[v] *= phasor[coupling_numerator(v, Z, m)];
      u = apply_circuit(std::move(u), qft_inv);
      for (std::uint64_t Y = 0; Y < dim; ++Y) {
        double state_err = 0;
        const std::uint64_t base = coupling_numerator(Y, X, m);
        for (std::uint64_t v = 0; v < dim; ++v)
          state_err += std::norm(u.amp(v)) * std::norm(phasor[base] - phasor[coupling_numerator(Y, v, m)]);
        gap += state_err;
      }
    }
  }
  return gap;
}

double commutation_gap_bruteforce(int m) {
  if (m < 1 || m > 4) throw ResourceLimitError("brute-force gap limited to m <= 4");
  const int n = 3 * m;
  Circuit w_circ(n), wp_circ(n);
  auto coupling = [&](Circuit& c, int lo_begin, int hi_begin) {
    Circuit q(n);
    // same gate generator as the builders
    for (int t = 0; t < m; ++t)
      for (int a = 0; a < m; ++a) {
        const int b = (t - a + 2 * m) % m;
        q.append(Gate::cphase(lo_begin + a, hi_begin + b, {1, m + b - a + 1}));
      }
    c.append(q);
  };
  Circuit mid_qft = offset_qubits(exact_qft(m), m, n);
  coupling(w_circ, 0, m);
  w_circ.append(mid_qft);
  coupling(w_circ, m, 2 * m);
  w_circ.append(inverse(mid_qft));

  wp_circ.append(mid_qft);
  coupling(wp_circ, m, 2 * m);
  wp_circ.append(inverse(mid_qft));
  coupling(wp_circ, 0, m);

  double gap = 0;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < dim; ++x) {
    const auto a = apply_circuit(Statevector::basis_state(n, x), w_circ);
    const auto b = apply_circuit(Statevector::basis_state(n, x), wp_circ);
    gap += error_norm_sq(a, b);
  }
  return gap;
}

bool bad_state_predicate(std::uint64_t x, int n, int m) {
  const BlockLayout l = BlockLayout::make(n, m);
  for (int i = 0; i < l.count(); i += 2) {
    const auto v = static_cast<std::int64_t>(l.block_value(x, i));
    if (lee_distance(v, l.width(i)) <= 1) return true;
  }
  return false;
}

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void write_error_csv(const ErrorReport& r, std::ostream& out) {
  out << "x,error,bad\n";
  for (std::uint64_t x = 0; x < r.per_state.size(); ++x) {
    const bool bad = r.m > 0 && bad_state_predicate(x, r.n, r.m);
    out << x << ',' << fmt_double(r.per_state[x]) << ',' << (bad ? 1 : 0) << '\n';
  }
}

void write_error_records(const ErrorReport& r, std::ostream& out) {
  out << "n " << r.n << '\n';
  if (r.m > 0) out << "m " << r.m << '\n';
  out << "avg_frobenius " << fmt_double(r.avg_frobenius) << '\n';
  if (r.bound) out << "bound " << fmt_double(*r.bound) << '\n';
  out << "per_state_max " << fmt_double(r.per_state_max()) << '\n';
  if (!r.config.empty()) out << "config " << r.config << '\n';
  for (std::uint64_t x = 0; x < r.per_state.size(); ++x)
    out << "state " << x << ' ' << fmt_double(r.per_state[x]) << '\n';
}

}  // namespace oqsim
