#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <sstream>

#include "oqsim/errmetrics.hpp"
#include "oqsim/qftlib.hpp"
#include "test_util.hpp"

using namespace oqsim;
using oqsim::testing::max_amp_diff;

namespace {

ColumnOracle reference_oracle(int n) {
  return [n](std::uint64_t x) { return reference_qft_state(n, x); };
}

ColumnOracle permutation_oracle(int n, Permutation p) {
  return [n, p](std::uint64_t x) { return Statevector::basis_state(n, p(x)); };
}

}  // namespace

TEST_CASE("exhaustive average error") {
  const Circuit c = exact_qft(5);
  CHECK(frobenius_error_avg(c, column_oracle(c)).avg_frobenius < 1e-12);
  CHECK(frobenius_error_avg(c, reference_oracle(5)).avg_frobenius < 1e-12);

  // two classical permutations differing on a fraction f of inputs -> 2f
  const int n = 4;
  const auto id = Permutation::identity(n);
  const auto tr = Permutation::from_function(n, [](std::uint64_t x) {
    if (x == 3) return std::uint64_t{9};
    if (x == 9) return std::uint64_t{3};
    return x;
  });
  const auto rep = frobenius_error_avg(permutation_oracle(n, tr), permutation_oracle(n, id), n);
  CHECK(rep.avg_frobenius == doctest::Approx(2.0 * 2.0 / 16.0).epsilon(1e-12));

  // report invariants
  const auto r2 = frobenius_error_avg(optimistic_qft(6, 2), reference_oracle(6));
  double sum = 0;
  for (double e : r2.per_state) {
    CHECK(e >= 0.0);
    CHECK(e <= 4.0 + 1e-12);
    sum += e;
  }
  CHECK(std::abs(r2.avg_frobenius - sum / 64.0) < 1e-12);

  CHECK_THROWS_AS(frobenius_error_avg(reference_oracle(15), reference_oracle(15), 15),
                  ResourceLimitError);
}

TEST_CASE("sampled estimator") {
  const Circuit c = exact_qft(4);
  const auto [zero, zerr] = frobenius_error_sampled(c, column_oracle(c), 64, 5);
  CHECK(zero == 0.0);
  CHECK(zerr == 0.0);

  const Circuit opt = optimistic_qft(10, 2);
  const auto exact = frobenius_error_avg(opt, reference_oracle(10));
  const auto [est, se] = frobenius_error_sampled(opt, reference_oracle(10), 500, 12345);
  CHECK(std::abs(est - exact.avg_frobenius) <= 4 * se);

  const auto again = frobenius_error_sampled(opt, reference_oracle(10), 500, 12345);
  CHECK(again.first == est);
  CHECK(again.second == se);
}

TEST_CASE("subspace error and the large-error-subspace inequality") {
  const Circuit opt = optimistic_qft(8, 2);
  const auto all = [&] {
    std::vector<std::uint64_t> v(256);
    for (std::uint64_t i = 0; i < 256; ++i) v[i] = i;
    return v;
  }();
  const auto full = subspace_error(opt, reference_oracle(8), all);
  const auto avg = frobenius_error_avg(opt, reference_oracle(8)).avg_frobenius;
  CHECK(full.mu == doctest::Approx(avg).epsilon(1e-12));

  const auto ones = subspace_error(opt, reference_oracle(8), {255});
  CHECK(ones.mu >= 0.5);
  CHECK(1.0 <= ones.dim_bound + 1e-9);

  for (std::uint64_t seed : {41u, 42u}) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> pick;
    for (std::uint64_t x = 0; x < 256; ++x)
      if (rng() & 1) pick.push_back(x);
    const auto sub = subspace_error(opt, reference_oracle(8), pick);
    CHECK(static_cast<double>(pick.size()) <= sub.dim_bound + 1e-9);
  }

  CHECK_THROWS_AS(subspace_error(opt, reference_oracle(8), {}), std::invalid_argument);
  CHECK_THROWS_AS(subspace_error(opt, reference_oracle(8), {1, 1}), std::invalid_argument);
}

TEST_CASE("lee distance") {
  CHECK(lee_distance(0, 3) == 0);
  CHECK(lee_distance((1 << 3) - 1, 3) == 1);
  CHECK(lee_distance(1 << 2, 3) == 4);  // antipode
  CHECK(lee_distance(-1, 3) == 1);
  CHECK(lee_distance(19, 4) == 3);
}

TEST_CASE("phase-estimation profile") {
  // integer phase: exact recovery
  for (int m : {2, 3, 4}) {
    for (std::uint64_t X = 0; X < (1u << m); ++X) {
      const auto alpha = qpe_wraparound_profile(m, X, 0.0);
      CHECK(std::abs(alpha[X] - cplx{1.0, 0.0}) < 1e-12);
    }
  }

  // closed-form geometric-sum oracle
  for (int m : {3, 4}) {
    const std::uint64_t dim = 1u << m;
    for (std::uint64_t X : {std::uint64_t{1}, dim - 1, dim / 2}) {
      for (double frac : {0.25, 0.5, 0.8125}) {
        const auto alpha = qpe_wraparound_profile(m, X, frac);
        for (std::uint64_t xp = 0; xp < dim; ++xp) {
          cplx want{};
          for (std::uint64_t y = 0; y < dim; ++y)
            want += std::polar(1.0, 2 * std::numbers::pi *
                                        (static_cast<double>(X) + frac - static_cast<double>(xp)) *
                                        static_cast<double>(y) / static_cast<double>(dim));
          want /= static_cast<double>(dim);
          CHECK(std::abs(alpha[xp] - want) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("profile peak stays near X and tails obey the wraparound bound") {
  for (int m = 2; m <= 5; ++m) {
    const std::uint64_t dim = 1u << m;
    for (std::uint64_t X = 0; X < dim; ++X) {
      for (int k = 0; k < 16; ++k) {
        const double frac = k / 16.0;
        const auto alpha = qpe_wraparound_profile(m, X, frac);
        std::uint64_t argmax = 0;
        for (std::uint64_t xp = 1; xp < dim; ++xp)
          if (std::norm(alpha[xp]) > std::norm(alpha[argmax])) argmax = xp;
        CHECK(lee_distance(static_cast<std::int64_t>(argmax - X), m) <= 1);
        for (std::int64_t t = 2; t <= (1 << (m - 1)); ++t) {
          double tail = 0;
          for (std::uint64_t xp = 0; xp < dim; ++xp)
            if (lee_distance(static_cast<std::int64_t>(xp - X), m) > t) tail += std::norm(alpha[xp]);
          CHECK(tail < 1.0 / (2.0 * (t - 1)) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("commutation gap") {
  // recorded oracle value and the brute-force cross-check
  const double g2 = commutation_gap(2);
  CHECK(g2 == doctest::Approx(25.2437619).epsilon(1e-6));
  CHECK(std::abs(g2 - commutation_gap_bruteforce(2)) < 1e-9);
  CHECK(std::abs(commutation_gap(3) - commutation_gap_bruteforce(3)) < 1e-8);

  // at-most-linear growth of gap / 2^{2m}, constant fit at m = 2
  const double c = g2 / std::ldexp(1.0, 4) / 2.0;
  for (int m : {3, 4}) CHECK(commutation_gap(m) / std::ldexp(1.0, 2 * m) <= c * m);

  CHECK_THROWS_AS(commutation_gap(6), ResourceLimitError);
}

TEST_CASE("zero-rotation sector of the commutation motif contributes nothing") {
  // with both outer blocks at 0 the two gate orders coincide
  const int m = 2, n = 3 * m;
  Circuit w(n), wp(n);
  const Circuit mid = offset_qubits(exact_qft(m), m, n);
  auto coupling = [&](int lo, int hi) {
    Circuit q(n);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) q.append(Gate::cphase(lo + a, hi + b, {1, m + b - a + 1}));
    return q;
  };
  w.append(coupling(0, m));
  w.append(mid);
  w.append(coupling(m, 2 * m));
  w.append(inverse(mid));
  wp.append(mid);
  wp.append(coupling(m, 2 * m));
  wp.append(inverse(mid));
  wp.append(coupling(0, m));
  for (std::uint64_t X = 0; X < (1u << m); ++X) {
    const std::uint64_t idx = X << m;  // Y = 0, Z = 0
    const auto a = apply_circuit(Statevector::basis_state(n, idx), w);
    const auto b = apply_circuit(Statevector::basis_state(n, idx), wp);
    CHECK(error_norm_sq(a, b) < 1e-24);
  }
}

TEST_CASE("average error is basis independent") {
  for (int n : {6, 8}) {
    const Circuit test = coppersmith_aqft(n, 2);
    const Circuit ref = exact_qft(n);
    Circuit had(n);
    for (int q = 0; q < n; ++q) had.append(Gate::h(q));

    const double dim = std::ldexp(1.0, n);
    double comp = 0, hadb = 0;
    for (std::uint64_t x = 0; x < (1u << n); ++x) {
      comp += error_norm_sq(apply_circuit(Statevector::basis_state(n, x), test),
                            apply_circuit(Statevector::basis_state(n, x), ref));
      const auto in = apply_circuit(Statevector::basis_state(n, x), had);
      hadb += error_norm_sq(apply_circuit(in, test), apply_circuit(in, ref));
    }
    CHECK(std::abs(comp - hadb) / dim < 1e-9);
  }
}

TEST_CASE("triangle inequality across variants") {
  const int n = 6;
  const auto oracle_of = [&](const Circuit& c) { return column_oracle(c); };
  const Circuit a = exact_qft(n), b = blocked_aqft(n, 2), c = optimistic_qft(n, 2);
  const double ab = frobenius_error_avg(a, oracle_of(b)).avg_frobenius;
  const double bc = frobenius_error_avg(b, oracle_of(c)).avg_frobenius;
  const double ac = frobenius_error_avg(a, oracle_of(c)).avg_frobenius;
  CHECK(std::sqrt(ac) <= std::sqrt(ab) + std::sqrt(bc) + 1e-12);
}

TEST_CASE("blockwise truncation bound on a small grid") {
  for (int n : {4, 6, 8}) {
    for (int m : {1, 2, 3}) {
      const double e = frobenius_error_avg(blocked_aqft(n, m), reference_oracle(n)).avg_frobenius;
      const double bound = 4 * std::numbers::pi * std::numbers::pi / 3.0 * ((n + m - 1) / m) *
                           std::ldexp(1.0, -m);
      CHECK(e <= bound);
    }
  }
}

TEST_CASE("report serialization") {
  auto rep = frobenius_error_avg(optimistic_qft(4, 2), reference_oracle(4));
  rep.m = 2;
  rep.bound = 1.25;
  rep.config = "variant=optimistic n=4 m=2";

  std::ostringstream csv;
  write_error_csv(rep, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x,error,bad");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 16);

  std::ostringstream rec;
  write_error_records(rep, rec);
  CHECK(rec.str().find("avg_frobenius ") != std::string::npos);
  CHECK(rec.str().find("bound 1.25") != std::string::npos);
  CHECK(rec.str().find("state 15 ") != std::string::npos);
}

TEST_CASE("bad-state predicate marks blocks near the wrap boundary") {
  // n=8, m=2: even blocks are bits 0..1 and 4..5; values {0,1,3} are near the boundary
  CHECK(bad_state_predicate(0b00000000, 8, 2));   // zeros
  CHECK(bad_state_predicate(0b11111111, 8, 2));   // ones
  CHECK(!bad_state_predicate(0b00100010, 8, 2));  // both even blocks equal 2
  CHECK(bad_state_predicate(0b00100001, 8, 2));
}
