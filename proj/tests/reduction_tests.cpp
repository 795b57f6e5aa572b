#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oqsim/errmetrics.hpp"
#include "oqsim/qftlib.hpp"
#include "oqsim/reduction.hpp"
#include "test_util.hpp"

using namespace oqsim;
using oqsim::testing::max_amp_diff;
using oqsim::testing::random_state;

TEST_CASE("weyl operator action") {
  CHECK(weyl_apply(Statevector::basis_state(2, 3), {2, 1, 0}).amp(0) == cplx{1.0, 0.0});

  const int n = 3;
  for (std::uint64_t x = 0; x < 8; ++x) {
    const auto s = weyl_apply(Statevector::basis_state(n, x), {n, 0, 1});
    CHECK(std::abs(s.amp(x) - std::polar(1.0, 2 * std::numbers::pi * x / 8.0)) < 1e-14);
  }

  const auto in = random_state(3, 9);
  CHECK(max_amp_diff(weyl_apply(in, {3, 0, 0}), in) == 0.0);
  // adjoint inverts
  CHECK(max_amp_diff(weyl_apply_adjoint(weyl_apply(in, {3, 5, 6}), {3, 5, 6}), in) < 1e-14);

  // the phase is evaluated on the pre-shift value
  const auto combined = weyl_apply(Statevector::basis_state(2, 3), {2, 1, 1});
  CHECK(std::abs(combined.amp(0) - std::polar(1.0, 2 * std::numbers::pi * 3.0 / 4.0)) < 1e-14);
}

TEST_CASE("conjugating a weyl operator by the transform swaps its arguments") {
  double worst = 0;
  for (std::uint64_t r1 = 0; r1 < 8; ++r1)
    for (std::uint64_t r2 = 0; r2 < 8; ++r2)
      worst = std::max(worst, weyl_conjugation_check(3, r1, r2));
  CHECK(worst < 1e-10);
  CHECK(weyl_conjugation_check(4, 0, 0) < 1e-12);

  std::mt19937_64 rng(77);
  for (int i = 0; i < 50; ++i)
    CHECK(weyl_conjugation_check(6, rng() & 63, rng() & 63) < 1e-9);
}

TEST_CASE("uniform weyl group resolves the identity") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    CHECK(weyl_one_design_check(random_state(3, seed)) < 1e-9);
  }
  CHECK(weyl_one_design_check(random_state(4, 9)) < 1e-9);
}

TEST_CASE("wrapped exact transform is exact for every draw") {
  const int n = 5;
  const ReductionConfig cfg{n, n, 0, 0};
  const auto in = random_state(n, 31);
  const auto target = apply_fourier(in, exact_qft(n));
  std::mt19937_64 rng(123);
  for (int i = 0; i < 10; ++i) {
    const auto [out, v] = randomized_reduced_apply(in, cfg, rng);
    CHECK(max_amp_diff(out, target) < 1e-12);
  }
}

TEST_CASE("draws are reproducible from the seed") {
  const int n = 6;
  const ReductionConfig cfg{n, 2, 0, 0};
  const auto in = random_state(n, 5);
  std::mt19937_64 r1(999), r2(999);
  const auto [o1, v1] = randomized_reduced_apply(in, cfg, r1);
  const auto [o2, v2] = randomized_reduced_apply(in, cfg, r2);
  CHECK(v1.r1 == v2.r1);
  CHECK(v1.r2 == v2.r2);
  CHECK(max_amp_diff(o1, o2) == 0.0);
}

TEST_CASE("expected wrapped error equals the average transform error") {
  const int n = 6;
  const ReductionConfig cfg{n, 2, 0, 0};
  const double avg =
      frobenius_error_avg(optimistic_qft(n, 2),
                          [n](std::uint64_t x) { return reference_qft_state(n, x); })
          .avg_frobenius;

  std::vector<Statevector> inputs;
  inputs.push_back(Statevector::basis_state(n, (1u << n) - 1));
  inputs.push_back(Statevector::basis_state(n, 0));
  inputs.push_back(random_state(n, 51));
  inputs.push_back(random_state(n, 52));
  inputs.push_back(random_state(n, 53));
  for (const auto& in : inputs) {
    CHECK(std::abs(expected_error_exact(in, cfg) - avg) < 1e-9);
  }

  // exact circuit: zero for any input
  CHECK(expected_error_exact(random_state(4, 8), {4, 4, 0, 0}) < 1e-24);
}

TEST_CASE("monte-carlo wrapped error agrees with the exact expectation") {
  const int n = 6;
  ReductionConfig cfg{n, 2, 2000, 4242};
  const auto in = Statevector::basis_state(n, (1u << n) - 1);
  const double exact = expected_error_exact(in, cfg);
  const auto [mean, se] = expected_error_sampled(in, cfg);
  CHECK(std::abs(mean - exact) <= 4 * se);
  const auto again = expected_error_sampled(in, cfg);
  CHECK(again.first == mean);
}

TEST_CASE("purified wrapping") {
  const int n = 4;
  const auto psi = Statevector::basis_state(n, 15);

  // exact core: joint state is exactly uniform (x) transformed input
  {
    const auto joint = purified_apply(psi, {n, n, 0, 0});
    const auto target = apply_fourier(psi, exact_qft(n));
    const double k = 256.0;
    double dev = 0;
    for (std::uint64_t i = 0; i < 256; ++i)
      for (std::uint64_t x = 0; x < 16; ++x)
        dev = std::max(dev,
                       std::abs(joint.amp(i * 16 + x) - target.amp(x) / std::sqrt(k)));
    CHECK(dev < 1e-12);
  }

  // purified error equals the randomized expectation (nontrivial at m=1)
  for (int m : {1, 2}) {
    const ReductionConfig cfg{n, m, 0, 0};
    CHECK(std::abs(purified_error(psi, cfg) - expected_error_exact(psi, cfg)) < 1e-9);
  }

  // and is within the average-error budget of the wrapped circuit
  const double avg =
      frobenius_error_avg(optimistic_qft(n, 2),
                          [n](std::uint64_t x) { return reference_qft_state(n, x); })
          .avg_frobenius;
  CHECK(purified_error(psi, {n, 2, 0, 0}) <= avg + 1e-9);

  CHECK_THROWS_AS(purified_apply(random_state(6, 1), ReductionConfig{6, 2, 0, 0}),
                  ResourceLimitError);
}

TEST_CASE("controlled phase gradient diagonal") {
  // m = n is exact; check the diagonal on every index pair
  const int n = 5;
  const Circuit full = controlled_phase_gradient(n, n);
  for (std::uint64_t z : {std::uint64_t{3}, std::uint64_t{17}, std::uint64_t{31}}) {
    for (std::uint64_t x = 0; x < 32; ++x) {
      const auto s = apply_circuit(Statevector::basis_state(2 * n, (z << n) | x), full);
      const double want = 2 * std::numbers::pi * static_cast<double>(x * z % 32) / 32.0;
      CHECK(std::abs(s.amp((z << n) | x) - std::polar(1.0, want)) < 1e-12);
    }
  }
  CHECK(cpg_operator_norm_error(full, n) < 1e-12);

  // zero on either register leaves the phase at one
  const Circuit c42 = controlled_phase_gradient(4, 2);
  for (std::uint64_t x = 0; x < 16; ++x) {
    CHECK(std::abs(apply_circuit(Statevector::basis_state(8, x), c42).amp(x) - cplx{1.0, 0.0}) <
          1e-14);
    CHECK(std::abs(apply_circuit(Statevector::basis_state(8, x << 4), c42).amp(x << 4) -
                   cplx{1.0, 0.0}) < 1e-14);
  }
}

TEST_CASE("phase gradient truncation error and depth") {
  // gate-list route cross-checked against direct simulation of the diagonal
  const int n = 4;
  for (int m = 1; m <= n; ++m) {
    const Circuit c = controlled_phase_gradient(n, m);
    double sim = 0;
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
      const auto s = apply_circuit(Statevector::basis_state(2 * n, idx), c);
      const std::uint64_t x = idx & 15, z = idx >> 4;
      const cplx ideal = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(x * z % 16) / 16.0);
      sim = std::max(sim, std::abs(s.amp(idx) - ideal));
    }
    const double direct = cpg_operator_norm_error(c, n);
    CHECK(std::abs(sim - direct) < 1e-12);
    CHECK(direct <= 2 * std::numbers::pi * n * std::ldexp(1.0, -m));
    CHECK(depth(c) <= m + 1);
  }
}
