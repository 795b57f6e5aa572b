#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oqsim/circuit.hpp"
#include "oqsim/statevec.hpp"

namespace oqsim {

/// Thrown when a requested computation exceeds the desk-scale limits
/// (exhaustive metrics cap at n = 14, commutation gap at m = 5, ...).
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ColumnOracle = std::function<Statevector(std::uint64_t)>;

ColumnOracle column_oracle(const Circuit& c);

struct ErrorReport {
  int n = 0;
  int m = -1;                     // block size context, -1 if not applicable
  double avg_frobenius = 0.0;     // (1/2^n) sum_x per_state[x]
  std::vector<double> per_state;  // squared error norm per basis index
  std::optional<double> bound;    // analytic bound when applicable
  std::string config;

  double per_state_max() const;
};

struct SubspaceReport {
  std::vector<std::uint64_t> states;
  double mu = 0.0;         // mean per-state error over the subspace
  double epsilon = 0.0;    // exhaustive average over the full space
  double dim_bound = 0.0;  // 2^n * epsilon / mu
};

/// Exhaustive average squared error over all computational basis columns.
/// Capped at n <= 14.
ErrorReport frobenius_error_avg(const ColumnOracle& test, const ColumnOracle& reference, int n);
ErrorReport frobenius_error_avg(const Circuit& test, const ColumnOracle& reference);

/// Monte-Carlo estimator over uniform basis columns; returns (mean, stderr).
/// Deterministic for a fixed seed.
std::pair<double, double> frobenius_error_sampled(const Circuit& test, const ColumnOracle& reference,
                                                  int samples, std::uint64_t seed);

SubspaceReport subspace_error(const Circuit& test, const ColumnOracle& reference,
                              const std::vector<std::uint64_t>& states);

/// Circular distance on residues mod 2^m: min(z mod 2^m, -z mod 2^m).
std::int64_t lee_distance(std::int64_t z, int m);

/// Amplitudes alpha_{X'} obtained by preparing sum_Y exp(2*pi*i (X+frac) Y / 2^m)|Y>
/// (normalized) and running the inverse m-qubit QFT. alpha is indexed by X'.
std::vector<cplx> qpe_wraparound_profile(int m, std::uint64_t X, double frac);

/// Frobenius norm squared of W - W' on 3m qubits, where W is
/// [coupling(lo,mid); QFT(mid); coupling(mid,hi); QFT^-1(mid)] and W' moves the
/// first coupling to the end. Exhaustive over all 2^{3m} basis states,
/// evaluated blockwise (the outer blocks only contribute diagonal phases).
double commutation_gap(int m);

/// Same quantity by brute-force 3m-qubit simulation (test oracle; m <= 4).
double commutation_gap_bruteforce(int m);

/// Advisory flag for reports: some even-indexed m-bit block of x lies within
/// Lee distance 1 of the wrap boundary.
bool bad_state_predicate(std::uint64_t x, int n, int m);

/// CSV: header `x,error,bad`, one row per basis state.
void write_error_csv(const ErrorReport& r, std::ostream& out);
/// Line-oriented records: `key value` pairs followed by per-state lines.
void write_error_records(const ErrorReport& r, std::ostream& out);

}  // namespace oqsim
