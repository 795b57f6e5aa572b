// Experiment harness: every construction and metric as a reproducible batch
// command. Machine output goes to files (--out), a short human summary to
// stdout, wall time to stderr. Identical (command, seed) pairs produce
// byte-identical files.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "oqsim/arith.hpp"
#include "oqsim/errmetrics.hpp"
#include "oqsim/qftlib.hpp"
#include "oqsim/reduction.hpp"

using namespace oqsim;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "oqsim 0.1.0";
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

// Wall time is reported on stderr only, so files and stdout are byte-stable
// across reruns of the same (command, seed).
struct RunRecord {
  std::string command;
  json config;
  json results;

  json to_json() const {
    json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config;
    j["results"] = results;
    return j;
  }
};

ColumnOracle reference_oracle(int n) {
  return [n](std::uint64_t x) { return reference_qft_state(n, x); };
}

double blocked_bound(int n, int m) {
  return 4.0 * std::numbers::pi * std::numbers::pi / 3.0 * ((n + m - 1) / m) *
         std::ldexp(1.0, -m);
}

// ---------------------------------------------------------------------------

int cmd_build(const std::string& variant, int n, int m, const std::string& out_path) {
  const QftVariant v = variant_from_name(variant);
  const Circuit c = build_qft(v, n, m);
  if (!out_path.empty()) write_file(out_path, export_text(c));
  std::cout << "variant=" << variant << " n=" << n << " m=" << m << " gates=" << c.size()
            << " depth=" << depth(c) << " locality=" << locality(c) << "\n";
  return 0;
}

int cmd_error_sweep(const std::string& variant, std::vector<int> ns, std::vector<int> ms,
                    const std::string& mode, int samples, std::uint64_t seed,
                    const std::string& out_path, const std::string& format, int jobs) {
  const QftVariant v = variant_from_name(variant);
  std::vector<std::pair<int, int>> grid;
  for (int n : ns)
    for (int m : ms)
      if (m <= n) grid.emplace_back(n, m);

  // points run concurrently; rows are emitted in grid order regardless
  std::vector<std::pair<double, double>> results(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) {
      const auto [n, m] = grid[i];
      const Circuit c = build_qft(v, n, m);
      if (mode == "exhaustive") {
        const auto rep = frobenius_error_avg(c, reference_oracle(n));
        results[i] = {rep.avg_frobenius, rep.per_state_max()};
      } else {
        results[i] = frobenius_error_sampled(c, reference_oracle(n), samples, seed);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::min<int>(jobs, static_cast<int>(grid.size())); ++j)
    pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  json rows = json::array();
  csv << "n,m,avg_error,bound,per_state_max\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [n, m] = grid[i];
    const auto [avg, per_state_max] = results[i];  // stderr column in sampled mode
    const bool has_bound = v == QftVariant::BlockedLinear;
    const double bound = blocked_bound(n, m);
    csv << n << ',' << m << ',' << fmt(avg) << ',' << (has_bound ? fmt(bound) : "") << ','
        << fmt(per_state_max) << "\n";
    json row;
    row["n"] = n;
    row["m"] = m;
    row["avg_error"] = avg;
    if (has_bound) row["bound"] = bound;
    row["per_state_max"] = per_state_max;
    rows.push_back(row);
    std::cout << "n=" << n << " m=" << m << " avg_error=" << fmt(avg) << "\n";
  }
  if (!out_path.empty())
    write_file(out_path, format == "json" ? rows.dump(2) + "\n" : csv.str());
  return 0;
}

int cmd_reduce(int n, int m, int samples, std::uint64_t seed, const std::string& input_spec,
               bool exact_expectation, const std::string& out_path) {
  Statevector input = input_spec == "ones"
                          ? Statevector::basis_state(n, (std::uint64_t{1} << n) - 1)
                          : Statevector::basis_state(n, std::stoull(input_spec));
  std::ostringstream csv;
  csv << "draw,r1,r2,error\n";
  const Circuit tilde = optimistic_qft(n, std::min(m, n));
  const Statevector target = apply_fourier(input, exact_qft(n));
  std::mt19937_64 rng(seed);
  const ReductionConfig cfg{n, m, samples, seed};
  double mean = 0;
  std::vector<double> errs(samples);
  for (int i = 0; i < samples; ++i) {
    const auto [out, v] = randomized_reduced_apply(input, cfg, rng);
    errs[i] = error_norm_sq(out, target);
    mean += errs[i];
    csv << i << ',' << v.r1 << ',' << v.r2 << ',' << fmt(errs[i]) << "\n";
  }
  mean /= samples;
  double var = 0;
  for (double e : errs) var += (e - mean) * (e - mean);
  const double se = samples > 1 ? std::sqrt(var / (samples - 1) / samples) : 0.0;

  RunRecord rec{"reduce", {}, {}};
  rec.config = {{"n", n}, {"m", m}, {"samples", samples}, {"seed", seed}, {"input", input_spec}};
  rec.results = {{"mean_error", mean}, {"stderr", se}};
  if (exact_expectation) rec.results["exact_expectation"] = expected_error_exact(input, cfg);
  if (!out_path.empty()) {
    write_file(out_path, csv.str());
    write_file(out_path + ".json", rec.to_json().dump(2) + "\n");
  }
  std::cout << "mean_error=" << fmt(mean) << " stderr=" << fmt(se);
  if (exact_expectation) std::cout << " exact=" << fmt(rec.results["exact_expectation"].get<double>());
  std::cout << "\n";
  return 0;
}

int cmd_purified(int n, int m, const std::string& input_spec, const std::string& out_path) {
  Statevector input = input_spec == "ones"
                          ? Statevector::basis_state(n, (std::uint64_t{1} << n) - 1)
                          : Statevector::basis_state(n, std::stoull(input_spec));
  const ReductionConfig cfg{n, m, 1, 0};
  const double pe = purified_error(input, cfg);
  const double ee = expected_error_exact(input, cfg);
  if (!out_path.empty()) {
    json j = {{"n", n}, {"m", m}, {"input", input_spec}, {"purified_error", pe},
              {"exact_expectation", ee}};
    write_file(out_path, j.dump(2) + "\n");
  }
  std::cout << "purified_error=" << fmt(pe) << " exact_expectation=" << fmt(ee)
            << " diff=" << fmt(std::abs(pe - ee)) << "\n";
  return 0;
}

int cmd_cpg(int n, int m, const std::string& out_path) {
  const Circuit c = controlled_phase_gradient(n, m);
  const double err = cpg_operator_norm_error(c, n);
  const double bound = 2 * std::numbers::pi * n * std::ldexp(1.0, -m);
  std::ostringstream csv;
  csv << "n,m,opnorm_error,bound,depth,gates\n"
      << n << ',' << m << ',' << fmt(err) << ',' << fmt(bound) << ',' << depth(c) << ','
      << c.size() << "\n";
  if (!out_path.empty()) write_file(out_path, csv.str());
  std::cout << "opnorm_error=" << fmt(err) << " bound=" << fmt(bound) << " depth=" << depth(c)
            << "\n";
  return 0;
}

int cmd_commutation(std::vector<int> ms, const std::string& out_path) {
  std::ostringstream csv;
  csv << "m,gap,gap_per_dim\n";
  for (int m : ms) {
    const double g = commutation_gap(m);
    csv << m << ',' << fmt(g) << ',' << fmt(g / std::ldexp(1.0, 2 * m)) << "\n";
    std::cout << "m=" << m << " gap=" << fmt(g) << "\n";
  }
  if (!out_path.empty()) write_file(out_path, csv.str());
  return 0;
}

int cmd_qpe_profile(int m, std::uint64_t x, double frac, const std::string& out_path) {
  const auto alpha = qpe_wraparound_profile(m, x, frac);
  std::ostringstream csv;
  csv << "xprime,re,im,prob,lee\n";
  for (std::uint64_t xp = 0; xp < alpha.size(); ++xp)
    csv << xp << ',' << fmt(alpha[xp].real()) << ',' << fmt(alpha[xp].imag()) << ','
        << fmt(std::norm(alpha[xp])) << ','
        << lee_distance(static_cast<std::int64_t>(xp) - static_cast<std::int64_t>(x), m) << "\n";
  if (!out_path.empty()) write_file(out_path, csv.str());
  std::uint64_t argmax = 0;
  for (std::uint64_t xp = 1; xp < alpha.size(); ++xp)
    if (std::norm(alpha[xp]) > std::norm(alpha[argmax])) argmax = xp;
  std::cout << "peak=" << argmax << " peak_prob=" << fmt(std::norm(alpha[argmax])) << "\n";
  return 0;
}

int cmd_adder(int n, std::vector<int> ks, int samples, std::uint64_t seed,
              const std::string& out_path) {
  std::ostringstream csv;
  csv << "n,k,avg_error,bound\n";
  for (int k : ks) {
    if (k > n) continue;
    const double e = 2 * n <= 24 ? adder_avg_error(n, k) : adder_avg_error_sampled(n, k, samples, seed);
    csv << n << ',' << k << ',' << fmt(e) << ',' << fmt(2.0 * (n - k) * std::ldexp(1.0, -(k + 1)))
        << "\n";
    std::cout << "k=" << k << " avg_error=" << fmt(e) << "\n";
  }
  if (!out_path.empty()) write_file(out_path, csv.str());
  return 0;
}

int cmd_factor(std::uint64_t N, std::uint64_t g, int t, int m, const std::string& variant,
               int trials, std::uint64_t seed, std::uint64_t r_rand, const std::string& out_prefix) {
  FactoringConfig cfg;
  cfg.N = N;
  cfg.g = g;
  cfg.t = t;
  cfg.m = m;
  cfg.variant = variant_from_name(variant);
  if (r_rand) cfg.r_rand = r_rand;
  const auto res = period_finding_experiment(cfg, trials, seed);

  FactoringConfig base = cfg;
  base.variant = QftVariant::Exact;
  const auto baseline = period_finding_experiment(base, 0, seed);

  std::string hist_path;
  if (!out_prefix.empty()) {
    hist_path = out_prefix + "_hist.csv";
    std::ostringstream csv;
    csv << "outcome,probability,sampled\n";
    for (std::uint64_t o = 0; o < res.distribution.size(); ++o) {
      const auto it = res.histogram.find(o);
      if (res.distribution[o] == 0.0 && it == res.histogram.end()) continue;
      csv << o << ',' << fmt(res.distribution[o]) << ','
          << (it == res.histogram.end() ? 0 : it->second) << "\n";
    }
    write_file(hist_path, csv.str());
    json j;
    j["p_success"] = res.p_success;
    j["p0_baseline"] = baseline.p_success;
    j["histogram_csv_path"] = hist_path;
    j["config"] = {{"N", N}, {"g", g}, {"t", t}, {"m", m}, {"variant", variant},
                   {"trials", trials}, {"seed", seed}, {"r_rand", r_rand}};
    j["total_qubits"] = res.total_qubits;
    write_file(out_prefix + ".json", j.dump(2) + "\n");
  }
  std::cout << "p_success=" << fmt(res.p_success) << " p0_baseline=" << fmt(baseline.p_success)
            << " qubits=" << res.total_qubits << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimistic-circuit simulation harness"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string variant = "exact", mode = "exhaustive", format = "csv", out, input_spec = "ones";
  int n = 4, m = 1, samples = 200, trials = 0, t = 0, jobs = 1;
  std::uint64_t seed = 0, N = 15, g = 7, x = 0, r_rand = 0;
  double frac = 0.0;
  std::vector<int> ns, ms, ks;

  auto* build = app.add_subcommand("build", "construct a circuit and write the text format");
  build->add_option("--variant", variant)->required();
  build->add_option("--n", n)->required()->check(CLI::Range(1, 24));
  build->add_option("--m", m)->check(CLI::Range(1, 24));
  build->add_option("--out", out);

  auto* sweep = app.add_subcommand("error-sweep", "average error over an (n, m) grid");
  sweep->add_option("--variant", variant)->required();
  sweep->add_option("--n", ns);  // empty grid produces a header-only table
  sweep->add_option("--m", ms);
  sweep->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  sweep->add_option("--samples", samples);
  sweep->add_option("--seed", seed);
  sweep->add_option("--out", out);
  sweep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--jobs", jobs);

  auto* reduce = app.add_subcommand("reduce", "randomized wrapping of the log-depth transform");
  reduce->add_option("--n", n)->required();
  reduce->add_option("--m", m)->required();
  reduce->add_option("--samples", samples);
  reduce->add_option("--seed", seed)->required();
  reduce->add_option("--input", input_spec);
  auto* exact_flag = reduce->add_flag("--exact-expectation");
  reduce->add_option("--out", out);

  auto* purified = app.add_subcommand("purified", "derandomized wrapping on the joint register");
  purified->add_option("--n", n)->required();
  purified->add_option("--m", m)->required();
  purified->add_option("--input", input_spec);
  purified->add_option("--out", out);

  auto* cpg = app.add_subcommand("cpg", "controlled phase gradient diagonal check");
  cpg->add_option("--n", n)->required();
  cpg->add_option("--m", m)->required();
  cpg->add_option("--out", out);

  auto* comm = app.add_subcommand("commutation", "gate-order Frobenius gap");
  comm->add_option("--m", ms)->required();
  comm->add_option("--out", out);

  auto* qpe = app.add_subcommand("qpe-profile", "phase-estimation amplitude profile");
  qpe->add_option("--m", m)->required();
  qpe->add_option("--x", x)->required();
  qpe->add_option("--frac", frac);  // [0, 1), validated by the library
  qpe->add_option("--out", out);

  auto* adder = app.add_subcommand("adder", "carry-cutoff adder error sweep");
  adder->add_option("--n", n)->required();
  adder->add_option("--k", ks)->required();
  adder->add_option("--samples", samples);
  auto* adder_seed = adder->add_option("--seed", seed);
  adder->add_option("--out", out);

  auto* factor = app.add_subcommand("factor", "period-finding experiment");
  factor->add_option("--N", N)->required();
  factor->add_option("--g", g)->required();
  factor->add_option("--t", t);
  factor->add_option("--m", m);
  factor->add_option("--variant", variant);
  factor->add_option("--trials", trials);
  factor->add_option("--seed", seed)->required();
  factor->add_option("--r-rand", r_rand);
  factor->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help / --version
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (build->parsed()) rc = cmd_build(variant, n, m, out);
    else if (sweep->parsed()) {
      if (mode == "sampled" && sweep->count("--seed") == 0) {
        std::cerr << "--seed is required in sampled mode\n";
        return kExitUsage;
      }
      rc = cmd_error_sweep(variant, ns, ms, mode, samples, seed, out, format, jobs);
    } else if (reduce->parsed()) rc = cmd_reduce(n, m, samples, seed, input_spec,
                                                 exact_flag->count() > 0, out);
    else if (purified->parsed()) rc = cmd_purified(n, m, input_spec, out);
    else if (cpg->parsed()) rc = cmd_cpg(n, m, out);
    else if (comm->parsed()) rc = cmd_commutation(ms, out);
    else if (qpe->parsed()) rc = cmd_qpe_profile(m, x, frac, out);
    else if (adder->parsed()) {
      if (2 * n > 24 && adder_seed->count() == 0) {
        std::cerr << "--seed is required for the sampled regime (2n > 24)\n";
        return kExitUsage;
      }
      rc = cmd_adder(n, ks, samples, seed, out);
    }
    else if (factor->parsed()) rc = cmd_factor(N, g, t, m, variant, trials, seed, r_rand, out);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "wall_time_s=%.3f\n", wall);
  return rc;
}
