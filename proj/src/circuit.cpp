#include "oqsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace oqsim {

double DyadicPhase::radians() const {
  return 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(num), -exp);
}

Circuit::Circuit(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("circuit needs at least one qubit");
}

void Circuit::append(const Gate& g) {
  if (g.q0 < 0 || g.q0 >= n_) throw std::out_of_range("gate qubit out of range");
  if (g.two_qubit()) {
    if (g.q1 < 0 || g.q1 >= n_) throw std::out_of_range("gate qubit out of range");
    if (g.q0 == g.q1) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  }
  gates_.push_back(g);
}

void Circuit::append(const Circuit& other) {
  if (other.n_ != n_) throw std::invalid_argument("qubit count mismatch");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

int depth(const Circuit& c) {
  std::vector<int> busy(c.num_qubits(), 0);
  int layers = 0;
  for (const Gate& g : c.gates()) {
    int at = busy[g.q0];
    if (g.two_qubit()) at = std::max(at, busy[g.q1]);
    ++at;
    busy[g.q0] = at;
    if (g.two_qubit()) busy[g.q1] = at;
    layers = std::max(layers, at);
  }
  return layers;
}

int locality(const Circuit& c) {
  int r = 0;
  for (const Gate& g : c.gates())
    if (g.two_qubit()) r = std::max(r, std::abs(g.q1 - g.q0));
  return r;
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.num_qubits());
  const auto& gs = c.gates();
  for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::Phase || g.kind == GateKind::CPhase) g.phase = g.phase.negated();
    out.append(g);
  }
  return out;
}

Circuit block_phase_rotation(int n, int lo_begin, int lo_end, int hi_begin, int hi_end,
                             int denom_exp) {
  if (lo_begin >= lo_end || hi_begin >= hi_end) throw std::invalid_argument("empty block");
  if (std::max(lo_begin, hi_begin) < std::min(lo_end, hi_end))
    throw std::invalid_argument("blocks overlap");
  const int wl = lo_end - lo_begin;
  const int wh = hi_end - hi_begin;
  Circuit c(n);
  // Bands (a+b) mod max(wl,wh) are vertex-disjoint, keeping the greedy depth
  // at max(wl,wh) layers.
  const int bands = std::max(wl, wh);
  for (int t = 0; t < bands; ++t) {
    for (int a = 0; a < wl; ++a) {
      const int b = (t - a + 2 * bands) % bands;
      if (b >= wh) continue;
      const int e = denom_exp - a - b;
      if (e <= 0) continue;  // angle is a multiple of 2*pi
      c.append(Gate::cphase(hi_begin + b, lo_begin + a, {1, e}));
    }
  }
  return c;
}

namespace {

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::Phase: return "P";
    case GateKind::CPhase: return "CP";
    case GateKind::Swap: return "SWAP";
    case GateKind::X: return "X";
  }
  return "?";
}

}  // namespace

std::string export_text(const Circuit& c) {
  std::ostringstream out;
  out << "QUBITS " << c.num_qubits() << "\n";
  for (const Gate& g : c.gates()) {
    out << kind_name(g.kind) << ' ' << g.q0;
    if (g.two_qubit()) out << ',' << g.q1;
    if (g.kind == GateKind::Phase || g.kind == GateKind::CPhase)
      out << ' ' << g.phase.num << '/' << g.phase.exp;
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::pair<int, int> parse_qubits(const std::string& tok, bool two, int lineno) {
  const auto comma = tok.find(',');
  if (two != (comma != std::string::npos))
    throw ParseError(lineno, two ? "expected two qubits" : "expected one qubit");
  try {
    if (!two) return {std::stoi(tok), -1};
    return {std::stoi(tok.substr(0, comma)), std::stoi(tok.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError(lineno, "bad qubit index '" + tok + "'");
  }
}

DyadicPhase parse_phase(const std::string& tok, int lineno) {
  const auto slash = tok.find('/');
  if (slash == std::string::npos) throw ParseError(lineno, "expected phase k/e");
  try {
    const long long k = std::stoll(tok.substr(0, slash));
    const int e = std::stoi(tok.substr(slash + 1));
    if (e < 0 || e > 62) throw ParseError(lineno, "phase exponent out of range");
    return {k, e};
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(lineno, "bad phase '" + tok + "'");
  }
}

}  // namespace

Circuit parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::pair<int, std::vector<std::string>>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (n < 0) {
      if (toks.size() != 2 || toks[0] != "QUBITS") throw ParseError(lineno, "expected QUBITS n");
      try {
        n = std::stoi(toks[1]);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad qubit count");
      }
      if (n < 1) throw ParseError(lineno, "qubit count must be positive");
      continue;
    }
    rows.emplace_back(lineno, std::move(toks));
  }
  if (n < 0) throw ParseError(lineno, "missing QUBITS header");

  Circuit c(n);
  for (auto& [ln, toks] : rows) {
    const std::string& name = toks[0];
    try {
      if (name == "H" || name == "X") {
        if (toks.size() != 2) throw ParseError(ln, "expected one operand");
        auto [q, _] = parse_qubits(toks[1], false, ln);
        c.append(name == "H" ? Gate::h(q) : Gate::x(q));
      } else if (name == "P") {
        if (toks.size() != 3) throw ParseError(ln, "expected qubit and phase");
        auto [q, _] = parse_qubits(toks[1], false, ln);
        c.append(Gate::phase_gate(q, parse_phase(toks[2], ln)));
      } else if (name == "CP") {
        if (toks.size() != 3) throw ParseError(ln, "expected qubits and phase");
        auto [a, b] = parse_qubits(toks[1], true, ln);
        c.append(Gate::cphase(a, b, parse_phase(toks[2], ln)));
      } else if (name == "SWAP") {
        if (toks.size() != 2) throw ParseError(ln, "expected qubit pair");
        auto [a, b] = parse_qubits(toks[1], true, ln);
        c.append(Gate::swap(a, b));
      } else {
        throw ParseError(ln, "unknown gate '" + name + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(ln, e.what());
    }
  }
  return c;
}

}  // namespace oqsim
