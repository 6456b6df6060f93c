// Copyright 2026 The qfqs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfqs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qfqs {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void fixed1(Circuit &c, GateKind kind, unsigned q, double angle) { c.add_gate(make_fixed(kind, {q}, angle)); }

// Appends the CNOT/RZ/RY form of a controlled R(q) with the control phase.
void expand_controlled(Circuit &c, unsigned control, unsigned target, const Quaternion &q, double theta,
                       bool negative) {
  const ControlledAngles ang = decompose_controlled(q, theta);
  if (negative) {
    fixed1(c, GateKind::kFixedRz, control, kPi);
    fixed1(c, GateKind::kFixedRy, control, kPi);
  }
  fixed1(c, GateKind::kFixedRz, target, (ang.beta - ang.delta) / 2.0);
  c.add_gate(make_fixed(GateKind::kFixedCNOT, {control, target}));
  fixed1(c, GateKind::kFixedRz, target, -(ang.beta + ang.delta) / 2.0);
  fixed1(c, GateKind::kFixedRy, target, -ang.gamma / 2.0);
  c.add_gate(make_fixed(GateKind::kFixedCNOT, {control, target}));
  fixed1(c, GateKind::kFixedRy, target, ang.gamma / 2.0);
  fixed1(c, GateKind::kFixedRz, target, ang.delta);
  if (negative) {
    fixed1(c, GateKind::kFixedRy, control, -kPi);
    fixed1(c, GateKind::kFixedRz, control, -kPi);
  }
  if (ang.theta != 0.0) fixed1(c, GateKind::kFixedRz, control, ang.theta);
}

std::string unit_kind_word(UnitKind kind) {
  switch (kind) {
    case UnitKind::kSingle: return "single";
    case UnitKind::kControlled: return "controlled";
    case UnitKind::kPair: return "pair";
  }
  return "?";
}

double parse_number(const std::string &token, int line_no) {
  double v = 0.0;
  const char *first = token.data();
  const char *last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + token + "'");
  }
  return v;
}

unsigned long parse_index(const std::string &token, int line_no) {
  unsigned long v = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad index '" + token + "'");
  }
  return v;
}

}  // namespace

void write_trajectory_csv(std::ostream &out, const Trajectory &trajectory) {
  out << "sweep,unit,cost,evaluations\n";
  for (const auto &r : trajectory.records) {
    out << r.sweep << ',' << r.unit << ',' << num(r.cost) << ',' << r.evaluations << '\n';
  }
}

void export_trajectory(const Trajectory &trajectory, const std::string &path) {
  auto out = open_out(path);
  write_trajectory_csv(out, trajectory);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Circuit expand_circuit(const Circuit &circuit) {
  Circuit out(circuit.n_qubits);
  for (const auto &g : circuit.gates) {
    switch (g.kind) {
      case GateKind::kSingle: {
        const ControlledAngles ang = decompose_controlled(g.params);
        fixed1(out, GateKind::kFixedRz, g.qubits[0], ang.beta);
        fixed1(out, GateKind::kFixedRy, g.qubits[0], ang.gamma);
        fixed1(out, GateKind::kFixedRz, g.qubits[0], ang.delta);
        break;
      }
      case GateKind::kControlled:
      case GateKind::kNegControlled:
        expand_controlled(out, g.qubits[0], g.qubits[1], g.params, g.angle, g.kind == GateKind::kNegControlled);
        break;
      case GateKind::kNumberPreserving:
        out.add_gate(make_fixed(GateKind::kFixedCNOT, {g.qubits[1], g.qubits[0]}));
        expand_controlled(out, g.qubits[0], g.qubits[1], g.params, 0.0, false);
        out.add_gate(make_fixed(GateKind::kFixedCNOT, {g.qubits[1], g.qubits[0]}));
        break;
      default:
        out.add_gate(make_fixed(g.kind, g.qubits, g.angle));
        break;
    }
  }
  return out;
}

void write_circuit(std::ostream &out, const Circuit &circuit, bool expand) {
  if (expand) {
    write_circuit(out, expand_circuit(circuit), false);
    return;
  }
  out << "QUBITS " << circuit.n_qubits << '\n';
  for (const auto &g : circuit.gates) {
    const auto &q = g.qubits;
    const char *fixed = g.trainable ? "" : " fixed";
    switch (g.kind) {
      case GateKind::kSingle:
        out << "R " << q[0] << ' ' << num(g.params.i) << ' ' << num(g.params.x) << ' ' << num(g.params.y) << ' '
            << num(g.params.z) << fixed << '\n';
        break;
      case GateKind::kControlled:
      case GateKind::kNegControlled: {
        const ControlledAngles a = decompose_controlled(g.params, g.angle);
        out << (g.kind == GateKind::kControlled ? "CU " : "NCU ") << q[0] << ' ' << q[1] << ' ' << num(a.beta) << ' '
            << num(a.gamma) << ' ' << num(a.delta) << ' ' << num(a.theta) << fixed << '\n';
        break;
      }
      case GateKind::kNumberPreserving:
        out << "NP " << q[0] << ' ' << q[1] << ' ' << num(g.params.i) << ' ' << num(g.params.x) << ' '
            << num(g.params.y) << ' ' << num(g.params.z) << fixed << '\n';
        break;
      case GateKind::kFixedCZ: out << "CZ " << q[0] << ' ' << q[1] << '\n'; break;
      case GateKind::kFixedNegCZ: out << "NCZ " << q[0] << ' ' << q[1] << '\n'; break;
      case GateKind::kFixedCNOT: out << "CNOT " << q[0] << ' ' << q[1] << '\n'; break;
      case GateKind::kFixedH: out << "H " << q[0] << '\n'; break;
      case GateKind::kFixedRz: out << "RZ " << q[0] << ' ' << num(g.angle) << '\n'; break;
      case GateKind::kFixedRy: out << "RY " << q[0] << ' ' << num(g.angle) << '\n'; break;
    }
  }
  for (const auto &u : circuit.units) {
    out << "UNIT " << unit_kind_word(u.kind);
    for (std::size_t g : u.gates) out << ' ' << g;
    out << '\n';
  }
  if (!circuit.schedule.empty()) {
    out << "SCHEDULE";
    for (std::size_t s : circuit.schedule) out << ' ' << s;
    out << '\n';
  }
}

std::string circuit_to_string(const Circuit &circuit, bool expand) {
  std::ostringstream out;
  write_circuit(out, circuit, expand);
  return out.str();
}

void export_circuit(const Circuit &circuit, const std::string &path, bool expand) {
  auto out = open_out(path);
  write_circuit(out, circuit, expand);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Circuit parse_circuit(const std::string &text) {
  static const std::map<std::string, GateKind> kFixedWords = {
      {"CZ", GateKind::kFixedCZ}, {"NCZ", GateKind::kFixedNegCZ}, {"CNOT", GateKind::kFixedCNOT},
      {"H", GateKind::kFixedH},   {"RZ", GateKind::kFixedRz},     {"RY", GateKind::kFixedRy}};
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_qubits = false;
  bool have_units = false;
  bool have_schedule = false;
  Circuit c;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const std::string &word = tok[0];
    auto need = [&](std::size_t count) {
      if (tok.size() != count) throw std::invalid_argument(where + word + " expects " + std::to_string(count - 1) + " fields");
    };
    auto qubit = [&](std::size_t k) { return static_cast<unsigned>(parse_index(tok[k], line_no)); };
    auto number = [&](std::size_t k) { return parse_number(tok[k], line_no); };
    if (word == "QUBITS") {
      need(2);
      if (have_qubits) throw std::invalid_argument(where + "duplicate QUBITS");
      c = Circuit(qubit(1));
      have_qubits = true;
      continue;
    }
    if (!have_qubits) throw std::invalid_argument(where + "QUBITS must come first");
    try {
      if (word == "R" || word == "NP") {
        const std::size_t base = word == "R" ? 2 : 3;
        bool trainable = true;
        if (tok.size() == base + 5 && tok.back() == "fixed") {
          trainable = false;
        } else {
          need(base + 4);
        }
        const Quaternion q(number(base), number(base + 1), number(base + 2), number(base + 3));
        c.add_gate(word == "R" ? make_single(qubit(1), q, trainable) : make_number_preserving(qubit(1), qubit(2), q, trainable));
      } else if (word == "CU" || word == "NCU") {
        bool trainable = true;
        if (tok.size() == 8 && tok.back() == "fixed") {
          trainable = false;
        } else {
          need(7);
        }
        GateInstance g = make_controlled(qubit(1), qubit(2), quaternion_from_angles(number(3), number(4), number(5)),
                                         trainable, word == "CU" ? Polarity::kControlOnOne : Polarity::kControlOnZero);
        g.angle = number(6);
        c.add_gate(std::move(g));
      } else if (auto it = kFixedWords.find(word); it != kFixedWords.end()) {
        const int arity = gate_arity(it->second);
        const bool angled = it->second == GateKind::kFixedRz || it->second == GateKind::kFixedRy;
        need(1 + static_cast<std::size_t>(arity) + (angled ? 1 : 0));
        if (arity == 1) {
          c.add_gate(make_fixed(it->second, {qubit(1)}, angled ? number(2) : 0.0));
        } else {
          c.add_gate(make_fixed(it->second, {qubit(1), qubit(2)}));
        }
      } else if (word == "UNIT") {
        if (tok.size() < 3) throw std::invalid_argument(where + "UNIT needs a kind and gates");
        UpdateUnit u;
        if (tok[1] == "single") {
          u.kind = UnitKind::kSingle;
        } else if (tok[1] == "controlled") {
          u.kind = UnitKind::kControlled;
        } else if (tok[1] == "pair") {
          u.kind = UnitKind::kPair;
        } else {
          throw std::invalid_argument(where + "unknown unit kind '" + tok[1] + "'");
        }
        for (std::size_t k = 2; k < tok.size(); ++k) u.gates.push_back(parse_index(tok[k], line_no));
        c.units.push_back(std::move(u));
        have_units = true;
      } else if (word == "SCHEDULE") {
        if (have_schedule) throw std::invalid_argument(where + "duplicate SCHEDULE");
        for (std::size_t k = 1; k < tok.size(); ++k) c.schedule.push_back(parse_index(tok[k], line_no));
        have_schedule = true;
      } else {
        throw std::invalid_argument(where + "unknown keyword '" + word + "'");
      }
    } catch (const std::invalid_argument &e) {
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw std::invalid_argument(where + msg);
    } catch (const std::out_of_range &e) {
      throw std::invalid_argument(where + e.what());
    }
  }
  if (!have_qubits) throw std::invalid_argument("circuit text has no QUBITS line");
  if (!have_units) {
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
      const GateInstance &gate = c.gates[g];
      if (!gate.trainable) continue;
      if (gate.kind == GateKind::kNegControlled) {
        throw std::invalid_argument("trainable NCU gates need an explicit UNIT pair line");
      }
      c.units.push_back({gate.kind == GateKind::kSingle ? UnitKind::kSingle : UnitKind::kControlled, {g}, -1});
    }
  }
  if (!have_schedule) c.schedule = ascending_schedule(c);
  for (std::size_t s : c.schedule) {
    if (s >= c.units.size()) throw std::invalid_argument("SCHEDULE references a missing unit");
  }
  c.validate();
  return c;
}

Circuit import_circuit(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

}  // namespace qfqs
