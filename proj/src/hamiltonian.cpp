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

#include "qfqs/hamiltonian.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qfqs {

PauliString::PauliString(unsigned n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  if (n_qubits > 64) throw std::invalid_argument("Pauli strings support at most 64 qubits");
  const std::uint64_t valid = n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
  if ((x_mask | z_mask) & ~valid) throw std::invalid_argument("Pauli mask exceeds qubit count");
}

PauliString PauliString::from_letters(std::string_view letters) {
  if (letters.empty()) throw std::invalid_argument("empty Pauli string");
  std::uint64_t x = 0, z = 0;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    switch (letters[k]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli letter '") + letters[k] + "'");
    }
  }
  return PauliString(static_cast<unsigned>(letters.size()), x, z);
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }

char PauliString::letter(unsigned qubit) const {
  const bool x = (x_ >> qubit) & 1;
  const bool z = (z_ >> qubit) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliString::letters() const {
  std::string out(n_qubits_, 'I');
  for (unsigned k = 0; k < n_qubits_; ++k) out[k] = letter(k);
  return out;
}

PauliSum::PauliSum(unsigned n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("PauliSum needs at least one qubit");
}

void PauliSum::add(double coefficient, const PauliString &string) {
  if (string.n_qubits() != n_qubits_) {
    throw std::invalid_argument("Pauli string length " + std::to_string(string.n_qubits()) +
                                " does not match " + std::to_string(n_qubits_));
  }
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->string == string) {
      it->coefficient += coefficient;
      if (it->coefficient == 0.0) terms_.erase(it);
      return;
    }
  }
  if (coefficient != 0.0) terms_.push_back({coefficient, string});
}

void PauliSum::add(double coefficient, std::string_view letters) {
  add(coefficient, PauliString::from_letters(letters));
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto &t : terms_) s += std::abs(t.coefficient);
  return s;
}

PauliSum ising_hamiltonian(unsigned n, double coupling, double field, bool periodic) {
  if (n < 2) throw std::invalid_argument("Ising chain needs n >= 2");
  PauliSum h(n);
  const unsigned bonds = periodic ? n : n - 1;
  for (unsigned i = 0; i < bonds; ++i) {
    const unsigned j = (i + 1) % n;
    h.add(coupling, PauliString(n, 0, (std::uint64_t{1} << i) | (std::uint64_t{1} << j)));
  }
  for (unsigned i = 0; i < n; ++i) h.add(field, PauliString(n, std::uint64_t{1} << i, 0));
  for (unsigned i = 0; i < n; ++i) h.add(field, PauliString(n, 0, std::uint64_t{1} << i));
  return h;
}

PauliSum parse_pauli_sum(std::string_view text) {
  std::vector<std::pair<double, PauliString>> parsed;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string coeff_text, letters, extra;
    if (!(fields >> coeff_text)) continue;
    auto fail = [&](const std::string &why) {
      return std::invalid_argument("line " + std::to_string(line_no) + ": " + why);
    };
    if (!(fields >> letters)) throw fail("expected '<coeff> <pauli string>'");
    if (fields >> extra) throw fail("unexpected token '" + extra + "'");
    double coeff = 0.0;
    const char *end = coeff_text.data() + coeff_text.size();
    auto [ptr, ec] = std::from_chars(coeff_text.data(), end, coeff);
    if (ec != std::errc() || ptr != end) throw fail("invalid coefficient '" + coeff_text + "'");
    try {
      parsed.emplace_back(coeff, PauliString::from_letters(letters));
    } catch (const std::invalid_argument &e) {
      throw fail(e.what());
    }
    if (parsed.back().second.n_qubits() != parsed.front().second.n_qubits()) {
      throw fail("string length " + std::to_string(letters.size()) + " differs from " +
                 std::to_string(parsed.front().second.n_qubits()));
    }
  }
  if (parsed.empty()) throw std::invalid_argument("no Pauli terms found");
  PauliSum h(parsed.front().second.n_qubits());
  for (const auto &[c, p] : parsed) h.add(c, p);
  return h;
}

PauliSum load_pauli_sum(const std::string &path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_pauli_sum(buf.str());
}

Eigen::MatrixXcd dense_matrix(const PauliSum &h) {
  if (h.n_qubits() > kMaxDenseQubits) {
    throw std::invalid_argument("dense matrices are limited to " + std::to_string(kMaxDenseQubits) +
                                " qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto &term : h.terms()) {
    const std::uint64_t x = term.string.x_mask();
    const std::uint64_t z = term.string.z_mask();
    const Complex phase = kIPow[term.string.y_count() % 4] * term.coefficient;
    // P|i> = i^{nY} (-1)^{|i & z|} |i ^ x>
    for (std::uint64_t i = 0; i < dim; ++i) {
      const Complex v = (std::popcount(i & z) & 1) ? -phase : phase;
      m(static_cast<Eigen::Index>(i ^ x), static_cast<Eigen::Index>(i)) += v;
    }
  }
  return m;
}

double ground_energy(const PauliSum &h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(h), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()[0];
}

DenseUnitary hermitian_exponential(const Eigen::MatrixXcd &h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const Eigen::VectorXd &w = solver.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases[k] = std::polar(1.0, -w[k] * t);
  const Eigen::MatrixXcd &v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

DenseUnitary time_evolution(const PauliSum &h, double t) {
  if (h.n_qubits() > kMaxEvolutionQubits) {
    throw std::invalid_argument("time evolution is limited to " +
                                std::to_string(kMaxEvolutionQubits) + " qubits");
  }
  return hermitian_exponential(dense_matrix(h), t);
}

DenseUnitary trotter_product(const PauliSum &h, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (h.n_qubits() > kMaxEvolutionQubits) throw std::invalid_argument("Trotter product size limit");
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd step = eye;
  for (const auto &term : h.terms()) {
    PauliSum single(h.n_qubits());
    single.add(1.0, term.string);
    const double angle = term.coefficient * t / steps;
    // P^2 = I
    const Eigen::MatrixXcd factor = std::cos(angle) * eye - Complex(0, std::sin(angle)) * dense_matrix(single);
    step = factor * step;
  }
  Eigen::MatrixXcd out = eye;
  for (int s = 0; s < steps; ++s) out = step * out;
  return out;
}

}  // namespace qfqs
