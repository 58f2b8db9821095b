// Copyright 2026 The shadowsr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "shadowsr/pauli.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "shadowsr/errors.hpp"

namespace shadowsr {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex phase_from_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

// Letter and i-power of the single-qubit product a*b.
std::pair<Pauli, int> letter_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const auto letter = static_cast<Pauli>(ia ^ ib);
  // Cyclic order X -> Y -> Z -> X gives +i.
  const int k = ((ib - ia) % 3 + 3) % 3 == 1 ? 1 : 3;
  return {letter, k};
}

}  // namespace

char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

char to_char(Basis b) { return "XYZ"[static_cast<int>(b)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw ParseError(std::string("invalid Pauli letter '") + c + "'");
  }
}

Basis basis_from_char(char c) {
  switch (c) {
    case 'X':
      return Basis::X;
    case 'Y':
      return Basis::Y;
    case 'Z':
      return Basis::Z;
    default:
      throw ParseError(std::string("invalid basis letter '") + c + "'");
  }
}

Pauli to_pauli(Basis b) {
  switch (b) {
    case Basis::X:
      return Pauli::X;
    case Basis::Y:
      return Pauli::Y;
    case Basis::Z:
      return Pauli::Z;
  }
  return Pauli::Z;
}

Matrix2 pauli_matrix(Pauli p) {
  Matrix2 m;
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << 0, -kI, kI, 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(int num_qubits) {
  if (num_qubits < 1) throw DimensionError("PauliString needs >= 1 qubit");
  letters_.assign(static_cast<std::size_t>(num_qubits), Pauli::I);
}

PauliString::PauliString(std::vector<Pauli> letters, int phase_power)
    : letters_(std::move(letters)), phase_power_(((phase_power % 4) + 4) % 4) {
  if (letters_.empty()) throw DimensionError("PauliString needs >= 1 qubit");
}

PauliString PauliString::parse(std::string_view text) {
  std::string_view rest = text;
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);

  int power = 0;
  const auto space = rest.find(' ');
  if (space != std::string_view::npos) {
    const std::string_view prefix = rest.substr(0, space);
    if (prefix == "+1" || prefix == "1" || prefix == "+") {
      power = 0;
    } else if (prefix == "-1" || prefix == "-") {
      power = 2;
    } else if (prefix == "+i" || prefix == "i") {
      power = 1;
    } else if (prefix == "-i") {
      power = 3;
    } else {
      throw ParseError("invalid Pauli phase prefix '" + std::string(prefix) +
                       "'");
    }
    rest.remove_prefix(space);
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  }
  if (rest.empty()) throw ParseError("empty Pauli string");

  std::vector<Pauli> letters(rest.size());
  // Leftmost character is the most significant qubit.
  for (std::size_t i = 0; i < rest.size(); ++i) {
    letters[rest.size() - 1 - i] = pauli_from_char(rest[i]);
  }
  return PauliString(std::move(letters), power);
}

PauliString PauliString::single(int num_qubits, int qubit, Pauli p) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw DimensionError("qubit index out of range");
  }
  PauliString s(num_qubits);
  s.letters_[static_cast<std::size_t>(qubit)] = p;
  return s;
}

Complex PauliString::phase() const { return phase_from_power(phase_power_); }

int PauliString::weight() const {
  return static_cast<int>(std::count_if(letters_.begin(), letters_.end(),
                                        [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliString::letter_string() const {
  std::string out(letters_.size(), 'I');
  for (std::size_t j = 0; j < letters_.size(); ++j) {
    out[letters_.size() - 1 - j] = to_char(letters_[j]);
  }
  return out;
}

std::string PauliString::to_string() const {
  static constexpr const char* kPrefix[] = {"+1", "+i", "-1", "-i"};
  return std::string(kPrefix[phase_power_]) + " " + letter_string();
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("multiply: qubit counts differ");
  }
  std::vector<Pauli> letters(a.letters().size());
  int power = a.phase_power() + b.phase_power();
  for (std::size_t j = 0; j < letters.size(); ++j) {
    const auto [letter, k] = letter_product(a.letters()[j], b.letters()[j]);
    letters[j] = letter;
    power += k;
  }
  return PauliString(std::move(letters), power);
}

bool qwc_commutes(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("qwc_commutes: qubit counts differ");
  }
  for (std::size_t j = 0; j < a.letters().size(); ++j) {
    const Pauli pa = a.letters()[j];
    const Pauli pb = b.letters()[j];
    if (pa != Pauli::I && pb != Pauli::I && pa != pb) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// WeightedPauliSum

WeightedPauliSum::WeightedPauliSum(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw DimensionError("observable needs >= 1 qubit");
}

WeightedPauliSum::WeightedPauliSum(int num_qubits,
                                   const std::vector<Term>& terms)
    : WeightedPauliSum(num_qubits) {
  canonicalize(terms);
}

WeightedPauliSum WeightedPauliSum::identity(int num_qubits,
                                            Complex coefficient) {
  return WeightedPauliSum(num_qubits, {{coefficient, PauliString(num_qubits)}});
}

WeightedPauliSum WeightedPauliSum::from_string(const PauliString& s,
                                               Complex coefficient) {
  return WeightedPauliSum(s.num_qubits(), {{coefficient, s}});
}

void WeightedPauliSum::canonicalize(const std::vector<Term>& raw) {
  std::map<std::vector<Pauli>, Complex> merged;
  for (const auto& t : terms_) merged[t.string.letters()] += t.coefficient;
  for (const auto& t : raw) {
    if (t.string.num_qubits() != num_qubits_) {
      throw DimensionError("observable term has wrong qubit count");
    }
    merged[t.string.letters()] += t.coefficient * t.string.phase();
  }
  terms_.clear();
  for (auto& [letters, c] : merged) {
    if (std::abs(c) < kDropTolerance) continue;
    terms_.push_back({c, PauliString(letters)});
  }
}

double WeightedPauliSum::one_norm() const {
  double total = 0.0;
  for (const auto& t : terms_) total += std::abs(t.coefficient);
  return total;
}

bool WeightedPauliSum::is_hermitian(double tol) const {
  // Canonical strings are Hermitian, so the coefficients must be real.
  return std::all_of(terms_.begin(), terms_.end(), [tol](const Term& t) {
    return std::abs(t.coefficient.imag()) <= tol;
  });
}

WeightedPauliSum& WeightedPauliSum::operator+=(const WeightedPauliSum& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw DimensionError("sum of observables with different qubit counts");
  }
  canonicalize(other.terms_);
  return *this;
}

WeightedPauliSum& WeightedPauliSum::operator*=(Complex scalar) {
  std::vector<Term> scaled;
  scaled.reserve(terms_.size());
  for (const auto& t : terms_) scaled.push_back({t.coefficient * scalar, t.string});
  terms_.clear();
  canonicalize(scaled);
  return *this;
}

WeightedPauliSum operator+(WeightedPauliSum a, const WeightedPauliSum& b) {
  a += b;
  return a;
}

WeightedPauliSum operator*(WeightedPauliSum a, Complex scalar) {
  a *= scalar;
  return a;
}

WeightedPauliSum operator*(const WeightedPauliSum& a,
                           const WeightedPauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("product of observables with different qubit counts");
  }
  std::vector<WeightedPauliSum::Term> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      raw.push_back(
          {ta.coefficient * tb.coefficient, multiply(ta.string, tb.string)});
    }
  }
  return WeightedPauliSum(a.num_qubits(), raw);
}

// ---------------------------------------------------------------------------
// Single-qubit gates and dense matrices

Matrix2 SingleQubitGate::matrix() const {
  Matrix2 m = Matrix2::Zero();
  for (int p = 0; p < 4; ++p) {
    m += pauli_coeffs[static_cast<std::size_t>(p)] *
         pauli_matrix(static_cast<Pauli>(p));
  }
  return m;
}

SingleQubitGate decompose_2x2(const Matrix2& m) {
  SingleQubitGate g;
  for (int p = 0; p < 4; ++p) {
    g.pauli_coeffs[static_cast<std::size_t>(p)] =
        (pauli_matrix(static_cast<Pauli>(p)) * m).trace() / 2.0;
  }
  return g;
}

DenseMatrix to_dense(const PauliString& s) {
  const int q = s.num_qubits();
  if (q > kMaxDenseQubits) throw DomainError("to_dense: too many qubits");
  const Eigen::Index dim = Eigen::Index{1} << q;
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  // Each column has a single non-zero entry: P|k> = phase(k) |k ^ flip>.
  std::uint64_t flip = 0;
  for (int j = 0; j < q; ++j) {
    const Pauli p = s[j];
    if (p == Pauli::X || p == Pauli::Y) flip |= std::uint64_t{1} << j;
  }
  for (Eigen::Index k = 0; k < dim; ++k) {
    Complex amp = s.phase();
    for (int j = 0; j < q; ++j) {
      const bool bit = (k >> j) & 1;
      switch (s[j]) {
        case Pauli::I:
        case Pauli::X:
          break;
        case Pauli::Y:
          amp *= bit ? -kI : kI;
          break;
        case Pauli::Z:
          if (bit) amp = -amp;
          break;
      }
    }
    out(static_cast<Eigen::Index>(static_cast<std::uint64_t>(k) ^ flip), k) =
        amp;
  }
  return out;
}

DenseMatrix to_dense(const WeightedPauliSum& o) {
  if (o.num_qubits() > kMaxDenseQubits) {
    throw DomainError("to_dense: too many qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << o.num_qubits();
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  for (const auto& t : o.terms()) out += t.coefficient * to_dense(t.string);
  return out;
}

}  // namespace shadowsr
