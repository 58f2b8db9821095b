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
#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace shadowsr {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using DenseMatrix = Eigen::MatrixXcd;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Single-qubit measurement basis. The readout unitary is H for X, H S^dagger
/// for Y and the identity for Z, so outcome 0 is the +1 eigenvector.
enum class Basis : std::uint8_t { X = 0, Y = 1, Z = 2 };

char to_char(Pauli p);
char to_char(Basis b);
Pauli pauli_from_char(char c);
Basis basis_from_char(char c);
/// The Pauli operator diagonalized by measuring in `b`.
Pauli to_pauli(Basis b);

Matrix2 pauli_matrix(Pauli p);

/// Tensor product of I/X/Y/Z letters with a phase in {1, i, -1, -i}.
///
/// letters()[j] acts on qubit j, which is bit j of a computational basis
/// index. The text form prints qubit q-1 first: "+1 ZIZY" has Y on qubit 0.
class PauliString {
 public:
  /// Identity on `num_qubits` qubits.
  explicit PauliString(int num_qubits);
  /// `phase_power` k encodes the phase i^k.
  explicit PauliString(std::vector<Pauli> letters, int phase_power = 0);

  /// Parses "ZIZY", "+1 ZIZY", "-i XX" and similar.
  static PauliString parse(std::string_view text);
  static PauliString single(int num_qubits, int qubit, Pauli p);

  int num_qubits() const { return static_cast<int>(letters_.size()); }
  Pauli operator[](int qubit) const { return letters_[qubit]; }
  const std::vector<Pauli>& letters() const { return letters_; }
  int phase_power() const { return phase_power_; }
  Complex phase() const;
  /// Number of non-identity letters.
  int weight() const;
  bool is_identity() const { return weight() == 0; }

  std::string letter_string() const;
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
  int phase_power_ = 0;
};

/// Product a*b with exact phase tracking. Throws DimensionError on size
/// mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

/// True iff at every qubit the letters agree or one of them is I.
bool qwc_commutes(const PauliString& a, const PauliString& b);

/// Observable sum_a gamma_a O_a in canonical form: phases folded into the
/// coefficients, one term per distinct letter array, terms sorted by letters,
/// and coefficients below kDropTolerance removed.
class WeightedPauliSum {
 public:
  static constexpr double kDropTolerance = 1e-14;

  struct Term {
    Complex coefficient;
    PauliString string;  // phase is always +1
  };

  explicit WeightedPauliSum(int num_qubits);
  WeightedPauliSum(int num_qubits, const std::vector<Term>& terms);

  static WeightedPauliSum identity(int num_qubits, Complex coefficient = 1.0);
  static WeightedPauliSum from_string(const PauliString& s,
                                      Complex coefficient = 1.0);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Sum of |gamma_a|, which bounds |<O>| for Hermitian O.
  double one_norm() const;
  bool is_hermitian(double tol = 1e-12) const;

  WeightedPauliSum& operator+=(const WeightedPauliSum& other);
  WeightedPauliSum& operator*=(Complex scalar);

 private:
  void canonicalize(const std::vector<Term>& raw);

  int num_qubits_;
  std::vector<Term> terms_;
};

WeightedPauliSum operator+(WeightedPauliSum a, const WeightedPauliSum& b);
WeightedPauliSum operator*(WeightedPauliSum a, Complex scalar);
WeightedPauliSum operator*(const WeightedPauliSum& a,
                           const WeightedPauliSum& b);

/// G = c_I I + c_X X + c_Y Y + c_Z Z.
struct SingleQubitGate {
  std::array<Complex, 4> pauli_coeffs{};

  Complex coeff(Pauli p) const {
    return pauli_coeffs[static_cast<std::size_t>(p)];
  }
  Matrix2 matrix() const;
};

/// Hilbert-Schmidt decomposition c_P = Tr(P m) / 2. Works for any complex
/// 2x2 matrix.
SingleQubitGate decompose_2x2(const Matrix2& m);

/// Dense matrices for q <= kMaxDenseQubits.
inline constexpr int kMaxDenseQubits = 10;
DenseMatrix to_dense(const PauliString& s);
DenseMatrix to_dense(const WeightedPauliSum& o);

}  // namespace shadowsr
