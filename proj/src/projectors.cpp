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
#include "shadowsr/projectors.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "shadowsr/errors.hpp"
#include "shadowsr/statevector.hpp"
#include "shadowsr/wigner.hpp"

namespace shadowsr {

namespace {

constexpr double kPi = std::numbers::pi;

std::string half_integer(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

SingleQubitGate identity_gate() { return decompose_2x2(Matrix2::Identity()); }

// Per-qubit kernel values for one (observable letter, LCU gate) pair,
// indexed by basis * 2 + outcome bit.
using QubitTable = std::array<Complex, 6>;

QubitTable qubit_table(Pauli letter, const SingleQubitGate& gate) {
  QubitTable table{};
  const PauliString p({letter});
  for (int m = 0; m < 4; ++m) {
    const Complex alpha = gate.pauli_coeffs[static_cast<std::size_t>(m)];
    if (alpha == Complex{0.0, 0.0}) continue;
    const PauliString product = multiply(p, PauliString({static_cast<Pauli>(m)}));
    for (int b = 0; b < 3; ++b) {
      for (int bit = 0; bit < 2; ++bit) {
        const int f = qubit_trace_factor(static_cast<Basis>(b), bit,
                                         product.letters()[0]);
        if (f != 0) {
          table[static_cast<std::size_t>(2 * b + bit)] +=
              alpha * product.phase() * static_cast<double>(f);
        }
      }
    }
  }
  return table;
}

WeightedPauliSum gate_as_sum(const SingleQubitGate& gate) {
  std::vector<WeightedPauliSum::Term> terms;
  for (int m = 0; m < 4; ++m) {
    terms.push_back({gate.pauli_coeffs[static_cast<std::size_t>(m)],
                     PauliString({static_cast<Pauli>(m)})});
  }
  return WeightedPauliSum(1, terms);
}

// Tensor product a (on the high qubits) with b (on the low qubits).
WeightedPauliSum tensor(const WeightedPauliSum& high, const WeightedPauliSum& low) {
  std::vector<WeightedPauliSum::Term> terms;
  const int q = high.num_qubits() + low.num_qubits();
  for (const auto& th : high.terms()) {
    for (const auto& tl : low.terms()) {
      std::vector<Pauli> letters = tl.string.letters();
      letters.insert(letters.end(), th.string.letters().begin(),
                     th.string.letters().end());
      terms.push_back({th.coefficient * tl.coefficient, PauliString(letters)});
    }
  }
  return WeightedPauliSum(q, terms);
}

WeightedPauliSum lcu_as_sum(const ProjectorLCU& projector) {
  WeightedPauliSum total(projector.num_qubits());
  for (const auto& term : projector.terms()) {
    WeightedPauliSum product = gate_as_sum(term.gates[0]);
    for (std::size_t j = 1; j < term.gates.size(); ++j) {
      product = tensor(gate_as_sum(term.gates[j]), product);
    }
    total += product * term.beta;
  }
  return total;
}

void check_spin_labels(int q, int two_s, int two_m) {
  if (two_s < 0 || two_s > q || (q - two_s) % 2 != 0) {
    throw DomainError("spin s=" + half_integer(two_s) +
                      " is not reachable with " + std::to_string(q) +
                      " qubits");
  }
  if (std::abs(two_m) > two_s || (two_s - two_m) % 2 != 0) {
    throw DomainError("spin projection m=" + half_integer(two_m) +
                      " incompatible with s=" + half_integer(two_s));
  }
}

}  // namespace

std::string describe(const SymmetryLabel& label) {
  struct Visitor {
    std::string operator()(const IdentityLabel&) const { return "identity"; }
    std::string operator()(const ParityLabel& p) const {
      return p.epsilon > 0 ? "parity=+1" : "parity=-1";
    }
    std::string operator()(const NumberLabel& n) const {
      return "n0=" + std::to_string(n.n0);
    }
    std::string operator()(const SpinLabel& s) const {
      return "s=" + half_integer(s.two_s) + ";m=" + half_integer(s.two_m);
    }
  };
  return std::visit(Visitor{}, label);
}

ProjectorLCU::ProjectorLCU(int num_qubits, std::vector<Term> terms,
                           SymmetryLabel label)
    : num_qubits_(num_qubits), terms_(std::move(terms)), label_(label) {
  if (num_qubits < 1) throw DimensionError("projector needs >= 1 qubit");
  for (const auto& t : terms_) {
    if (t.gates.size() != static_cast<std::size_t>(num_qubits)) {
      throw DimensionError("projector term needs one gate per qubit");
    }
  }
}

ProjectorLCU identity_projector(int num_qubits) {
  return ProjectorLCU(
      num_qubits,
      {{1.0, std::vector<SingleQubitGate>(static_cast<std::size_t>(num_qubits),
                                          identity_gate())}},
      IdentityLabel{});
}

ProjectorLCU parity_projector(int num_qubits, int epsilon) {
  if (num_qubits < 1) throw DimensionError("projector needs >= 1 qubit");
  if (epsilon != 1 && epsilon != -1) {
    throw DomainError("parity epsilon must be +1 or -1");
  }
  const auto q = static_cast<std::size_t>(num_qubits);
  std::vector<ProjectorLCU::Term> terms;
  terms.push_back({0.5, std::vector<SingleQubitGate>(q, identity_gate())});
  terms.push_back({0.5 * epsilon, std::vector<SingleQubitGate>(
                                      q, decompose_2x2(gates::Z()))});
  return ProjectorLCU(num_qubits, std::move(terms), ParityLabel{epsilon});
}

ProjectorLCU number_projector(int num_qubits, int n0) {
  if (num_qubits < 1) throw DimensionError("projector needs >= 1 qubit");
  if (n0 < 0 || n0 > num_qubits) {
    throw DomainError("particle number n0=" + std::to_string(n0) +
                      " outside [0, " + std::to_string(num_qubits) + "]");
  }
  const int layers = num_qubits + 1;
  std::vector<ProjectorLCU::Term> terms;
  terms.reserve(static_cast<std::size_t>(layers));
  for (int k = 0; k < layers; ++k) {
    const double phi = 2.0 * kPi * k / layers;
    const Complex g = std::polar(1.0 / layers, -phi * n0);
    terms.push_back({g, std::vector<SingleQubitGate>(
                            static_cast<std::size_t>(num_qubits),
                            decompose_2x2(gates::phase(phi)))});
  }
  return ProjectorLCU(num_qubits, std::move(terms), NumberLabel{n0});
}

ProjectorLCU spin_projector(int num_qubits, int two_s, int two_m,
                            int mesh_points) {
  if (num_qubits < 1) throw DimensionError("projector needs >= 1 qubit");
  check_spin_labels(num_qubits, two_s, two_m);
  if (mesh_points < 2) throw DomainError("spin mesh needs >= 2 points");

  const double d_alpha = 2.0 * kPi / mesh_points;
  const double d_beta = kPi / mesh_points;
  const double d_gamma = 2.0 * kPi / mesh_points;
  const double d_omega =
      (two_s + 1.0) / (8.0 * kPi * kPi) * d_alpha * d_beta * d_gamma;

  std::vector<ProjectorLCU::Term> terms;
  terms.reserve(static_cast<std::size_t>(mesh_points) * mesh_points * mesh_points);
  for (int k = 0; k < mesh_points; ++k) {
    const double alpha = (k + 0.5) * d_alpha;
    for (int l = 0; l < mesh_points; ++l) {
      const double beta = (l + 0.5) * d_beta;
      for (int p = 0; p < mesh_points; ++p) {
        const double gamma = (p + 0.5) * d_gamma;
        const Complex weight =
            d_omega * std::sin(beta) *
            std::conj(wigner_D(two_s, two_m, alpha, beta, gamma));
        const SingleQubitGate rotation =
            decompose_2x2(gates::Rz(alpha) * gates::Ry(beta) * gates::Rz(gamma));
        terms.push_back({weight, std::vector<SingleQubitGate>(
                                     static_cast<std::size_t>(num_qubits),
                                     rotation)});
      }
    }
  }
  return ProjectorLCU(num_qubits, std::move(terms),
                      SpinLabel{two_s, two_m, mesh_points});
}

ProjectorLCU make_projector(int num_qubits, const SymmetryLabel& label) {
  struct Visitor {
    int q;
    ProjectorLCU operator()(const IdentityLabel&) const {
      return identity_projector(q);
    }
    ProjectorLCU operator()(const ParityLabel& p) const {
      return parity_projector(q, p.epsilon);
    }
    ProjectorLCU operator()(const NumberLabel& n) const {
      return number_projector(q, n.n0);
    }
    ProjectorLCU operator()(const SpinLabel& s) const {
      return spin_projector(q, s.two_s, s.two_m, s.mesh_points);
    }
  };
  return std::visit(Visitor{num_qubits}, label);
}

std::vector<SymmetryLabel> all_sectors(int num_qubits,
                                       const SymmetryLabel& family) {
  std::vector<SymmetryLabel> out;
  if (std::holds_alternative<IdentityLabel>(family)) {
    out.emplace_back(IdentityLabel{});
  } else if (std::holds_alternative<ParityLabel>(family)) {
    out.emplace_back(ParityLabel{+1});
    out.emplace_back(ParityLabel{-1});
  } else if (std::holds_alternative<NumberLabel>(family)) {
    for (int n = 0; n <= num_qubits; ++n) out.emplace_back(NumberLabel{n});
  } else {
    const int mesh = std::get<SpinLabel>(family).mesh_points;
    for (int two_s = num_qubits % 2; two_s <= num_qubits; two_s += 2) {
      for (int two_m = -two_s; two_m <= two_s; two_m += 2) {
        out.emplace_back(SpinLabel{two_s, two_m, mesh});
      }
    }
  }
  return out;
}

DenseMatrix to_dense(const ProjectorLCU& projector) {
  const int q = projector.num_qubits();
  if (q > kMaxDenseQubits) throw DomainError("to_dense: too many qubits");
  const Eigen::Index dim = Eigen::Index{1} << q;
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  for (const auto& term : projector.terms()) {
    // Kronecker product built from qubit q-1 (most significant) downwards.
    DenseMatrix product = DenseMatrix::Ones(1, 1);
    for (int j = q - 1; j >= 0; --j) {
      const Matrix2 g = term.gates[static_cast<std::size_t>(j)].matrix();
      DenseMatrix next(product.rows() * 2, product.cols() * 2);
      for (Eigen::Index r = 0; r < product.rows(); ++r) {
        for (Eigen::Index c = 0; c < product.cols(); ++c) {
          next.block<2, 2>(2 * r, 2 * c) = product(r, c) * g;
        }
      }
      product = std::move(next);
    }
    out += term.beta * product;
  }
  return out;
}

WeightedPauliSum expand_product(const WeightedPauliSum& obs,
                                const ProjectorLCU& projector) {
  if (obs.num_qubits() != projector.num_qubits()) {
    throw DimensionError("observable and projector qubit counts differ");
  }
  return obs * lcu_as_sum(projector);
}

std::optional<double> ProjectedEstimate::ratio() const {
  if (!(norm > 0.0)) return std::nullopt;
  return numerator / norm;
}

namespace {

// Per-snapshot evaluation of Tr[O P snapshot] with the qubit factors of every
// (observable term, LCU term) pair tabulated up front.
class ProjectedKernel {
 public:
  ProjectedKernel(const WeightedPauliSum& obs, const ProjectorLCU& projector)
      : obs_(obs), projector_(projector), nq_(static_cast<std::size_t>(obs.num_qubits())) {
    if (obs.num_qubits() != projector.num_qubits()) {
      throw DimensionError("observable and projector qubit counts differ");
    }
    const std::size_t n_lcu = projector.terms().size();
    tables_.resize(obs.size() * n_lcu * nq_);
    for (std::size_t a = 0; a < obs.size(); ++a) {
      const auto& letters = obs.terms()[a].string.letters();
      for (std::size_t k = 0; k < n_lcu; ++k) {
        const auto& gates = projector.terms()[k].gates;
        for (std::size_t j = 0; j < nq_; ++j) {
          tables_[(a * n_lcu + k) * nq_ + j] = qubit_table(letters[j], gates[j]);
        }
      }
    }
    keys_.resize(nq_);
  }

  Complex value(const Snapshot& snapshot) {
    if (snapshot.bases.size() != nq_) {
      throw DimensionError("snapshot and observable qubit counts differ");
    }
    for (std::size_t j = 0; j < nq_; ++j) {
      keys_[j] = static_cast<std::size_t>(snapshot.bases[j]) * 2 + snapshot.outcome[j];
    }
    const std::size_t n_lcu = projector_.terms().size();
    Complex value = 0.0;
    for (std::size_t a = 0; a < obs_.size(); ++a) {
      Complex term_value = 0.0;
      for (std::size_t k = 0; k < n_lcu; ++k) {
        const QubitTable* row = &tables_[(a * n_lcu + k) * nq_];
        Complex product = projector_.terms()[k].beta;
        for (std::size_t j = 0; j < nq_ && product != Complex{0.0, 0.0}; ++j) {
          product *= row[j][keys_[j]];
        }
        term_value += product;
      }
      value += obs_.terms()[a].coefficient * term_value;
    }
    return value;
  }

 private:
  const WeightedPauliSum& obs_;
  const ProjectorLCU& projector_;
  std::size_t nq_;
  std::vector<QubitTable> tables_;  // [(term * n_lcu + lcu) * q + qubit]
  std::vector<std::size_t> keys_;
};

}  // namespace

std::vector<Complex> snapshot_projected_values(std::span<const Snapshot> snapshots,
                                               const WeightedPauliSum& obs,
                                               const ProjectorLCU& projector) {
  ProjectedKernel kernel(obs, projector);
  std::vector<Complex> values;
  values.reserve(snapshots.size());
  for (const auto& snap : snapshots) values.push_back(kernel.value(snap));
  return values;
}

Complex weighted_projected_trace(std::span<const WeightedSnapshot> snapshots,
                                 const WeightedPauliSum& obs,
                                 const ProjectorLCU& projector) {
  ProjectedKernel kernel(obs, projector);
  Complex total = 0.0;
  for (const auto& ws : snapshots) total += ws.weight * kernel.value(ws.snapshot);
  return total;
}

ProjectedEstimate projected_estimate(const ClassicalShadow& shadow,
                                     const WeightedPauliSum& obs,
                                     const ProjectorLCU& projector) {
  if (shadow.num_qubits() != obs.num_qubits() ||
      shadow.num_qubits() != projector.num_qubits()) {
    throw DimensionError("shadow, observable and projector qubit counts differ");
  }
  if (shadow.size() == 0) throw DomainError("cannot estimate from an empty shadow");
  const auto identity = WeightedPauliSum::identity(obs.num_qubits());
  if (shadow.source() == BasisSource::Prescribed) {
    return {compatible_count_estimate(shadow, expand_product(obs, projector)).real(),
            compatible_count_estimate(shadow, expand_product(identity, projector))
                .real()};
  }
  const auto snapshots = tally(shadow);
  return {weighted_projected_trace(snapshots, obs, projector).real(),
          weighted_projected_trace(snapshots, identity, projector).real()};
}

ProjectedEstimate exact_lcu_expectation(const Statevector& state,
                                        const WeightedPauliSum& obs,
                                        const ProjectorLCU& projector) {
  if (state.num_qubits() != obs.num_qubits() ||
      state.num_qubits() != projector.num_qubits()) {
    throw DimensionError("state, observable and projector qubit counts differ");
  }
  const Eigen::VectorXcd& psi = state.amplitudes();
  Complex numerator = 0.0;
  Complex norm = 0.0;
  for (const auto& term : projector.terms()) {
    Statevector rotated = state;
    for (int j = 0; j < state.num_qubits(); ++j) {
      rotated = apply_gate(rotated, term.gates[static_cast<std::size_t>(j)].matrix(), j);
    }
    const Eigen::VectorXcd& phi = rotated.amplitudes();
    norm += term.beta * psi.dot(phi);
    numerator += term.beta * psi.dot(apply_observable(obs, phi));
  }
  return {numerator.real(), norm.real()};
}

DenseMatrix project_density(const DenseMatrix& rho,
                            const DenseMatrix& projector) {
  if (rho.rows() != projector.rows() || rho.cols() != projector.cols()) {
    throw DimensionError("density and projector dimensions differ");
  }
  return projector * rho * projector;
}

WeightedPauliSum total_spin_squared(int num_qubits) {
  std::vector<WeightedPauliSum::Term> terms;
  for (int i = 0; i < num_qubits; ++i) {
    for (int j = 0; j < num_qubits; ++j) {
      for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        std::vector<Pauli> letters(static_cast<std::size_t>(num_qubits), Pauli::I);
        letters[static_cast<std::size_t>(i)] = p;
        const PauliString a(letters);
        terms.push_back({0.25, multiply(a, PauliString::single(num_qubits, j, p))});
      }
    }
  }
  return WeightedPauliSum(num_qubits, terms);
}

WeightedPauliSum total_spin_z(int num_qubits) {
  std::vector<WeightedPauliSum::Term> terms;
  for (int j = 0; j < num_qubits; ++j) {
    terms.push_back({0.5, PauliString::single(num_qubits, j, Pauli::Z)});
  }
  return WeightedPauliSum(num_qubits, terms);
}

WeightedPauliSum number_operator(int num_qubits) {
  std::vector<WeightedPauliSum::Term> terms;
  terms.push_back({0.5 * num_qubits, PauliString(num_qubits)});
  for (int j = 0; j < num_qubits; ++j) {
    terms.push_back({-0.5, PauliString::single(num_qubits, j, Pauli::Z)});
  }
  return WeightedPauliSum(num_qubits, terms);
}

DenseMatrix exact_spin_eigenprojector(int num_qubits, int two_s, int two_m) {
  check_spin_labels(num_qubits, two_s, two_m);
  const DenseMatrix s2 = to_dense(total_spin_squared(num_qubits));
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(s2);
  const double target = 0.25 * two_s * (two_s + 2);  // s (s + 1)
  const Eigen::Index dim = s2.rows();
  DenseMatrix p_s = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (std::abs(solver.eigenvalues()(i) - target) < 1e-6) {
      const Eigen::VectorXcd v = solver.eigenvectors().col(i);
      p_s += v * v.adjoint();
    }
  }
  // S_z is diagonal: 2 m = (number of 0 bits) - (number of 1 bits).
  DenseMatrix p_m = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const int ones = std::popcount(static_cast<std::uint64_t>(k));
    if (num_qubits - 2 * ones == two_m) p_m(k, k) = 1.0;
  }
  return p_s * p_m;
}

}  // namespace shadowsr
