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
#include "shadowsr/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <json.hpp>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "shadowsr/errors.hpp"
#include "shadowsr/io.hpp"
#include "shadowsr/random.hpp"
#include "shadowsr/shadow.hpp"
#include "shadowsr/states.hpp"

namespace shadowsr {

namespace {

using nlohmann::json;

constexpr int kMaxTabulatedQubits = 6;

// Numerator/denominator pair Tr[O P rho].
struct Functional {
  WeightedPauliSum obs;
  ProjectorLCU projector;
};

struct Quantity {
  std::string name;
  std::function<std::optional<double>(const std::vector<double>&)> eval;
  double oracle;
};

struct Setup {
  Statevector state;
  std::vector<Functional> functionals;
  std::vector<Quantity> quantities;
  std::vector<ResultRow> extra_rows;
};

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SHADOW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t repeat_seed(std::uint64_t seed, std::size_t shot_index, std::size_t repeat) {
  return derive_seed(derive_seed(seed, shot_index), repeat);
}

double gaussian_center(int q) { return (std::pow(2.0, q) - 1.0) / 2.0; }

GaussianForm gaussian_form(const ExperimentConfig& c) {
  return c.gaussian_squared ? GaussianForm::Squared : GaussianForm::AsPrinted;
}

Statevector gaussian_state(const ExperimentConfig& c) {
  const double mu = gaussian_center(c.num_qubits);
  return prepare_gaussian(c.num_qubits, mu, mu / 3.0, gaussian_form(c));
}

PairingSpec model_of(const ExperimentConfig& c) {
  PairingSpec spec = c.model;
  spec.num_levels = c.num_qubits;
  return spec;
}

// Diagonal projector onto bitstrings with n0 ones, built directly.
DenseMatrix popcount_projector(int q, int n0) {
  const Eigen::Index dim = Eigen::Index{1} << q;
  DenseMatrix p = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (std::popcount(static_cast<std::uint64_t>(k)) == n0) p(k, k) = 1.0;
  }
  return p;
}

std::optional<double> safe_ratio(double num, double den) {
  if (!(den > 0.0)) return std::nullopt;
  return num / den;
}

Quantity pick(std::string name, std::size_t index, double oracle) {
  return {std::move(name),
          [index](const std::vector<double>& f) -> std::optional<double> { return f[index]; },
          oracle};
}

Quantity ratio_of(std::string name, std::size_t num, std::size_t den, double oracle) {
  return {std::move(name),
          [num, den](const std::vector<double>& f) { return safe_ratio(f[num], f[den]); },
          oracle};
}

SymmetryLabel projector_or(const ExperimentConfig& c, SymmetryLabel fallback) {
  return c.projector ? *c.projector : fallback;
}

// Numerator, norm and energy of a projected Hamiltonian.
void add_projected_energy(Setup& s, const WeightedPauliSum& h, const SymmetryLabel& label,
                          int q) {
  const ProjectorLCU p = make_projector(q, label);
  s.functionals.push_back({h, p});
  s.functionals.push_back({WeightedPauliSum::identity(q), p});
}

Setup build_setup(const ExperimentConfig& c) {
  const int q = c.num_qubits;
  switch (c.experiment) {
    case ExperimentId::Fig2:
      return {hadamard_product_state(q), {}, {}, {}};
    case ExperimentId::Fig3: {
      Setup s{parity_mixed_state(q, 0.3), {}, {}, {}};
      const auto identity = WeightedPauliSum::identity(q);
      for (int eps : {+1, -1}) {
        s.functionals.push_back({identity, parity_projector(q, eps)});
        const double exact =
            exact_projected_expectation(s.state, identity, to_dense(parity_projector(q, eps)))
                .norm;
        s.quantities.push_back(pick(eps > 0 ? "p_+" : "p_-", s.functionals.size() - 1, exact));
      }
      return s;
    }
    case ExperimentId::Fig4: {
      const PairingSpec spec = model_of(c);
      Setup s{bcs_product_state(spec), {}, {}, {}};
      const auto h = build_pairing_hamiltonian(spec);
      const SymmetryLabel label = projector_or(c, ParityLabel{+1});
      add_projected_energy(s, h, label, q);
      const auto exact = exact_projected_expectation(s.state, h, to_dense(s.functionals[1].projector));
      s.quantities.push_back(pick("numerator", 0, exact.numerator));
      s.quantities.push_back(pick("norm", 1, exact.norm));
      s.quantities.push_back(ratio_of("energy", 0, 1, exact.ratio()));
      return s;
    }
    case ExperimentId::Fig5: {
      Setup s{gaussian_state(c), {}, {}, {}};
      const auto identity = WeightedPauliSum::identity(q);
      for (int n = 0; n <= q; ++n) {
        s.functionals.push_back({identity, number_projector(q, n)});
        const double exact =
            exact_projected_expectation(s.state, identity, popcount_projector(q, n)).norm;
        s.quantities.push_back(pick("n0=" + std::to_string(n), s.functionals.size() - 1, exact));
      }
      return s;
    }
    case ExperimentId::Fig6: {
      const PairingSpec spec = model_of(c);
      Setup s{gaussian_state(c), {}, {}, {}};
      const auto h = build_pairing_hamiltonian(spec);
      const SymmetryLabel label = projector_or(c, NumberLabel{q / 2});
      add_projected_energy(s, h, label, q);
      DenseMatrix dense = std::holds_alternative<NumberLabel>(label)
                              ? popcount_projector(q, std::get<NumberLabel>(label).n0)
                              : to_dense(s.functionals[1].projector);
      const auto exact = exact_projected_expectation(s.state, h, dense);
      s.quantities.push_back(pick("numerator", 0, exact.numerator));
      s.quantities.push_back(pick("norm", 1, exact.norm));
      s.quantities.push_back(ratio_of("energy", 0, 1, exact.ratio()));
      return s;
    }
    case ExperimentId::Fig7: {
      Setup s{spin_mixed_gaussian_state(q, gaussian_center(q), gaussian_center(q) / 3.0,
                                        gaussian_form(c)),
              {}, {}, {}};
      const auto identity = WeightedPauliSum::identity(q);
      const SymmetryLabel family = projector_or(c, SpinLabel{q % 2, q % 2, 10});
      const DenseMatrix rho = s.state.amplitudes() * s.state.amplitudes().adjoint();
      for (const auto& label : all_sectors(q, family)) {
        const auto& spin = std::get<SpinLabel>(label);
        ProjectorLCU p = make_projector(q, label);
        const double discretized = exact_lcu_expectation(s.state, identity, p).norm;
        s.functionals.push_back({identity, std::move(p)});
        s.quantities.push_back(pick(describe(label), s.functionals.size() - 1, discretized));
        const double eigen =
            (exact_spin_eigenprojector(q, spin.two_s, spin.two_m) * rho).trace().real();
        s.extra_rows.push_back(
            {"eigenprojector:" + describe(label), 0, 0, eigen, 0.0, discretized, c.seed, {}});
      }
      return s;
    }
  }
  throw ParseError("unknown experiment");
}

// Snapshot code: digit j (base 6) is 2 * basis + bit of qubit j.
std::size_t snapshot_code(const Snapshot& snap) {
  std::size_t code = 0;
  for (std::size_t j = snap.bases.size(); j-- > 0;) {
    code = code * 6 + static_cast<std::size_t>(snap.bases[j]) * 2 + snap.outcome[j];
  }
  return code;
}

class RandomEvaluator {
 public:
  RandomEvaluator(const std::vector<Functional>& functionals, int q)
      : functionals_(functionals) {
    if (q > kMaxTabulatedQubits) return;
    std::size_t count = 1;
    for (int j = 0; j < q; ++j) count *= 6;
    std::vector<Snapshot> all(count);
    for (std::size_t code = 0; code < count; ++code) {
      Snapshot& snap = all[code];
      snap.bases.resize(static_cast<std::size_t>(q));
      snap.outcome.resize(static_cast<std::size_t>(q));
      std::size_t rest = code;
      for (std::size_t j = 0; j < static_cast<std::size_t>(q); ++j) {
        const std::size_t digit = rest % 6;
        rest /= 6;
        snap.bases[j] = static_cast<Basis>(digit / 2);
        snap.outcome[j] = static_cast<std::uint8_t>(digit % 2);
      }
    }
    for (const auto& f : functionals) {
      const auto values = snapshot_projected_values(all, f.obs, f.projector);
      std::vector<double> real(values.size());
      std::transform(values.begin(), values.end(), real.begin(),
                     [](Complex v) { return v.real(); });
      table_.push_back(std::move(real));
    }
  }

  std::vector<double> evaluate(const ClassicalShadow& shadow) const {
    std::vector<double> out(functionals_.size(), 0.0);
    if (table_.empty()) {
      for (std::size_t f = 0; f < functionals_.size(); ++f) {
        out[f] = projected_estimate(shadow, functionals_[f].obs, functionals_[f].projector)
                     .numerator;
      }
      return out;
    }
    for (const auto& snap : shadow.snapshots()) {
      const std::size_t code = snapshot_code(snap);
      for (std::size_t f = 0; f < out.size(); ++f) out[f] += table_[f][code];
    }
    for (auto& v : out) v /= static_cast<double>(shadow.size());
    return out;
  }

 private:
  const std::vector<Functional>& functionals_;
  std::vector<std::vector<double>> table_;  // [functional][snapshot code]
};

// Every functional expanded into Pauli strings over one shared carrier set.
struct ExpandedFunctionals {
  std::vector<WeightedPauliSum> sums;
  WeightedPauliSum carrier;  // coefficient = largest magnitude over sums
  std::vector<std::vector<Complex>> coefficients;  // [functional][carrier term]

  explicit ExpandedFunctionals(const std::vector<Functional>& functionals, int q)
      : carrier(q) {
    std::map<std::string, double> weight;
    for (const auto& f : functionals) {
      sums.push_back(expand_product(f.obs, f.projector));
      for (const auto& t : sums.back().terms()) {
        double& w = weight[t.string.letter_string()];
        w = std::max(w, std::abs(t.coefficient));
      }
    }
    std::vector<WeightedPauliSum::Term> terms;
    for (const auto& [letters, w] : weight) {
      terms.push_back({w, PauliString::parse(letters)});
    }
    carrier = WeightedPauliSum(q, terms);
    std::map<std::string, std::size_t> index;
    for (std::size_t a = 0; a < carrier.size(); ++a) {
      index[carrier.terms()[a].string.letter_string()] = a;
    }
    for (const auto& s : sums) {
      std::vector<Complex> c(carrier.size(), 0.0);
      for (const auto& t : s.terms()) c[index.at(t.string.letter_string())] = t.coefficient;
      coefficients.push_back(std::move(c));
    }
  }

  std::vector<double> combine(const std::vector<double>& term_values) const {
    std::vector<double> out;
    for (const auto& c : coefficients) {
      Complex total = 0.0;
      for (std::size_t a = 0; a < c.size(); ++a) total += c[a] * term_values[a];
      out.push_back(total.real());
    }
    return out;
  }
};

double population_stddev(const std::vector<double>& v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

ResultRow summarize(std::string label, std::size_t shots, std::vector<double> samples,
                    double oracle, std::uint64_t seed) {
  ResultRow row{std::move(label), shots, samples.size(), 0.0, 0.0, oracle, seed, {}};
  if (!samples.empty()) {
    row.mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
               static_cast<double>(samples.size());
    row.stddev = population_stddev(samples, row.mean);
  } else {
    row.mean = std::nan("");
    row.stddev = std::nan("");
  }
  row.samples = std::move(samples);
  return row;
}

json matrix_json(const DenseMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ExperimentResult run_density(const ExperimentConfig& c, const Setup& setup) {
  const int q = c.num_qubits;
  const DenseMatrix exact = setup.state.amplitudes() * setup.state.amplitudes().adjoint();
  const SymmetryLabel label = projector_or(c, ParityLabel{+1});
  const DenseMatrix p = to_dense(make_projector(q, label));
  const std::size_t repeats = static_cast<std::size_t>(c.repeats);
  const std::size_t jobs = c.shots.size() * repeats;
  std::vector<std::array<double, 2>> errors(jobs);
  DenseMatrix first_reconstruction;
  parallel_for(jobs, thread_count(c.threads), [&](std::size_t job) {
    const std::size_t i = job / repeats;
    const std::size_t r = job % repeats;
    const auto shadow = acquire_shadow(setup.state, c.shots[i], repeat_seed(c.seed, i, r));
    const DenseMatrix rho = reconstruct_density(shadow);
    errors[job] = {(rho - exact).cwiseAbs().maxCoeff(), (rho - exact).norm()};
    if (i + 1 == c.shots.size() && r == 0) first_reconstruction = rho;
  });
  ExperimentResult result;
  const std::array<const char*, 2> names = {"random:max_abs_error", "random:frobenius_error"};
  for (std::size_t k = 0; k < names.size(); ++k) {
    for (std::size_t i = 0; i < c.shots.size(); ++i) {
      std::vector<double> samples;
      for (std::size_t r = 0; r < repeats; ++r) samples.push_back(errors[i * repeats + r][k]);
      result.rows.push_back(summarize(names[k], c.shots[i], std::move(samples), 0.0, c.seed));
    }
  }
  json density{{"num_qubits", q},
               {"shots", c.shots.back()},
               {"projector", json::parse(io::projector_label_to_json(label))},
               {"exact", matrix_json(exact)},
               {"reconstructed", matrix_json(first_reconstruction)},
               {"exact_projected", matrix_json(project_density(exact, p))},
               {"reconstructed_projected", matrix_json(project_density(first_reconstruction, p))}};
  result.density_json = density.dump(2);
  return result;
}

}  // namespace

std::string to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::Fig2: return "fig2";
    case ExperimentId::Fig3: return "fig3";
    case ExperimentId::Fig4: return "fig4";
    case ExperimentId::Fig5: return "fig5";
    case ExperimentId::Fig6: return "fig6";
    case ExperimentId::Fig7: return "fig7";
  }
  return "fig3";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Random: return "random";
    case Method::Derandomized: return "derandomized";
    case Method::Counts: return "counts";
    case Method::CountsGrouped: return "counts-grouped";
  }
  return "random";
}

ExperimentId experiment_from_string(std::string_view text) {
  for (auto id : {ExperimentId::Fig2, ExperimentId::Fig3, ExperimentId::Fig4,
                  ExperimentId::Fig5, ExperimentId::Fig6, ExperimentId::Fig7}) {
    if (to_string(id) == text) return id;
  }
  throw ParseError("unknown experiment id '" + std::string(text) + "'");
}

Method method_from_string(std::string_view text) {
  for (auto m : {Method::Random, Method::Derandomized, Method::Counts, Method::CountsGrouped}) {
    if (to_string(m) == text) return m;
  }
  throw ParseError("unknown method '" + std::string(text) + "'");
}

ExperimentConfig default_config(ExperimentId id) {
  ExperimentConfig c;
  c.experiment = id;
  switch (id) {
    case ExperimentId::Fig2:
      c.num_qubits = 2;
      c.shots = {1000};
      break;
    case ExperimentId::Fig3:
      c.shots = {100, 316, 1000, 3162, 10000};
      break;
    case ExperimentId::Fig4:
      c.shots = {250, 500, 1000, 2000};
      c.methods = {Method::Random, Method::Derandomized, Method::Counts, Method::CountsGrouped};
      break;
    case ExperimentId::Fig5:
    case ExperimentId::Fig7:
      c.shots = {10000};
      c.repeats = 50;
      break;
    case ExperimentId::Fig6:
      c.shots = {100, 316, 1000, 3162, 10000};
      c.repeats = 50;
      break;
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  const auto fail = [](const std::string& msg) { throw ParseError("config: " + msg); };
  if (c.num_qubits < 1 || c.num_qubits > Statevector::kMaxQubits) {
    fail("q must lie in [1, " + std::to_string(Statevector::kMaxQubits) + "]");
  }
  if (c.repeats < 1) fail("repeats must be >= 1");
  if (c.shots.empty()) fail("shots schedule is empty");
  if (c.shots.front() < 1) fail("shots must be >= 1");
  for (std::size_t i = 1; i < c.shots.size(); ++i) {
    if (c.shots[i] <= c.shots[i - 1]) fail("shots schedule must be strictly increasing");
  }
  if (c.methods.empty()) fail("no method selected");
  if (c.experiment != ExperimentId::Fig4) {
    for (auto m : c.methods) {
      if (m != Method::Random) fail(to_string(m) + " is only available for fig4");
    }
  }
  if (c.threads < 0) fail("threads must be >= 0");
  if (!(c.derandomize.eta > 0.0)) fail("eta must be positive");
  const auto kind = [&](auto tag) {
    return !c.projector || std::holds_alternative<decltype(tag)>(*c.projector);
  };
  switch (c.experiment) {
    case ExperimentId::Fig2:
      if (c.num_qubits > kMaxReconstructQubits) fail("fig2 reconstructs at most 4 qubits");
      break;
    case ExperimentId::Fig3:
      if (!kind(ParityLabel{})) fail("fig3 uses the parity projectors");
      break;
    case ExperimentId::Fig4:
      if (!kind(ParityLabel{}) && !kind(NumberLabel{})) fail("fig4 needs a parity or number projector");
      break;
    case ExperimentId::Fig5:
      break;
    case ExperimentId::Fig6:
      if (!kind(NumberLabel{})) fail("fig6 needs a number projector");
      break;
    case ExperimentId::Fig7:
      if (!kind(SpinLabel{})) fail("fig7 needs a spin projector");
      if (c.num_qubits > kMaxDenseQubits) fail("fig7 needs q <= 10");
      break;
  }
  if (c.projector) {
    try {
      if (std::holds_alternative<SpinLabel>(*c.projector)) {
        const auto& s = std::get<SpinLabel>(*c.projector);
        if (s.mesh_points < 2) fail("spin mesh needs >= 2 points");
      } else if (c.experiment != ExperimentId::Fig5) {
        make_projector(c.num_qubits, *c.projector);
      }
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: expected a JSON object");
  if (!j.contains("experiment")) throw ParseError("config: missing 'experiment'");
  try {
    ExperimentConfig c = default_config(experiment_from_string(j.at("experiment").get<std::string>()));
    for (const auto& [key, value] : j.items()) {
      if (key == "experiment") {
        continue;
      } else if (key == "q") {
        c.num_qubits = value.get<int>();
      } else if (key == "shots") {
        c.shots = value.get<std::vector<std::size_t>>();
      } else if (key == "repeats") {
        c.repeats = value.get<int>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "methods") {
        c.methods.clear();
        for (const auto& m : value) c.methods.push_back(method_from_string(m.get<std::string>()));
      } else if (key == "projector") {
        c.projector = io::projector_label_from_json(value.dump());
      } else if (key == "model") {
        for (const auto& [mk, mv] : value.items()) {
          if (mk == "geps" || mk == "level_spacing") {
            c.model.level_spacing = mv.get<double>();
          } else if (mk == "g" || mk == "coupling") {
            c.model.coupling = mv.get<double>();
          } else {
            throw ParseError("config: unknown model key '" + mk + "'");
          }
        }
      } else if (key == "gaussian_squared") {
        c.gaussian_squared = value.get<bool>();
      } else if (key == "weighted_allocation") {
        c.allocation = value.get<bool>() ? ShotAllocation::Weighted : ShotAllocation::Equal;
      } else if (key == "eta") {
        c.derandomize.eta = value.get<double>();
      } else if (key == "threads") {
        c.threads = value.get<int>();
      } else {
        throw ParseError("config: unknown key '" + key + "'");
      }
    }
    c.model.num_levels = c.num_qubits;
    validate(c);
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: wrong value type: ") + e.what());
  }
}

std::string config_to_json(const ExperimentConfig& c) {
  json methods = json::array();
  for (auto m : c.methods) methods.push_back(to_string(m));
  json j{{"experiment", to_string(c.experiment)},
         {"q", c.num_qubits},
         {"shots", c.shots},
         {"repeats", c.repeats},
         {"seed", c.seed},
         {"methods", methods},
         {"model", {{"geps", c.model.level_spacing}, {"g", c.model.coupling}}},
         {"gaussian_squared", c.gaussian_squared},
         {"weighted_allocation", c.allocation == ShotAllocation::Weighted},
         {"eta", c.derandomize.eta}};
  if (c.projector) j["projector"] = json::parse(io::projector_label_to_json(*c.projector));
  return j.dump(2);
}

Statevector experiment_state(const ExperimentConfig& config) {
  validate(config);
  return build_setup(config).state;
}

const ResultRow* ExperimentResult::find(std::string_view method, std::size_t shots) const {
  for (const auto& row : rows) {
    if (row.method == method && row.shots == shots) return &row;
  }
  return nullptr;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.model.num_levels = c.num_qubits;
  validate(c);
  const Setup setup = build_setup(c);
  if (c.experiment == ExperimentId::Fig2) return run_density(c, setup);

  const int q = c.num_qubits;
  const int threads = thread_count(c.threads);
  const auto repeats = static_cast<std::size_t>(c.repeats);
  const std::size_t jobs = c.shots.size() * repeats;

  std::optional<RandomEvaluator> random_eval;
  std::optional<ExpandedFunctionals> expanded;

  ExperimentResult result;
  for (Method method : c.methods) {
    // values[job][quantity]; nullopt marks an undefined ratio.
    std::vector<std::vector<std::optional<double>>> values(jobs);
    const auto record = [&](std::size_t job, const std::vector<double>& f) {
      for (const auto& quantity : setup.quantities) values[job].push_back(quantity.eval(f));
    };

    if (method == Method::Random) {
      if (!random_eval) random_eval.emplace(setup.functionals, q);
      parallel_for(jobs, threads, [&](std::size_t job) {
        const std::size_t i = job / repeats;
        const auto shadow = acquire_shadow(setup.state, c.shots[i], repeat_seed(c.seed, i, job % repeats));
        record(job, random_eval->evaluate(shadow));
      });
    } else {
      if (!expanded) expanded.emplace(setup.functionals, q);
      const auto& ex = *expanded;
      if (method == Method::Derandomized) {
        const auto strings = strings_of(ex.carrier);
        const auto weights = magnitudes_of(ex.carrier);
        for (std::size_t i = 0; i < c.shots.size(); ++i) {
          const MeasurementPlan plan = derandomize_plan(strings, weights, c.shots[i], c.derandomize);
          parallel_for(repeats, threads, [&](std::size_t r) {
            const auto shadow = acquire_shadow(setup.state, plan.rounds, repeat_seed(c.seed, i, r));
            std::vector<double> f;
            for (const auto& sum : ex.sums) f.push_back(compatible_count_estimate(shadow, sum).real());
            record(i * repeats + r, f);
          });
        }
      } else {
        const auto groups = method == Method::CountsGrouped ? group_qwc_rlf(ex.carrier)
                                                            : singleton_groups(ex.carrier);
        parallel_for(jobs, threads, [&](std::size_t job) {
          const std::size_t i = job / repeats;
          const auto shots = allocate_shots(groups, ex.carrier, c.shots[i], c.allocation);
          const auto terms = direct_counts_terms(setup.state, groups, ex.carrier, shots,
                                                 repeat_seed(c.seed, i, job % repeats));
          record(job, ex.combine(terms));
        });
      }
    }

    for (std::size_t k = 0; k < setup.quantities.size(); ++k) {
      for (std::size_t i = 0; i < c.shots.size(); ++i) {
        std::vector<double> samples;
        for (std::size_t r = 0; r < repeats; ++r) {
          const auto& v = values[i * repeats + r][k];
          if (v) samples.push_back(*v);
        }
        result.rows.push_back(summarize(to_string(method) + ":" + setup.quantities[k].name,
                                        c.shots[i], std::move(samples),
                                        setup.quantities[k].oracle, c.seed));
      }
    }
  }
  for (const auto& row : setup.extra_rows) result.rows.push_back(row);
  return result;
}

std::string to_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out.precision(17);
  out << "method,shots,repeat_count,mean,stddev,oracle,seed\n";
  for (const auto& row : result.rows) {
    out << row.method << ',' << row.shots << ',' << row.repeat_count << ',' << row.mean << ','
        << row.stddev << ',' << row.oracle << ',' << row.seed << '\n';
  }
  return out.str();
}

}  // namespace shadowsr
