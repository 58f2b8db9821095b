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
#include "shadowsr/io.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "shadowsr/errors.hpp"

namespace shadowsr::io {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::map<std::string, std::string> fields;
  std::istringstream tokens(line);
  std::string token;
  while (tokens >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("malformed header token '" + token + "'");
    }
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return fields;
}

std::uint64_t header_number(const std::map<std::string, std::string>& header,
                            const std::string& key) {
  const auto it = header.find(key);
  if (it == header.end()) throw ParseError("header lacks '" + key + "='");
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size() || it->second.empty() || it->second[0] == '-') {
    throw ParseError("header field '" + key + "' is not a non-negative integer");
  }
  return value;
}

std::string basis_line(const std::vector<Basis>& bases) {
  std::string s;
  for (auto it = bases.rbegin(); it != bases.rend(); ++it) s += to_char(*it);
  return s;
}

std::vector<Basis> parse_bases(const std::string& text, int q) {
  if (text.size() != static_cast<std::size_t>(q)) {
    throw ParseError("basis line '" + text + "' does not have " +
                     std::to_string(q) + " letters");
  }
  std::vector<Basis> bases(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    try {
      bases[text.size() - 1 - i] = basis_from_char(text[i]);
    } catch (const std::exception&) {
      throw ParseError("invalid basis letter in '" + text + "'");
    }
  }
  return bases;
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

int doubled(const json& j, const char* key) {
  const double v = field<double>(j, key);
  const double twice = 2.0 * v;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) {
    throw ParseError(std::string("'") + key + "' must be an integer or half-integer");
  }
  return static_cast<int>(rounded);
}

}  // namespace

std::string observable_to_json(const WeightedPauliSum& obs) {
  json out = json::array();
  for (const auto& t : obs.terms()) {
    out.push_back({{"coeff_re", t.coefficient.real()},
                   {"coeff_im", t.coefficient.imag()},
                   {"string", t.string.letter_string()}});
  }
  return out.dump(2);
}

WeightedPauliSum observable_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array() || j.empty()) {
    throw ParseError("observable JSON must be a non-empty array of terms");
  }
  std::vector<WeightedPauliSum::Term> terms;
  int q = -1;
  for (const auto& entry : j) {
    if (!entry.is_object()) throw ParseError("observable term must be an object");
    const auto letters = field<std::string>(entry, "string");
    PauliString s(1);
    try {
      s = PauliString::parse(letters);
    } catch (const std::exception& e) {
      throw ParseError("invalid Pauli string '" + letters + "': " + e.what());
    }
    if (q >= 0 && s.num_qubits() != q) {
      throw ParseError("observable terms act on different qubit counts");
    }
    q = s.num_qubits();
    const double im = entry.contains("coeff_im") ? field<double>(entry, "coeff_im") : 0.0;
    terms.push_back({Complex{field<double>(entry, "coeff_re"), im}, s});
  }
  return WeightedPauliSum(q, terms);
}

std::string state_to_json(const Statevector& state) {
  json amps = json::array();
  for (Eigen::Index k = 0; k < state.amplitudes().size(); ++k) {
    const Complex a = state.amplitudes()(k);
    amps.push_back({a.real(), a.imag()});
  }
  return amps.dump();
}

Statevector state_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (j.is_object() && !j.contains("amplitudes")) throw ParseError("state object needs 'amplitudes'");
  const json& amps = j.is_object() ? j.at("amplitudes") : j;
  if (!amps.is_array() || amps.empty()) throw ParseError("amplitudes must be a non-empty array");
  const std::size_t n = amps.size();
  if (!std::has_single_bit(n) || n < 2) {
    throw ParseError("amplitude count must be a power of two >= 2");
  }
  const int q = std::countr_zero(n);
  if (j.is_object() && j.contains("num_qubits") && field<int>(j, "num_qubits") != q) {
    throw ParseError("num_qubits does not match the amplitude count");
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const json& a = amps[k];
    if (a.is_number()) {
      v(static_cast<Eigen::Index>(k)) = a.get<double>();
    } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
      v(static_cast<Eigen::Index>(k)) = Complex{a[0].get<double>(), a[1].get<double>()};
    } else {
      throw ParseError("amplitude must be a number or a [re, im] pair");
    }
  }
  if (!(v.norm() > 0.0) || !std::isfinite(v.norm())) throw ParseError("state has zero or non-finite norm");
  return Statevector::normalized(q, std::move(v));
}

void write_shadow(std::ostream& out, const ClassicalShadow& shadow) {
  out << "q=" << shadow.num_qubits() << " M=" << shadow.size()
      << " seed=" << shadow.seed();
  if (shadow.source() == BasisSource::Prescribed) out << " bases=prescribed";
  out << '\n';
  for (const auto& snap : shadow.snapshots()) {
    out << basis_line(snap.bases) << ' ';
    for (auto it = snap.outcome.rbegin(); it != snap.outcome.rend(); ++it) {
      out << static_cast<char>('0' + *it);
    }
    out << '\n';
  }
}

ClassicalShadow read_shadow(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("shadow file is empty");
  const auto header = parse_header(line);
  const auto q = static_cast<int>(header_number(header, "q"));
  const auto m = header_number(header, "M");
  const auto seed = header_number(header, "seed");
  if (q < 1) throw ParseError("shadow header needs q >= 1");
  BasisSource source = BasisSource::UniformRandom;
  if (const auto it = header.find("bases"); it != header.end()) {
    if (it->second == "prescribed") {
      source = BasisSource::Prescribed;
    } else if (it->second != "random") {
      throw ParseError("unknown bases mode '" + it->second + "'");
    }
  }
  std::vector<Snapshot> snapshots;
  while (next_content_line(in, line)) {
    std::istringstream fields(line);
    std::string bases_text;
    std::string bits_text;
    std::string extra;
    if (!(fields >> bases_text >> bits_text) || (fields >> extra)) {
      throw ParseError("snapshot line must be '<bases> <bits>': '" + line + "'");
    }
    Snapshot snap{parse_bases(bases_text, q), {}};
    if (bits_text.size() != static_cast<std::size_t>(q)) {
      throw ParseError("outcome '" + bits_text + "' does not have " +
                       std::to_string(q) + " bits");
    }
    snap.outcome.resize(bits_text.size());
    for (std::size_t i = 0; i < bits_text.size(); ++i) {
      const char c = bits_text[i];
      if (c != '0' && c != '1') throw ParseError("outcome bits must be 0 or 1");
      snap.outcome[bits_text.size() - 1 - i] = static_cast<std::uint8_t>(c - '0');
    }
    snapshots.push_back(std::move(snap));
  }
  if (snapshots.size() != m) {
    throw ParseError("header announces " + std::to_string(m) + " snapshots, found " +
                     std::to_string(snapshots.size()));
  }
  return ClassicalShadow(q, std::move(snapshots), seed, source);
}

void write_plan(std::ostream& out, const MeasurementPlan& plan) {
  out << "q=" << plan.num_qubits << " M=" << plan.rounds.size()
      << " provenance=" << to_string(plan.provenance) << '\n';
  for (const auto& bases : plan.rounds) out << basis_line(bases) << '\n';
}

MeasurementPlan read_plan(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("plan file is empty");
  const auto header = parse_header(line);
  MeasurementPlan plan;
  plan.num_qubits = static_cast<int>(header_number(header, "q"));
  if (plan.num_qubits < 1) throw ParseError("plan header needs q >= 1");
  const auto m = header_number(header, "M");
  if (const auto it = header.find("provenance"); it != header.end()) {
    plan.provenance = provenance_from_string(it->second);
  }
  while (next_content_line(in, line)) {
    std::istringstream fields(line);
    std::string text;
    fields >> text;
    plan.rounds.push_back(parse_bases(text, plan.num_qubits));
  }
  if (plan.rounds.size() != m) {
    throw ParseError("header announces " + std::to_string(m) + " rounds, found " +
                     std::to_string(plan.rounds.size()));
  }
  return plan;
}

SymmetryLabel projector_label_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("projector spec must be a JSON object");
  const auto type = field<std::string>(j, "type");
  if (type == "identity") return IdentityLabel{};
  if (type == "parity") return ParityLabel{field<int>(j, "epsilon")};
  if (type == "number") return NumberLabel{field<int>(j, "n0")};
  if (type == "spin") {
    const int mesh = j.contains("n_p") ? field<int>(j, "n_p") : 10;
    return SpinLabel{doubled(j, "s"), doubled(j, "m"), mesh};
  }
  throw ParseError("unknown projector type '" + type + "'");
}

std::string projector_label_to_json(const SymmetryLabel& label) {
  struct Visitor {
    json operator()(const IdentityLabel&) const { return {{"type", "identity"}}; }
    json operator()(const ParityLabel& p) const {
      return {{"type", "parity"}, {"epsilon", p.epsilon}};
    }
    json operator()(const NumberLabel& n) const {
      return {{"type", "number"}, {"n0", n.n0}};
    }
    json operator()(const SpinLabel& s) const {
      return {{"type", "spin"}, {"s", 0.5 * s.two_s}, {"m", 0.5 * s.two_m},
              {"n_p", s.mesh_points}};
    }
  };
  return std::visit(Visitor{}, label).dump();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw ParseError("write to '" + path.string() + "' failed");
}

}  // namespace shadowsr::io
