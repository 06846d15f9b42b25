// Copyright 2026 The Qudit Toolkit Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qudit/compiler.hpp"
#include "qudit/simulator.hpp"

namespace qudit {

enum class Ansatz { h2_single_theta, hehp_two_theta };

std::string to_string(Ansatz a);
Ansatz ansatz_from_string(const std::string& s);
int parameter_count(Ansatz a);

/// Two-qubit Hamiltonian Σ a_l S_l on the four levels |q1 q0⟩ → |2·q1 + q0⟩.
struct VqeProblem {
  std::string molecule;
  double bond_distance = 0.0;  ///< inert metadata
  std::string units;
  std::string source;
  Ansatz ansatz = Ansatz::h2_single_theta;
  /// Label "AB" applies A to q1 and B to q0; "I" is the constant term.
  std::vector<std::pair<std::string, double>> coefficients;

  void validate() const;
};

VqeProblem parse_problem(const std::string& json_text);
VqeProblem load_problem(const std::string& path);
std::string problem_to_json(const VqeProblem& p);

/// 4×4 operator of a Pauli label, or I for "I"/"II".
Matrix pauli_string(const std::string& label);
Matrix hamiltonian(const VqeProblem& p);
double ground_energy(const VqeProblem& p);

/// Pulse circuit whose action on |0⟩ prepares the ansatz state.
CompiledCircuit ansatz_circuit(Ansatz a, const std::vector<double>& params);
/// Reference state: e^{iθXY}|11⟩ or exp[i(θ₁/2)(IY+YI) + i(θ₂/2)(XY+YX)]|11⟩.
Vector ansatz_reference_state(Ansatz a, const std::vector<double>& params);

/// Basis change taking the eigenbasis of `label` to the computational basis.
Matrix measurement_basis(const std::string& label);
/// ±1 eigenvalue of `label` on each level after measurement_basis.
std::vector<int> eigen_signs(const std::string& label);

struct VqeEval {
  std::vector<double> params;
  std::vector<double> expectations;  ///< per coefficient, 1 for the constant term
  double energy = 0.0;
  double variance = 0.0;  ///< binomial propagation; 0 in exact mode
};

/// Energy estimate at `params`. shots = 0 uses exact populations.
class VqeEvaluator {
 public:
  VqeEvaluator(VqeProblem problem, Backend backend, long shots, std::uint64_t seed);
  VqeEval operator()(const std::vector<double>& params);
  const VqeProblem& problem() const { return problem_; }
  long shots() const { return shots_; }

 private:
  VqeProblem problem_;
  Backend backend_;
  long shots_;
  Rng rng_;
  std::vector<CompiledCircuit> meas_;
};

struct VqeResult {
  std::vector<double> params;
  double energy = 0.0;  ///< exact minimum, or the surrogate estimate with shots
  double best_sampled = 0.0;
  std::vector<VqeEval> evaluations;
};

/// Grid scan over [−π/2, π/2] (64 points, or 32×32), then per-axis golden
/// section. With shots, the energy is read from a surrogate fitted to every
/// evaluation: c₀ + c₁cos2θ + c₂sin2θ for the single-angle ansatz, a
/// weighted local quadratic for the two-angle one.
VqeResult vqe_minimize(const VqeProblem& problem, const Backend& backend, long shots,
                       std::uint64_t seed);

void write_vqe_csv(std::ostream& os, const VqeProblem& p, const std::vector<VqeEval>& evals);
std::vector<VqeEval> read_vqe_csv(std::istream& is, const VqeProblem& p);

}  // namespace qudit
