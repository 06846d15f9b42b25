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

#include <map>
#include <string>
#include <vector>

#include "qudit/compiler.hpp"
#include "qudit/simulator.hpp"

namespace qudit {

// ---------------------------------------------------------------- state ----

/// Measured populations for every basis-change setting.
struct QstRecord {
  int dim = 0;
  std::vector<int> settings;             ///< operator index l of each row
  std::vector<std::vector<double>> probs;  ///< probs[row][k] = P_{l,k}
  long shots = 0;                        ///< per setting; 0 for exact probabilities

  void validate(double tol = 1e-9) const;
};

/// Basis-change operators M_l for d ∈ {3, 4}, in execution order. For d = 3
/// only operators confined to levels {0, 1, 2} are returned; `indices`
/// receives the original operator numbers.
std::vector<CompiledCircuit> qst_measurement_set(int d, std::vector<int>* indices = nullptr);

/// P_{l,k} = ⟨k|M_l ρ M_l†|k⟩ for every setting.
QstRecord qst_forward(const DensityMatrix& rho);
/// Shot-sampled record from exact populations.
QstRecord qst_sample(const QstRecord& exact, long shots, Rng& rng);

/// Least-squares solve of the linear forward model over d² real parameters;
/// the result is Hermitian with unit trace but may be unphysical.
DensityMatrix qst_linear_inversion(const QstRecord& rec);

struct MleResult {
  DensityMatrix rho;
  bool converged = false;
  int iterations = 0;
  std::vector<double> loglik;  ///< one entry per accepted iterate, non-decreasing
};

double qst_loglik(const QstRecord& rec, const Matrix& rho);
MleResult qst_mle(const QstRecord& rec, const DensityMatrix& guess, int max_iter = 20000,
                  double tol = 1e-13);

// -------------------------------------------------------------- process ----

struct GeneratorBasis {
  int dim = 0;
  std::vector<Matrix> matrices;  ///< λ_0 = I, then the SU(d) generators
};

GeneratorBasis sun_generators(int d);

struct ChiMatrix {
  int dim = 0;
  Matrix chi;  ///< d²×d² in the sun_generators basis, λ_0 = I normalization

  /// ‖Σ_{kl} χ_{kl} λ_l†λ_k − I‖_max.
  double tp_deviation(const GeneratorBasis& basis) const;
};

/// Preparation circuits: |a_m⟩ for every level, then |a_{m,n,0..2}⟩ per pair.
std::vector<CompiledCircuit> qpt_prep_set(int d);
/// The pure states those circuits prepare from |0⟩.
std::vector<PureState> qpt_prep_targets(int d);

/// Choi matrix J = Σ_{ab} |a⟩⟨b| ⊗ E(|a⟩⟨b|).
Matrix choi_from_chi(const ChiMatrix& chi, const GeneratorBasis& basis);
ChiMatrix chi_from_choi(const Matrix& choi, const GeneratorBasis& basis);
ChiMatrix chi_of_unitary(const Matrix& u, const GeneratorBasis& basis);
ChiMatrix chi_of_channel(const NoiseChannel& ch, const GeneratorBasis& basis);

/// Nearest completely positive, trace-preserving Choi matrix (Frobenius norm).
Matrix cptp_project(const Matrix& choi, int d, int max_iter = 5000, double tol = 1e-12);

/// Reconstructs χ from the final states of every preparation, keyed by the
/// index into qpt_prep_set. With `refine`, the estimate is projected to CPTP.
ChiMatrix qpt_reconstruct(const std::map<int, DensityMatrix>& finals,
                          const GeneratorBasis& basis, bool refine = true);

/// Entanglement fidelity, computed from χ in the orthonormalized basis.
double process_fidelity(const ChiMatrix& chi_meas, const Matrix& target);

/// Simulates the prep→process→QST pipeline for every preparation and returns
/// the linear-inversion estimates of the final states. `process` is compiled
/// with `strategy`; shots = 0 uses exact populations.
std::map<int, DensityMatrix> simulate_qpt_finals(const Matrix& process, Strategy strategy,
                                                 const Backend& backend, long shots,
                                                 Rng& rng);

/// Populations after basis change `m` on `rho`, through the configured noise.
std::vector<double> measured_populations(const DensityMatrix& rho, const CompiledCircuit& m,
                                         const Backend& backend);

// --------------------------------------------------------- serialization ----

std::string qst_record_to_json(const QstRecord& rec);
QstRecord qst_record_from_json(const std::string& text);
std::string chi_to_json(const ChiMatrix& chi);
ChiMatrix chi_from_json(const std::string& text);

}  // namespace qudit
