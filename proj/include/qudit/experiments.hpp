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
#include <string>
#include <vector>

#include "qudit/compiler.hpp"
#include "qudit/simulator.hpp"

namespace qudit {

/// DFT_d(j, k) = e^{2πijk/d}/√d.
Matrix dft_matrix(int d);

// ---------------------------------------------------------------- parity ----

/// Every permutation of d levels in lexicographic order of the image.
std::vector<Permutation> all_permutations(int d);

/// Cyclic subgroup generated by j ↦ (j + q) mod d with q = d/gcd(m, d).
std::vector<Permutation> parity_subgroup(int m, int d);

enum class ParityClass { even, odd, coset_ambiguous, not_cyclic };
std::string to_string(ParityClass c);

struct ParityTask {
  int d = 3;
  int m = 1;
  Permutation permutation;
};

struct ParityVerdict {
  int readout_peak = 0;
  double peak_population = 0.0;
  std::vector<double> populations;
  ParityClass classification = ParityClass::not_cyclic;
  /// Every permutation giving the same certain readout; filled when ambiguous.
  std::vector<Permutation> coset;
};

/// Circuit DFT → U_k → DFT† acting on |m⟩, with U_k from compile_permutation.
CompiledCircuit parity_circuit(const ParityTask& task);
ParityVerdict run_parity(const ParityTask& task, const Backend& backend);
/// Permutations whose ideal parity run lands on `level` with certainty.
std::vector<Permutation> recognized_permutations(int d, int m, int level);

// ---------------------------------------------------------------- grover ----

Matrix grover_hadamard();
Matrix grover_oracle(int label);
Matrix grover_diffusion();
/// H, oracle and diffusion compiled separately with decompose_bubbling.
CompiledCircuit grover_circuit(int label);

/// ⟨X⟩ = Σ_m m·P_m.
double level_expectation(const std::vector<double>& probs);

struct GroverResult {
  int label = 0;
  std::vector<double> probs;  ///< detected populations before sampling
  std::vector<long> counts;
  double x_raw = 0.0;
  double x_corrected = 0.0;
};

GroverResult grover_run(int label, const Backend& backend, long shots, Rng& rng);

/// Training statistics of ⟨X⟩ over repeated runs for one label.
struct GroverBand {
  int label = 0;
  double raw_mean = 0.0;
  double raw_sigma = 0.0;
  double corrected_mean = 0.0;
  double corrected_sigma = 0.0;
  /// ⟨X⟩ from the exact detected populations.
  double expected_raw = 0.0;
};

std::vector<GroverBand> grover_bands(const Backend& backend, int repetitions, long shots,
                                     std::uint64_t seed);

}  // namespace qudit
