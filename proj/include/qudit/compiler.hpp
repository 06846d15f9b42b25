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

#include <iosfwd>
#include <string>
#include <vector>

#include "qudit/gates.hpp"

namespace qudit {

enum class Strategy { normal, bubbling };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct CompiledCircuit {
  int dim = 2;
  std::vector<PulseOp> pulses;  ///< execution order
  PhaseOp leading;              ///< applied after the last pulse
  Strategy strategy = Strategy::normal;
  bool adjacent_only = false;
  /// Number of two-level factors produced by elimination, before simplification.
  int su2_factors = 0;

  static CompiledCircuit empty(int d);
};

struct PulseStats {
  int su2_count = 0;
  int half_pi_count = 0;
  int phase_count = 0;
};

struct Permutation {
  int dim = 0;
  std::vector<int> image;  ///< U|j⟩ = |image[j]⟩

  static Permutation identity(int d);
  Matrix matrix() const;
  void validate() const;
};

/// Column-wise elimination against a fixed pivot row.
CompiledCircuit decompose_normal(const Matrix& u);
/// Elimination with adjacent partner rows only; every factor acts on (j, j+1).
CompiledCircuit decompose_bubbling(const Matrix& u);
CompiledCircuit decompose(const Matrix& u, Strategy s);

CompiledCircuit compile_to_adjacent(const CompiledCircuit& c);
Matrix recompose(const CompiledCircuit& c);
/// Runs the circuits one after another; intermediate phases are swept to
/// the end through the later pulses.
CompiledCircuit concatenate(const std::vector<CompiledCircuit>& parts, int d);

int inversion_count(const Permutation& p);
/// Bubble-sort construction from adjacent π pulses.
CompiledCircuit compile_permutation(const Permutation& p);

/// Quarter-turn count of a single pulse, ⌈|θ|/(π/2)⌉.
int half_pi_units(const PulseOp& op);
PulseStats pulse_stats(const CompiledCircuit& c);

/// Text record format, one factor per line:
///   qudit-circuit v1 dim=<d> strategy=<s> adjacent=<0|1>
///   pulse <m> <n> <theta> <phi>
///   phase <phi_0> ... <phi_{d-1}>
/// Angles are radians with 17 significant digits.
void write_circuit(std::ostream& os, const CompiledCircuit& c);
CompiledCircuit read_circuit(std::istream& is);
std::string circuit_to_string(const CompiledCircuit& c);
CompiledCircuit circuit_from_string(const std::string& s);

/// Formats a double with 17 significant digits.
std::string format_double(double x);

}  // namespace qudit
