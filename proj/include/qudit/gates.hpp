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

#include <tuple>
#include <variant>
#include <vector>

#include "qudit/linalg.hpp"

namespace qudit {

/// Two-level rotation R_{m,n}(θ, φ) = exp[−i θ/2 (cos φ σx + sin φ σy)] on {m, n}.
struct PulseOp {
  int m = 0;
  int n = 1;
  double theta = 0.0;
  double phi = 0.0;

  bool adjacent() const { return n == m + 1; }
};

/// Virtual phase gate diag(e^{iφ_k}).
struct PhaseOp {
  std::vector<double> phases;

  static PhaseOp zero(int d) { return PhaseOp{std::vector<double>(d, 0.0)}; }
  int dim() const { return static_cast<int>(phases.size()); }
  /// True when every entry is equal modulo 2π (a global phase at most).
  bool trivial(double tol = 1e-12) const;
};

struct Su2Params {
  int m = 0;
  int n = 1;
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
};

using Op = std::variant<PulseOp, PhaseOp>;

/// Maps x into (−π, π].
double wrap_pi(double x);
/// Maps θ into (−2π, 2π] using the 4π periodicity of R(θ, φ).
double wrap_theta(double theta);
/// Both angles mapped to their canonical ranges.
PulseOp canonical(PulseOp op);

Matrix rotation_matrix(const PulseOp& op, int d);
Matrix phase_matrix(const PhaseOp& p);
Matrix op_matrix(const Op& op, int d);
/// Product of `seq` taken in execution order (first element applied first).
Matrix sequence_matrix(const std::vector<Op>& seq, int d);

/// R(op)·P(p) = P(p)·R(op') with op'.phi = op.phi + φ_m − φ_n.
std::pair<PhaseOp, PulseOp> commute_phase_left(const PulseOp& op, const PhaseOp& p);
/// P(p)·R(op) = R(op')·P(p) with op'.phi = op.phi − φ_m + φ_n.
std::pair<PulseOp, PhaseOp> commute_phase_right(const PhaseOp& p, const PulseOp& op);

/// Adjacent-level pulses (execution order) whose product equals R_{m,n}(θ, φ).
/// Uses R_{m,n} = R_{m,m+1}(−π, π/2)·R_{m+1,n}(θ, φ)·R_{m,m+1}(π, π/2) recursively.
std::vector<PulseOp> expand_nonadjacent(const PulseOp& op);

/// Û₂ = P(Φ¹)·R_{m,n}(θ, π/2)·P(Φ²) with Φ¹ = (−λ/2, λ/2) and
/// Φ² = (δ − φ/2, δ + φ/2) on levels (m, n). Returned in operator order
/// (Φ¹, R, Φ²), so Φ² acts first.
std::tuple<PhaseOp, PulseOp, PhaseOp> su2_effective(const Su2Params& p, int d);

/// Inverse of su2_effective for a 2×2 unitary block acting on (m, n).
Su2Params su2_from_block(const Eigen::Matrix2cd& w, int m, int n);

struct SimplifiedSequence {
  std::vector<PulseOp> pulses;  ///< execution order
  PhaseOp leading;              ///< applied last (leftmost factor)
};

/// Sweeps every phase gate to the output side, merges co-axial neighbours,
/// drops identity pulses and turns 2π pulses into phases. The total unitary
/// P(leading)·R_last···R_first equals the product of `seq` exactly.
SimplifiedSequence simplify_sequence(const std::vector<Op>& seq, int d,
                                     double tol = 1e-10);

}  // namespace qudit
