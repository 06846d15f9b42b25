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

#include <optional>
#include <string>
#include <vector>

#include "qudit/compiler.hpp"

namespace qudit {

/// Timing and coherence data for one device. Durations are in nanoseconds.
/// Absent data is encoded as +inf (T1) or NaN (T2).
struct DeviceModel {
  int dim = 2;
  std::vector<double> t1_ns;     ///< size d−1, levels |1⟩..|d−1⟩
  std::vector<double> t2_ns;     ///< size d−1, pairs (j, j+1); NaN when unknown
  std::vector<double> pulse_ns;  ///< size d−1, π/2 duration per adjacent pair
  double buffer_ns = 0.0;

  /// No decay, no dephasing, zero durations.
  static DeviceModel ideal(int d);
  void validate() const;

  /// Pure-dephasing rate (1/ns) for the adjacent pair (j, j+1), from
  /// 1/T_φ = 1/T2 − (1/T1_j + 1/T1_{j+1})/2; zero when T2 is unknown.
  double dephasing_rate(int j) const;
  /// Wall-clock time of one pulse including the trailing buffer.
  double pulse_duration(const PulseOp& op) const;
};

struct NoiseChannel {
  std::vector<Matrix> kraus_ops;

  Matrix apply(const Matrix& rho) const;
  /// ‖Σ K†K − I‖_max.
  double tp_deviation() const;
};

struct ReadoutModel {
  Matrix confusion;  ///< real, row-stochastic; row = prepared, column = detected

  static ReadoutModel ideal(int d);
  int dim() const { return static_cast<int>(confusion.rows()); }
  void validate() const;
};

/// Extra channel injected after every pulse, or once per π/2-equivalent
/// quarter turn when `per_half_pi` is set.
struct ExtraNoise {
  NoiseChannel channel;
  bool per_half_pi = false;
};

NoiseChannel amplitude_damping(const DeviceModel& dev, double dt_ns);
NoiseChannel dephasing(const DeviceModel& dev, double dt_ns);
/// ρ ↦ (1−p)ρ + p·I/d via Weyl-operator Kraus set.
NoiseChannel depolarizing(int d, double p);
/// Generalized shift X|s⟩ = |s+1⟩ and clock Z|s⟩ = ω^s|s⟩.
Matrix shift_matrix(int d);
Matrix clock_matrix(int d);

PureState simulate_ideal(const CompiledCircuit& c, const PureState& initial);
DensityMatrix simulate_noisy(const CompiledCircuit& c, const DensityMatrix& initial,
                             const DeviceModel& device,
                             const std::optional<ExtraNoise>& extra = std::nullopt);
/// Free evolution for `duration_ns`, split into `slices` decay steps.
DensityMatrix idle(const DensityMatrix& rho, const DeviceModel& device,
                   double duration_ns, int slices);

std::vector<double> apply_readout(const std::vector<double>& probs, const ReadoutModel& r);
/// Simplex-constrained least squares: argmin ‖q·C − counts/N‖₂, q ≥ 0, Σq = 1.
std::vector<double> bayes_correct(const std::vector<long>& counts, const ReadoutModel& r);

/// Device and readout pair loaded from the JSON configuration format.
struct DeviceConfig {
  DeviceModel device;
  ReadoutModel readout;
};

/// Execution target: exact unitary evolution with perfect readout, or the
/// device noise model followed by readout confusion.
struct Backend {
  bool noisy = false;
  DeviceModel device;
  ReadoutModel readout;

  static Backend ideal(int d);
  static Backend from_config(const DeviceConfig& cfg);
  int dim() const { return device.dim; }
  DensityMatrix evolve(const CompiledCircuit& c, const DensityMatrix& rho) const;
  /// Detected populations, including readout confusion when noisy.
  std::vector<double> measure(const DensityMatrix& rho) const;
};

DeviceConfig load_device(const std::string& path);
DeviceConfig parse_device(const std::string& json_text);
std::string device_to_json(const DeviceConfig& cfg);

}  // namespace qudit
