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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qudit/compiler.hpp"
#include "qudit/simulator.hpp"

namespace qudit {

// ------------------------------------------------------------- cliffords ----

/// F (DFT), P, Z and X for dimension d, in that order.
std::array<Matrix, 4> clifford_generators(int d);

/// Global-phase representative: the first entry (row-major) with modulus
/// above 1e-6 is made positive real.
Matrix canonical_phase(const Matrix& u);

struct CliffordGroup {
  int dim = 0;
  /// Levels the elements act on nontrivially; empty for the full space.
  std::vector<int> support;
  std::vector<Matrix> elements;  ///< canonical representatives; element 0 is I
  std::vector<CompiledCircuit> circuits;
  std::vector<PulseStats> pulse_costs;

  int size() const { return static_cast<int>(elements.size()); }
  /// Index of the element equal to `u` up to phase (on the support), or −1.
  int index_of(const Matrix& u) const;
  int inverse(int i) const;
  double mean_half_pi_count() const;
  double mean_su2_count() const;

  /// Adds a representative and indexes it; returns its position.
  int append(const Matrix& u);
  /// Rebuilds the lookup table after `elements` is edited directly.
  void reindex();

 private:
  std::map<std::vector<long long>, int> lookup_;
  std::vector<long long> key(const Matrix& u) const;
};

/// Breadth-first closure of the generators modulo global phase, compiled
/// with decompose_bubbling. Throws when more than `max_elements` appear.
CliffordGroup generate_group(int d, int max_elements = 100000);

/// The 24 single-qubit Cliffords embedded on levels (m, n) of a d-level
/// system, compiled to adjacent pulses.
CliffordGroup subspace_clifford_group(int d, int m, int n);

/// Checks that every product of two elements is in the group. With
/// `sample_pairs` > 0 only that many random pairs are checked.
bool verify_closure(const CliffordGroup& g, long sample_pairs = 0, std::uint64_t seed = 1);

void save_group(const CliffordGroup& g, const std::string& path);
CliffordGroup load_group(const std::string& path);
std::string group_to_json(const CliffordGroup& g);
CliffordGroup group_from_json(const std::string& text);

// -------------------------------------------------------------------- rb ----

struct RbSequence {
  int length = 0;
  int seq_index = 0;
  std::vector<int> elements;  ///< L random elements followed by the inverse
};

std::vector<RbSequence> rb_sequences(const CliffordGroup& g, const std::vector<int>& lengths,
                                     int n_seq, std::uint64_t seed);

/// Concatenated pulse circuit of a sequence, phases swept to the end.
CompiledCircuit rb_circuit(const CliffordGroup& g, const RbSequence& s);

struct RbRecord {
  int length = 0;
  int seq_index = 0;
  std::vector<double> pops;
};

/// Density-matrix simulation of each sequence from |initial⟩, recording all
/// populations after readout. shots = 0 keeps exact populations.
std::vector<RbRecord> rb_simulate(const CliffordGroup& g, const std::vector<RbSequence>& seqs,
                                  const DeviceModel& device, const ReadoutModel& readout,
                                  const std::optional<ExtraNoise>& extra, int initial = 0,
                                  long shots = 0, std::uint64_t seed = 1);

/// Mean population of `level` per length.
std::map<int, double> rb_survival(const std::vector<RbRecord>& records, int level = 0);

struct RbFit {
  double amplitude = 0.0;
  double offset = 0.0;
  double decay = 1.0;
  double amplitude_stderr = 0.0;
  double offset_stderr = 0.0;
  double decay_stderr = 0.0;
  double error_per_clifford = 0.0;
  double error_per_clifford_stderr = 0.0;
  double error_per_half_pi = 0.0;
  double error_per_half_pi_stderr = 0.0;
};

/// Least-squares fit of A·p^L + B. `mean_half_pi` converts the Clifford
/// error into a per-π/2 error; `d` fixes r = (1 − p)(d − 1)/d.
RbFit rb_fit(const std::map<int, double>& survival, int d, double mean_half_pi);

/// Per-π/2 depolarizing channel with average gate error ε.
ExtraNoise depolarizing_per_half_pi(int d, double eps);

void write_rb_csv(std::ostream& os, const std::vector<RbRecord>& records);
std::vector<RbRecord> read_rb_csv(std::istream& is);

}  // namespace qudit
