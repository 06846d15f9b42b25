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

#include "qudit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qudit {
namespace {

constexpr double kCertain = 1.0 - 1e-9;

}  // namespace

Matrix dft_matrix(int d) {
  if (d < 2) throw DimensionError("dft_matrix: d must be at least 2");
  Matrix f(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) f(j, k) = std::polar(1.0 / std::sqrt(double(d)), 2 * kPi * j * k / d);
  return f;
}

std::vector<Permutation> all_permutations(int d) {
  std::vector<int> img(d);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation{d, img});
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

std::vector<Permutation> parity_subgroup(int m, int d) {
  if (m < 1 || m >= d) throw ValidationError("parity_subgroup: need 1 <= m < d");
  const int q = d / std::gcd(m, d);
  std::vector<Permutation> out;
  for (int shift = 0; shift < d; shift += q) {
    Permutation p{d, std::vector<int>(d)};
    for (int j = 0; j < d; ++j) p.image[j] = (j + shift) % d;
    out.push_back(p);
  }
  return out;
}

std::string to_string(ParityClass c) {
  switch (c) {
    case ParityClass::even:
      return "even";
    case ParityClass::odd:
      return "odd";
    case ParityClass::coset_ambiguous:
      return "coset-ambiguous";
    case ParityClass::not_cyclic:
      return "not-cyclic";
  }
  return "unknown";
}

CompiledCircuit parity_circuit(const ParityTask& task) {
  task.permutation.validate();
  if (task.permutation.dim != task.d) throw DimensionError("parity: permutation dimension");
  const Matrix f = dft_matrix(task.d);
  return concatenate({decompose_bubbling(f), compile_permutation(task.permutation),
                      decompose_bubbling(f.adjoint())},
                     task.d);
}

std::vector<Permutation> recognized_permutations(int d, int m, int level) {
  const Matrix f = dft_matrix(d);
  const Vector in = f * PureState::basis(d, m).amplitudes();
  std::vector<Permutation> out;
  for (const auto& p : all_permutations(d)) {
    const Vector v = f.adjoint() * (p.matrix() * in);
    if (std::norm(v(level)) >= kCertain) out.push_back(p);
  }
  return out;
}

ParityVerdict run_parity(const ParityTask& task, const Backend& backend) {
  const int d = task.d;
  const int m = task.m;
  if (m < 1 || m >= d) throw ValidationError("parity: need 1 <= m < d");
  if (backend.dim() != d) throw DimensionError("parity: backend dimension mismatch");
  const CompiledCircuit c = parity_circuit(task);
  const DensityMatrix out = backend.evolve(c, DensityMatrix::pure(PureState::basis(d, m)));
  ParityVerdict v;
  v.populations = backend.measure(out);
  v.readout_peak = static_cast<int>(
      std::max_element(v.populations.begin(), v.populations.end()) - v.populations.begin());
  v.peak_population = v.populations[v.readout_peak];
  const bool certain = backend.noisy || v.peak_population >= kCertain;
  const bool on_m = v.readout_peak == m;
  const bool on_mirror = v.readout_peak == d - m;
  if (!certain || !(on_m || on_mirror)) {
    v.classification = ParityClass::not_cyclic;
  } else if (std::gcd(m, d) == 1 && m != d - m) {
    v.classification = on_m ? ParityClass::even : ParityClass::odd;
  } else {
    v.classification = ParityClass::coset_ambiguous;
    v.coset = recognized_permutations(d, m, v.readout_peak);
  }
  return v;
}

Matrix grover_hadamard() {
  Matrix h(4, 4);
  h << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
  return 0.5 * h;
}

Matrix grover_oracle(int label) {
  if (label < 0 || label > 3) throw ValidationError("grover: label must be in 0..3");
  Matrix p = identity(4);
  p(label, label) = -1.0;
  return p;
}

Matrix grover_diffusion() {
  Matrix g(4, 4);
  g << -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1;
  return 0.5 * g;
}

CompiledCircuit grover_circuit(int label) {
  return concatenate({decompose_bubbling(grover_hadamard()),
                      decompose_bubbling(grover_oracle(label)),
                      decompose_bubbling(grover_diffusion())},
                     4);
}

double level_expectation(const std::vector<double>& probs) {
  double x = 0.0;
  for (std::size_t m = 0; m < probs.size(); ++m) x += static_cast<double>(m) * probs[m];
  return x;
}

GroverResult grover_run(int label, const Backend& backend, long shots, Rng& rng) {
  if (backend.dim() != 4) throw DimensionError("grover: backend must be four-level");
  if (shots <= 0) throw ValidationError("grover: shots must be positive");
  GroverResult r;
  r.label = label;
  const DensityMatrix out =
      backend.evolve(grover_circuit(label), DensityMatrix::pure(PureState::basis(4, 0)));
  r.probs = backend.measure(out);
  r.counts = sample_shots(r.probs, shots, rng);
  std::vector<double> freq(4);
  for (int k = 0; k < 4; ++k) freq[k] = static_cast<double>(r.counts[k]) / shots;
  r.x_raw = level_expectation(freq);
  r.x_corrected = level_expectation(bayes_correct(r.counts, backend.readout));
  return r;
}

std::vector<GroverBand> grover_bands(const Backend& backend, int repetitions, long shots,
                                     std::uint64_t seed) {
  if (repetitions < 2) throw ValidationError("grover: need at least 2 repetitions");
  Rng rng(seed);
  std::vector<GroverBand> out;
  for (int label = 0; label < 4; ++label) {
    std::vector<double> raw;
    std::vector<double> cor;
    GroverBand b;
    b.label = label;
    for (int r = 0; r < repetitions; ++r) {
      const GroverResult g = grover_run(label, backend, shots, rng);
      raw.push_back(g.x_raw);
      cor.push_back(g.x_corrected);
      b.expected_raw = level_expectation(g.probs);
    }
    auto stats = [](const std::vector<double>& v, double& mean, double& sigma) {
      mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
      double s = 0.0;
      for (double x : v) s += (x - mean) * (x - mean);
      sigma = std::sqrt(s / (v.size() - 1));
    };
    stats(raw, b.raw_mean, b.raw_sigma);
    stats(cor, b.corrected_mean, b.corrected_sigma);
    out.push_back(b);
  }
  return out;
}

}  // namespace qudit
