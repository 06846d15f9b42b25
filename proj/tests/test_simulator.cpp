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

#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "qudit/experiments.hpp"
#include "qudit/simulator.hpp"

using namespace qudit;

namespace {

const std::string kDevice4 = std::string(QUDIT_DATA_DIR) + "/devices/transmon_d4.json";
const std::string kDevice3 = std::string(QUDIT_DATA_DIR) + "/devices/transmon_d3.json";

DeviceModel lossless(int d, double pulse_ns) {
  DeviceModel dev = DeviceModel::ideal(d);
  dev.pulse_ns.assign(d - 1, pulse_ns);
  dev.buffer_ns = 10.0;
  return dev;
}

}  // namespace

TEST_CASE("ideal Grover search finds every label") {
  for (int label = 0; label < 4; ++label) {
    const auto out = simulate_ideal(grover_circuit(label), PureState::basis(4, 0));
    const auto p = measure_probs(out);
    CHECK(p[label] == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("ideal DFT4 on |0> gives the uniform superposition") {
  const auto out = simulate_ideal(decompose_bubbling(dft_matrix(4)), PureState::basis(4, 0));
  const Vector expect = dft_matrix(4).col(0);
  const cplx overlap = expect.dot(out.amplitudes());
  CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-12));
  for (double p : measure_probs(out)) CHECK(p == doctest::Approx(0.25));
}

TEST_CASE("ideal simulation equals the compiled unitary") {
  Rng rng(31);
  for (int d = 2; d <= 5; ++d) {
    const Matrix u = haar_unitary(d, rng);
    const auto c = decompose_normal(u);
    const auto out = simulate_ideal(c, PureState::basis(d, d - 1));
    const Vector expect = recompose(c).col(d - 1);
    CHECK(max_abs(Vector(out.amplitudes() - expect)) < 1e-12);
  }
}

TEST_CASE("noisy simulation with infinite lifetimes equals ideal") {
  Rng rng(32);
  const Matrix u = haar_unitary(4, rng);
  const auto c = decompose_bubbling(u);
  const auto rho0 = DensityMatrix::pure(PureState::basis(4, 1));
  const auto noisy = simulate_noisy(c, rho0, lossless(4, 40.0));
  const Vector psi = recompose(c).col(1);
  CHECK(max_abs(Matrix(noisy.matrix() - psi * psi.adjoint())) < 1e-12);
}

TEST_CASE("idling for one T1 leaves e^-1 in the excited level") {
  DeviceModel dev = DeviceModel::ideal(2);
  dev.t1_ns = {1000.0};
  const auto out = idle(DensityMatrix::pure(PureState::basis(2, 1)), dev, 1000.0, 50);
  CHECK(out.matrix()(1, 1).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(out.matrix()(0, 0).real() == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("amplitude damping cascades down one level at a time") {
  DeviceModel dev = DeviceModel::ideal(3);
  dev.t1_ns = {std::numeric_limits<double>::infinity(), 500.0};
  const auto out = idle(DensityMatrix::pure(PureState::basis(3, 2)), dev, 500.0, 1);
  CHECK(out.matrix()(2, 2).real() == doctest::Approx(std::exp(-1.0)));
  CHECK(out.matrix()(1, 1).real() == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(std::abs(out.matrix()(0, 0)) < 1e-15);
}

TEST_CASE("pure dephasing decays coherences at 1/T2") {
  DeviceModel dev = DeviceModel::ideal(2);
  dev.t2_ns = {2000.0};
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto out = idle(DensityMatrix::pure(PureState(plus)), dev, 1000.0, 7);
  CHECK(std::abs(out.matrix()(0, 1)) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-12));
  CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("depolarizing channel has the closed form (1-p)rho + p I/d") {
  Rng rng(33);
  for (int d = 2; d <= 4; ++d) {
    const auto rho = random_density(d, rng);
    const auto ch = depolarizing(d, 0.3);
    CHECK(ch.tp_deviation() < 1e-12);
    const Matrix expect = 0.7 * rho.matrix() + 0.3 * identity(d) / static_cast<double>(d);
    CHECK(max_abs(Matrix(ch.apply(rho.matrix()) - expect)) < 1e-12);
  }
  CHECK_THROWS_AS(depolarizing(3, 1.5), ValidationError);
}

TEST_CASE("damping and dephasing channels are trace preserving") {
  const auto cfg = load_device(kDevice4);
  for (double dt : {1.0, 100.0, 1e5}) {
    CHECK(amplitude_damping(cfg.device, dt).tp_deviation() < 1e-12);
    CHECK(dephasing(cfg.device, dt).tp_deviation() < 1e-12);
  }
}

TEST_CASE("readout reproduces the confusion rows of the four-level device") {
  const auto cfg = load_device(kDevice4);
  const auto r0 = apply_readout({1, 0, 0, 0}, cfg.readout);
  CHECK(r0[0] == doctest::Approx(0.99104));
  CHECK(r0[1] == doctest::Approx(0.00831));
  CHECK(r0[2] == doctest::Approx(0.00060));
  CHECK(r0[3] == doctest::Approx(0.00005));
  CHECK(apply_readout({0, 0, 0, 1}, cfg.readout)[3] == doctest::Approx(0.91112));
  const auto ideal = apply_readout({0.1, 0.2, 0.3, 0.4}, ReadoutModel::ideal(4));
  CHECK(ideal[2] == doctest::Approx(0.3));
}

TEST_CASE("device files validate") {
  const auto d3 = load_device(kDevice3);
  CHECK(d3.device.dim == 3);
  CHECK(d3.readout.dim() == 3);
  // Missing fields default to a lossless device with perfect readout.
  const auto minimal = parse_device("{\"dim\": 3}");
  CHECK(std::isinf(minimal.device.t1_ns[1]));
  CHECK(minimal.readout.confusion(2, 2).real() == 1.0);
  CHECK_THROWS_AS(parse_device("{\"dim\": 3, \"t1_ns\": [1.0]}"), ValidationError);
  CHECK_THROWS_AS(parse_device("{\"dim\": 2, \"confusion\": [[0.5, 0.6], [0, 1]]}"),
                  ValidationError);
  CHECK_THROWS_AS(parse_device("{dim: 3"), ValidationError);
  CHECK_THROWS(load_device("/nonexistent/device.json"));
}

TEST_CASE("Bayes correction examples") {
  const auto cfg = load_device(kDevice4);
  const std::vector<double> truth{0.1, 0.2, 0.3, 0.4};
  const auto observed = apply_readout(truth, cfg.readout);
  std::vector<long> counts;
  for (double p : observed) counts.push_back(std::lround(p * 1e8));
  const auto fixed = bayes_correct(counts, cfg.readout);
  for (int k = 0; k < 4; ++k) CHECK(fixed[k] == doctest::Approx(truth[k]).epsilon(1e-6));
  const auto plain = bayes_correct({10, 30, 0, 60}, ReadoutModel::ideal(4));
  CHECK(plain[1] == doctest::Approx(0.3));
  // Counts that would invert to negative populations are projected onto the simplex.
  const auto clipped = bayes_correct({1000, 0, 0, 0}, cfg.readout);
  double total = 0.0;
  for (double p : clipped) {
    CHECK(p >= 0.0);
    total += p;
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK_THROWS_AS(bayes_correct({0, 0, 0, 0}, cfg.readout), ValidationError);
}

TEST_CASE("noisy states keep unit trace and stay positive") {
  const auto cfg = load_device(kDevice4);
  Rng rng(34);
  for (int t = 0; t < 10; ++t) {
    const auto c = decompose_bubbling(haar_unitary(4, rng));
    const auto out = simulate_noisy(c, random_density(4, rng), cfg.device);
    CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(out.min_eigenvalue() > -1e-12);
    const auto probs = apply_readout(measure_probs(out), cfg.readout);
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("backend dispatch") {
  const auto cfg = load_device(kDevice4);
  const auto noisy = Backend::from_config(cfg);
  const auto ideal = Backend::ideal(4);
  CHECK(noisy.noisy);
  CHECK_FALSE(ideal.noisy);
  const auto c = grover_circuit(1);
  const auto rho0 = DensityMatrix::pure(PureState::basis(4, 0));
  CHECK(ideal.measure(ideal.evolve(c, rho0))[1] == doctest::Approx(1.0));
  const double p = noisy.measure(noisy.evolve(c, rho0))[1];
  CHECK(p < 0.99);
  CHECK(p > 0.8);
}
