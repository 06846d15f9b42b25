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
#include <map>
#include <random>

#include "doctest.h"
#include "qudit/clifford.hpp"

using namespace qudit;

namespace {

const CliffordGroup& group(int d) {
  static std::map<int, CliffordGroup> cache;
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, generate_group(d)).first;
  return it->second;
}

Matrix power(const Matrix& m, int k) {
  Matrix out = identity(static_cast<int>(m.rows()));
  for (int i = 0; i < k; ++i) out = m * out;
  return out;
}

}  // namespace

TEST_CASE("generator examples for the qubit") {
  const auto [f, p, z, x] = clifford_generators(2);
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  CHECK(max_abs(Matrix(f - h / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(p(1, 1) - kI) < 1e-15);
  CHECK(std::abs(z(1, 1) - cplx(-1.0)) < 1e-15);
  CHECK(std::abs(x(0, 1) - cplx(1.0)) < 1e-15);
}

TEST_CASE("generator relations") {
  for (int d = 2; d <= 6; ++d) {
    const auto [f, p, z, x] = clifford_generators(d);
    for (const Matrix* g : {&f, &p, &z, &x}) CHECK(is_unitary(*g, 1e-12));
    CHECK(phase_equal(power(z, d), identity(d)));
    CHECK(phase_equal(power(x, d), identity(d)));
    // Z X = ω X Z.
    CHECK(max_abs(Matrix(z * x - std::polar(1.0, 2 * kPi / d) * x * z)) < 1e-12);
    // The Fourier transform maps the shift onto the clock.
    CHECK(phase_equal(f * x * f.adjoint(), z, 1e-12));
    // ...and the clock onto the inverse shift.
    CHECK(phase_equal(f * z * f.adjoint(), x.adjoint(), 1e-12));
    // The phase gate maps the shift onto a Weyl operator.
    const Matrix pxp = p * x * p.adjoint();
    bool pauli = false;
    for (int a = 0; a < d && !pauli; ++a)
      for (int b = 0; b < d && !pauli; ++b)
        pauli = phase_equal(pxp, power(x, a) * power(z, b), 1e-12);
    CHECK(pauli);
  }
  const auto g3 = clifford_generators(3);
  CHECK(phase_equal(power(g3[2], 3), identity(3)));
}

TEST_CASE("group sizes") {
  CHECK(group(2).size() == 24);
  CHECK(group(3).size() == 216);
  CHECK(group(4).size() == 768);
  CHECK(max_abs(Matrix(group(3).elements[0] - identity(3))) < 1e-12);
}

TEST_CASE("closure: exhaustive for d=3, sampled for d=4") {
  CHECK(verify_closure(group(2)));
  CHECK(verify_closure(group(3)));
  CHECK(verify_closure(group(4), 5000, 7));
}

TEST_CASE("every Weyl operator belongs to the group") {
  for (int d : {3, 4}) {
    const auto& g = group(d);
    const auto gens = clifford_generators(d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) CHECK(g.index_of(power(gens[3], a) * power(gens[2], b)) >= 0);
    CHECK(g.index_of(gens[0]) >= 0);
    CHECK(g.index_of(gens[1]) >= 0);
  }
  Rng rng(51);
  CHECK(group(3).index_of(haar_unitary(3, rng)) == -1);
}

TEST_CASE("inverses and compiled circuits") {
  for (int d : {3, 4}) {
    const auto& g = group(d);
    for (int i = 0; i < g.size(); i += 7) {
      const int j = g.inverse(i);
      REQUIRE(j >= 0);
      CHECK(phase_equal(g.elements[j] * g.elements[i], identity(d), 1e-9));
      CHECK(phase_equal(recompose(g.circuits[i]), g.elements[i], 1e-9));
      CHECK(g.circuits[i].adjacent_only);
      CHECK(g.pulse_costs[i].su2_count == static_cast<int>(g.circuits[i].pulses.size()));
    }
  }
}

TEST_CASE("mean pulse costs") {
  CHECK(group(3).mean_half_pi_count() == doctest::Approx(3.75));
  CHECK(group(4).mean_half_pi_count() == doctest::Approx(25.0 / 3.0));
  CHECK(group(3).mean_su2_count() == doctest::Approx(2.625));
  CHECK(group(4).mean_su2_count() == doctest::Approx(16.0 / 3.0));
}

TEST_CASE("subspace group on two levels of a qutrit") {
  const auto g = subspace_clifford_group(3, 0, 2);
  CHECK(g.size() == 24);
  CHECK(g.support == std::vector<int>{0, 2});
  for (int i = 0; i < g.size(); ++i) {
    CHECK(std::abs(g.elements[i](1, 1) - cplx(1.0)) < 1e-12);
    CHECK(phase_equal(recompose(g.circuits[i]), g.elements[i], 1e-9));
    CHECK(g.inverse(i) >= 0);
  }
  CHECK(verify_closure(g));
  CHECK_THROWS_AS(subspace_clifford_group(3, 2, 1), DimensionError);
}

TEST_CASE("RB sequences multiply to the identity") {
  const auto& g = group(3);
  const auto seqs = rb_sequences(g, {0, 1, 5, 20}, 4, 9);
  CHECK(seqs.size() == 16);
  for (const auto& s : seqs) {
    CHECK(static_cast<int>(s.elements.size()) == s.length + 1);
    Matrix total = identity(3);
    for (int e : s.elements) total = g.elements[e] * total;
    CHECK(phase_equal(total, identity(3), 1e-9));
    CHECK(phase_equal(recompose(rb_circuit(g, s)), identity(3), 1e-9));
  }
  // L = 0 is only the identity element.
  CHECK(seqs[0].elements == std::vector<int>{0});
  const auto again = rb_sequences(g, {0, 1, 5, 20}, 4, 9);
  for (std::size_t i = 0; i < seqs.size(); ++i) CHECK(seqs[i].elements == again[i].elements);
  CHECK(rb_sequences(g, {5}, 1, 10)[0].elements != rb_sequences(g, {5}, 1, 11)[0].elements);
}

TEST_CASE("noiseless RB keeps unit survival and fits p = 1") {
  const auto& g = group(3);
  const auto seqs = rb_sequences(g, {1, 4, 16, 32}, 3, 2);
  const auto rec = rb_simulate(g, seqs, DeviceModel::ideal(3), ReadoutModel::ideal(3), std::nullopt);
  const auto surv = rb_survival(rec);
  for (const auto& [len, v] : surv) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
  const auto fit = rb_fit(surv, 3, g.mean_half_pi_count());
  CHECK(fit.decay == doctest::Approx(1.0));
  CHECK(fit.error_per_half_pi == doctest::Approx(0.0));
}

TEST_CASE("fit recovers a synthetic decay") {
  std::map<int, double> exact;
  std::map<int, double> noisy;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> jitter(0.0, 0.002);
  for (int l : {1, 2, 4, 8, 16, 32, 64, 128}) {
    exact[l] = 0.72 * std::pow(0.985, l) + 0.25;
    noisy[l] = exact[l] + jitter(rng);
  }
  const auto f = rb_fit(exact, 4, 8.0);
  CHECK(f.decay == doctest::Approx(0.985).epsilon(1e-8));
  CHECK(f.amplitude == doctest::Approx(0.72).epsilon(1e-7));
  CHECK(f.offset == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(f.error_per_clifford == doctest::Approx(0.015 * 0.75).epsilon(1e-6));
  CHECK(f.error_per_half_pi == doctest::Approx(0.015 * 0.75 / 8.0).epsilon(1e-6));
  const auto g = rb_fit(noisy, 4, 8.0);
  CHECK(std::abs(g.error_per_clifford / f.error_per_clifford - 1.0) < 0.05);
  CHECK(g.decay_stderr > 0.0);
  CHECK_THROWS_AS(rb_fit({{1, 0.9}, {2, 0.8}}, 4, 1.0), ValidationError);
}

TEST_CASE("depolarizing RB recovers the injected error per half-pi pulse") {
  for (int d : {3, 4}) {
    const auto& g = group(d);
    const double eps = 5e-3;
    const auto seqs = rb_sequences(g, {1, 2, 4, 8, 16, 32, 64}, 30, 5);
    const auto rec = rb_simulate(g, seqs, DeviceModel::ideal(d), ReadoutModel::ideal(d),
                                 depolarizing_per_half_pi(d, eps));
    const auto fit = rb_fit(rb_survival(rec), d, g.mean_half_pi_count());
    INFO("d = " << d << ", fitted " << fit.error_per_half_pi);
    CHECK(std::abs(fit.error_per_half_pi / eps - 1.0) < 0.10);
    // Survival decays towards 1/d.
    CHECK(fit.offset == doctest::Approx(1.0 / d).epsilon(0.1));
  }
}
