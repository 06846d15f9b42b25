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
#include <filesystem>
#include <map>
#include <random>
#include <string>

#include "doctest.h"
#include "qudit/vqe.hpp"

using namespace qudit;

namespace {

const std::string kVqeDir = std::string(QUDIT_DATA_DIR) + "/vqe";

double coef(const VqeProblem& p, const std::string& label) {
  for (const auto& [l, v] : p.coefficients)
    if (l == label) return v;
  return 0.0;
}

// Single-angle ansatz state is sinθ|00⟩ + cosθ|11⟩, so the energy is
// a_I + a_ZZ − (a_IZ + a_ZI)cos2θ + a_XX sin2θ.
double h2_energy(const VqeProblem& p, double theta) {
  return coef(p, "I") + coef(p, "ZZ") - (coef(p, "IZ") + coef(p, "ZI")) * std::cos(2 * theta) +
         coef(p, "XX") * std::sin(2 * theta);
}

double overlap(const Vector& a, const Vector& b) { return std::abs(a.dot(b)); }

}  // namespace

TEST_CASE("ansatz names and parameter counts") {
  CHECK(parameter_count(Ansatz::h2_single_theta) == 1);
  CHECK(parameter_count(Ansatz::hehp_two_theta) == 2);
  CHECK(ansatz_from_string(to_string(Ansatz::hehp_two_theta)) == Ansatz::hehp_two_theta);
  CHECK_THROWS_AS(ansatz_from_string("uccsd"), ValidationError);
}

TEST_CASE("Pauli strings act on |q1 q0>") {
  const Matrix iz = pauli_string("IZ");
  CHECK(iz(1, 1) == cplx(-1.0));
  CHECK(iz(2, 2) == cplx(1.0));
  const Matrix xi = pauli_string("XI");
  CHECK(xi(2, 0) == cplx(1.0));
  CHECK(max_abs(Matrix(pauli_string("I") - identity(4))) == 0.0);
  CHECK_THROWS_AS(pauli_string("XQ"), ValidationError);
  CHECK_THROWS_AS(pauli_string("XYZ"), ValidationError);
}

TEST_CASE("single-angle reference state examples") {
  const Vector s0 = ansatz_reference_state(Ansatz::h2_single_theta, {0.0});
  CHECK(std::abs(s0(3)) == doctest::Approx(1.0));
  const Vector s1 = ansatz_reference_state(Ansatz::h2_single_theta, {kPi / 4});
  CHECK(std::abs(s1(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(s1(3)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(s1(1)) < 1e-15);
  CHECK(std::abs(s1(2)) < 1e-15);
}

TEST_CASE("ansatz circuits prepare the reference states") {
  Rng rng(71);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (double th : {0.0, kPi / 4, -0.3, ang(rng), ang(rng)}) {
    const Vector ref = ansatz_reference_state(Ansatz::h2_single_theta, {th});
    const Vector out = recompose(ansatz_circuit(Ansatz::h2_single_theta, {th})).col(0);
    CHECK(overlap(ref, out) == doctest::Approx(1.0).epsilon(1e-12));
    // Support stays on levels 0 and 3.
    CHECK(std::abs(out(1)) < 1e-12);
    CHECK(std::abs(out(2)) < 1e-12);
  }
  for (int t = 0; t < 10; ++t) {
    const std::vector<double> p{ang(rng), ang(rng)};
    const Vector ref = ansatz_reference_state(Ansatz::hehp_two_theta, p);
    const Vector out = recompose(ansatz_circuit(Ansatz::hehp_two_theta, p)).col(0);
    CHECK(overlap(ref, out) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ansatz_circuit(Ansatz::hehp_two_theta, {0.1}), ValidationError);
}

TEST_CASE("measurement bases diagonalise each term") {
  for (const std::string label : {"IZ", "ZI", "ZZ", "XX", "IX", "XI", "ZX", "XZ", "YY", "XY"}) {
    const Matrix b = measurement_basis(label);
    const Matrix d = b * pauli_string(label) * b.adjoint();
    const auto signs = eigen_signs(label);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(d(k, k) - cplx(signs[k])) < 1e-12);
    CHECK(std::abs(d(0, 1)) + std::abs(d(1, 2)) + std::abs(d(0, 3)) < 1e-12);
  }
  CHECK(eigen_signs("ZZ") == std::vector<int>{1, -1, -1, 1});
  CHECK(eigen_signs("IZ") == std::vector<int>{1, -1, 1, -1});
}

TEST_CASE("exact energy matches the closed form pointwise") {
  const auto p = load_problem(kVqeDir + "/h2_0p75.json");
  VqeEvaluator eval(p, Backend::ideal(4), 0, 1);
  for (double th : {-1.2, -0.4, 0.0, 0.3, 1.1}) {
    const auto e = eval({th});
    CHECK(e.energy == doctest::Approx(h2_energy(p, th)).epsilon(1e-12));
    CHECK(e.variance == 0.0);
    const Vector psi = ansatz_reference_state(p.ansatz, {th});
    CHECK(e.energy == doctest::Approx(psi.dot(hamiltonian(p) * psi).real()).epsilon(1e-12));
  }
}

TEST_CASE("exact minimisation reaches the ground energy for every bundled problem") {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kVqeDir)) {
    const auto p = load_problem(entry.path().string());
    const auto r = vqe_minimize(p, Backend::ideal(4), 0, 1);
    INFO(entry.path().filename().string());
    CHECK(std::abs(r.energy - ground_energy(p)) < 1e-6);
    ++files;
  }
  CHECK(files == 14);
}

TEST_CASE("without the exchange term the optimum sits at theta = 0") {
  VqeProblem p;
  p.molecule = "toy";
  p.ansatz = Ansatz::h2_single_theta;
  p.coefficients = {{"I", -0.5}, {"IZ", 0.4}, {"ZI", 0.4}, {"ZZ", 0.01}, {"XX", 0.0}};
  const auto r = vqe_minimize(p, Backend::ideal(4), 0, 1);
  CHECK(std::abs(std::sin(r.params[0])) < 1e-6);
  CHECK(r.energy == doctest::Approx(-0.5 + 0.01 - 0.8));
}

TEST_CASE("shot estimates stay within three standard deviations") {
  const auto p = load_problem(kVqeDir + "/hehp_0p9.json");
  VqeEvaluator exact(p, Backend::ideal(4), 0, 1);
  VqeEvaluator shots(p, Backend::ideal(4), 4096, 2);
  int inside = 0;
  for (int t = 0; t < 20; ++t) {
    const std::vector<double> params{0.1 * t - 1.0, 0.05 * t};
    const auto a = exact(params);
    const auto b = shots(params);
    CHECK(b.variance > 0.0);
    if (std::abs(a.energy - b.energy) < 3 * std::sqrt(b.variance)) ++inside;
  }
  CHECK(inside >= 18);
}

TEST_CASE("problem parsing and validation") {
  const auto p = load_problem(kVqeDir + "/h2_0p75.json");
  CHECK(p.molecule == "H2");
  CHECK(p.coefficients.size() == 5);
  const auto again = parse_problem(problem_to_json(p));
  CHECK(again.coefficients == p.coefficients);
  CHECK_THROWS_AS(parse_problem("{"), ValidationError);
  CHECK_THROWS_AS(parse_problem(R"({"molecule": "H2", "ansatz": "h2_single_theta",
                                    "coefficients": {}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_problem(R"({"molecule": "H2", "ansatz": "nope",
                                    "coefficients": {"ZZ": 1.0}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_problem(R"({"molecule": "H2", "ansatz": "h2_single_theta",
                                    "coefficients": {"QZ": 1.0}})"),
                  ValidationError);
  CHECK_THROWS_AS(load_problem("/nonexistent.json"), ValidationError);
}
