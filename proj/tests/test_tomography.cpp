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
#include <string>

#include "doctest.h"
#include "qudit/experiments.hpp"
#include "qudit/tomography.hpp"

using namespace qudit;

namespace {

Vector demo_state() {
  Vector v(4);
  v << cplx(1, -1) / std::sqrt(8.0), 1.0 / std::sqrt(2.0), cplx(-1, -1) / std::sqrt(8.0), 0.0;
  return v;
}

// Generators built straight from the construction rule: for each j, the
// symmetric and antisymmetric pairs (k, j−1), then one diagonal matrix.
std::vector<Matrix> reference_generators(int d) {
  std::vector<Matrix> out{identity(d)};
  for (int j = 2; j <= d; ++j) {
    for (int k = 0; k <= j - 2; ++k) {
      Matrix s = Matrix::Zero(d, d);
      s(k, j - 1) = 1.0;
      s(j - 1, k) = 1.0;
      out.push_back(s);
      Matrix a = Matrix::Zero(d, d);
      a(k, j - 1) = -kI;
      a(j - 1, k) = kI;
      out.push_back(a);
    }
    Matrix z = Matrix::Zero(d, d);
    const double norm = std::sqrt(j * (j - 1) / 2.0);
    for (int m = 0; m < j - 1; ++m) z(m, m) = 1.0 / norm;
    z(j - 1, j - 1) = (1.0 - j) / norm;
    out.push_back(z);
  }
  return out;
}

std::map<int, DensityMatrix> exact_finals(const Matrix& process) {
  const int d = static_cast<int>(process.rows());
  std::map<int, DensityMatrix> finals;
  const auto targets = qpt_prep_targets(d);
  for (int i = 0; i < static_cast<int>(targets.size()); ++i) {
    const Vector v = process * targets[i].amplitudes();
    finals.emplace(i, DensityMatrix::pure(PureState(v)));
  }
  return finals;
}

}  // namespace

TEST_CASE("measurement set sizes and level support") {
  std::vector<int> idx;
  CHECK(qst_measurement_set(4, &idx).size() == 12);
  CHECK(idx.size() == 12);
  const auto d3 = qst_measurement_set(3, &idx);
  CHECK(d3.size() == 6);
  CHECK(idx == std::vector<int>{0, 1, 3, 4, 6, 7});
  CHECK_THROWS_AS(qst_measurement_set(5), ValidationError);
}

TEST_CASE("the last measurement operator is the full ladder") {
  const auto set = qst_measurement_set(4);
  const Matrix expect = rotation_matrix({2, 3, -kPi / 2, 0}, 4) *
                        rotation_matrix({1, 2, -kPi / 2, 0}, 4) *
                        rotation_matrix({0, 1, -kPi / 2, 0}, 4);
  CHECK(phase_distance(recompose(set[11]), expect) < 1e-12);
}

TEST_CASE("forward model on basis states") {
  const auto rec = qst_forward(DensityMatrix::pure(PureState::basis(4, 0)));
  rec.validate();
  // R01(−π/2, ·) splits |0⟩ evenly between |0⟩ and |1⟩.
  CHECK(rec.probs[0][0] == doctest::Approx(0.5));
  CHECK(rec.probs[0][1] == doctest::Approx(0.5));
  // R12 does not touch |0⟩.
  CHECK(rec.probs[1][0] == doctest::Approx(1.0));
}

TEST_CASE("linear inversion examples") {
  for (int d : {3, 4}) {
    for (int k = 0; k < d; ++k) {
      const auto basis = DensityMatrix::pure(PureState::basis(d, k));
      const auto r = qst_linear_inversion(qst_forward(basis));
      CHECK(max_abs(Matrix(r.matrix() - basis.matrix())) < 1e-12);
    }
  }
  const auto demo = DensityMatrix::pure(PureState(demo_state()));
  const auto r = qst_linear_inversion(qst_forward(demo));
  CHECK(max_abs(Matrix(r.matrix() - demo.matrix())) < 1e-12);
  CHECK(state_fidelity(r, PureState(demo_state())) == doctest::Approx(1.0));
}

TEST_CASE("linear inversion recovers random states of both dimensions") {
  Rng rng(41);
  for (int d : {3, 4}) {
    for (int t = 0; t < 25; ++t) {
      const auto rho = random_density(d, rng);
      const auto r = qst_linear_inversion(qst_forward(rho));
      CHECK(max_abs(Matrix(r.matrix() - rho.matrix())) < 1e-10);
    }
  }
}

TEST_CASE("printed closed-form inversion: which entries hold under this forward model") {
  Rng rng(42);
  const double r2 = std::sqrt(2.0);
  for (int t = 0; t < 10; ++t) {
    const auto rho = random_density(4, rng);
    const Matrix& m = rho.matrix();
    const auto rec = qst_forward(rho);
    auto P = [&](int l, int k) { return rec.probs[l][k]; };
    const double x01 = (P(3, 0) - P(3, 1)) / 2;
    const double x12 = (P(4, 1) - P(4, 2)) / 2;
    const double x23 = (P(5, 2) - P(5, 3)) / 2;
    const double y01 = (P(0, 0) - P(0, 1)) / 2;
    const double y12 = (P(1, 1) - P(1, 2)) / 2;
    const double y23 = (P(2, 2) - P(2, 3)) / 2;
    const double x02 = (P(6, 1) - P(6, 2) - r2 * y12) / r2;
    const double y02 = (P(7, 2) - P(7, 1) + r2 * x12) / r2;
    const double x13 = (P(8, 2) - P(8, 3) - r2 * y23) / r2;
    const double y13 = (P(9, 3) - P(9, 2) + r2 * x23) / r2;
    const double x03 = P(10, 2) - P(10, 3) - r2 * x23 + x13;
    const double y03 = P(11, 3) - P(11, 2) + r2 * y23 + x13;

    CHECK((P(2, 0) + P(5, 0)) / 2 == doctest::Approx(m(0, 0).real()));
    CHECK((P(0, 3) + P(3, 3)) / 2 == doctest::Approx(m(3, 3).real()));
    CHECK(x01 == doctest::Approx(m(0, 1).real()));
    CHECK(y01 == doctest::Approx(m(0, 1).imag()));
    CHECK(x12 == doctest::Approx(m(1, 2).real()));
    CHECK(y12 == doctest::Approx(m(1, 2).imag()));
    CHECK(x23 == doctest::Approx(m(2, 3).real()));
    CHECK(y23 == doctest::Approx(m(2, 3).imag()));
    CHECK(x02 == doctest::Approx(m(0, 2).real()));
    CHECK(y02 == doctest::Approx(m(0, 2).imag()));
    CHECK(x13 == doctest::Approx(m(1, 3).real()));
    CHECK(y13 == doctest::Approx(m(1, 3).imag()));
    CHECK(x03 == doctest::Approx(m(0, 3).real()));
    CHECK(y03 == doctest::Approx(m(0, 3).imag()));

    // The printed ρ11 and ρ22 index the wrong outcomes; these forms hold.
    CHECK((P(2, 1) + P(5, 1)) / 2 == doctest::Approx(m(1, 1).real()));
    CHECK((P(0, 2) + P(3, 2)) / 2 == doctest::Approx(m(2, 2).real()));
    CHECK(std::abs((P(2, 1) + P(5, 2)) / 2 - m(1, 1).real()) > 1e-6);
    CHECK(std::abs((P(0, 2) + P(0, 3)) / 2 - m(2, 2).real()) > 1e-6);
    // ρ12 pairs x12 with y02 as printed; the imaginary part needs y12.
    CHECK(std::abs(y02 - m(1, 2).imag()) > 1e-6);
  }
}

TEST_CASE("shot sampling preserves the settings and normalisation") {
  Rng rng(43);
  const auto exact = qst_forward(random_density(3, rng));
  const auto sampled = qst_sample(exact, 2000, rng);
  CHECK(sampled.shots == 2000);
  CHECK(sampled.settings == exact.settings);
  sampled.validate();
  for (const auto& row : sampled.probs) {
    double total = 0.0;
    for (double p : row) total += p;
    CHECK(total == doctest::Approx(1.0));
  }
}

TEST_CASE("MLE returns a physical state and never lowers the likelihood") {
  Rng rng(44);
  const auto demo = DensityMatrix::pure(PureState(demo_state()));
  const auto sampled = qst_sample(qst_forward(demo), 4096, rng);
  const auto lin = qst_linear_inversion(sampled);
  const auto mle = qst_mle(sampled, lin);
  CHECK(mle.rho.min_eigenvalue() > -1e-12);
  CHECK(std::abs(mle.rho.matrix().trace().real() - 1.0) < 1e-12);
  for (std::size_t i = 1; i < mle.loglik.size(); ++i) CHECK(mle.loglik[i] >= mle.loglik[i - 1]);
  CHECK(qst_loglik(sampled, mle.rho.matrix()) >=
        qst_loglik(sampled, project_to_density(lin.matrix())) - 1e-12);
  CHECK(state_fidelity(mle.rho, PureState(demo_state())) > 0.99);
}

TEST_CASE("MLE on exact data of a full-rank state stays at the truth") {
  Rng rng(45);
  const auto rho = random_density(4, rng);
  const auto rec = qst_forward(rho);
  const auto mle = qst_mle(rec, DensityMatrix::maximally_mixed(4));
  CHECK(max_abs(Matrix(mle.rho.matrix() - rho.matrix())) < 1e-4);
}

TEST_CASE("generator basis matches the construction rule") {
  for (int d = 2; d <= 5; ++d) {
    const auto g = sun_generators(d);
    const auto ref = reference_generators(d);
    REQUIRE(g.matrices.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
      CHECK(max_abs(Matrix(g.matrices[k] - ref[k])) < 1e-15);
    }
    for (std::size_t a = 1; a < ref.size(); ++a) {
      CHECK(std::abs(g.matrices[a].trace()) < 1e-14);
      CHECK(max_abs(Matrix(g.matrices[a] - g.matrices[a].adjoint())) < 1e-15);
      for (std::size_t b = 1; b < ref.size(); ++b) {
        const cplx ip = (g.matrices[a] * g.matrices[b]).trace();
        CHECK(std::abs(ip - cplx(a == b ? 2.0 : 0.0)) < 1e-12);
      }
    }
  }
  // d=3 in the usual Gell-Mann order.
  const auto g3 = sun_generators(3);
  CHECK(std::abs(g3.matrices[2](0, 1) - (-kI)) < 1e-15);
  CHECK(std::abs(g3.matrices[3](1, 1) - cplx(-1.0)) < 1e-15);
  CHECK(std::abs(g3.matrices[8](2, 2) - cplx(-2.0 / std::sqrt(3.0))) < 1e-15);
}

TEST_CASE("preparation set sizes and targets") {
  CHECK(qpt_prep_set(3).size() == 12);
  CHECK(qpt_prep_set(4).size() == 22);
  for (int d : {3, 4}) {
    const auto preps = qpt_prep_set(d);
    const auto targets = qpt_prep_targets(d);
    REQUIRE(preps.size() == targets.size());
    for (std::size_t i = 0; i < preps.size(); ++i) {
      const Vector out = recompose(preps[i]).col(0);
      CHECK(std::abs(out.dot(targets[i].amplitudes())) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("chi of the identity has a single unit entry") {
  for (int d : {3, 4}) {
    const auto basis = sun_generators(d);
    const auto chi = chi_of_unitary(identity(d), basis);
    CHECK(std::abs(chi.chi(0, 0) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(chi.chi.squaredNorm() - 1.0) < 1e-12);
    CHECK(chi.tp_deviation(basis) < 1e-12);
  }
}

TEST_CASE("unitary chi matrices are rank one and trace preserving") {
  Rng rng(46);
  const auto basis = sun_generators(4);
  const auto chi = chi_of_unitary(haar_unitary(4, rng), basis);
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi_from_chi(chi, basis));
  const auto ev = es.eigenvalues();
  CHECK(ev(15) == doctest::Approx(4.0));
  CHECK(std::abs(ev(14)) < 1e-10);
  CHECK(chi.tp_deviation(basis) < 1e-10);
}

TEST_CASE("process fidelity examples") {
  for (int d : {3, 4}) {
    const auto basis = sun_generators(d);
    const Matrix f = dft_matrix(d);
    CHECK(process_fidelity(chi_of_unitary(f, basis), f) == doctest::Approx(1.0));
    const auto full = chi_of_channel(depolarizing(d, 1.0), basis);
    CHECK(process_fidelity(full, identity(d)) == doctest::Approx(1.0 / (d * d)));
    CHECK(process_fidelity(chi_of_unitary(f, basis), identity(d)) < 0.5);
  }
}

TEST_CASE("reconstruction from exact finals recovers the process") {
  Rng rng(47);
  for (int d : {3, 4}) {
    const auto basis = sun_generators(d);
    const Matrix u = haar_unitary(d, rng);
    const auto chi = qpt_reconstruct(exact_finals(u), basis, false);
    CHECK(max_abs(Matrix(chi.chi - chi_of_unitary(u, basis).chi)) < 1e-10);
    const auto refined = qpt_reconstruct(exact_finals(u), basis, true);
    CHECK(process_fidelity(refined, u) == doctest::Approx(1.0).epsilon(1e-8));
  }
  std::map<int, DensityMatrix> partial;
  partial.emplace(0, DensityMatrix::maximally_mixed(3));
  CHECK_THROWS_AS(qpt_reconstruct(partial, sun_generators(3)), ValidationError);
}

TEST_CASE("CPTP projection makes a noisy Choi matrix physical") {
  Rng rng(48);
  const int d = 3;
  const auto basis = sun_generators(d);
  Matrix j = choi_from_chi(chi_of_unitary(dft_matrix(d), basis), basis);
  Matrix noise = Matrix::Random(d * d, d * d) * 0.05;
  j += noise + noise.adjoint();
  const Matrix p = cptp_project(j, d);
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  CHECK(es.eigenvalues().minCoeff() > -1e-8);
  // Partial trace over the output equals the identity.
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      cplx s = 0.0;
      for (int r = 0; r < d; ++r) s += p(a * d + r, b * d + r);
      CHECK(std::abs(s - cplx(a == b ? 1.0 : 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("simulated QPT through both backends") {
  Rng rng(49);
  const auto basis = sun_generators(4);
  const Matrix f = dft_matrix(4);
  const auto ideal = qpt_reconstruct(
      simulate_qpt_finals(f, Strategy::bubbling, Backend::ideal(4), 0, rng), basis);
  CHECK(process_fidelity(ideal, f) == doctest::Approx(1.0).epsilon(1e-9));
  const auto cfg = load_device(std::string(QUDIT_DATA_DIR) + "/devices/transmon_d4.json");
  const auto noisy = qpt_reconstruct(
      simulate_qpt_finals(f, Strategy::bubbling, Backend::from_config(cfg), 0, rng), basis);
  const double fid = process_fidelity(noisy, f);
  CHECK(fid < 0.99);
  CHECK(fid > 0.7);
  CHECK(noisy.tp_deviation(basis) < 1e-6);
}
