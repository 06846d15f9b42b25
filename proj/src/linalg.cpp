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

#include "qudit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qudit {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

Matrix identity(int d) { return Matrix::Identity(d, d); }

void check_square(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (m.rows() < 2) throw DimensionError("dimension must be at least 2");
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("matrix has non-finite entries");
    }
  }
}

double unitarity_deviation(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  return max_abs(Matrix(m.adjoint() * m - identity(static_cast<int>(m.rows()))));
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return unitarity_deviation(m) <= tol;
}

double phase_distance(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("phase_distance: shape mismatch");
  }
  const cplx t = (v.adjoint() * u).trace();
  const cplx ph = std::abs(t) > 0.0 ? t / std::abs(t) : cplx(1.0, 0.0);
  return max_abs(Matrix(u - ph * v));
}

bool phase_equal(const Matrix& u, const Matrix& v, double tol) {
  return phase_distance(u, v) <= tol;
}

Matrix haar_unitary(int d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const cplx ph = std::abs(rjj) > 0.0 ? rjj / std::abs(rjj) : cplx(1.0, 0.0);
    q.col(j) *= ph;
  }
  return q;
}

Matrix haar_special_unitary(int d, Rng& rng) {
  Matrix u = haar_unitary(d, rng);
  const cplx det = u.determinant();
  return u * std::polar(1.0, -std::arg(det) / d);
}

PureState::PureState(Vector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() < 2) throw DimensionError("state dimension must be at least 2");
  if (std::abs(amp_.squaredNorm() - 1.0) > 1e-12) {
    throw ValidationError("state is not normalized");
  }
}

PureState PureState::basis(int d, int k) {
  if (k < 0 || k >= d) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return PureState(v);
}

DensityMatrix::DensityMatrix(Matrix rho, double tol) : rho_(std::move(rho)) {
  check_square(rho_);
  if (max_abs(Matrix(rho_ - rho_.adjoint())) > tol) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - cplx(1.0, 0.0)) > tol) {
    throw ValidationError("density matrix trace is not 1");
  }
  if (min_eigenvalue() < -tol) {
    throw ValidationError("density matrix has negative eigenvalues");
  }
}

DensityMatrix DensityMatrix::unchecked(Matrix rho) {
  check_square(rho);
  DensityMatrix out;
  out.rho_ = std::move(rho);
  return out;
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  return DensityMatrix::unchecked(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  return DensityMatrix::unchecked(identity(d) / static_cast<double>(d));
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double state_fidelity(const DensityMatrix& rho, const PureState& psi) {
  if (rho.dim() != psi.dim()) throw DimensionError("state_fidelity: dim mismatch");
  const cplx f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

std::vector<double> measure_probs(const PureState& psi) {
  std::vector<double> p(psi.dim());
  for (int k = 0; k < psi.dim(); ++k) p[k] = std::norm(psi[k]);
  return p;
}

std::vector<double> measure_probs(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  double total = 0.0;
  for (int k = 0; k < rho.dim(); ++k) {
    p[k] = std::max(0.0, rho.matrix()(k, k).real());
    total += p[k];
  }
  if (total > 0.0)
    for (double& x : p) x /= total;
  return p;
}

std::vector<long> sample_shots(const std::vector<double>& probs, long n, Rng& rng) {
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ValidationError("sample_shots: probabilities must be non-negative");
    }
  }
  if (n < 0) throw ValidationError("sample_shots: negative shot count");
  double remaining_mass = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (remaining_mass <= 0.0) throw ValidationError("sample_shots: zero total probability");
  std::vector<long> counts(probs.size(), 0);
  long remaining = n;
  for (std::size_t k = 0; k + 1 < probs.size() && remaining > 0; ++k) {
    const double q = std::clamp(probs[k] / remaining_mass, 0.0, 1.0);
    std::binomial_distribution<long> b(remaining, q);
    counts[k] = b(rng);
    remaining -= counts[k];
    remaining_mass -= probs[k];
    if (remaining_mass <= 0.0) break;
  }
  if (!probs.empty()) counts.back() += remaining;
  return counts;
}

std::vector<long> sample_shots(const std::vector<double>& probs, long n,
                               std::uint64_t seed) {
  Rng rng(seed);
  return sample_shots(probs, n, rng);
}

DensityMatrix random_density(int d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = cplx(g(rng), g(rng));
  Matrix rho = z * z.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::unchecked(0.5 * (rho + rho.adjoint()));
}

RealVector project_simplex(const RealVector& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0;
  double tau = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    css += u[k];
    const double t = (css - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) tau = t;
  }
  return (v.array() - tau).max(0.0).matrix();
}

Matrix project_to_density(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector w = project_simplex(es.eigenvalues());
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qudit
