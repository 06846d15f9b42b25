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

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qudit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kDefaultTol = 1e-10;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Max-absolute-entry norm.
double max_abs(const Matrix& m);
double max_abs(const Vector& v);

Matrix identity(int d);

/// Throws DimensionError unless `m` is square with dim >= 2 and finite.
void check_square(const Matrix& m);

bool is_unitary(const Matrix& m, double tol = kDefaultTol);

/// ‖M†M − I‖_max.
double unitarity_deviation(const Matrix& m);

/// min over α of ‖U − e^{iα}V‖_max with α = arg Tr(V†U).
double phase_distance(const Matrix& u, const Matrix& v);
bool phase_equal(const Matrix& u, const Matrix& v, double tol = kDefaultTol);

/// Haar-random U(d) from the QR decomposition of a complex Ginibre matrix.
Matrix haar_unitary(int d, Rng& rng);

/// Haar-random U(d) rescaled to determinant 1.
Matrix haar_special_unitary(int d, Rng& rng);

class PureState {
 public:
  explicit PureState(Vector amplitudes);
  static PureState basis(int d, int k);

  int dim() const { return static_cast<int>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }
  cplx operator[](int k) const { return amp_(k); }

 private:
  Vector amp_;
};

class DensityMatrix {
 public:
  /// Validates hermiticity, trace and eigenvalue floor at `tol`.
  explicit DensityMatrix(Matrix rho, double tol = 1e-10);
  /// Skips the physicality check; for reconstructions that may be unphysical.
  static DensityMatrix unchecked(Matrix rho);
  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int d);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  double min_eigenvalue() const;

 private:
  DensityMatrix() = default;
  Matrix rho_;
};

double state_fidelity(const DensityMatrix& rho, const PureState& psi);

std::vector<double> measure_probs(const PureState& psi);
std::vector<double> measure_probs(const DensityMatrix& rho);

/// Multinomial draw; counts sum to n and depend only on (probs, n, seed).
std::vector<long> sample_shots(const std::vector<double>& probs, long n,
                               std::uint64_t seed);
std::vector<long> sample_shots(const std::vector<double>& probs, long n, Rng& rng);

/// Random mixed state of full rank (Ginibre ensemble).
DensityMatrix random_density(int d, Rng& rng);

/// Hermitian projection onto the PSD cone with unit trace (eigenvalue simplex
/// projection).
Matrix project_to_density(const Matrix& m);

/// Euclidean projection of `v` onto the probability simplex.
RealVector project_simplex(const RealVector& v);

}  // namespace qudit
