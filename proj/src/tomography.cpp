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

#include "qudit/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qudit {
namespace {

CompiledCircuit circuit_of(int d, std::vector<PulseOp> pulses) {
  CompiledCircuit c = CompiledCircuit::empty(d);
  c.strategy = Strategy::bubbling;
  c.pulses = std::move(pulses);
  c.su2_factors = static_cast<int>(c.pulses.size());
  for (const auto& p : c.pulses) c.adjacent_only = c.adjacent_only && p.adjacent();
  return c;
}

// Hermitian parameter basis: E_kk, then (E_ij + E_ji, −iE_ij + iE_ji) per pair.
std::vector<Matrix> hermitian_basis(int d) {
  std::vector<Matrix> b;
  for (int k = 0; k < d; ++k) {
    Matrix e = Matrix::Zero(d, d);
    e(k, k) = 1.0;
    b.push_back(e);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Matrix x = Matrix::Zero(d, d);
      x(i, j) = 1.0;
      x(j, i) = 1.0;
      b.push_back(x);
      Matrix y = Matrix::Zero(d, d);
      y(i, j) = -kI;
      y(j, i) = kI;
      b.push_back(y);
    }
  }
  return b;
}

std::vector<Matrix> setting_unitaries(int d) {
  std::vector<Matrix> out;
  for (const auto& c : qst_measurement_set(d)) out.push_back(recompose(c));
  return out;
}

// vec with Σ_a |a⟩ ⊗ M|a⟩, index a·d + i.
Vector choi_vector(const Matrix& m) {
  const auto d = m.rows();
  Vector v(d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index i = 0; i < d; ++i) v(a * d + i) = m(i, a);
  return v;
}

Matrix basis_columns(const GeneratorBasis& basis) {
  const int d = basis.dim;
  Matrix v(d * d, d * d);
  for (int k = 0; k < d * d; ++k) v.col(k) = choi_vector(basis.matrices[k]);
  return v;
}

Matrix partial_trace_out(const Matrix& j, int d) {
  Matrix t = Matrix::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int i = 0; i < d; ++i) t(a, b) += j(a * d + i, b * d + i);
  return t;
}

Matrix psd_clip(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector w = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

void QstRecord::validate(double tol) const {
  if (probs.size() != settings.size()) throw ValidationError("qst record: row count mismatch");
  for (const auto& row : probs) {
    if (static_cast<int>(row.size()) != dim) throw ValidationError("qst record: bad row width");
    double s = 0.0;
    for (double p : row) {
      if (!(p >= 0.0)) throw ValidationError("qst record: negative probability");
      s += p;
    }
    if (std::abs(s - 1.0) > tol) throw ValidationError("qst record: row does not sum to 1");
  }
}

std::vector<CompiledCircuit> qst_measurement_set(int d, std::vector<int>* indices) {
  if (d != 3 && d != 4) throw ValidationError("qst_measurement_set: d must be 3 or 4");
  const double h = -kPi / 2;
  const double q = kPi / 2;
  // Execution order: the rightmost operator factor comes first.
  const std::vector<std::vector<PulseOp>> ops = {
      {{0, 1, h, 0}},
      {{1, 2, h, 0}},
      {{2, 3, h, 0}},
      {{0, 1, h, q}},
      {{1, 2, h, q}},
      {{2, 3, h, q}},
      {{0, 1, h, 0}, {1, 2, h, 0}},
      {{0, 1, h, 0}, {1, 2, h, q}},
      {{1, 2, h, 0}, {2, 3, h, 0}},
      {{1, 2, h, 0}, {2, 3, h, q}},
      {{0, 1, h, q}, {1, 2, h, q}, {2, 3, h, q}},
      {{0, 1, h, 0}, {1, 2, h, 0}, {2, 3, h, 0}},
  };
  std::vector<CompiledCircuit> out;
  if (indices) indices->clear();
  for (int l = 0; l < static_cast<int>(ops.size()); ++l) {
    bool fits = true;
    for (const auto& p : ops[l]) fits = fits && p.n < d;
    if (!fits) continue;
    out.push_back(circuit_of(d, ops[l]));
    if (indices) indices->push_back(l);
  }
  return out;
}

QstRecord qst_forward(const DensityMatrix& rho) {
  const int d = rho.dim();
  QstRecord rec;
  rec.dim = d;
  const auto circuits = qst_measurement_set(d, &rec.settings);
  for (const auto& c : circuits) {
    const Matrix u = recompose(c);
    const Matrix out = u * rho.matrix() * u.adjoint();
    std::vector<double> row(d);
    for (int k = 0; k < d; ++k) row[k] = std::max(0.0, out(k, k).real());
    rec.probs.push_back(row);
  }
  return rec;
}

QstRecord qst_sample(const QstRecord& exact, long shots, Rng& rng) {
  QstRecord rec = exact;
  rec.shots = shots;
  for (auto& row : rec.probs) {
    const auto counts = sample_shots(row, shots, rng);
    for (int k = 0; k < rec.dim; ++k) row[k] = static_cast<double>(counts[k]) / shots;
  }
  return rec;
}

DensityMatrix qst_linear_inversion(const QstRecord& rec) {
  const int d = rec.dim;
  const auto basis = hermitian_basis(d);
  const auto all = setting_unitaries(d);
  std::vector<int> available;
  qst_measurement_set(d, &available);
  const int rows = static_cast<int>(rec.probs.size()) * d;
  Eigen::MatrixXd a(rows, d * d);
  Eigen::VectorXd b(rows);
  for (std::size_t r = 0; r < rec.probs.size(); ++r) {
    const auto pos = std::find(available.begin(), available.end(), rec.settings[r]);
    if (pos == available.end()) throw ValidationError("qst record: unknown setting");
    const Matrix& u = all[pos - available.begin()];
    for (int p = 0; p < d * d; ++p) {
      const Matrix img = u * basis[p] * u.adjoint();
      for (int k = 0; k < d; ++k) a(r * d + k, p) = img(k, k).real();
    }
    for (int k = 0; k < d; ++k) b(r * d + k) = rec.probs[r][k];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < d * d) {
    throw ValidationError("qst: design matrix is rank deficient (rank " +
                          std::to_string(qr.rank()) + " of " + std::to_string(d * d) + ")");
  }
  const Eigen::VectorXd x = qr.solve(b);
  Matrix rho = Matrix::Zero(d, d);
  for (int p = 0; p < d * d; ++p) rho += x(p) * basis[p];
  rho /= rho.trace().real();
  return DensityMatrix::unchecked(rho);
}

namespace {

struct MleModel {
  std::vector<Matrix> proj;  // Π_{lk} = U_l†|k⟩⟨k|U_l
  std::vector<double> n;     // matching weights
  double total = 0.0;
};

MleModel mle_model(const QstRecord& rec) {
  const int d = rec.dim;
  const auto all = setting_unitaries(d);
  std::vector<int> available;
  qst_measurement_set(d, &available);
  MleModel m;
  const double scale = rec.shots > 0 ? static_cast<double>(rec.shots) : 1.0;
  for (std::size_t r = 0; r < rec.probs.size(); ++r) {
    const auto pos = std::find(available.begin(), available.end(), rec.settings[r]);
    if (pos == available.end()) throw ValidationError("qst record: unknown setting");
    const Matrix& u = all[pos - available.begin()];
    for (int k = 0; k < d; ++k) {
      const double w = rec.probs[r][k] * scale;
      if (w <= 0.0) continue;
      m.proj.push_back(u.adjoint() * identity(d).col(k) * identity(d).row(k) * u);
      m.n.push_back(w);
      m.total += w;
    }
  }
  return m;
}

double loglik(const MleModel& m, const Matrix& rho) {
  double l = 0.0;
  for (std::size_t i = 0; i < m.proj.size(); ++i) {
    const double p = (m.proj[i] * rho).trace().real();
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    l += m.n[i] * std::log(p);
  }
  return l;
}

}  // namespace

double qst_loglik(const QstRecord& rec, const Matrix& rho) { return loglik(mle_model(rec), rho); }

MleResult qst_mle(const QstRecord& rec, const DensityMatrix& guess, int max_iter, double tol) {
  const int d = rec.dim;
  if (guess.dim() != d) throw DimensionError("qst_mle: guess dimension mismatch");
  const MleModel model = mle_model(rec);
  Matrix rho = project_to_density(guess.matrix());
  double l = loglik(model, rho);
  if (!std::isfinite(l)) {
    rho = (1.0 - 1e-3) * rho + 1e-3 * identity(d) / static_cast<double>(d);
    l = loglik(model, rho);
  }
  MleResult res{DensityMatrix::unchecked(rho), false, 0, {l}};
  // Diluted RρR iteration: ρ ← (I+εR)ρ(I+εR)/Tr, with ε shrunk until the
  // likelihood rises, so the log-likelihood of accepted iterates is monotone.
  double eps = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    Matrix r = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < model.proj.size(); ++i) {
      const double p = (model.proj[i] * rho).trace().real();
      r += (model.n[i] / (p * model.total)) * model.proj[i];
    }
    bool accepted = false;
    double trial_eps = std::min(eps * 2.0, 1e3);
    while (trial_eps > 1e-12) {
      const Matrix g = identity(d) + trial_eps * r;
      Matrix next = g * rho * g.adjoint();
      next = 0.5 * (next + next.adjoint());
      next /= next.trace().real();
      const double ln = loglik(model, next);
      if (ln > l) {
        const double gain = ln - l;
        rho = next;
        l = ln;
        eps = trial_eps;
        accepted = true;
        res.loglik.push_back(l);
        res.iterations = it + 1;
        if (gain <= tol * std::max(1.0, std::abs(l))) {
          res.converged = true;
        }
        break;
      }
      trial_eps *= 0.5;
    }
    if (!accepted) {
      res.converged = true;
      break;
    }
    if (res.converged) break;
  }
  res.rho = DensityMatrix::unchecked(0.5 * (rho + rho.adjoint()));
  return res;
}

GeneratorBasis sun_generators(int d) {
  if (d < 2) throw DimensionError("sun_generators: d must be at least 2");
  GeneratorBasis b;
  b.dim = d;
  b.matrices.push_back(identity(d));
  for (int j = 2; j <= d; ++j) {
    for (int k = 0; k <= j - 2; ++k) {
      Matrix s = Matrix::Zero(d, d);
      s(k, j - 1) = 1.0;
      s(j - 1, k) = 1.0;
      b.matrices.push_back(s);
      Matrix a = Matrix::Zero(d, d);
      a(k, j - 1) = -kI;
      a(j - 1, k) = kI;
      b.matrices.push_back(a);
    }
    Matrix diag = Matrix::Zero(d, d);
    const double norm = std::sqrt(j * (j - 1) / 2.0);
    for (int k = 0; k <= j - 2; ++k) diag(k, k) = 1.0 / norm;
    diag(j - 1, j - 1) = (1.0 - j) / norm;
    b.matrices.push_back(diag);
  }
  return b;
}

double ChiMatrix::tp_deviation(const GeneratorBasis& basis) const {
  Matrix s = Matrix::Zero(dim, dim);
  const int n = dim * dim;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      s += chi(k, l) * basis.matrices[l].adjoint() * basis.matrices[k];
  return max_abs(Matrix(s - identity(dim)));
}

std::vector<CompiledCircuit> qpt_prep_set(int d) {
  if (d < 2) throw DimensionError("qpt_prep_set: d must be at least 2");
  std::vector<std::vector<PulseOp>> ladder(d);
  for (int m = 1; m < d; ++m) {
    ladder[m] = ladder[m - 1];
    ladder[m].push_back(PulseOp{m - 1, m, kPi, kPi / 2});
  }
  std::vector<CompiledCircuit> out;
  for (int m = 0; m < d; ++m) out.push_back(circuit_of(d, ladder[m]));
  // R_{m,n}(π/2, φ)|m⟩ = (|m⟩ − i e^{iφ}|n⟩)/√2 gives the three targets
  // (|m⟩−|n⟩)/√2, (|m⟩−i|n⟩)/√2 and (|m⟩+i|n⟩)/√2.
  const double phases[3] = {-kPi / 2, 0.0, kPi};
  for (int m = 0; m < d; ++m) {
    for (int n = m + 1; n < d; ++n) {
      for (double phi : phases) {
        auto pulses = ladder[m];
        pulses.push_back(PulseOp{m, n, kPi / 2, phi});
        out.push_back(circuit_of(d, pulses));
      }
    }
  }
  return out;
}

std::vector<PureState> qpt_prep_targets(int d) {
  std::vector<PureState> out;
  for (int m = 0; m < d; ++m) out.push_back(PureState::basis(d, m));
  const cplx coef[3] = {-1.0, -kI, kI};
  for (int m = 0; m < d; ++m) {
    for (int n = m + 1; n < d; ++n) {
      for (cplx c : coef) {
        Vector v = Vector::Zero(d);
        v(m) = 1.0 / std::sqrt(2.0);
        v(n) = c / std::sqrt(2.0);
        out.emplace_back(v);
      }
    }
  }
  return out;
}

Matrix choi_from_chi(const ChiMatrix& chi, const GeneratorBasis& basis) {
  const Matrix v = basis_columns(basis);
  return v * chi.chi * v.adjoint();
}

ChiMatrix chi_from_choi(const Matrix& choi, const GeneratorBasis& basis) {
  const Matrix v = basis_columns(basis);
  const Matrix vinv = v.partialPivLu().inverse();
  return ChiMatrix{basis.dim, vinv * choi * vinv.adjoint()};
}

ChiMatrix chi_of_unitary(const Matrix& u, const GeneratorBasis& basis) {
  const Vector v = choi_vector(u);
  return chi_from_choi(v * v.adjoint(), basis);
}

ChiMatrix chi_of_channel(const NoiseChannel& ch, const GeneratorBasis& basis) {
  const int d = basis.dim;
  Matrix j = Matrix::Zero(d * d, d * d);
  for (const auto& k : ch.kraus_ops) {
    const Vector v = choi_vector(k);
    j += v * v.adjoint();
  }
  return chi_from_choi(j, basis);
}

Matrix cptp_project(const Matrix& choi, int d, int max_iter, double tol) {
  // Dykstra's alternating projections between the PSD cone and the affine
  // set Tr_out J = I.
  auto tp = [d](const Matrix& x) {
    const Matrix excess = partial_trace_out(x, d) - identity(d);
    Matrix out = x;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int i = 0; i < d; ++i) out(a * d + i, b * d + i) -= excess(a, b) / double(d);
    return out;
  };
  Matrix x = 0.5 * (choi + choi.adjoint());
  Matrix p = Matrix::Zero(x.rows(), x.cols());
  Matrix q = Matrix::Zero(x.rows(), x.cols());
  for (int it = 0; it < max_iter; ++it) {
    const Matrix y = psd_clip(x + p);
    p = x + p - y;
    const Matrix next = tp(y + q);
    q = y + q - next;
    const double change = max_abs(Matrix(next - x));
    x = next;
    if (change < tol) break;
  }
  return 0.5 * (x + x.adjoint());
}

ChiMatrix qpt_reconstruct(const std::map<int, DensityMatrix>& finals,
                          const GeneratorBasis& basis, bool refine) {
  const int d = basis.dim;
  const int expected = d * (3 * d - 1) / 2;
  for (int i = 0; i < expected; ++i) {
    if (!finals.count(i)) throw ValidationError("qpt: missing preparation " + std::to_string(i));
  }
  // E(|a⟩⟨b|) from the measured outputs.
  std::vector<std::vector<Matrix>> e(d, std::vector<Matrix>(d));
  for (int m = 0; m < d; ++m) e[m][m] = finals.at(m).matrix();
  int idx = d;
  const cplx half_1pi = cplx(0.5, 0.5);
  for (int m = 0; m < d; ++m) {
    for (int n = m + 1; n < d; ++n) {
      const Matrix& a0 = finals.at(idx).matrix();
      const Matrix& a1 = finals.at(idx + 1).matrix();
      const Matrix& a2 = finals.at(idx + 2).matrix();
      const Matrix diag = half_1pi * (e[m][m] + e[n][n]);
      e[m][n] = -(a0 + kI * a1 - diag);
      e[n][m] = -(a0 + kI * a2 - diag);
      idx += 3;
    }
  }
  Matrix j = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) j(a * d + r, b * d + c) = e[a][b](r, c);
  // The χ system ρ_f = Σ χ_kl λ_k ρ_i λ_l† over all (ρ_i, basis) pairs is
  // square and invertible, so its solution is the change of basis from J.
  if (refine) j = cptp_project(j, d);
  return chi_from_choi(j, basis);
}

double process_fidelity(const ChiMatrix& chi_meas, const Matrix& target) {
  const int d = chi_meas.dim;
  if (target.rows() != d) throw DimensionError("process_fidelity: dimension mismatch");
  const GeneratorBasis basis = sun_generators(d);
  const ChiMatrix chi_t = chi_of_unitary(target, basis);
  const int n = d * d;
  RealVector s(n);
  for (int k = 0; k < n; ++k) {
    s(k) = std::sqrt((basis.matrices[k].adjoint() * basis.matrices[k]).trace().real());
  }
  const Matrix sm = s.cast<cplx>().asDiagonal();
  const Matrix bt = sm * chi_t.chi * sm;
  const Matrix bm = sm * chi_meas.chi * sm;
  return (bt.adjoint() * bm).trace().real() / (bt.adjoint() * bt).trace().real();
}

std::vector<double> measured_populations(const DensityMatrix& rho, const CompiledCircuit& m,
                                         const Backend& backend) {
  return backend.measure(backend.evolve(m, rho));
}

std::map<int, DensityMatrix> simulate_qpt_finals(const Matrix& process, Strategy strategy,
                                                 const Backend& backend, long shots,
                                                 Rng& rng) {
  const int d = static_cast<int>(process.rows());
  const CompiledCircuit proc = decompose(process, strategy);
  std::vector<int> settings;
  const auto meas = qst_measurement_set(d, &settings);
  const auto preps = qpt_prep_set(d);
  std::map<int, DensityMatrix> finals;
  for (int i = 0; i < static_cast<int>(preps.size()); ++i) {
    DensityMatrix rho = DensityMatrix::pure(PureState::basis(d, 0));
    rho = backend.evolve(proc, backend.evolve(preps[i], rho));
    QstRecord rec;
    rec.dim = d;
    rec.settings = settings;
    rec.shots = shots;
    for (const auto& m : meas) {
      auto probs = measured_populations(rho, m, backend);
      if (shots > 0) {
        const auto counts = sample_shots(probs, shots, rng);
        for (int k = 0; k < d; ++k) probs[k] = static_cast<double>(counts[k]) / shots;
      }
      rec.probs.push_back(probs);
    }
    finals.emplace(i, qst_linear_inversion(rec));
  }
  return finals;
}

}  // namespace qudit
