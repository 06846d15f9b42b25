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

#include "qudit/simulator.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

namespace qudit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void apply_two_level_left(Matrix& a, const PulseOp& op) {
  const double c = std::cos(op.theta / 2);
  const cplx s_mn = -kI * std::sin(op.theta / 2) * std::polar(1.0, -op.phi);
  const cplx s_nm = -kI * std::sin(op.theta / 2) * std::polar(1.0, op.phi);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const cplx x = a(op.m, j);
    const cplx y = a(op.n, j);
    a(op.m, j) = c * x + s_mn * y;
    a(op.n, j) = s_nm * x + c * y;
  }
}

void apply_two_level_right_adjoint(Matrix& a, const PulseOp& op) {
  // a ← a·R†
  const double c = std::cos(op.theta / 2);
  const cplx s_mn = std::conj(-kI * std::sin(op.theta / 2) * std::polar(1.0, op.phi));
  const cplx s_nm = std::conj(-kI * std::sin(op.theta / 2) * std::polar(1.0, -op.phi));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const cplx x = a(i, op.m);
    const cplx y = a(i, op.n);
    a(i, op.m) = x * c + y * s_nm;
    a(i, op.n) = x * s_mn + y * c;
  }
}

void apply_phase(Matrix& rho, const PhaseOp& p) {
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
      rho(i, j) *= std::polar(1.0, p.phases[i] - p.phases[j]);
}

bool dephasing_warned = false;

}  // namespace

DeviceModel DeviceModel::ideal(int d) {
  DeviceModel dev;
  dev.dim = d;
  dev.t1_ns.assign(d - 1, kInf);
  dev.t2_ns.assign(d - 1, std::numeric_limits<double>::quiet_NaN());
  dev.pulse_ns.assign(d - 1, 0.0);
  dev.buffer_ns = 0.0;
  return dev;
}

void DeviceModel::validate() const {
  if (dim < 2) throw ValidationError("device: dim must be at least 2");
  const std::size_t n = static_cast<std::size_t>(dim - 1);
  if (t1_ns.size() != n || t2_ns.size() != n || pulse_ns.size() != n) {
    throw ValidationError("device: t1_ns, t2_ns and pulse_ns need dim-1 entries");
  }
  for (double t : t1_ns)
    if (!(t > 0.0)) throw ValidationError("device: T1 must be positive");
  for (double t : t2_ns)
    if (!std::isnan(t) && !(t > 0.0)) throw ValidationError("device: T2 must be positive");
  for (double t : pulse_ns)
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("device: bad pulse duration");
  if (!(buffer_ns >= 0.0) || !std::isfinite(buffer_ns)) {
    throw ValidationError("device: bad buffer duration");
  }
}

double DeviceModel::dephasing_rate(int j) const {
  const double t2 = t2_ns.at(j);
  if (std::isnan(t2)) {
    if (!dephasing_warned && std::isfinite(t1_ns.at(j))) {
      std::clog << "warning: no T2 for pair (" << j << "," << j + 1
                << "); pure dephasing disabled there\n";
      dephasing_warned = true;
    }
    return 0.0;
  }
  const double g_lo = j == 0 ? 0.0 : 1.0 / t1_ns.at(j - 1);
  const double g_hi = 1.0 / t1_ns.at(j);
  const double rate = 1.0 / t2 - 0.5 * (g_lo + g_hi);
  if (rate < 0.0) {
    if (!dephasing_warned) {
      std::clog << "warning: T2 for pair (" << j << "," << j + 1
                << ") exceeds the T1 limit; pure dephasing clamped to zero\n";
      dephasing_warned = true;
    }
    return 0.0;
  }
  return rate;
}

double DeviceModel::pulse_duration(const PulseOp& op) const {
  if (!op.adjacent()) throw ValidationError("device: durations exist only for adjacent pulses");
  return half_pi_units(op) * pulse_ns.at(op.m) + buffer_ns;
}

Matrix NoiseChannel::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus_ops) out.noalias() += k * rho * k.adjoint();
  return out;
}

double NoiseChannel::tp_deviation() const {
  if (kraus_ops.empty()) return kInf;
  const auto d = kraus_ops.front().rows();
  Matrix s = Matrix::Zero(d, d);
  for (const auto& k : kraus_ops) s += k.adjoint() * k;
  return max_abs(Matrix(s - Matrix::Identity(d, d)));
}

ReadoutModel ReadoutModel::ideal(int d) { return ReadoutModel{identity(d)}; }

void ReadoutModel::validate() const {
  if (confusion.rows() != confusion.cols() || confusion.rows() < 2) {
    throw ValidationError("readout: confusion matrix must be square");
  }
  for (Eigen::Index i = 0; i < confusion.rows(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < confusion.cols(); ++j) {
      const cplx v = confusion(i, j);
      if (v.imag() != 0.0 || v.real() < 0.0 || v.real() > 1.0) {
        throw ValidationError("readout: entries must be real and in [0, 1]");
      }
      row += v.real();
    }
    if (std::abs(row - 1.0) > 1e-9) throw ValidationError("readout: rows must sum to 1");
  }
}

NoiseChannel amplitude_damping(const DeviceModel& dev, double dt_ns) {
  const int d = dev.dim;
  NoiseChannel ch;
  Matrix k0 = Matrix::Zero(d, d);
  k0(0, 0) = 1.0;
  for (int m = 1; m < d; ++m) {
    const double gamma = -std::expm1(-dt_ns / dev.t1_ns.at(m - 1));
    k0(m, m) = std::sqrt(1.0 - gamma);
    if (gamma > 0.0) {
      Matrix km = Matrix::Zero(d, d);
      km(m - 1, m) = std::sqrt(gamma);
      ch.kraus_ops.push_back(km);
    }
  }
  ch.kraus_ops.insert(ch.kraus_ops.begin(), k0);
  return ch;
}

NoiseChannel dephasing(const DeviceModel& dev, double dt_ns) {
  const int d = dev.dim;
  // One binary channel per level gap j: coherences across the gap pick up
  // exp(−γ_j·dt), so the pair (j, j+1) dephases at exactly γ_j.
  NoiseChannel ch;
  ch.kraus_ops.push_back(identity(d));
  for (int j = 0; j + 1 < d; ++j) {
    const double rate = dev.dephasing_rate(j);
    if (rate <= 0.0 || dt_ns <= 0.0) continue;
    const double p = 0.5 * (1.0 - std::exp(-rate * dt_ns));
    Matrix zj = identity(d);
    for (int k = j + 1; k < d; ++k) zj(k, k) = -1.0;
    std::vector<Matrix> next;
    for (const auto& k : ch.kraus_ops) {
      next.push_back(std::sqrt(1.0 - p) * k);
      next.push_back(std::sqrt(p) * (zj * k));
    }
    ch.kraus_ops = std::move(next);
  }
  return ch;
}

Matrix shift_matrix(int d) {
  Matrix x = Matrix::Zero(d, d);
  for (int s = 0; s < d; ++s) x((s + 1) % d, s) = 1.0;
  return x;
}

Matrix clock_matrix(int d) {
  Matrix z = Matrix::Zero(d, d);
  for (int s = 0; s < d; ++s) z(s, s) = std::polar(1.0, 2 * kPi * s / d);
  return z;
}

NoiseChannel depolarizing(int d, double p) {
  if (p < 0.0 || p > 1.0) throw ValidationError("depolarizing: p must lie in [0, 1]");
  NoiseChannel ch;
  const double w = p / (d * d);
  const Matrix x = shift_matrix(d);
  const Matrix z = clock_matrix(d);
  Matrix xa = identity(d);
  for (int a = 0; a < d; ++a) {
    Matrix zb = identity(d);
    for (int b = 0; b < d; ++b) {
      const double weight = (a == 0 && b == 0) ? 1.0 - p + w : w;
      if (weight > 0.0) ch.kraus_ops.push_back(std::sqrt(weight) * (xa * zb));
      zb = z * zb;
    }
    xa = x * xa;
  }
  return ch;
}

PureState simulate_ideal(const CompiledCircuit& c, const PureState& initial) {
  if (initial.dim() != c.dim) throw DimensionError("simulate_ideal: dim mismatch");
  Matrix v = initial.amplitudes();
  for (const auto& p : c.pulses) apply_two_level_left(v, p);
  for (int k = 0; k < c.dim; ++k) v(k, 0) *= std::polar(1.0, c.leading.phases.at(k));
  Vector out = v.col(0);
  out /= out.norm();
  return PureState(out);
}

DensityMatrix simulate_noisy(const CompiledCircuit& circuit, const DensityMatrix& initial,
                             const DeviceModel& device,
                             const std::optional<ExtraNoise>& extra) {
  if (initial.dim() != circuit.dim || device.dim != circuit.dim) {
    throw DimensionError("simulate_noisy: dim mismatch");
  }
  device.validate();
  const CompiledCircuit c = circuit.adjacent_only ? circuit : compile_to_adjacent(circuit);
  Matrix rho = initial.matrix();
  for (const auto& p : c.pulses) {
    apply_two_level_left(rho, p);
    apply_two_level_right_adjoint(rho, p);
    const double dt = device.pulse_duration(p);
    if (dt > 0.0) {
      rho = amplitude_damping(device, dt).apply(rho);
      rho = dephasing(device, dt).apply(rho);
    }
    if (extra) {
      const int reps = extra->per_half_pi ? half_pi_units(p) : 1;
      for (int r = 0; r < reps; ++r) rho = extra->channel.apply(rho);
    }
    rho = 0.5 * (rho + rho.adjoint());
  }
  apply_phase(rho, c.leading);
  return DensityMatrix::unchecked(rho);
}

DensityMatrix idle(const DensityMatrix& rho, const DeviceModel& device, double duration_ns,
                   int slices) {
  if (slices < 1) throw ValidationError("idle: need at least one slice");
  Matrix r = rho.matrix();
  const double dt = duration_ns / slices;
  const NoiseChannel ad = amplitude_damping(device, dt);
  const NoiseChannel dp = dephasing(device, dt);
  for (int s = 0; s < slices; ++s) r = dp.apply(ad.apply(r));
  return DensityMatrix::unchecked(r);
}

std::vector<double> apply_readout(const std::vector<double>& probs, const ReadoutModel& r) {
  if (static_cast<int>(probs.size()) != r.dim()) {
    throw DimensionError("apply_readout: dim mismatch");
  }
  std::vector<double> out(probs.size(), 0.0);
  for (int i = 0; i < r.dim(); ++i)
    for (int j = 0; j < r.dim(); ++j) out[j] += probs[i] * r.confusion(i, j).real();
  return out;
}

std::vector<double> bayes_correct(const std::vector<long>& counts, const ReadoutModel& r) {
  const int d = r.dim();
  if (static_cast<int>(counts.size()) != d) throw DimensionError("bayes_correct: dim mismatch");
  const long total = std::accumulate(counts.begin(), counts.end(), 0L);
  if (total <= 0) throw ValidationError("bayes_correct: no counts");
  const Eigen::MatrixXd c = r.confusion.real();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
  const auto& sv = svd.singularValues();
  if (sv(d - 1) <= 1e-10 * sv(0)) {
    throw ValidationError("bayes_correct: confusion matrix is singular");
  }
  RealVector e(d);
  for (int k = 0; k < d; ++k) e(k) = static_cast<double>(counts[k]) / total;

  // Observed distribution is qᵀC, i.e. Cᵀq in column form.
  const Eigen::MatrixXd a = c.transpose();
  RealVector q = a.partialPivLu().solve(e);
  if (q.minCoeff() >= 0.0) return std::vector<double>(q.data(), q.data() + d);

  // FISTA on ½‖Aq − e‖² over the simplex.
  const double lip = sv(0) * sv(0);
  q = project_simplex(q);
  RealVector y = q;
  double t = 1.0;
  for (int it = 0; it < 20000; ++it) {
    const RealVector grad = a.transpose() * (a * y - e);
    const RealVector next = project_simplex(y - grad / lip);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - q);
    const double step = (next - q).cwiseAbs().maxCoeff();
    q = next;
    t = t_next;
    if (step < 1e-15) break;
  }
  return std::vector<double>(q.data(), q.data() + d);
}

Backend Backend::ideal(int d) {
  return Backend{false, DeviceModel::ideal(d), ReadoutModel::ideal(d)};
}

Backend Backend::from_config(const DeviceConfig& cfg) {
  return Backend{true, cfg.device, cfg.readout};
}

DensityMatrix Backend::evolve(const CompiledCircuit& c, const DensityMatrix& rho) const {
  if (noisy) return simulate_noisy(c, rho, device);
  const Matrix u = recompose(c);
  return DensityMatrix::unchecked(u * rho.matrix() * u.adjoint());
}

std::vector<double> Backend::measure(const DensityMatrix& rho) const {
  const auto probs = measure_probs(rho);
  return noisy ? apply_readout(probs, readout) : probs;
}

}  // namespace qudit
