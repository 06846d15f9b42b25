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

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "qudit/clifford.hpp"

namespace qudit {

std::vector<RbSequence> rb_sequences(const CliffordGroup& g, const std::vector<int>& lengths,
                                     int n_seq, std::uint64_t seed) {
  if (g.size() == 0) throw ValidationError("rb_sequences: empty group");
  Rng rng(seed);
  std::uniform_int_distribution<int> pick(0, g.size() - 1);
  std::vector<RbSequence> out;
  for (int len : lengths) {
    if (len < 0) throw ValidationError("rb_sequences: negative length");
    for (int s = 0; s < n_seq; ++s) {
      RbSequence seq{len, s, {}};
      Matrix total = identity(g.dim);
      for (int i = 0; i < len; ++i) {
        const int e = pick(rng);
        seq.elements.push_back(e);
        total = g.elements[e] * total;
      }
      const int inv = g.index_of(total.adjoint());
      if (inv < 0) throw std::runtime_error("rb_sequences: inverse not found in group");
      seq.elements.push_back(inv);
      out.push_back(std::move(seq));
    }
  }
  return out;
}

CompiledCircuit rb_circuit(const CliffordGroup& g, const RbSequence& s) {
  std::vector<CompiledCircuit> parts;
  for (int e : s.elements) parts.push_back(g.circuits.at(e));
  return concatenate(parts, g.dim);
}

std::vector<RbRecord> rb_simulate(const CliffordGroup& g, const std::vector<RbSequence>& seqs,
                                  const DeviceModel& device, const ReadoutModel& readout,
                                  const std::optional<ExtraNoise>& extra, int initial,
                                  long shots, std::uint64_t seed) {
  if (device.dim != g.dim) throw DimensionError("rb_simulate: device dimension mismatch");
  Rng rng(seed);
  std::vector<RbRecord> out;
  for (const auto& s : seqs) {
    DensityMatrix rho = DensityMatrix::pure(PureState::basis(g.dim, initial));
    rho = simulate_noisy(rb_circuit(g, s), rho, device, extra);
    auto pops = apply_readout(measure_probs(rho), readout);
    if (shots > 0) {
      const auto counts = sample_shots(pops, shots, rng);
      for (int k = 0; k < g.dim; ++k) pops[k] = static_cast<double>(counts[k]) / shots;
    }
    out.push_back(RbRecord{s.length, s.seq_index, pops});
  }
  return out;
}

std::map<int, double> rb_survival(const std::vector<RbRecord>& records, int level) {
  std::map<int, double> sum;
  std::map<int, int> n;
  for (const auto& r : records) {
    sum[r.length] += r.pops.at(level);
    n[r.length] += 1;
  }
  for (auto& [len, s] : sum) s /= n[len];
  return sum;
}

namespace {

struct LinearFit {
  double a = 0.0;
  double b = 0.0;
  double sse = 0.0;
};

// For fixed p the model is linear in (A, B).
LinearFit fit_linear(const std::vector<double>& l, const std::vector<double>& y, double p) {
  const auto n = static_cast<Eigen::Index>(l.size());
  Eigen::MatrixXd x(n, 2);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = std::pow(p, l[i]);
    x(i, 1) = 1.0;
    v(i) = y[i];
  }
  const Eigen::Vector2d ab = x.colPivHouseholderQr().solve(v);
  return {ab(0), ab(1), (x * ab - v).squaredNorm()};
}

}  // namespace

RbFit rb_fit(const std::map<int, double>& survival, int d, double mean_half_pi) {
  if (survival.size() < 3) throw ValidationError("rb_fit: need at least 3 distinct lengths");
  std::vector<double> l;
  std::vector<double> y;
  for (const auto& [len, v] : survival) {
    l.push_back(len);
    y.push_back(v);
  }
  const double lo = *std::min_element(y.begin(), y.end());
  const double hi = *std::max_element(y.begin(), y.end());
  RbFit fit;
  const double scale = (d - 1.0) / d;
  if (hi - lo < 1e-12) {
    // No decay visible: the data pin p = 1.
    fit.decay = 1.0;
    fit.offset = 1.0 / d;
    fit.amplitude = hi - fit.offset;
    return fit;
  }
  // Search over q = log10(1 − p): a coarse scan, then golden section.
  auto sse = [&](double q) { return fit_linear(l, y, 1.0 - std::pow(10.0, q)).sse; };
  const int steps = 400;
  const double qmin = -12.0;
  const double qmax = 0.0;
  int best = 0;
  double best_v = sse(qmin);
  for (int i = 1; i <= steps; ++i) {
    const double v = sse(qmin + (qmax - qmin) * i / steps);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = qmin + (qmax - qmin) * std::max(0, best - 1) / steps;
  double b = qmin + (qmax - qmin) * std::min(steps, best + 1) / steps;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double e = a + gr * (b - a);
  double fc = sse(c);
  double fe = sse(e);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - gr * (b - a);
      fc = sse(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + gr * (b - a);
      fe = sse(e);
    }
  }
  const double p = 1.0 - std::pow(10.0, 0.5 * (a + b));
  if (!(p > 0.0 && p <= 1.0)) throw std::runtime_error("rb_fit: fit diverged");
  const LinearFit lin = fit_linear(l, y, p);
  fit.decay = p;
  fit.amplitude = lin.a;
  fit.offset = lin.b;
  // Standard errors from the Gauss-Newton covariance σ²(JᵀJ)⁻¹.
  const auto n = static_cast<Eigen::Index>(l.size());
  Eigen::MatrixXd jac(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    jac(i, 0) = std::pow(p, l[i]);
    jac(i, 1) = 1.0;
    jac(i, 2) = l[i] == 0.0 ? 0.0 : lin.a * l[i] * std::pow(p, l[i] - 1.0);
  }
  const double dof = std::max<double>(1.0, static_cast<double>(n) - 3.0);
  const double sigma2 = lin.sse / dof;
  const Eigen::Matrix3d jtj = jac.transpose() * jac;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(jtj);
  if (lu.isInvertible()) {
    const Eigen::Matrix3d cov = sigma2 * lu.inverse();
    fit.amplitude_stderr = std::sqrt(std::max(0.0, cov(0, 0)));
    fit.offset_stderr = std::sqrt(std::max(0.0, cov(1, 1)));
    fit.decay_stderr = std::sqrt(std::max(0.0, cov(2, 2)));
  }
  fit.error_per_clifford = (1.0 - p) * scale;
  fit.error_per_clifford_stderr = fit.decay_stderr * scale;
  if (mean_half_pi > 0.0) {
    fit.error_per_half_pi = fit.error_per_clifford / mean_half_pi;
    fit.error_per_half_pi_stderr = fit.error_per_clifford_stderr / mean_half_pi;
  }
  return fit;
}

ExtraNoise depolarizing_per_half_pi(int d, double eps) {
  // Average gate error of ρ ↦ (1−p)ρ + p·I/d is p(d−1)/d.
  return ExtraNoise{depolarizing(d, eps * d / (d - 1.0)), true};
}

void write_rb_csv(std::ostream& os, const std::vector<RbRecord>& records) {
  const int d = records.empty() ? 0 : static_cast<int>(records.front().pops.size());
  os << "length,seq_index";
  for (int k = 0; k < d; ++k) os << ",pop_" << k;
  os << '\n';
  for (const auto& r : records) {
    os << r.length << ',' << r.seq_index;
    for (double p : r.pops) os << ',' << format_double(p);
    os << '\n';
  }
}

std::vector<RbRecord> read_rb_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("length,seq_index", 0) != 0) {
    throw ValidationError("rb csv: missing header");
  }
  const auto levels = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',') - 1);
  if (levels < 1) throw ValidationError("rb csv: header names no populations");
  std::vector<RbRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    RbRecord r;
    try {
      std::getline(ss, cell, ',');
      r.length = std::stoi(cell);
      std::getline(ss, cell, ',');
      r.seq_index = std::stoi(cell);
      while (std::getline(ss, cell, ',')) r.pops.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw ValidationError("rb csv: malformed row '" + line + "'");
    }
    if (r.pops.size() != levels) throw ValidationError("rb csv: wrong column count");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qudit
