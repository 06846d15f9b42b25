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

#include "qudit/gates.hpp"

#include <cmath>

namespace qudit {
namespace {

void check_levels(const PulseOp& op, int d) {
  if (op.m < 0 || op.n >= d || op.m >= op.n) {
    throw DimensionError("pulse levels out of range");
  }
  if (!std::isfinite(op.theta) || !std::isfinite(op.phi)) {
    throw ValidationError("pulse angles must be finite");
  }
}

bool near_zero_mod(double x, double period, double tol) {
  const double r = std::remainder(x, period);
  return std::abs(r) <= tol;
}

void expand_into(const PulseOp& op, std::vector<PulseOp>& out) {
  if (op.adjacent()) {
    out.push_back(op);
    return;
  }
  out.push_back(PulseOp{op.m, op.m + 1, kPi, kPi / 2});
  expand_into(PulseOp{op.m + 1, op.n, op.theta, op.phi}, out);
  out.push_back(PulseOp{op.m, op.m + 1, -kPi, kPi / 2});
}

}  // namespace

bool PhaseOp::trivial(double tol) const {
  for (double x : phases) {
    if (!near_zero_mod(x - phases.front(), 2 * kPi, tol)) return false;
  }
  return true;
}

double wrap_pi(double x) {
  double r = std::remainder(x, 2 * kPi);  // [−π, π]
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

double wrap_theta(double theta) {
  double r = std::remainder(theta, 4 * kPi);  // [−2π, 2π]
  if (r <= -2 * kPi) r += 4 * kPi;
  return r;
}

PulseOp canonical(PulseOp op) {
  op.theta = wrap_theta(op.theta);
  op.phi = wrap_pi(op.phi);
  return op;
}

Matrix rotation_matrix(const PulseOp& op, int d) {
  check_levels(op, d);
  Matrix r = identity(d);
  const double c = std::cos(op.theta / 2);
  const double s = std::sin(op.theta / 2);
  r(op.m, op.m) = c;
  r(op.n, op.n) = c;
  r(op.m, op.n) = -kI * s * std::polar(1.0, -op.phi);
  r(op.n, op.m) = -kI * s * std::polar(1.0, op.phi);
  return r;
}

Matrix phase_matrix(const PhaseOp& p) {
  Matrix m = Matrix::Zero(p.dim(), p.dim());
  for (int k = 0; k < p.dim(); ++k) m(k, k) = std::polar(1.0, p.phases[k]);
  return m;
}

Matrix op_matrix(const Op& op, int d) {
  if (const auto* pulse = std::get_if<PulseOp>(&op)) return rotation_matrix(*pulse, d);
  const auto& ph = std::get<PhaseOp>(op);
  if (ph.dim() != d) throw DimensionError("phase gate dimension mismatch");
  return phase_matrix(ph);
}

Matrix sequence_matrix(const std::vector<Op>& seq, int d) {
  Matrix u = identity(d);
  for (const Op& op : seq) u = op_matrix(op, d) * u;
  return u;
}

std::pair<PhaseOp, PulseOp> commute_phase_left(const PulseOp& op, const PhaseOp& p) {
  PulseOp out = op;
  out.phi = wrap_pi(op.phi + p.phases.at(op.m) - p.phases.at(op.n));
  return {p, out};
}

std::pair<PulseOp, PhaseOp> commute_phase_right(const PhaseOp& p, const PulseOp& op) {
  PulseOp out = op;
  out.phi = wrap_pi(op.phi - p.phases.at(op.m) + p.phases.at(op.n));
  return {out, p};
}

std::vector<PulseOp> expand_nonadjacent(const PulseOp& op) {
  if (op.n - op.m < 2) {
    throw std::invalid_argument("expand_nonadjacent: pulse already acts on adjacent levels");
  }
  std::vector<PulseOp> out;
  expand_into(op, out);
  return out;
}

std::tuple<PhaseOp, PulseOp, PhaseOp> su2_effective(const Su2Params& p, int d) {
  if (p.m < 0 || p.n >= d || p.m >= p.n) throw DimensionError("su2 levels out of range");
  PhaseOp phi1 = PhaseOp::zero(d);
  PhaseOp phi2 = PhaseOp::zero(d);
  phi1.phases[p.m] = -p.lambda / 2;
  phi1.phases[p.n] = p.lambda / 2;
  phi2.phases[p.m] = p.delta - p.phi / 2;
  phi2.phases[p.n] = p.delta + p.phi / 2;
  return {phi1, PulseOp{p.m, p.n, p.theta, kPi / 2}, phi2};
}

Su2Params su2_from_block(const Eigen::Matrix2cd& w, int m, int n) {
  const double c = std::abs(w(0, 0));
  const double s = std::abs(w(1, 0));
  // Phase sums of the sandwich P(α)·R(θ, π/2)·P(β): a = α_m+β_m,
  // b = α_m+β_n, e = α_n+β_m.
  double a = 0.0;
  double b = 0.0;
  double e = 0.0;
  if (s < 1e-15) {
    a = std::arg(w(0, 0));
    b = a;
    e = std::arg(w(1, 1));
  } else if (c < 1e-15) {
    b = std::arg(-w(0, 1));
    e = std::arg(w(1, 0));
  } else {
    a = std::arg(w(0, 0));
    b = std::arg(-w(0, 1));
    e = std::arg(w(1, 0));
  }
  Su2Params p;
  p.m = m;
  p.n = n;
  p.theta = 2 * std::atan2(s, c);
  p.phi = b - a;
  p.lambda = e - a;
  p.delta = a + (p.lambda + p.phi) / 2;
  return p;
}

SimplifiedSequence simplify_sequence(const std::vector<Op>& seq, int d, double tol) {
  SimplifiedSequence out;
  out.leading = PhaseOp::zero(d);
  auto& acc = out.leading.phases;
  auto& stack = out.pulses;

  auto absorb_2pi = [&](const PulseOp& p) {
    acc[p.m] += kPi;
    acc[p.n] += kPi;
  };

  for (const Op& op : seq) {
    if (const auto* ph = std::get_if<PhaseOp>(&op)) {
      if (ph->dim() != d) throw DimensionError("phase gate dimension mismatch");
      for (int k = 0; k < d; ++k) acc[k] += ph->phases[k];
      continue;
    }
    PulseOp r = std::get<PulseOp>(op);
    check_levels(r, d);
    r.phi += acc[r.m] - acc[r.n];
    r = canonical(r);

    if (!stack.empty()) {
      const PulseOp& top = stack.back();
      if (top.m == r.m && top.n == r.n) {
        double theta = 0.0;
        bool merge = false;
        if (near_zero_mod(r.phi - top.phi, 2 * kPi, tol)) {
          theta = top.theta + r.theta;
          merge = true;
        } else if (near_zero_mod(r.phi - top.phi - kPi, 2 * kPi, tol)) {
          theta = top.theta - r.theta;
          merge = true;
        }
        if (merge) {
          PulseOp merged = canonical(PulseOp{top.m, top.n, theta, top.phi});
          stack.pop_back();
          r = merged;
        }
      }
    }
    if (near_zero_mod(r.theta, 4 * kPi, tol)) continue;
    if (near_zero_mod(r.theta - 2 * kPi, 4 * kPi, tol)) {
      absorb_2pi(r);
      continue;
    }
    stack.push_back(r);
  }
  for (double& x : acc) x = wrap_pi(x);
  return out;
}

}  // namespace qudit
