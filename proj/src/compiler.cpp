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

#include "qudit/compiler.hpp"

#include <cmath>
#include <sstream>

namespace qudit {
namespace {

constexpr double kSkipTol = 1e-12;
constexpr double kUnitaryTol = 1e-9;

struct Factor {
  int m;
  int n;
  Eigen::Matrix2cd w;  // the factor as it appears in U = W_1···W_k·D
};

// Left-multiplies rows (r, s), r < s, of v by the unitary that zeroes v(r, col)
// using v(s, col), and records its inverse as a factor on (r, s).
void eliminate(Matrix& v, int r, int s, int col, std::vector<Factor>& out) {
  const cplx a = v(r, col);
  const cplx b = v(s, col);
  if (std::abs(a) < kSkipTol) return;
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  Eigen::Matrix2cd g;  // acts on the ordered pair (r, s)
  g << b / norm, -a / norm, std::conj(a) / norm, std::conj(b) / norm;
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const cplx x = v(r, j);
    const cplx y = v(s, j);
    v(r, j) = g(0, 0) * x + g(0, 1) * y;
    v(s, j) = g(1, 0) * x + g(1, 1) * y;
  }
  v(r, col) = 0.0;
  out.push_back(Factor{r, s, g.adjoint()});
}

CompiledCircuit assemble(const Matrix& v, const std::vector<Factor>& factors,
                         Strategy strategy) {
  const int d = static_cast<int>(v.rows());
  std::vector<Op> seq;
  PhaseOp diag = PhaseOp::zero(d);
  for (int k = 0; k < d; ++k) diag.phases[k] = std::arg(v(k, k));
  seq.emplace_back(diag);
  // U = W_1···W_k·D, so execution runs D, W_k, ..., W_1.
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const Su2Params p = su2_from_block(it->w, it->m, it->n);
    auto [phi1, pulse, phi2] = su2_effective(p, d);
    seq.emplace_back(phi2);
    seq.emplace_back(pulse);
    seq.emplace_back(phi1);
  }
  SimplifiedSequence s = simplify_sequence(seq, d);
  CompiledCircuit c;
  c.dim = d;
  c.pulses = std::move(s.pulses);
  c.leading = std::move(s.leading);
  c.strategy = strategy;
  c.su2_factors = static_cast<int>(factors.size());
  c.adjacent_only = true;
  for (const auto& p : c.pulses) c.adjacent_only = c.adjacent_only && p.adjacent();
  return c;
}

void require_unitary(const Matrix& u) {
  check_square(u);
  const double dev = unitarity_deviation(u);
  if (dev > kUnitaryTol) {
    std::ostringstream msg;
    msg << "input is not unitary (max |U^dag U - I| = " << dev << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

std::string to_string(Strategy s) { return s == Strategy::normal ? "normal" : "bubbling"; }

Strategy strategy_from_string(const std::string& s) {
  if (s == "normal") return Strategy::normal;
  if (s == "bubbling") return Strategy::bubbling;
  throw ValidationError("unknown strategy '" + s + "'");
}

CompiledCircuit CompiledCircuit::empty(int d) {
  CompiledCircuit c;
  c.dim = d;
  c.leading = PhaseOp::zero(d);
  c.adjacent_only = true;
  return c;
}

Permutation Permutation::identity(int d) {
  Permutation p;
  p.dim = d;
  for (int j = 0; j < d; ++j) p.image.push_back(j);
  return p;
}

void Permutation::validate() const {
  if (dim < 1 || static_cast<int>(image.size()) != dim) {
    throw ValidationError("permutation image has wrong length");
  }
  std::vector<bool> seen(dim, false);
  for (int v : image) {
    if (v < 0 || v >= dim || seen[v]) throw ValidationError("image is not a permutation");
    seen[v] = true;
  }
}

Matrix Permutation::matrix() const {
  validate();
  Matrix m = Matrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) m(image[j], j) = 1.0;
  return m;
}

CompiledCircuit decompose_normal(const Matrix& u) {
  require_unitary(u);
  const int d = static_cast<int>(u.rows());
  Matrix v = u;
  std::vector<Factor> factors;
  for (int p = d - 1; p >= 1; --p) {
    for (int r = p - 1; r >= 0; --r) eliminate(v, r, p, p, factors);
  }
  return assemble(v, factors, Strategy::normal);
}

CompiledCircuit decompose_bubbling(const Matrix& u) {
  require_unitary(u);
  const int d = static_cast<int>(u.rows());
  Matrix v = u;
  std::vector<Factor> factors;
  for (int p = d - 1; p >= 1; --p) {
    for (int j = 0; j < p; ++j) eliminate(v, j, j + 1, p, factors);
  }
  return assemble(v, factors, Strategy::bubbling);
}

CompiledCircuit decompose(const Matrix& u, Strategy s) {
  return s == Strategy::normal ? decompose_normal(u) : decompose_bubbling(u);
}

CompiledCircuit compile_to_adjacent(const CompiledCircuit& c) {
  bool already = true;
  for (const auto& p : c.pulses) already = already && p.adjacent();
  if (already) {
    CompiledCircuit out = c;
    out.adjacent_only = true;
    return out;
  }
  std::vector<Op> seq;
  for (const auto& p : c.pulses) {
    if (p.adjacent()) {
      seq.emplace_back(p);
    } else {
      for (const auto& q : expand_nonadjacent(p)) seq.emplace_back(q);
    }
  }
  seq.emplace_back(c.leading);
  SimplifiedSequence s = simplify_sequence(seq, c.dim);
  CompiledCircuit out = c;
  out.pulses = std::move(s.pulses);
  out.leading = std::move(s.leading);
  out.adjacent_only = true;
  return out;
}

Matrix recompose(const CompiledCircuit& c) {
  Matrix u = identity(c.dim);
  for (const auto& p : c.pulses) u = rotation_matrix(p, c.dim) * u;
  if (c.leading.dim() == c.dim) u = phase_matrix(c.leading) * u;
  return u;
}

CompiledCircuit concatenate(const std::vector<CompiledCircuit>& parts, int d) {
  CompiledCircuit out = CompiledCircuit::empty(d);
  if (!parts.empty()) out.strategy = parts.front().strategy;
  PhaseOp acc = PhaseOp::zero(d);
  for (const auto& c : parts) {
    if (c.dim != d) throw DimensionError("concatenate: dimension mismatch");
    for (const auto& p : c.pulses) {
      out.pulses.push_back(commute_phase_left(p, acc).second);
      out.adjacent_only = out.adjacent_only && p.adjacent();
    }
    if (c.leading.dim() == d) {
      for (int k = 0; k < d; ++k) acc.phases[k] = wrap_pi(acc.phases[k] + c.leading.phases[k]);
    }
    out.su2_factors += c.su2_factors;
  }
  out.leading = acc;
  return out;
}

int inversion_count(const Permutation& p) {
  p.validate();
  int inv = 0;
  for (int i = 0; i < p.dim; ++i)
    for (int j = i + 1; j < p.dim; ++j)
      if (p.image[i] > p.image[j]) ++inv;
  return inv;
}

CompiledCircuit compile_permutation(const Permutation& p) {
  p.validate();
  const int d = p.dim;
  // Left-multiplying by X_{v,v+1} swaps positions v, v+1 of the inverse image,
  // so bubble-sorting the inverse yields X_{s_L}···X_{s_1}·P = I.
  std::vector<int> inv(d);
  for (int j = 0; j < d; ++j) inv[p.image[j]] = j;
  std::vector<int> swaps;
  for (int pass = 0; pass < d; ++pass) {
    bool moved = false;
    for (int v = 0; v + 1 < d; ++v) {
      if (inv[v] > inv[v + 1]) {
        std::swap(inv[v], inv[v + 1]);
        swaps.push_back(v);
        moved = true;
      }
    }
    if (!moved) break;
  }
  // P = X_{s_1}···X_{s_L}; X_{j,j+1} = R_{j,j+1}(π, π/2)·P(π on j+1).
  std::vector<Op> seq;
  for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) {
    PhaseOp fix = PhaseOp::zero(d);
    fix.phases[*it + 1] = kPi;
    seq.emplace_back(fix);
    seq.emplace_back(PulseOp{*it, *it + 1, kPi, kPi / 2});
  }
  SimplifiedSequence s = simplify_sequence(seq, d);
  CompiledCircuit c;
  c.dim = d;
  c.pulses = std::move(s.pulses);
  c.leading = std::move(s.leading);
  c.strategy = Strategy::bubbling;
  c.adjacent_only = true;
  c.su2_factors = static_cast<int>(swaps.size());
  return c;
}

int half_pi_units(const PulseOp& op) {
  const double q = std::abs(op.theta) / (kPi / 2);
  return static_cast<int>(std::ceil(q - 1e-9));
}

PulseStats pulse_stats(const CompiledCircuit& c) {
  PulseStats s;
  s.su2_count = static_cast<int>(c.pulses.size());
  for (const auto& p : c.pulses) s.half_pi_count += half_pi_units(p);
  s.phase_count = (c.leading.dim() == c.dim && !c.leading.trivial()) ? 1 : 0;
  return s;
}

}  // namespace qudit
