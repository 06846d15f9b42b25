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
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "qudit/clifford.hpp"

namespace qudit {
namespace {

using nlohmann::json;

constexpr double kKeyScale = 1e8;

Matrix block_of(const Matrix& u, const std::vector<int>& support) {
  if (support.empty()) return u;
  const auto k = static_cast<Eigen::Index>(support.size());
  Matrix b(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) b(r, c) = u(support[r], support[c]);
  return b;
}

void compile_element(CliffordGroup& g, const Matrix& u) {
  CompiledCircuit c;
  if (g.support.empty()) {
    c = decompose_bubbling(u);
  } else {
    c = compile_to_adjacent(decompose_normal(u));
  }
  g.pulse_costs.push_back(pulse_stats(c));
  g.circuits.push_back(std::move(c));
}

}  // namespace

std::array<Matrix, 4> clifford_generators(int d) {
  if (d < 2) throw DimensionError("clifford_generators: d must be at least 2");
  const double w = 2 * kPi / d;
  Matrix f(d, d);
  Matrix p = Matrix::Zero(d, d);
  Matrix z = Matrix::Zero(d, d);
  Matrix x = Matrix::Zero(d, d);
  const int rho = d % 2;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) f(j, k) = std::polar(1.0 / std::sqrt(double(d)), w * j * k);
    p(j, j) = std::polar(1.0, w * j * (j + rho) / 2.0);
    z(j, j) = std::polar(1.0, w * j);
    x((j + 1) % d, j) = 1.0;
  }
  return {f, p, z, x};
}

Matrix canonical_phase(const Matrix& u) {
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      const cplx v = u(r, c);
      if (std::abs(v) > 1e-6) return u * (std::conj(v) / std::abs(v));
    }
  }
  return u;
}

std::vector<long long> CliffordGroup::key(const Matrix& u) const {
  const Matrix c = canonical_phase(block_of(u, support));
  std::vector<long long> k;
  k.reserve(2 * c.size());
  for (Eigen::Index r = 0; r < c.rows(); ++r) {
    for (Eigen::Index col = 0; col < c.cols(); ++col) {
      k.push_back(std::llround(c(r, col).real() * kKeyScale));
      k.push_back(std::llround(c(r, col).imag() * kKeyScale));
    }
  }
  return k;
}

void CliffordGroup::reindex() {
  lookup_.clear();
  for (int i = 0; i < size(); ++i) lookup_.emplace(key(elements[i]), i);
}

int CliffordGroup::append(const Matrix& u) {
  elements.push_back(u);
  lookup_.emplace(key(u), size() - 1);
  return size() - 1;
}

int CliffordGroup::index_of(const Matrix& u) const {
  const auto it = lookup_.find(key(u));
  return it == lookup_.end() ? -1 : it->second;
}

int CliffordGroup::inverse(int i) const { return index_of(elements.at(i).adjoint()); }

double CliffordGroup::mean_half_pi_count() const {
  double s = 0.0;
  for (const auto& c : pulse_costs) s += c.half_pi_count;
  return pulse_costs.empty() ? 0.0 : s / pulse_costs.size();
}

double CliffordGroup::mean_su2_count() const {
  double s = 0.0;
  for (const auto& c : pulse_costs) s += c.su2_count;
  return pulse_costs.empty() ? 0.0 : s / pulse_costs.size();
}

CliffordGroup generate_group(int d, int max_elements) {
  const auto gens = clifford_generators(d);
  CliffordGroup g;
  g.dim = d;
  g.append(identity(d));
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (const auto& gen : gens) {
      const Matrix next = canonical_phase(gen * g.elements[i]);
      if (g.index_of(next) >= 0) continue;
      if (g.size() >= max_elements) {
        throw std::runtime_error("generate_group: closure not reached within " +
                                 std::to_string(max_elements) + " elements");
      }
      queue.push_back(g.append(next));
    }
  }
  for (const auto& u : g.elements) compile_element(g, u);
  return g;
}

CliffordGroup subspace_clifford_group(int d, int m, int n) {
  if (m < 0 || n >= d || m >= n) throw DimensionError("subspace_clifford_group: bad levels");
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Matrix s(2, 2);
  s << 1, 0, 0, kI;
  CliffordGroup block;
  block.dim = 2;
  block.append(identity(2));
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (const Matrix* gen : {&h, &s}) {
      const Matrix next = canonical_phase(*gen * block.elements[i]);
      if (block.index_of(next) >= 0) continue;
      queue.push_back(block.append(next));
    }
  }
  CliffordGroup g;
  g.dim = d;
  g.support = {m, n};
  for (const auto& b : block.elements) {
    Matrix u = identity(d);
    u(m, m) = b(0, 0);
    u(m, n) = b(0, 1);
    u(n, m) = b(1, 0);
    u(n, n) = b(1, 1);
    g.append(u);
  }
  for (const auto& u : g.elements) compile_element(g, u);
  return g;
}

bool verify_closure(const CliffordGroup& g, long sample_pairs, std::uint64_t seed) {
  if (sample_pairs <= 0) {
    for (int i = 0; i < g.size(); ++i)
      for (int j = 0; j < g.size(); ++j)
        if (g.index_of(g.elements[i] * g.elements[j]) < 0) return false;
    return true;
  }
  Rng rng(seed);
  std::uniform_int_distribution<int> pick(0, g.size() - 1);
  for (long t = 0; t < sample_pairs; ++t) {
    if (g.index_of(g.elements[pick(rng)] * g.elements[pick(rng)]) < 0) return false;
  }
  return true;
}

std::string group_to_json(const CliffordGroup& g) {
  json j;
  j["format"] = "qudit-clifford-group";
  j["dim"] = g.dim;
  j["support"] = g.support;
  json elems = json::array();
  for (int i = 0; i < g.size(); ++i) {
    json e;
    json re = json::array();
    json im = json::array();
    for (int r = 0; r < g.dim; ++r) {
      json rr = json::array();
      json ii = json::array();
      for (int c = 0; c < g.dim; ++c) {
        rr.push_back(g.elements[i](r, c).real());
        ii.push_back(g.elements[i](r, c).imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    e["re"] = re;
    e["im"] = im;
    e["su2_count"] = g.pulse_costs[i].su2_count;
    e["half_pi_count"] = g.pulse_costs[i].half_pi_count;
    e["phase_count"] = g.pulse_costs[i].phase_count;
    e["circuit"] = circuit_to_string(g.circuits[i]);
    elems.push_back(e);
  }
  j["elements"] = elems;
  return j.dump(1);
}

CliffordGroup group_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("clifford group: ") + e.what());
  }
  try {
    CliffordGroup g;
    g.dim = j.at("dim").get<int>();
    g.support = j.value("support", std::vector<int>{});
    for (const auto& e : j.at("elements")) {
      const auto re = e.at("re").get<std::vector<std::vector<double>>>();
      const auto im = e.at("im").get<std::vector<std::vector<double>>>();
      Matrix u(g.dim, g.dim);
      for (int r = 0; r < g.dim; ++r)
        for (int c = 0; c < g.dim; ++c) u(r, c) = cplx(re.at(r).at(c), im.at(r).at(c));
      g.elements.push_back(u);
      g.circuits.push_back(circuit_from_string(e.at("circuit").get<std::string>()));
      g.pulse_costs.push_back(PulseStats{e.at("su2_count").get<int>(),
                                         e.at("half_pi_count").get<int>(),
                                         e.at("phase_count").get<int>()});
    }
    g.reindex();
    return g;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("clifford group: ") + e.what());
  }
}

void save_group(const CliffordGroup& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << group_to_json(g) << '\n';
}

CliffordGroup load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open group cache '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return group_from_json(ss.str());
}

}  // namespace qudit
