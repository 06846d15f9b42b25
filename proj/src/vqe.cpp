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

#include "qudit/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace qudit {
namespace {

using nlohmann::json;

bool is_constant(const std::string& label) { return label == "I" || label == "II"; }

Matrix single_pauli(char c) {
  Matrix m = Matrix::Zero(2, 2);
  switch (c) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -kI, kI, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw ValidationError(std::string("unknown Pauli letter '") + c + "'");
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// e^{iH} for Hermitian H.
Matrix expi_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  Vector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::polar(1.0, es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hehp_generator(const std::vector<double>& x) {
  const Matrix a = pauli_string("IY") + pauli_string("YI");
  const Matrix b = pauli_string("XY") + pauli_string("YX");
  return 0.5 * x[0] * a + 0.5 * x[1] * b;
}

void append_su2(std::vector<Op>& seq, const Su2Params& p) {
  const auto [phi1, r, phi2] = su2_effective(p, 4);
  seq.push_back(phi2);
  seq.push_back(r);
  seq.push_back(phi1);
}

double golden(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double e = lo + gr * (hi - lo);
  double fc = f(c);
  double fe = f(e);
  for (int it = 0; it < iterations; ++it) {
    if (fc < fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + gr * (hi - lo);
      fe = f(e);
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

std::string to_string(Ansatz a) {
  return a == Ansatz::h2_single_theta ? "h2_single_theta" : "hehp_two_theta";
}

Ansatz ansatz_from_string(const std::string& s) {
  if (s == "h2_single_theta") return Ansatz::h2_single_theta;
  if (s == "hehp_two_theta") return Ansatz::hehp_two_theta;
  throw ValidationError("unknown ansatz '" + s + "'");
}

int parameter_count(Ansatz a) { return a == Ansatz::h2_single_theta ? 1 : 2; }

void VqeProblem::validate() const {
  if (coefficients.empty()) throw ValidationError("vqe problem: no coefficients");
  for (const auto& [label, value] : coefficients) {
    if (!std::isfinite(value)) throw ValidationError("vqe problem: non-finite coefficient");
    pauli_string(label);
  }
}

Matrix pauli_string(const std::string& label) {
  if (is_constant(label)) return identity(4);
  if (label.size() != 2) throw ValidationError("pauli label '" + label + "' must have 2 letters");
  return kron(single_pauli(label[0]), single_pauli(label[1]));
}

Matrix hamiltonian(const VqeProblem& p) {
  Matrix h = Matrix::Zero(4, 4);
  for (const auto& [label, a] : p.coefficients) h += a * pauli_string(label);
  return h;
}

double ground_energy(const VqeProblem& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(p));
  return es.eigenvalues()(0);
}

VqeProblem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("vqe problem: ") + e.what());
  }
  try {
    VqeProblem p;
    p.molecule = j.value("molecule", "");
    p.bond_distance = j.value("bond_distance", 0.0);
    p.units = j.value("units", "");
    p.source = j.value("source", "");
    p.ansatz = ansatz_from_string(j.at("ansatz").get<std::string>());
    for (const auto& [k, v] : j.at("coefficients").items()) {
      p.coefficients.emplace_back(k, v.get<double>());
    }
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("vqe problem: ") + e.what());
  }
}

VqeProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string problem_to_json(const VqeProblem& p) {
  json j;
  j["molecule"] = p.molecule;
  j["bond_distance"] = p.bond_distance;
  j["units"] = p.units;
  j["source"] = p.source;
  j["ansatz"] = to_string(p.ansatz);
  json c = json::object();
  for (const auto& [k, v] : p.coefficients) c[k] = v;
  j["coefficients"] = c;
  return j.dump(2);
}

CompiledCircuit ansatz_circuit(Ansatz a, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != parameter_count(a)) {
    throw ValidationError("ansatz: expected " + std::to_string(parameter_count(a)) +
                          " parameters");
  }
  if (a == Ansatz::hehp_two_theta) {
    const Matrix xx = pauli_string("XX");
    return decompose_normal(expi_hermitian(hehp_generator(params)) * xx);
  }
  const double t = params[0];
  std::vector<Op> seq;
  append_su2(seq, Su2Params{0, 1, kPi, 0.0, kPi, kPi / 2});
  append_su2(seq, Su2Params{1, 2, kPi, 0.0, kPi, kPi / 2});
  append_su2(seq, Su2Params{2, 3, kPi, 0.0, kPi, kPi / 2});
  append_su2(seq, Su2Params{0, 3, 2 * t, 0.0, -kPi, kPi / 2});
  append_su2(seq, Su2Params{1, 2, 2 * t, -kPi, 0.0, kPi / 2});
  seq.push_back(PhaseOp{{kPi, kPi, 0.0, kPi}});
  const SimplifiedSequence s = simplify_sequence(seq, 4);
  CompiledCircuit c = CompiledCircuit::empty(4);
  c.pulses = s.pulses;
  c.leading = s.leading;
  c.su2_factors = 5;
  for (const auto& p : c.pulses) c.adjacent_only = c.adjacent_only && p.adjacent();
  return c;
}

Vector ansatz_reference_state(Ansatz a, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != parameter_count(a)) {
    throw ValidationError("ansatz: wrong parameter count");
  }
  const Matrix g = a == Ansatz::h2_single_theta ? Matrix(params[0] * pauli_string("XY"))
                                                : hehp_generator(params);
  return expi_hermitian(g).col(3);
}

Matrix measurement_basis(const std::string& label) {
  if (is_constant(label)) return identity(4);
  pauli_string(label);
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Matrix sdg(2, 2);
  sdg << 1, 0, 0, -kI;
  auto rot = [&](char c) -> Matrix {
    if (c == 'X') return h;
    if (c == 'Y') return h * sdg;
    return identity(2);
  };
  return kron(rot(label[0]), rot(label[1]));
}

std::vector<int> eigen_signs(const std::string& label) {
  std::vector<int> s(4, 1);
  if (is_constant(label)) return s;
  for (int k = 0; k < 4; ++k) {
    const int q1 = k >> 1;
    const int q0 = k & 1;
    if (label[0] != 'I' && q1) s[k] = -s[k];
    if (label[1] != 'I' && q0) s[k] = -s[k];
  }
  return s;
}

VqeEvaluator::VqeEvaluator(VqeProblem problem, Backend backend, long shots, std::uint64_t seed)
    : problem_(std::move(problem)), backend_(std::move(backend)), shots_(shots), rng_(seed) {
  problem_.validate();
  if (backend_.dim() != 4) throw DimensionError("vqe: backend must be four-level");
  for (const auto& [label, a] : problem_.coefficients) {
    (void)a;
    meas_.push_back(is_constant(label) ? CompiledCircuit::empty(4)
                                       : decompose_bubbling(measurement_basis(label)));
  }
}

VqeEval VqeEvaluator::operator()(const std::vector<double>& params) {
  VqeEval ev;
  ev.params = params;
  const DensityMatrix rho = backend_.evolve(ansatz_circuit(problem_.ansatz, params),
                                            DensityMatrix::pure(PureState::basis(4, 0)));
  for (std::size_t l = 0; l < problem_.coefficients.size(); ++l) {
    const auto& [label, a] = problem_.coefficients[l];
    if (is_constant(label)) {
      ev.expectations.push_back(1.0);
      ev.energy += a;
      continue;
    }
    auto pops = backend_.measure(backend_.evolve(meas_[l], rho));
    if (shots_ > 0) {
      const auto counts = sample_shots(pops, shots_, rng_);
      for (int k = 0; k < 4; ++k) pops[k] = static_cast<double>(counts[k]) / shots_;
    }
    const auto signs = eigen_signs(label);
    double m = 0.0;
    for (int k = 0; k < 4; ++k) m += signs[k] * pops[k];
    ev.expectations.push_back(m);
    ev.energy += a * m;
    if (shots_ > 0) {
      const double n = static_cast<double>(shots_);
      ev.variance += a * a * std::max(1.0 - m * m, 1.0 / n) / n;
    }
  }
  return ev;
}

VqeResult vqe_minimize(const VqeProblem& problem, const Backend& backend, long shots,
                       std::uint64_t seed) {
  VqeEvaluator eval(problem, backend, shots, seed);
  VqeResult res;
  auto f = [&](const std::vector<double>& x) {
    res.evaluations.push_back(eval(x));
    return res.evaluations.back().energy;
  };
  const bool single = problem.ansatz == Ansatz::h2_single_theta;
  const auto grid = linspace(-kPi / 2, kPi / 2, single ? 64 : 32);
  const double step = grid[1] - grid[0];
  std::vector<double> x;
  double best = 0.0;
  if (single) {
    for (double t : grid) {
      const double e = f({t});
      if (x.empty() || e < best) {
        best = e;
        x = {t};
      }
    }
  } else {
    for (double t1 : grid) {
      for (double t2 : grid) {
        const double e = f({t1, t2});
        if (x.empty() || e < best) {
          best = e;
          x = {t1, t2};
        }
      }
    }
  }
  // Exact mode keeps sweeping until the point settles; sampled mode spends
  // a fixed budget and leans on the surrogate instead.
  const bool exact = shots <= 0;
  const int iterations = exact ? 60 : 20;
  const int max_sweeps = exact ? 50 : 3;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double moved = 0.0;
    for (std::size_t ax = 0; ax < x.size(); ++ax) {
      const double before = x[ax];
      auto fa = [&](double t) {
        std::vector<double> y = x;
        y[ax] = t;
        return f(y);
      };
      x[ax] = golden(fa, x[ax] - step, x[ax] + step, iterations);
      moved = std::max(moved, std::abs(x[ax] - before));
    }
    if (exact && sweep >= 2 && moved < 1e-10) break;
  }
  res.best_sampled = res.evaluations.front().energy;
  for (const auto& e : res.evaluations) res.best_sampled = std::min(res.best_sampled, e.energy);
  if (exact) {
    res.params = x;
    res.energy = f(x);
    return res;
  }
  if (single) {
    // Global fit of the exact functional form c₀ + c₁cos2θ + c₂sin2θ.
    const auto n = static_cast<Eigen::Index>(res.evaluations.size());
    Eigen::MatrixXd m(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = res.evaluations[i].params[0];
      m(i, 0) = 1.0;
      m(i, 1) = std::cos(2 * t);
      m(i, 2) = std::sin(2 * t);
      y(i) = res.evaluations[i].energy;
    }
    const Eigen::Vector3d c = m.colPivHouseholderQr().solve(y);
    res.energy = c(0) - std::hypot(c(1), c(2));
    res.params = {0.5 * std::atan2(-c(2), -c(1))};
    return res;
  }
  // Weighted quadratic fit to the evaluations near the refined point.
  const double radius = 0.2;
  std::vector<const VqeEval*> near;
  for (const auto& e : res.evaluations) {
    if (std::hypot(e.params[0] - x[0], e.params[1] - x[1]) < radius) near.push_back(&e);
  }
  res.params = x;
  if (near.size() < 6) {
    res.energy = best;
    return res;
  }
  const auto n = static_cast<Eigen::Index>(near.size());
  Eigen::MatrixXd m(n, 6);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = near[i]->params[0] - x[0];
    const double v = near[i]->params[1] - x[1];
    const double w = 1.0 / std::sqrt(std::max(near[i]->variance, 1e-30));
    m.row(i) << w, w * u, w * v, w * u * u, w * u * v, w * v * v;
    y(i) = w * near[i]->energy;
  }
  const Eigen::VectorXd c = m.colPivHouseholderQr().solve(y);
  Eigen::Matrix2d hess;
  hess << 2 * c(3), c(4), c(4), 2 * c(5);
  const Eigen::Vector2d grad(c(1), c(2));
  Eigen::Vector2d delta = Eigen::Vector2d::Zero();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess);
  if (es.eigenvalues().minCoeff() > 0.0) {
    const Eigen::Vector2d trial = -hess.ldlt().solve(grad);
    if (trial.norm() <= radius) delta = trial;
  }
  res.energy = c(0) + grad.dot(delta) + 0.5 * delta.dot(hess * delta);
  res.params = {x[0] + delta(0), x[1] + delta(1)};
  return res;
}

void write_vqe_csv(std::ostream& os, const VqeProblem& p, const std::vector<VqeEval>& evals) {
  if (p.ansatz == Ansatz::h2_single_theta) {
    os << "theta";
  } else {
    os << "theta1,theta2";
  }
  for (const auto& [label, a] : p.coefficients) {
    (void)a;
    os << ',' << label;
  }
  os << ",energy,variance\n";
  for (const auto& e : evals) {
    for (std::size_t i = 0; i < e.params.size(); ++i) os << (i ? "," : "") << format_double(e.params[i]);
    for (double x : e.expectations) os << ',' << format_double(x);
    os << ',' << format_double(e.energy) << ',' << format_double(e.variance) << '\n';
  }
}

std::vector<VqeEval> read_vqe_csv(std::istream& is, const VqeProblem& p) {
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("vqe csv: missing header");
  const std::size_t np = parameter_count(p.ansatz);
  const std::size_t nt = p.coefficients.size();
  std::vector<VqeEval> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw ValidationError("vqe csv: malformed row '" + line + "'");
    }
    if (cells.size() != np + nt + 2) throw ValidationError("vqe csv: wrong column count");
    VqeEval e;
    e.params.assign(cells.begin(), cells.begin() + np);
    e.expectations.assign(cells.begin() + np, cells.begin() + np + nt);
    e.energy = cells[np + nt];
    e.variance = cells[np + nt + 1];
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace qudit
