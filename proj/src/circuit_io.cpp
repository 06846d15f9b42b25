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

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qudit/compiler.hpp"

namespace qudit {
namespace {

constexpr const char* kMagic = "qudit-circuit";
constexpr const char* kVersion = "v1";

std::string header_value(const std::string& token, const std::string& key) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw ValidationError("circuit header: expected '" + prefix + "', got '" + token + "'");
  }
  return token.substr(prefix.size());
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_circuit(std::ostream& os, const CompiledCircuit& c) {
  os << kMagic << ' ' << kVersion << " dim=" << c.dim << " strategy=" << to_string(c.strategy)
     << " adjacent=" << (c.adjacent_only ? 1 : 0) << " factors=" << c.su2_factors << '\n';
  for (const auto& p : c.pulses) {
    os << "pulse " << p.m << ' ' << p.n << ' ' << format_double(p.theta) << ' '
       << format_double(p.phi) << '\n';
  }
  os << "phase";
  for (double x : c.leading.phases) os << ' ' << format_double(x);
  os << '\n';
}

CompiledCircuit read_circuit(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("circuit: empty input");
  std::istringstream hs(line);
  std::string magic, version, dim, strategy, adjacent, factors;
  hs >> magic >> version >> dim >> strategy >> adjacent >> factors;
  if (magic != kMagic || version != kVersion) throw ValidationError("circuit: bad header");
  CompiledCircuit c;
  c.dim = std::stoi(header_value(dim, "dim"));
  if (c.dim < 2) throw ValidationError("circuit: dimension must be at least 2");
  c.strategy = strategy_from_string(header_value(strategy, "strategy"));
  c.adjacent_only = header_value(adjacent, "adjacent") == "1";
  c.su2_factors = std::stoi(header_value(factors, "factors"));
  c.leading = PhaseOp::zero(c.dim);
  bool have_phase = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "pulse") {
      if (have_phase) throw ValidationError("circuit: pulse after the leading phase");
      PulseOp p;
      if (!(ls >> p.m >> p.n >> p.theta >> p.phi)) {
        throw ValidationError("circuit: malformed pulse record");
      }
      if (p.m < 0 || p.n >= c.dim || p.m >= p.n) {
        throw ValidationError("circuit: pulse levels out of range");
      }
      c.pulses.push_back(p);
    } else if (kind == "phase") {
      for (int k = 0; k < c.dim; ++k) {
        if (!(ls >> c.leading.phases[k])) throw ValidationError("circuit: short phase record");
      }
      have_phase = true;
    } else {
      throw ValidationError("circuit: unknown record '" + kind + "'");
    }
  }
  if (!have_phase) throw ValidationError("circuit: missing phase record");
  return c;
}

std::string circuit_to_string(const CompiledCircuit& c) {
  std::ostringstream os;
  write_circuit(os, c);
  return os.str();
}

CompiledCircuit circuit_from_string(const std::string& s) {
  std::istringstream is(s);
  return read_circuit(is);
}

}  // namespace qudit
