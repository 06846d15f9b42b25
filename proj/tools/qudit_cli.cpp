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

// qudit: compile unitaries to pulse circuits and run the simulated experiments.
//
//   qudit compile <matrix.json> [--strategy normal|bubbling] [--adjacent] [--out DIR]
//   qudit run qst|qpt|rb|parity|grover|vqe [--config FILE] [common and per-command flags]
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid input.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qudit/clifford.hpp"
#include "qudit/experiments.hpp"
#include "qudit/tomography.hpp"
#include "qudit/vqe.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qudit;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;

const std::vector<std::string> kRunCommands = {"qst", "qpt", "rb", "parity", "grover", "vqe"};

struct Common {
  std::string device;
  std::uint64_t seed = 1;
  long shots = 4096;
  bool exact = false;
  std::string out = ".";
  std::string backend = "ideal";
  std::string strategy = "bubbling";
};

struct Params {
  int dim = 0;  // 0: command default
  std::string state;
  std::string process = "dft";
  std::string matrix;
  std::string lengths = "1,2,4,8,16,32,64";
  int sequences = 30;
  double epsilon = 0.0;
  std::string group_cache;
  int m = 0;
  std::string permutation;
  int label = 0;
  std::string problem;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class OutDir {
 public:
  explicit OutDir(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + (dir_ / name).string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + (dir_ / name).string() + "'");
  }
  std::string read(const std::string& name) const { return read_file((dir_ / name).string()); }

 private:
  fs::path dir_;
};

void require_round_trip(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what + ": output did not read back identically");
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": '" + cell + "' is not an integer");
    }
  }
  return out;
}

Matrix parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("matrix file: ") + e.what());
  }
  try {
    const auto& re = j.at("re");
    const int d = static_cast<int>(re.size());
    if (d < 2) throw ValidationError("matrix file: need at least a 2x2 matrix");
    Matrix u = Matrix::Zero(d, d);
    for (int r = 0; r < d; ++r) {
      if (static_cast<int>(re[r].size()) != d) throw ValidationError("matrix file: not square");
      for (int c = 0; c < d; ++c) u(r, c) = re[r][c].get<double>();
    }
    if (j.contains("im")) {
      const auto& im = j.at("im");
      if (static_cast<int>(im.size()) != d) throw ValidationError("matrix file: im shape");
      for (int r = 0; r < d; ++r) {
        if (static_cast<int>(im[r].size()) != d) throw ValidationError("matrix file: im shape");
        for (int c = 0; c < d; ++c) u(r, c) += kI * im[r][c].get<double>();
      }
    }
    return u;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("matrix file: ") + e.what());
  }
}

json matrix_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return json{{"re", re}, {"im", im}};
}

void validate_common(const Common& c) {
  if (c.seed == 0) throw ValidationError("--seed must be positive");
  if (c.shots <= 0) throw ValidationError("--shots must be positive");
  if (c.backend != "ideal" && c.backend != "noisy") {
    throw ValidationError("--backend must be 'ideal' or 'noisy'");
  }
  strategy_from_string(c.strategy);
}

// Backend for dimension `d`; 0 takes the device dimension or `fallback`.
Backend make_backend(const Common& c, int& d, int fallback) {
  if (c.backend == "noisy") {
    if (c.device.empty()) throw ValidationError("--backend noisy needs --device");
    const DeviceConfig cfg = load_device(c.device);
    if (d == 0) d = cfg.device.dim;
    if (cfg.device.dim != d) {
      throw DimensionError("device has dimension " + std::to_string(cfg.device.dim) +
                           ", command needs " + std::to_string(d));
    }
    return Backend::from_config(cfg);
  }
  if (d == 0) d = c.device.empty() ? fallback : load_device(c.device).device.dim;
  return Backend::ideal(d);
}

std::string summary_line(const std::string& cmd, const std::vector<std::string>& fields) {
  std::string s = cmd + ":";
  for (const auto& f : fields) s += " " + f;
  return s + "\n";
}

void finish(const OutDir& out, const std::string& cmd, const std::string& line) {
  out.write(cmd + "_summary.txt", line);
  std::cout << line;
}

// ---------------------------------------------------------------- compile

int cmd_compile(const std::string& matrix_path, const Common& c, bool adjacent) {
  const Strategy s = strategy_from_string(c.strategy);
  const Matrix u = parse_matrix(read_file(matrix_path));
  CompiledCircuit circ = decompose(u, s);
  if (adjacent) circ = compile_to_adjacent(circ);
  const OutDir out(c.out);
  const std::string text = circuit_to_string(circ);
  out.write("circuit.txt", text);
  require_round_trip(circuit_to_string(circuit_from_string(out.read("circuit.txt"))) == text,
                     "circuit");
  const PulseStats st = pulse_stats(circ);
  finish(out, "compile",
         summary_line("compile", {"dim=" + std::to_string(circ.dim),
                                  "strategy=" + to_string(circ.strategy),
                                  "adjacent=" + std::to_string(circ.adjacent_only ? 1 : 0),
                                  "su2_factors=" + std::to_string(circ.su2_factors),
                                  "su2_count=" + std::to_string(st.su2_count),
                                  "half_pi_count=" + std::to_string(st.half_pi_count),
                                  "phase_count=" + std::to_string(st.phase_count),
                                  "max_error=" + fmt("%.1e", phase_distance(recompose(circ), u))}));
  return 0;
}

// ---------------------------------------------------------------- qst

int cmd_qst(const Common& c, Params p) {
  int d = p.dim;
  const Backend backend = make_backend(c, d, 4);
  if (d != 3 && d != 4) throw ValidationError("qst: dimension must be 3 or 4");
  Rng rng(c.seed);
  std::string state = p.state.empty() ? (d == 4 ? "demo" : "uniform") : p.state;
  std::optional<PureState> target;
  DensityMatrix truth = DensityMatrix::maximally_mixed(d);
  if (state == "demo") {
    if (d != 4) throw ValidationError("qst: the demo state is four-level");
    Vector v(4);
    v << cplx(1, -1) / std::sqrt(8.0), 1.0 / std::sqrt(2.0), cplx(-1, -1) / std::sqrt(8.0), 0.0;
    target = PureState(v);
  } else if (state == "uniform") {
    target = PureState(Vector(dft_matrix(d).col(0)));
  } else if (state.rfind("basis:", 0) == 0) {
    const auto k = parse_int_list(state.substr(6), "qst state");
    if (k.size() != 1 || k[0] < 0 || k[0] >= d) throw ValidationError("qst: bad basis level");
    target = PureState::basis(d, k[0]);
  } else if (state == "random") {
    truth = random_density(d, rng);
  } else {
    throw ValidationError("qst: unknown state '" + state + "'");
  }
  if (target) truth = DensityMatrix::pure(*target);

  QstRecord exact;
  exact.dim = d;
  const auto circuits = qst_measurement_set(d, &exact.settings);
  for (const auto& m : circuits) exact.probs.push_back(measured_populations(truth, m, backend));
  const QstRecord rec = c.exact ? exact : qst_sample(exact, c.shots, rng);

  const DensityMatrix lin = qst_linear_inversion(rec);
  const MleResult mle = qst_mle(rec, lin);

  const OutDir out(c.out);
  const std::string rec_text = qst_record_to_json(rec);
  out.write("qst_record.json", rec_text);
  json rho{{"format", "qudit-density"},
           {"dim", d},
           {"linear", matrix_json(lin.matrix())},
           {"mle", matrix_json(mle.rho.matrix())}};
  const std::string rho_text = rho.dump(2) + "\n";
  out.write("qst_rho.json", rho_text);
  require_round_trip(qst_record_to_json(qst_record_from_json(out.read("qst_record.json"))) ==
                         rec_text,
                     "qst record");
  require_round_trip(json::parse(out.read("qst_rho.json")).dump(2) + "\n" == rho_text, "qst rho");

  std::vector<std::string> fields{"dim=" + std::to_string(d), "state=" + state,
                                  "shots=" + (c.exact ? std::string("exact") : std::to_string(c.shots)),
                                  "mle_iterations=" + std::to_string(mle.iterations)};
  if (target) {
    fields.push_back("fidelity_linear=" + fmt("%.6f", state_fidelity(lin, *target)));
    fields.push_back("fidelity_mle=" + fmt("%.6f", state_fidelity(mle.rho, *target)));
  } else {
    fields.push_back("max_error_mle=" +
                     fmt("%.3e", max_abs(Matrix(mle.rho.matrix() - truth.matrix()))));
  }
  finish(out, "qst", summary_line("qst", fields));
  return 0;
}

// ---------------------------------------------------------------- qpt

int cmd_qpt(const Common& c, const Params& p) {
  int d = p.dim;
  Matrix process;
  std::string name = p.process;
  if (!p.matrix.empty()) {
    process = parse_matrix(read_file(p.matrix));
    if (d != 0 && d != process.rows()) throw DimensionError("qpt: matrix dimension mismatch");
    d = static_cast<int>(process.rows());
    name = "matrix";
  }
  const Backend backend = make_backend(c, d, 3);
  if (d != 3 && d != 4) throw ValidationError("qpt: dimension must be 3 or 4");
  if (p.matrix.empty()) {
    if (name == "dft") {
      process = dft_matrix(d);
    } else if (name == "identity") {
      process = identity(d);
    } else {
      throw ValidationError("qpt: unknown process '" + name + "'");
    }
  }
  Rng rng(c.seed);
  const auto finals = simulate_qpt_finals(process, strategy_from_string(c.strategy), backend,
                                          c.exact ? 0 : c.shots, rng);
  const GeneratorBasis basis = sun_generators(d);
  const ChiMatrix chi = qpt_reconstruct(finals, basis);
  const double fid = process_fidelity(chi, process);

  const OutDir out(c.out);
  const std::string text = chi_to_json(chi);
  out.write("qpt_chi.json", text);
  require_round_trip(chi_to_json(chi_from_json(out.read("qpt_chi.json"))) == text, "chi");
  finish(out, "qpt",
         summary_line("qpt", {"dim=" + std::to_string(d), "process=" + name,
                              "backend=" + c.backend,
                              "shots=" + (c.exact ? std::string("exact") : std::to_string(c.shots)),
                              "fidelity=" + fmt("%.6f", fid)}));
  return 0;
}

// ---------------------------------------------------------------- rb

int cmd_rb(const Common& c, const Params& p) {
  int d = p.dim;
  const Backend backend = make_backend(c, d, 3);
  if (p.sequences < 1) throw ValidationError("rb: --sequences must be positive");
  if (p.epsilon < 0.0 || p.epsilon > 1.0) throw ValidationError("rb: --epsilon must be in [0, 1]");
  const auto lengths = parse_int_list(p.lengths, "rb lengths");
  CliffordGroup g;
  if (!p.group_cache.empty() && fs::exists(p.group_cache)) {
    g = load_group(p.group_cache);
    if (g.dim != d) throw DimensionError("rb: cached group has the wrong dimension");
  } else {
    g = generate_group(d);
    if (!p.group_cache.empty()) save_group(g, p.group_cache);
  }
  const auto seqs = rb_sequences(g, lengths, p.sequences, c.seed);
  std::optional<ExtraNoise> extra;
  if (p.epsilon > 0.0) extra = depolarizing_per_half_pi(d, p.epsilon);
  const auto records = rb_simulate(g, seqs, backend.device, backend.readout, extra, 0,
                                   c.exact ? 0 : c.shots, c.seed);
  const RbFit fit = rb_fit(rb_survival(records), d, g.mean_half_pi_count());

  const OutDir out(c.out);
  std::ostringstream csv;
  write_rb_csv(csv, records);
  out.write("rb.csv", csv.str());
  {
    std::istringstream back(out.read("rb.csv"));
    std::ostringstream again;
    write_rb_csv(again, read_rb_csv(back));
    require_round_trip(again.str() == csv.str(), "rb csv");
  }
  const json fj{{"format", "qudit-rb-fit"},
                {"dim", d},
                {"amplitude", fit.amplitude},
                {"offset", fit.offset},
                {"decay", fit.decay},
                {"decay_stderr", fit.decay_stderr},
                {"error_per_clifford", fit.error_per_clifford},
                {"error_per_clifford_stderr", fit.error_per_clifford_stderr},
                {"mean_half_pi_per_clifford", g.mean_half_pi_count()},
                {"error_per_half_pi", fit.error_per_half_pi},
                {"error_per_half_pi_stderr", fit.error_per_half_pi_stderr}};
  const std::string fit_text = fj.dump(2) + "\n";
  out.write("rb_fit.json", fit_text);
  require_round_trip(json::parse(out.read("rb_fit.json")).dump(2) + "\n" == fit_text, "rb fit");
  finish(out, "rb",
         summary_line("rb", {"dim=" + std::to_string(d), "backend=" + c.backend,
                             "epsilon=" + fmt("%.3e", p.epsilon),
                             "decay=" + fmt("%.8f", fit.decay),
                             "error_per_clifford=" + fmt("%.3e", fit.error_per_clifford),
                             "error_per_half_pi=" + fmt("%.3e", fit.error_per_half_pi)}));
  return 0;
}

// ---------------------------------------------------------------- parity

int cmd_parity(const Common& c, const Params& p) {
  int d = p.dim;
  const Backend backend = make_backend(c, d, 3);
  const int m = p.m == 0 ? d - 1 : p.m;
  Permutation perm = Permutation::identity(d);
  if (!p.permutation.empty()) perm = Permutation{d, parse_int_list(p.permutation, "permutation")};
  perm.validate();
  const ParityVerdict v = run_parity({d, m, perm}, backend);

  json coset = json::array();
  for (const auto& q : v.coset) coset.push_back(q.image);
  const json j{{"format", "qudit-parity"},
               {"dim", d},
               {"m", m},
               {"permutation", perm.image},
               {"backend", c.backend},
               {"populations", v.populations},
               {"readout_peak", v.readout_peak},
               {"peak_population", v.peak_population},
               {"classification", to_string(v.classification)},
               {"coset", coset}};
  const std::string text = j.dump(2) + "\n";
  const OutDir out(c.out);
  out.write("parity.json", text);
  require_round_trip(json::parse(out.read("parity.json")).dump(2) + "\n" == text, "parity");
  finish(out, "parity",
         summary_line("parity", {"dim=" + std::to_string(d), "m=" + std::to_string(m),
                                 "readout=" + std::to_string(v.readout_peak),
                                 "population=" + fmt("%.6f", v.peak_population),
                                 "verdict=" + to_string(v.classification),
                                 "coset_size=" + std::to_string(v.coset.size())}));
  return 0;
}

// ---------------------------------------------------------------- grover

int cmd_grover(const Common& c, const Params& p) {
  int d = 4;
  if (p.dim != 0 && p.dim != 4) throw ValidationError("grover: dimension must be 4");
  const Backend backend = make_backend(c, d, 4);
  Rng rng(c.seed);
  const GroverResult r = grover_run(p.label, backend, c.shots, rng);
  const json j{{"format", "qudit-grover"}, {"label", r.label},   {"shots", c.shots},
               {"backend", c.backend},     {"probs", r.probs},   {"counts", r.counts},
               {"x_raw", r.x_raw},         {"x_corrected", r.x_corrected}};
  const std::string text = j.dump(2) + "\n";
  const OutDir out(c.out);
  out.write("grover.json", text);
  require_round_trip(json::parse(out.read("grover.json")).dump(2) + "\n" == text, "grover");
  std::string counts;
  for (long n : r.counts) counts += (counts.empty() ? "" : ",") + std::to_string(n);
  finish(out, "grover",
         summary_line("grover", {"label=" + std::to_string(r.label), "backend=" + c.backend,
                                 "counts=" + counts, "x_raw=" + fmt("%.4f", r.x_raw),
                                 "x_corrected=" + fmt("%.4f", r.x_corrected)}));
  return 0;
}

// ---------------------------------------------------------------- vqe

int cmd_vqe(const Common& c, const Params& p) {
  if (p.problem.empty()) throw ValidationError("vqe: --problem is required");
  const VqeProblem prob = load_problem(p.problem);
  int d = 4;
  if (p.dim != 0 && p.dim != 4) throw ValidationError("vqe: dimension must be 4");
  const Backend backend = make_backend(c, d, 4);
  const VqeResult r = vqe_minimize(prob, backend, c.exact ? 0 : c.shots, c.seed);

  const OutDir out(c.out);
  std::ostringstream csv;
  write_vqe_csv(csv, prob, r.evaluations);
  out.write("vqe.csv", csv.str());
  {
    std::istringstream back(out.read("vqe.csv"));
    std::ostringstream again;
    write_vqe_csv(again, prob, read_vqe_csv(back, prob));
    require_round_trip(again.str() == csv.str(), "vqe csv");
  }
  const double exact = ground_energy(prob);
  const json j{{"format", "qudit-vqe-result"},
               {"molecule", prob.molecule},
               {"bond_distance", prob.bond_distance},
               {"ansatz", to_string(prob.ansatz)},
               {"params", r.params},
               {"energy", r.energy},
               {"best_sampled", r.best_sampled},
               {"ground_energy", exact},
               {"evaluations", r.evaluations.size()}};
  const std::string text = j.dump(2) + "\n";
  out.write("vqe_result.json", text);
  require_round_trip(json::parse(out.read("vqe_result.json")).dump(2) + "\n" == text, "vqe");
  finish(out, "vqe",
         summary_line("vqe", {"molecule=" + prob.molecule,
                              "bond_distance=" + fmt("%.3f", prob.bond_distance),
                              "shots=" + (c.exact ? std::string("exact") : std::to_string(c.shots)),
                              "energy=" + fmt("%.6f", r.energy),
                              "ground=" + fmt("%.6f", exact),
                              "error=" + fmt("%.2e", r.energy - exact)}));
  return 0;
}

// ---------------------------------------------------------------- config

// Splices the keys of a JSON config file into argv as flags, directly after
// the run subcommand, so flags given on the command line win (last value).
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  json cfg;
  try {
    cfg = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!cfg.is_object()) throw ValidationError("config: top level must be an object");
  std::size_t pos = args.size();
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "run") {
      pos = i + 2;
      break;
    }
  }
  if (pos > args.size()) throw ValidationError("config: --config needs a run subcommand");
  std::vector<std::string> flags;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) flags.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!v.is_number_integer()) throw ValidationError("config: '" + key + "' must hold integers");
        joined += (joined.empty() ? "" : ",") + std::to_string(v.get<long long>());
      }
      flags.push_back(flag);
      flags.push_back(joined);
    } else if (value.is_string()) {
      flags.push_back(flag);
      flags.push_back(value.get<std::string>());
    } else if (value.is_number_integer()) {
      flags.push_back(flag);
      flags.push_back(std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      flags.push_back(flag);
      flags.push_back(format_double(value.get<double>()));
    } else {
      throw ValidationError("config: unsupported value for '" + key + "'");
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), flags.begin(), flags.end());
  return args;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--device", c.device, "Device JSON (T1, T2, pulse durations, confusion)");
  app->add_option("--seed", c.seed, "Random seed (positive)");
  app->add_option("--shots", c.shots, "Shots per setting");
  app->add_flag("--exact", c.exact, "Use exact probabilities instead of sampling");
  app->add_option("--out", c.out, "Output directory");
  app->add_option("--backend", c.backend, "ideal or noisy");
  app->add_option("--strategy", c.strategy, "normal or bubbling");
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  args = expand_config(args);

  CLI::App app{"Qudit pulse compiler and simulated experiments", "qudit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common common;
  Params params;

  auto* compile = app.add_subcommand("compile", "Compile a unitary to a pulse circuit");
  std::string matrix_path;
  bool adjacent = false;
  compile->add_option("matrix", matrix_path, "Matrix JSON with 're' and optional 'im'")
      ->required();
  compile->add_flag("--adjacent", adjacent, "Expand to adjacent-level pulses only");
  add_common(compile, common);

  auto* runc = app.add_subcommand("run", "Run a simulated experiment");
  runc->require_subcommand(1);
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : kRunCommands) {
    auto* s = runc->add_subcommand(name);
    add_common(s, common);
    s->add_option("--dim", params.dim, "Qudit dimension");
    subs[name] = s;
  }
  subs["qst"]->add_option("--state", params.state, "demo, uniform, basis:K or random");
  subs["qpt"]->add_option("--process", params.process, "dft or identity");
  subs["qpt"]->add_option("--matrix", params.matrix, "Process matrix JSON");
  subs["rb"]->add_option("--lengths", params.lengths, "Comma-separated sequence lengths");
  subs["rb"]->add_option("--sequences", params.sequences, "Random sequences per length");
  subs["rb"]->add_option("--epsilon", params.epsilon, "Depolarizing error per half-pi pulse");
  subs["rb"]->add_option("--group-cache", params.group_cache, "Clifford group cache file");
  subs["parity"]->add_option("--m", params.m, "Initial level (default d-1)");
  subs["parity"]->add_option("--permutation", params.permutation, "Comma-separated image");
  subs["grover"]->add_option("--label", params.label, "Marked level 0..3");
  subs["vqe"]->add_option("--problem", params.problem, "Problem JSON");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }
  validate_common(common);
  if (compile->parsed()) return cmd_compile(matrix_path, common, adjacent);
  if (subs["qst"]->parsed()) return cmd_qst(common, params);
  if (subs["qpt"]->parsed()) return cmd_qpt(common, params);
  if (subs["rb"]->parsed()) return cmd_rb(common, params);
  if (subs["parity"]->parsed()) return cmd_parity(common, params);
  if (subs["grover"]->parsed()) return cmd_grover(common, params);
  if (subs["vqe"]->parsed()) return cmd_vqe(common, params);
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    // ValidationError and DimensionError derive from invalid_argument.
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
