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
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "qudit/simulator.hpp"

namespace qudit {
namespace {

using nlohmann::json;

std::vector<double> read_durations(const json& j, const char* key, double absent) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  for (const auto& v : j.at(key)) out.push_back(v.is_null() ? absent : v.get<double>());
  return out;
}

json write_durations(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) {
    if (std::isfinite(x)) {
      arr.push_back(x);
    } else {
      arr.push_back(nullptr);
    }
  }
  return arr;
}

}  // namespace

DeviceConfig parse_device(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("device file: ") + e.what());
  }
  try {
    DeviceConfig cfg;
    const int d = j.at("dim").get<int>();
    cfg.device.dim = d;
    cfg.device.t1_ns = read_durations(j, "t1_ns", std::numeric_limits<double>::infinity());
    cfg.device.t2_ns = read_durations(j, "t2_ns", std::numeric_limits<double>::quiet_NaN());
    cfg.device.pulse_ns = read_durations(j, "pulse_ns", 0.0);
    cfg.device.buffer_ns = j.value("buffer_ns", 0.0);
    if (cfg.device.t1_ns.empty())
      cfg.device.t1_ns.assign(d - 1, std::numeric_limits<double>::infinity());
    if (cfg.device.t2_ns.empty())
      cfg.device.t2_ns.assign(d - 1, std::numeric_limits<double>::quiet_NaN());
    if (cfg.device.pulse_ns.empty()) cfg.device.pulse_ns.assign(d - 1, 0.0);
    cfg.device.validate();
    if (j.contains("confusion")) {
      const auto& rows = j.at("confusion");
      if (static_cast<int>(rows.size()) != d) {
        throw ValidationError("device file: confusion must have dim rows");
      }
      cfg.readout.confusion = Matrix::Zero(d, d);
      for (int a = 0; a < d; ++a) {
        if (static_cast<int>(rows[a].size()) != d) {
          throw ValidationError("device file: confusion rows must have dim entries");
        }
        for (int b = 0; b < d; ++b) cfg.readout.confusion(a, b) = rows[a][b].get<double>();
      }
    } else {
      cfg.readout = ReadoutModel::ideal(d);
    }
    cfg.readout.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("device file: ") + e.what());
  }
}

DeviceConfig load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open device file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_device(ss.str());
}

std::string device_to_json(const DeviceConfig& cfg) {
  json j;
  j["dim"] = cfg.device.dim;
  j["t1_ns"] = write_durations(cfg.device.t1_ns);
  j["t2_ns"] = write_durations(cfg.device.t2_ns);
  j["pulse_ns"] = write_durations(cfg.device.pulse_ns);
  j["buffer_ns"] = cfg.device.buffer_ns;
  json rows = json::array();
  for (int a = 0; a < cfg.readout.dim(); ++a) {
    json row = json::array();
    for (int b = 0; b < cfg.readout.dim(); ++b) row.push_back(cfg.readout.confusion(a, b).real());
    rows.push_back(row);
  }
  j["confusion"] = rows;
  return j.dump(2);
}

}  // namespace qudit
