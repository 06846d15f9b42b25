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

#include "json.hpp"
#include "qudit/tomography.hpp"

namespace qudit {
namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string qst_record_to_json(const QstRecord& rec) {
  json j;
  j["format"] = "qudit-qst-record";
  j["dim"] = rec.dim;
  j["shots"] = rec.shots;
  j["settings"] = rec.settings;
  if (rec.shots > 0) {
    json rows = json::array();
    for (const auto& row : rec.probs) {
      json r = json::array();
      for (double p : row) r.push_back(std::llround(p * static_cast<double>(rec.shots)));
      rows.push_back(r);
    }
    j["counts"] = rows;
  } else {
    j["probs"] = rec.probs;
  }
  return j.dump(2);
}

QstRecord qst_record_from_json(const std::string& text) {
  const json j = parse_or_throw(text, "qst record");
  try {
    QstRecord rec;
    rec.dim = j.at("dim").get<int>();
    rec.shots = j.value("shots", 0L);
    rec.settings = j.at("settings").get<std::vector<int>>();
    if (j.contains("counts")) {
      if (rec.shots <= 0) throw ValidationError("qst record: counts require shots > 0");
      for (const auto& row : j.at("counts")) {
        std::vector<double> p;
        for (const auto& c : row) p.push_back(c.get<double>() / static_cast<double>(rec.shots));
        rec.probs.push_back(p);
      }
    } else {
      rec.probs = j.at("probs").get<std::vector<std::vector<double>>>();
    }
    rec.validate();
    return rec;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("qst record: ") + e.what());
  }
}

std::string chi_to_json(const ChiMatrix& chi) {
  json j;
  j["format"] = "qudit-chi";
  j["dim"] = chi.dim;
  j["basis"] = "identity-plus-generalized-gell-mann";
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < chi.chi.rows(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index c = 0; c < chi.chi.cols(); ++c) {
      rr.push_back(chi.chi(r, c).real());
      ii.push_back(chi.chi(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump(2);
}

ChiMatrix chi_from_json(const std::string& text) {
  const json j = parse_or_throw(text, "chi matrix");
  try {
    ChiMatrix chi;
    chi.dim = j.at("dim").get<int>();
    const int n = chi.dim * chi.dim;
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    const auto im = j.at("im").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n) {
      throw ValidationError("chi matrix: expected d² rows");
    }
    chi.chi = Matrix(n, n);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(re[r].size()) != n || static_cast<int>(im[r].size()) != n) {
        throw ValidationError("chi matrix: expected d² columns");
      }
      for (int c = 0; c < n; ++c) chi.chi(r, c) = cplx(re[r][c], im[r][c]);
    }
    return chi;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("chi matrix: ") + e.what());
  }
}

}  // namespace qudit
