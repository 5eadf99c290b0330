// Copyright 2026 The charge_eq Authors.
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

#include "charge_eq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "charge_eq/errors.hpp"

namespace charge_eq::io {

namespace {

template <typename T>
T require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const ExternalField& field) {
  json charges = json::array();
  for (const auto& c : field.charges())
    charges.push_back({{"location", c.location}, {"mass", c.mass}});
  return {{"charges", charges}, {"smooth", field.smooth()}};
}

ExternalField field_from_json(const json& j) {
  std::vector<FixedCharge> charges;
  if (j.contains("charges")) {
    for (const auto& c : j.at("charges"))
      charges.push_back({require<double>(c, "location"), require<double>(c, "mass")});
  }
  std::vector<double> smooth;
  if (j.contains("smooth")) smooth = require<std::vector<double>>(j, "smooth");
  return ExternalField(std::move(charges), std::move(smooth));
}

json to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {require<double>(j, "re"), require<double>(j, "im")};
}

PolylineContinuum polyline_from_json(const json& j) {
  if (!j.contains("vertices") || !j.at("vertices").is_array())
    throw ValidationError("polyline needs a \"vertices\" array");
  std::vector<std::complex<double>> v;
  for (const auto& e : j.at("vertices")) v.push_back(complex_from_json(e));
  return PolylineContinuum(std::move(v));
}

lame::LameSystem system_from_json(const json& j) {
  lame::LameSystem s;
  s.poles = require<std::vector<double>>(j, "poles");
  s.residues = require<std::vector<double>>(j, "residues");
  s.degree = require<int>(j, "degree");
  if (j.contains("composition")) {
    s.composition = require<std::vector<int>>(j, "composition");
  } else if (s.p() == 1) {
    s.composition = {s.degree};
  }
  return s;
}

json to_json(const lame::LameSystem& system) {
  return {{"poles", system.poles},
          {"residues", system.residues},
          {"degree", system.degree},
          {"composition", system.composition}};
}

json to_json(const lame::HeineStieltjesSolution& s) {
  json j = {{"composition", s.composition},
            {"status", s.status == lame::Status::kConverged ? "converged" : "failed"},
            {"zeros", s.zeros},
            {"monic_e", s.monic_e},
            {"van_vleck", s.van_vleck},
            {"division_remainder_norm", s.division_remainder_norm},
            {"gradient_norm", s.gradient_norm},
            {"ode_residual", s.ode_residual},
            {"iterations", s.iterations},
            {"hessian_positive_definite", s.hessian_positive_definite}};
  if (!s.message.empty()) j["message"] = s.message;
  return j;
}

MeasureSpec measure_spec_from_json(const json& j) {
  MeasureSpec m;
  m.poles = require<std::vector<double>>(j, "poles");
  if (j.contains("theta")) {
    m.theta = require<std::vector<double>>(j, "theta");
  } else if (m.poles.size() == 2) {
    m.theta = {1.0};
  } else {
    throw ValidationError("measure spec needs \"theta\"");
  }
  return m;
}

json to_json(const asymptotics::EquilibriumMeasure& m) {
  json support = json::array();
  for (const auto& s : m.support()) support.push_back({s.lo, s.hi});
  return {{"poles", m.poles()},
          {"theta", m.masses()},
          {"betas", m.betas()},
          {"support", support},
          {"interval_count", m.support().size()},
          {"branch_sign", m.branch_sign()},
          {"beta_residuals", m.beta_residuals()}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
}

std::string positions_csv(const std::vector<double>& x) {
  std::string out = "index,position\n";
  for (std::size_t k = 0; k < x.size(); ++k)
    out += std::to_string(k) + "," + format_number(x[k]) + "\n";
  return out;
}

std::string positions_csv(const std::vector<std::complex<double>>& z) {
  std::string out = "index,re,im\n";
  for (std::size_t k = 0; k < z.size(); ++k)
    out += std::to_string(k) + "," + format_number(z[k].real()) + "," +
           format_number(z[k].imag()) + "\n";
  return out;
}

std::vector<double> read_positions_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty CSV");
  const auto header = split_csv_line(line);
  std::size_t col = header.size();
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == "position") col = k;
  if (col == header.size())
    throw ValidationError("CSV header lacks a \"position\" column");
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() <= col) throw ValidationError("short CSV row: " + line);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cells[col], &used));
      if (used != cells[col].size()) throw std::invalid_argument(cells[col]);
    } catch (const std::exception&) {
      throw ValidationError("bad number in CSV: " + cells[col]);
    }
  }
  return out;
}

}  // namespace charge_eq::io
