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

#ifndef CHARGE_EQ_IO_HPP_
#define CHARGE_EQ_IO_HPP_

#include <complex>
#include <istream>
#include <string>
#include <vector>

#include "json.hpp"

#include "charge_eq/asymptotics.hpp"
#include "charge_eq/equilibrium.hpp"
#include "charge_eq/fields.hpp"
#include "charge_eq/lame.hpp"

// File formats.
//
//   field     {"charges":[{"location":x,"mass":m},...], "smooth":[c0,c1,...]}
//   system    {"poles":[...], "residues":[...], "degree":n, "composition":[...]}
//   polyline  {"vertices":[{"re":x,"im":y},...]}
//   measure   {"poles":[...], "theta":[...]}  (extra keys are ignored)
//   complex   {"re":x,"im":y}
//
// CSV files carry a header row. Real configurations use "index,position",
// complex ones "index,re,im". Numbers are written with 17 significant
// digits.
namespace charge_eq::io {

using nlohmann::json;

/// Shortest round-trip-safe decimal with 17 significant digits.
std::string format_number(double v);

json to_json(const ExternalField& field);
ExternalField field_from_json(const json& j);

json to_json(std::complex<double> z);
std::complex<double> complex_from_json(const json& j);

PolylineContinuum polyline_from_json(const json& j);

lame::LameSystem system_from_json(const json& j);
json to_json(const lame::LameSystem& system);
json to_json(const lame::HeineStieltjesSolution& solution);

struct MeasureSpec {
  std::vector<double> poles;
  std::vector<double> theta;
};
MeasureSpec measure_spec_from_json(const json& j);
json to_json(const asymptotics::EquilibriumMeasure& measure);

json read_json_file(const std::string& path);

std::string positions_csv(const std::vector<double>& x);
std::string positions_csv(const std::vector<std::complex<double>>& z);

/// Reads the position column of a CSV with a header row. Accepts either
/// "index,position" or a single "position" column.
std::vector<double> read_positions_csv(std::istream& in);

}  // namespace charge_eq::io

#endif  // CHARGE_EQ_IO_HPP_
