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

#include "charge_eq/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "charge_eq/asymptotics.hpp"
#include "charge_eq/classical.hpp"
#include "charge_eq/equilibrium.hpp"
#include "charge_eq/errors.hpp"
#include "charge_eq/io.hpp"
#include "charge_eq/lame.hpp"

namespace charge_eq::cli {

namespace {

using io::json;

struct Common {
  std::string format = "csv";
  std::string output;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output", common.output, "Output file (default stdout)");
}

void write_to(const std::string& path, std::ostream& fallback,
              const std::string& text) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + path);
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (!s.empty() && s.back() == ',') parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("not a number: \"" + s + "\"");
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s)) out.push_back(parse_double(part));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s)) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used == part.size()) {
        out.push_back(v);
        continue;
      }
    } catch (const std::exception&) {
    }
    throw ValidationError("not an integer: \"" + part + "\"");
  }
  return out;
}

std::complex<double> parse_complex(const std::string& s) {
  const auto v = parse_doubles(s);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw ValidationError("expected re,im but got \"" + s + "\"");
}

classical::Family family_named(const std::string& name, double alpha,
                               double beta) {
  if (name == "jacobi") return classical::Family::jacobi(alpha, beta);
  if (name == "laguerre") return classical::Family::laguerre(alpha);
  if (name == "hermite") return classical::Family::hermite();
  throw ValidationError("unknown family \"" + name + "\"");
}

ExternalField field_of(const classical::Family& family) {
  switch (family.kind) {
    case classical::Family::Kind::kJacobi:
      return jacobi_field(family.alpha, family.beta);
    case classical::Family::Kind::kLaguerre:
      return laguerre_field(family.alpha);
    case classical::Family::Kind::kHermite:
      return hermite_field();
  }
  throw ValidationError("unknown family");
}

std::vector<double> default_breakpoints(const classical::Family& family) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (family.kind) {
    case classical::Family::Kind::kJacobi:
      return {-1.0, 1.0};
    case classical::Family::Kind::kLaguerre:
      return {0.0, inf};
    case classical::Family::Kind::kHermite:
      return {-inf, inf};
  }
  return {};
}

std::string joined(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

json to_json(const SolverDiagnostics& d) {
  return {{"status", "converged"},
          {"iterations", d.iterations},
          {"gradient_descent_steps", d.gradient_descent_steps},
          {"gradient_norm", d.gradient_norm},
          {"last_step_norm", d.last_step_norm},
          {"energy", d.energy},
          {"hessian_positive_definite", d.hessian_positive_definite},
          {"hessian_gershgorin_bound", d.hessian_gershgorin_bound},
          {"stop_reason", d.stop_reason}};
}

json to_json(const ConvergenceError& e) {
  return {{"status", "not_converged"},
          {"message", e.what()},
          {"iterations", e.iterations()},
          {"residual_norm", e.residual_norm()},
          {"last_iterate", e.last_iterate()}};
}

int threads_from_env() {
  const char* raw = std::getenv("CHARGE_EQ_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  const auto v = parse_ints(raw);
  if (v.size() != 1 || v[0] < 1)
    throw ValidationError("CHARGE_EQ_THREADS must be a positive integer");
  return v[0];
}

// zeros ---------------------------------------------------------------------

struct ZerosArgs {
  Common common;
  std::string family;
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

int run_zeros(const ZerosArgs& a, std::ostream& out) {
  const auto family = family_named(a.family, a.alpha, a.beta);
  const auto x = classical::zeros(family, a.n);
  if (a.common.format == "json") {
    write_to(a.common.output, out,
             dump({{"family", family.describe()}, {"n", a.n}, {"zeros", x}}));
  } else {
    write_to(a.common.output, out, io::positions_csv(x));
  }
  return kExitOk;
}

// equilibrate ---------------------------------------------------------------

struct EquilibrateArgs {
  Common common;
  std::string family;
  std::string field_path;
  double alpha = 0.0;
  double beta = 0.0;
  int n = -1;
  std::string composition;
  std::string intervals;
  std::string continuum;
  double tol = 1e-10;
  int max_iter = 200;
  std::string diagnostics;
};

int run_equilibrate(const EquilibrateArgs& a, std::ostream& out,
                    std::ostream& err) {
  if (a.family.empty() == a.field_path.empty())
    throw ValidationError("give exactly one of --family or --field");

  ExternalField field;
  std::vector<double> breakpoints;
  if (!a.family.empty()) {
    const auto family = family_named(a.family, a.alpha, a.beta);
    field = field_of(family);
    breakpoints = default_breakpoints(family);
  } else {
    field = io::field_from_json(io::read_json_file(a.field_path));
    for (const auto& c : field.charges()) breakpoints.push_back(c.location);
    std::sort(breakpoints.begin(), breakpoints.end());
  }
  if (!a.intervals.empty()) breakpoints = parse_doubles(a.intervals);

  const auto emit_diagnostics = [&](const json& d) {
    if (a.common.format == "json" && a.diagnostics.empty()) return;
    write_to(a.diagnostics, err, dump(d));
  };

  if (!a.continuum.empty()) {
    if (a.n < 1) throw ValidationError("--continuum needs --n >= 1");
    const auto k = io::polyline_from_json(io::read_json_file(a.continuum));
    ContinuumOptions options;
    options.tolerance = a.tol;
    options.max_iterations = a.max_iter;
    const auto r = minimize_on_continuum(field, k, a.n, options);
    const auto z = r.configuration.complex_positions();
    const json diag = {{"status", r.converged ? "converged" : "not_converged"},
                       {"iterations", r.iterations},
                       {"gradient_norm", r.gradient_norm},
                       {"energy", r.energy},
                       {"starts_tried", r.starts_tried}};
    if (a.common.format == "json") {
      json positions = json::array();
      for (auto w : z) positions.push_back(io::to_json(w));
      write_to(a.common.output, out,
               dump({{"positions", positions}, {"diagnostics", diag}}));
    } else {
      write_to(a.common.output, out, io::positions_csv(z));
    }
    emit_diagnostics(diag);
    return r.converged ? kExitOk : kExitNonConvergence;
  }

  std::vector<int> counts;
  if (!a.composition.empty()) {
    counts = parse_ints(a.composition);
    int total = 0;
    for (int c : counts) total += c;
    if (a.n >= 0 && total != a.n)
      throw ValidationError("--composition does not sum to --n");
  } else {
    if (a.n < 1) throw ValidationError("--n must be >= 1");
    if (breakpoints.size() != 2)
      throw ValidationError("several intervals need --composition");
    counts = {a.n};
  }
  if (breakpoints.size() != counts.size() + 1)
    throw ValidationError("need one more breakpoint than composition entries");

  SolverOptions options;
  options.tolerance = a.tol;
  options.max_iterations = a.max_iter;
  try {
    const auto r = minimize(field, IntervalConstraint::between(breakpoints, counts),
                            options);
    const auto span = r.configuration.real_positions();
    const std::vector<double> x(span.begin(), span.end());
    const json diag = to_json(r.diagnostics);
    if (a.common.format == "json") {
      write_to(a.common.output, out,
               dump({{"positions", x}, {"diagnostics", diag}}));
    } else {
      write_to(a.common.output, out, io::positions_csv(x));
    }
    emit_diagnostics(diag);
    return kExitOk;
  } catch (const ConvergenceError& e) {
    write_to(a.diagnostics, err, dump(to_json(e)));
    return kExitNonConvergence;
  }
}

// heine ---------------------------------------------------------------------

struct HeineArgs {
  Common common;
  std::string system;
  bool enumerate = false;
  double tol = 1e-10;
  int max_iter = 200;
  std::string diagnostics;
};

int run_heine(const HeineArgs& a, std::ostream& out, std::ostream& err) {
  const json spec = io::read_json_file(a.system);
  SolverOptions options;
  options.tolerance = a.tol;
  options.max_iterations = a.max_iter;

  std::vector<lame::HeineStieltjesSolution> solutions;
  json system_json;
  if (a.enumerate) {
    lame::LameSystem s;
    s.poles = spec.value("poles", std::vector<double>{});
    s.residues = spec.value("residues", std::vector<double>{});
    if (!spec.contains("degree")) throw ValidationError("missing key \"degree\"");
    s.degree = spec.at("degree").get<int>();
    solutions = lame::enumerate(s.poles, s.residues, s.degree, threads_from_env(),
                                options);
    s.composition.clear();
    system_json = io::to_json(s);
    system_json.erase("composition");
  } else {
    const auto s = io::system_from_json(spec);
    s.validate();
    system_json = io::to_json(s);
    try {
      solutions.push_back(lame::solve(s, options));
    } catch (const ConvergenceError& e) {
      json d = to_json(e);
      d["composition"] = s.composition;
      write_to(a.diagnostics, err, dump(json::array({d})));
      return kExitNonConvergence;
    }
  }

  bool all_converged = true;
  json per_solution = json::array();
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    json j = io::to_json(solutions[i]);
    j["solution"] = i;
    per_solution.push_back(std::move(j));
    all_converged = all_converged && solutions[i].status == lame::Status::kConverged;
  }

  if (a.common.format == "json") {
    write_to(a.common.output, out,
             dump({{"system", system_json},
                   {"solution_count", solutions.size()},
                   {"solutions", per_solution}}));
    if (!a.diagnostics.empty()) write_to(a.diagnostics, err, dump(per_solution));
  } else {
    std::string csv = "solution,composition,index,zero\n";
    for (std::size_t i = 0; i < solutions.size(); ++i) {
      const auto comp = joined(solutions[i].composition, ';');
      for (std::size_t k = 0; k < solutions[i].zeros.size(); ++k)
        csv += std::to_string(i) + "," + comp + "," + std::to_string(k) + "," +
               io::format_number(solutions[i].zeros[k]) + "\n";
    }
    write_to(a.common.output, out, csv);
    for (auto& j : per_solution) j.erase("zeros");
    write_to(a.diagnostics, err, dump(per_solution));
  }
  return all_converged ? kExitOk : kExitNonConvergence;
}

// measure -------------------------------------------------------------------

struct MeasureArgs {
  Common common;
  std::string system;
  std::string theta;
  int samples = 200;
  std::string support;
};

io::MeasureSpec spec_from_system(const json& j, const std::string& theta) {
  io::MeasureSpec m;
  if (!theta.empty()) {
    if (!j.contains("poles")) throw ValidationError("missing key \"poles\"");
    m.poles = j.at("poles").get<std::vector<double>>();
    m.theta = parse_doubles(theta);
    return m;
  }
  if (!j.contains("theta") && j.contains("composition") && j.contains("degree")) {
    m.poles = j.at("poles").get<std::vector<double>>();
    const auto comp = j.at("composition").get<std::vector<int>>();
    const int n = j.at("degree").get<int>();
    if (n < 1) throw ValidationError("degree must be >= 1 to derive theta");
    for (int c : comp) m.theta.push_back(static_cast<double>(c) / n);
    return m;
  }
  return io::measure_spec_from_json(j);
}

int run_measure(const MeasureArgs& a, std::ostream& out, std::ostream& err) {
  if (a.samples < 1) throw ValidationError("--samples must be >= 1");
  const auto spec = spec_from_system(io::read_json_file(a.system), a.theta);
  asymptotics::EquilibriumMeasure m = [&] {
    try {
      return asymptotics::EquilibriumMeasure::solve(spec.poles, spec.theta);
    } catch (const asymptotics::BetaSolveError& e) {
      json d = to_json(static_cast<const ConvergenceError&>(e));
      d["residuals"] = e.residuals();
      write_to(a.support, err, dump(d));
      throw;
    }
  }();

  const double lo = spec.poles.front(), hi = spec.poles.back();
  json samples = json::array();
  std::string csv = "x,density\n";
  for (int k = 0; k < a.samples; ++k) {
    const double x = lo + (hi - lo) * (k + 0.5) / a.samples;
    const double d = m.density(x).value;
    csv += io::format_number(x) + "," + io::format_number(d) + "\n";
    samples.push_back({x, d});
  }
  json measure = io::to_json(m);
  if (a.common.format == "json") {
    measure["samples"] = samples;
    write_to(a.common.output, out, dump(measure));
  } else {
    write_to(a.common.output, out, csv);
    write_to(a.support, err, dump(measure));
  }
  return kExitOk;
}

// compare -------------------------------------------------------------------

struct CompareArgs {
  Common common;
  std::string zeros;
  std::string measure;
};

int run_compare(const CompareArgs& a, std::ostream& out) {
  std::ifstream in(a.zeros);
  if (!in) throw ValidationError("cannot open " + a.zeros);
  const auto points = io::read_positions_csv(in);
  if (points.empty()) throw ValidationError("no zeros in " + a.zeros);
  const auto spec = io::measure_spec_from_json(io::read_json_file(a.measure));
  const auto m = asymptotics::EquilibriumMeasure::solve(spec.poles, spec.theta);
  const double ks =
      asymptotics::ks_distance(asymptotics::EmpiricalDistribution(points), m);
  if (a.common.format == "json") {
    write_to(a.common.output, out, dump({{"n", points.size()}, {"ks", ks}}));
  } else {
    write_to(a.common.output, out, io::format_number(ks) + "\n");
  }
  return kExitOk;
}

// riccati -------------------------------------------------------------------

struct RiccatiArgs {
  Common common;
  std::string family = "jacobi";
  double alpha = 0.0;
  double beta = 0.0;
  int n = 0;
  std::string z;
};

int run_riccati(const RiccatiArgs& a, std::ostream& out) {
  const auto family = family_named(a.family, a.alpha, a.beta);
  if (family.kind != classical::Family::Kind::kJacobi)
    throw UnsupportedOperation("riccati is defined for the Jacobi family only");
  const auto z = parse_complex(a.z);
  const auto h = asymptotics::normalized_log_derivative(family, a.n, z);
  const auto mu = asymptotics::EquilibriumMeasure::arcsine().cauchy_transform(z);
  const double residual = asymptotics::riccati_residual(family, a.n, z);
  if (a.common.format == "json") {
    write_to(a.common.output, out,
             dump({{"n", a.n},
                   {"z", io::to_json(z)},
                   {"h", io::to_json(h)},
                   {"cauchy_transform", io::to_json(mu)},
                   {"residual", residual}}));
  } else {
    using io::format_number;
    write_to(a.common.output, out,
             "n,z_re,z_im,h_re,h_im,mu_re,mu_im,residual\n" + std::to_string(a.n) +
                 "," + format_number(z.real()) + "," + format_number(z.imag()) +
                 "," + format_number(h.real()) + "," + format_number(h.imag()) +
                 "," + format_number(mu.real()) + "," + format_number(mu.imag()) +
                 "," + format_number(residual) + "\n");
  }
  return kExitOk;
}

const std::vector<std::string> kFamilies = {"jacobi", "laguerre", "hermite"};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Equilibria of logarithmically interacting charges.", "charge_eq"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  ZerosArgs za;
  auto* zeros = app.add_subcommand("zeros", "Zeros of a classical polynomial");
  add_common(zeros, za.common);
  zeros->add_option("--family", za.family)->required()->check(CLI::IsMember(kFamilies));
  zeros->add_option("--n", za.n, "Degree")->required();
  zeros->add_option("--alpha", za.alpha)->capture_default_str();
  zeros->add_option("--beta", za.beta)->capture_default_str();

  EquilibrateArgs ea;
  auto* equilibrate = app.add_subcommand("equilibrate", "Minimize the charge energy");
  add_common(equilibrate, ea.common);
  equilibrate->add_option("--family", ea.family)->check(CLI::IsMember(kFamilies));
  equilibrate->add_option("--field", ea.field_path, "Field JSON file");
  equilibrate->add_option("--alpha", ea.alpha)->capture_default_str();
  equilibrate->add_option("--beta", ea.beta)->capture_default_str();
  equilibrate->add_option("--n", ea.n, "Number of free charges");
  equilibrate->add_option("--composition", ea.composition, "n1,n2,...");
  equilibrate->add_option("--intervals", ea.intervals, "Breakpoints b0,b1,...");
  equilibrate->add_option("--continuum", ea.continuum, "Polyline JSON file");
  equilibrate->add_option("--tol", ea.tol)->capture_default_str();
  equilibrate->add_option("--max-iter", ea.max_iter)->capture_default_str();
  equilibrate->add_option("--diagnostics", ea.diagnostics,
                          "Diagnostics JSON file (default stderr)");

  HeineArgs ha;
  auto* heine = app.add_subcommand("heine", "Heine-Stieltjes polynomials");
  add_common(heine, ha.common);
  heine->add_option("--system", ha.system, "System JSON file")->required();
  heine->add_flag("--enumerate", ha.enumerate, "Solve every composition");
  heine->add_option("--tol", ha.tol)->capture_default_str();
  heine->add_option("--max-iter", ha.max_iter)->capture_default_str();
  heine->add_option("--diagnostics", ha.diagnostics,
                    "Diagnostics JSON file (default stderr)");

  MeasureArgs ma;
  auto* measure = app.add_subcommand("measure", "Constrained equilibrium measure");
  add_common(measure, ma.common);
  measure->add_option("--system", ma.system, "System or measure JSON file")
      ->required();
  measure->add_option("--theta", ma.theta, "theta1,theta2,...");
  measure->add_option("--samples", ma.samples)->capture_default_str();
  measure->add_option("--support", ma.support,
                      "Measure JSON file in csv mode (default stderr)");

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "KS distance of zeros to a measure");
  add_common(compare, ca.common);
  compare->add_option("--zeros", ca.zeros, "Zeros CSV file")->required();
  compare->add_option("--measure", ca.measure, "Measure JSON file")->required();

  RiccatiArgs ra;
  auto* riccati = app.add_subcommand("riccati", "Riccati residual of p_n'/(n p_n)");
  add_common(riccati, ra.common);
  riccati->add_option("--family", ra.family)->check(CLI::IsMember(kFamilies))
      ->capture_default_str();
  riccati->add_option("--alpha", ra.alpha)->capture_default_str();
  riccati->add_option("--beta", ra.beta)->capture_default_str();
  riccati->add_option("--n", ra.n, "Degree")->required();
  riccati->add_option("--z", ra.z, "re,im")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (zeros->parsed()) return run_zeros(za, out);
    if (equilibrate->parsed()) return run_equilibrate(ea, out, err);
    if (heine->parsed()) return run_heine(ha, out, err);
    if (measure->parsed()) return run_measure(ma, out, err);
    if (compare->parsed()) return run_compare(ca, out);
    if (riccati->parsed()) return run_riccati(ra, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnsupportedOperation& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InfiniteEnergyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitValidation;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace charge_eq::cli
