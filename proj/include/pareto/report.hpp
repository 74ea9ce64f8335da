#pragma once

// Command drivers shared by the CLI and the tests. Each run_* returns a
// machine-readable report (stable key order) and the process exit code.

#include "pareto/copositivity.hpp"
#include "pareto/document.hpp"
#include "pareto/fixtures.hpp"
#include "pareto/minimize.hpp"
#include "pareto/spectrum.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pareto {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // verification failed / example mismatch
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;  // e.g. empty spectrum for a symmetric tensor

struct RunOptions {
  SolverConfig solver;
  SpectrumOptions spectrum;
  double zero_band = 1e-7;
  int resolution = 0;  // grid oracle resolution for minimize; 0 disables
  bool timing = true;
};

struct RunReport {
  ordered_json body;
  int exit_code = kExitOk;
};

namespace report {

inline ordered_json vec(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline ordered_json subset(const IndexSet& s) {
  ordered_json a = ordered_json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

inline ordered_json config(const RunOptions& o) {
  ordered_json j;
  j["seed"] = o.solver.seed;
  j["starts"] = o.solver.starts;
  j["max_iters"] = o.solver.max_iters;
  j["tol"] = o.solver.tol;
  j["pos_tol"] = o.solver.pos_tol;
  j["dedup_tol"] = o.solver.dedup_tol;
  j["slack_tol"] = o.spectrum.slack_tol;
  j["zero_band"] = o.zero_band;
  j["resolution"] = o.resolution;
  return j;
}

inline ordered_json spectrum(const ParetoSpectrum& s) {
  ordered_json j;
  j["kind"] = to_string(s.kind);
  j["min_value"] = s.empty() ? ordered_json(nullptr) : ordered_json(s.min_value);
  j["exhaustive"] = s.exhaustive;
  j["count"] = s.items.size();
  j["items"] = ordered_json::array();
  for (const auto& c : s.items) {
    ordered_json item;
    item["value"] = c.pair.value;
    item["subset"] = subset(c.subset);
    item["eigenvector"] = vec(c.eigenvector);
    item["residual"] = c.pair.residual;
    item["slacks"] = c.slacks;
    item["boundary"] = c.boundary;
    j["items"].push_back(std::move(item));
  }
  return j;
}

inline ordered_json minimize(const MinimizeResult& r) {
  ordered_json j;
  j["kind"] = to_string(r.kind);
  j["value"] = r.value;
  j["argmin"] = vec(r.argmin);
  j["kkt_residual"] = r.kkt_residual;
  j["starts_used"] = r.starts_used;
  j["converged_starts"] = r.converged_starts;
  return j;
}

inline ordered_json verdict(const CopositivityVerdict& v) {
  ordered_json j;
  j["classification"] = to_string(v.classification);
  j["route"] = to_string(v.route);
  j["min_eigenvalue"] = v.min_eigenvalue;
  if (v.z_min_eigenvalue) j["z_min_eigenvalue"] = *v.z_min_eigenvalue;
  j["certificate"] = vec(v.certificate);
  j["margin"] = v.margin;
  if (v.witness_corroborated) j["witness_corroborated"] = *v.witness_corroborated;
  j["exhaustive"] = v.exhaustive;
  j["diagnostics"] = v.diagnostics;
  return j;
}

inline ordered_json verification(const VerifyReport& r) {
  ordered_json j;
  j["pass"] = r.pass;
  j["worst_violation"] = r.worst_violation;
  if (!r.pass) {
    j["failed_condition"] = r.failed_condition;
    if (r.component >= 0) j["component"] = r.component + 1;
  }
  j["slack"] = vec(r.slack);
  j["value_gap"] = r.value_gap;
  return j;
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline ordered_json header(const std::string& command, const std::string& source, const RunOptions& o) {
  ordered_json j;
  j["command"] = command;
  j["input"] = source;
  j["config"] = config(o);
  return j;
}

inline void finish(RunReport& r, const Stopwatch& sw, const RunOptions& o, std::vector<std::string> warnings) {
  std::sort(warnings.begin(), warnings.end());
  warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
  r.body["warnings"] = warnings;
  if (o.timing) r.body["elapsed_ms"] = sw.elapsed_ms();
}

}  // namespace report

inline RunReport run_spectrum(const ParsedTensor& input, const std::string& source, const std::vector<Kind>& kinds,
                              const RunOptions& o) {
  report::Stopwatch sw;
  RunReport r{report::header("spectrum", source, o), kExitOk};
  std::vector<std::string> warnings = input.warnings;
  bool exhaustive = true;
  r.body["spectra"] = ordered_json::array();
  for (Kind k : kinds) {
    const ParetoSpectrum s = pareto_spectrum(input.tensor, k, o.solver, o.spectrum);
    exhaustive = exhaustive && s.exhaustive;
    warnings.insert(warnings.end(), s.warnings.begin(), s.warnings.end());
    if (s.empty()) {
      if (input.tensor.symmetric()) {
        warnings.push_back(std::string("empty Pareto ") + to_string(k) + "-spectrum for a symmetric tensor");
        r.exit_code = kExitInternal;
      } else {
        warnings.push_back(std::string("empty Pareto ") + to_string(k) + "-spectrum");
      }
    }
    r.body["spectra"].push_back(report::spectrum(s));
  }
  r.body["exhaustive"] = exhaustive;
  report::finish(r, sw, o, std::move(warnings));
  return r;
}

inline RunReport run_minimize(const ParsedTensor& input, const std::string& source, const std::vector<Kind>& kinds,
                              const RunOptions& o) {
  report::Stopwatch sw;
  RunReport r{report::header("minimize", source, o), kExitOk};
  std::vector<std::string> warnings = input.warnings;
  r.body["results"] = ordered_json::array();
  for (Kind k : kinds) {
    const MinimizeResult m = minimize(input.tensor, k, o.solver);
    warnings.insert(warnings.end(), m.warnings.begin(), m.warnings.end());
    ordered_json j = report::minimize(m);
    if (o.resolution > 0) {
      if (input.tensor.dim() <= 4)
        j["grid_bound"] = grid_lower_bound(input.tensor, k, o.resolution);
      else
        warnings.push_back("grid oracle skipped: dimension above 4");
    }
    r.body["results"].push_back(std::move(j));
  }
  r.body["exhaustive"] = false;
  report::finish(r, sw, o, std::move(warnings));
  return r;
}

inline RunReport run_copositive(const ParsedTensor& input, const std::string& source, Route route,
                                const RunOptions& o) {
  report::Stopwatch sw;
  RunReport r{report::header("copositive", source, o), kExitOk};
  const CopositivityVerdict v = classify(input.tensor, route, o.solver, o.zero_band, o.spectrum);
  r.body["verdict"] = report::verdict(v);
  r.body["exhaustive"] = v.exhaustive;
  if (v.classification == Classification::inconclusive &&
      std::any_of(v.diagnostics.begin(), v.diagnostics.end(),
                  [](const std::string& d) { return d.starts_with("empty Pareto"); }))
    r.exit_code = kExitInternal;
  report::finish(r, sw, o, input.warnings);
  return r;
}

inline RunReport run_verify(const ParsedTensor& input, const std::string& source, double value, const Vector& y,
                            Kind kind, double tol, const RunOptions& o) {
  report::Stopwatch sw;
  RunReport r{report::header("verify", source, o), kExitOk};
  r.body["kind"] = to_string(kind);
  r.body["value"] = value;
  r.body["vector"] = report::vec(y);
  r.body["tol"] = tol;
  const VerifyReport v = verify_pareto_pair(input.tensor, value, y, kind, tol);
  r.body["verification"] = report::verification(v);
  r.body["exhaustive"] = true;
  if (!v.pass) r.exit_code = kExitNegative;
  report::finish(r, sw, o, input.warnings);
  return r;
}

/// Names accepted by run_example.
inline std::vector<std::string> example_names() { return {"ex3.1", "ex3.2", "ex4.1"}; }

/// Built-in tensor for an example name; `t` parametrizes ex4.1.
inline std::optional<ParsedTensor> example_tensor(const std::string& name, double t = 0.0) {
  if (name == "ex3.1") return ParsedTensor{fixtures::two_well_quartic(), name, {}};
  if (name == "ex3.2") return ParsedTensor{fixtures::rejected_vertex_cubic(), name, {}};
  if (name == "ex4.1") return ParsedTensor{fixtures::skewed_quartic(t), name + " t=" + std::to_string(t), {}};
  return std::nullopt;
}

namespace detail {

struct ExpectedItem {
  double value;
  Vector vector;
};

inline bool spectrum_contains(const ParetoSpectrum& s, const ExpectedItem& e, double tol) {
  return std::any_of(s.items.begin(), s.items.end(), [&](const SubsetCertificate& c) {
    return std::abs(c.pair.value - e.value) <= tol && (c.eigenvector - e.vector).lpNorm<Eigen::Infinity>() <= tol;
  });
}

inline bool spectrum_has_value(const ParetoSpectrum& s, double value, double tol) {
  return std::any_of(s.items.begin(), s.items.end(),
                     [&](const SubsetCertificate& c) { return std::abs(c.pair.value - value) <= tol; });
}

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace detail

/// Runs a built-in example and compares it with its closed-form answers.
/// Exit code kExitNegative on any mismatch.
inline RunReport run_example(const std::string& name, double t, const RunOptions& o) {
  report::Stopwatch sw;
  const auto input = example_tensor(name, t);
  if (!input) throw std::invalid_argument("unknown example '" + name + "'");
  RunReport r{report::header("example", *input->name, o), kExitOk};
  constexpr double kTol = 1e-8;
  ordered_json checks = ordered_json::array();
  auto check = [&](const std::string& what, bool pass, ordered_json detail = nullptr) {
    ordered_json c;
    c["check"] = what;
    c["pass"] = pass;
    if (!detail.is_null()) c["detail"] = std::move(detail);
    checks.push_back(std::move(c));
    if (!pass) r.exit_code = kExitNegative;
  };
  const Tensor& tensor = input->tensor;
  std::vector<std::string> warnings;

  if (name == "ex3.1" || name == "ex3.2") {
    const ParetoSpectrum h = pareto_spectrum(tensor, Kind::H, o.solver, o.spectrum);
    const ParetoSpectrum z = pareto_spectrum(tensor, Kind::Z, o.solver, o.spectrum);
    r.body["spectra"] = ordered_json::array({report::spectrum(h), report::spectrum(z)});
    const Vector e1 = detail::vec2(1, 0);
    const Vector e2 = detail::vec2(0, 1);
    if (name == "ex3.1") {
      const double a = std::pow(8.0, 0.25) / 2;
      const double b = std::sqrt(2.0) / 2;
      check("H contains 0 at (8^(1/4)/2, 8^(1/4)/2)", detail::spectrum_contains(h, {0.0, detail::vec2(a, a)}, kTol));
      check("H contains 1 at (1,0)", detail::spectrum_contains(h, {1.0, e1}, kTol));
      check("H contains 2 at (0,1)", detail::spectrum_contains(h, {2.0, e2}, kTol));
      check("Z contains 0 at (sqrt2/2, sqrt2/2)", detail::spectrum_contains(z, {0.0, detail::vec2(b, b)}, kTol));
      check("Z contains 1 at (1,0)", detail::spectrum_contains(z, {1.0, e1}, kTol));
      check("Z contains 2 at (0,1)", detail::spectrum_contains(z, {2.0, e2}, kTol));
    } else {
      check("H contains 2 at (0,1)", detail::spectrum_contains(h, {2.0, e2}, kTol));
      check("Z contains 2 at (0,1)", detail::spectrum_contains(z, {2.0, e2}, kTol));
      check("H excludes 1", !detail::spectrum_has_value(h, 1.0, kTol));
      check("Z excludes 1", !detail::spectrum_has_value(z, 1.0, kTol));
      const double slack = complement_slacks(tensor, IndexSet{0}, Vector::Ones(1)).at(0);
      check("slack of N={1} is -2/3", std::abs(slack + 2.0 / 3.0) <= 1e-10, slack);
    }
  } else {
    const double expected_gamma = fixtures::skewed_quartic_gamma(t);
    const CopositivityVerdict v = classify(tensor, Route::Both, o.solver, o.zero_band, o.spectrum);
    const MinimizeResult m = minimize(tensor, Kind::H, o.solver);
    r.body["t"] = t;
    r.body["verdict"] = report::verdict(v);
    r.body["minimize"] = report::minimize(m);
    check("min Pareto H-eigenvalue equals min(1 + 27^(1/4) t, 1)",
          std::abs(v.min_eigenvalue - expected_gamma) <= kTol,
          ordered_json{{"expected", expected_gamma}, {"found", v.min_eigenvalue}});
    const Classification expected = classify_value(expected_gamma, o.zero_band);
    check(std::string("classification is ") + to_string(expected), v.classification == expected,
          to_string(v.classification));
  }
  r.body["checks"] = std::move(checks);
  r.body["exhaustive"] = false;
  report::finish(r, sw, o, std::move(warnings));
  return r;
}

/// Plain-text rendering of a report.
inline std::string render_text(const ordered_json& j, int indent = 0) {
  std::ostringstream out;
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto is_flat = [](const ordered_json& a) {
    return std::all_of(a.begin(), a.end(), [](const ordered_json& e) { return e.is_primitive(); });
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object()) {
      out << pad << it.key() << ":\n" << render_text(v, indent + 2);
    } else if (v.is_array() && !is_flat(v)) {
      out << pad << it.key() << ":\n";
      for (std::size_t k = 0; k < v.size(); ++k) {
        out << pad << "  [" << k << "]\n";
        if (v[k].is_object())
          out << render_text(v[k], indent + 4);
        else
          out << pad << "    " << scalar(v[k]) << "\n";
      }
    } else {
      out << pad << it.key() << ": " << scalar(v) << "\n";
    }
  }
  return out.str();
}

}  // namespace pareto
