#pragma once

#include "pareto/minimize.hpp"
#include "pareto/spectrum.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pareto {

enum class Classification { strictly_copositive, copositive_boundary, not_copositive, inconclusive };
enum class Route { H, Z, Both };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::strictly_copositive: return "strictly_copositive";
    case Classification::copositive_boundary: return "copositive_boundary";
    case Classification::not_copositive: return "not_copositive";
    case Classification::inconclusive: return "inconclusive";
  }
  return "?";
}

inline const char* to_string(Route r) {
  switch (r) {
    case Route::H: return "H";
    case Route::Z: return "Z";
    case Route::Both: return "both";
  }
  return "?";
}

struct CopositivityVerdict {
  Classification classification = Classification::inconclusive;
  Route route = Route::Both;
  /// Minimum Pareto H-eigenvalue (route H or both) or Z-eigenvalue (route Z).
  double min_eigenvalue = 0.0;
  /// Minimum Pareto Z-eigenvalue when route is both.
  std::optional<double> z_min_eigenvalue;
  Vector certificate;
  /// |min_eigenvalue| - zero_band; negative inside the band.
  double margin = 0.0;
  /// For not_copositive: whether the direct minimizer found a negative point too.
  std::optional<bool> witness_corroborated;
  bool exhaustive = false;
  std::vector<std::string> diagnostics;
};

/// Sign of a minimum eigenvalue against the zero band.
inline Classification classify_value(double value, double zero_band) {
  if (value < -zero_band) return Classification::not_copositive;
  if (value <= zero_band) return Classification::copositive_boundary;
  return Classification::strictly_copositive;
}

/// Argmin of A x^m over the nonnegative unit sphere when the minimum is
/// negative, i.e. a point certifying that A is not copositive.
inline std::optional<Vector> direct_witness_search(const Tensor& t, const SolverConfig& cfg, Kind kind = Kind::H) {
  MinimizeResult r = minimize(t, kind, cfg);
  if (r.value < 0.0) return std::move(r.argmin);
  return std::nullopt;
}

/// Copositivity from the sign of the minimum Pareto eigenvalue.
inline CopositivityVerdict classify(const Tensor& t, Route route, const SolverConfig& cfg, double zero_band = 1e-7,
                                    const SpectrumOptions& opts = {}) {
  if (!t.symmetric()) throw std::invalid_argument("copositivity classification requires a symmetric tensor");
  if (!(zero_band >= 0)) throw std::invalid_argument("zero_band must be >= 0");

  CopositivityVerdict v;
  v.route = route;

  struct RouteResult {
    Classification cls = Classification::inconclusive;
    ParetoSpectrum spec;
  };
  auto run = [&](Kind kind) {
    RouteResult rr{Classification::inconclusive, pareto_spectrum(t, kind, cfg, opts)};
    if (rr.spec.empty())
      v.diagnostics.push_back(std::string("empty Pareto ") + to_string(kind) + "-spectrum");
    else
      rr.cls = classify_value(rr.spec.min_value, zero_band);
    for (const auto& w : rr.spec.warnings) v.diagnostics.push_back(w);
    return rr;
  };

  const RouteResult primary = run(route == Route::Z ? Kind::Z : Kind::H);
  v.exhaustive = primary.spec.exhaustive;
  v.classification = primary.cls;
  if (const auto* best = primary.spec.min_item()) {
    v.min_eigenvalue = best->pair.value;
    v.certificate = best->eigenvector;
  }

  if (route == Route::Both) {
    const RouteResult z = run(Kind::Z);
    v.exhaustive = v.exhaustive && z.spec.exhaustive;
    if (!z.spec.empty()) v.z_min_eigenvalue = z.spec.min_value;
    if (z.cls != primary.cls) {
      v.diagnostics.push_back(std::string("H route says ") + to_string(primary.cls) + ", Z route says " +
                              to_string(z.cls));
      v.classification = Classification::inconclusive;
    }
  }

  if (primary.spec.empty()) v.classification = Classification::inconclusive;
  v.margin = std::abs(v.min_eigenvalue) - zero_band;

  if (v.classification == Classification::not_copositive) {
    const auto witness = direct_witness_search(t, cfg);
    v.witness_corroborated = witness.has_value();
    if (!witness) v.diagnostics.push_back("direct minimization found no negative point");
  }
  return v;
}

}  // namespace pareto
