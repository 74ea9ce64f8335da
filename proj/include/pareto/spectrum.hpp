#pragma once

// Pareto H-/Z-spectrum by principal sub-tensor enumeration.
//
// A value is a Pareto eigenvalue of A iff, for some nonempty N, it is an
// interior eigenvalue of A^N with eigenvector w and every complement slack
//   s_i = sum_{i2..im in N} a_{i i2..im} w_{i2}...w_{im},   i not in N,
// is nonnegative. The Pareto eigenvector is w embedded into R^n.

#include "pareto/detail/parallel.hpp"
#include "pareto/eigensolvers.hpp"
#include "pareto/tensor.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pareto {

struct SubsetCertificate {
  IndexSet subset;
  EigenPair pair;              // eigenpair of the principal sub-tensor
  std::vector<double> slacks;  // one per index outside `subset`, ascending
  Vector eigenvector;          // pair.vector embedded into R^n
  bool boundary = false;       // some slack fell in (-slack_tol, 0)
};

struct ParetoSpectrum {
  Kind kind = Kind::H;
  std::vector<SubsetCertificate> items;
  double min_value = std::numeric_limits<double>::quiet_NaN();
  /// True only when every sub-tensor was solved in closed form.
  bool exhaustive = true;
  std::vector<std::string> warnings;

  bool empty() const { return items.empty(); }

  /// Certificate attaining min_value (first in enumeration order), or null.
  const SubsetCertificate* min_item() const {
    const SubsetCertificate* best = nullptr;
    for (const auto& c : items)
      if (!best || c.pair.value < best->pair.value) best = &c;
    return best;
  }
};

struct SpectrumOptions {
  double slack_tol = 1e-9;
  int max_dim = 16;
};

/// Component i of A y^{m-1} for every i outside N, where y embeds w.
inline std::vector<double> complement_slacks(const Tensor& t, const IndexSet& subset, const Vector& w) {
  const Vector contracted = apply_contract(t, embed(w, subset, t.dim()));
  std::vector<double> slacks;
  for (int i : subset.complement(t.dim())) slacks.push_back(contracted[i]);
  return slacks;
}

struct VerifyReport {
  bool pass = true;
  double worst_violation = 0.0;
  std::string failed_condition;  // empty on pass
  int component = -1;            // 0-based offending component, when applicable
  Vector slack;                  // A y^{m-1} - value * rhs(y)
  double value_gap = 0.0;        // A y^m - value * ||y||^m in the kind's norm
};

/// Checks the Pareto eigen-system for (value, y):
///   y >= 0,  A y^m = value ||y||^m,  A y^{m-1} - value rhs(y) >= 0
/// with ||.|| the m-norm (H) or 2-norm (Z).
inline VerifyReport verify_pareto_pair(const Tensor& t, double value, const Vector& y, Kind kind, double tol) {
  detail::require_dim(t, y);
  if (y.isZero(0.0)) throw std::invalid_argument("verify_pareto_pair: zero vector");

  VerifyReport r;
  const int m = t.order();
  const double full = apply_full(t, y);
  const double norm_m = std::pow(norm(y, norm_exponent(kind, m)), m);
  r.slack = apply_contract(t, y) - value * eigen_rhs(kind, m, y);
  r.value_gap = full - value * norm_m;

  double worst_ratio = 1.0;
  auto note = [&](double violation, double allowed, const char* condition, int component) {
    r.worst_violation = std::max(r.worst_violation, violation);
    if (violation <= allowed) return;
    r.pass = false;
    if (violation / allowed > worst_ratio) {
      worst_ratio = violation / allowed;
      r.failed_condition = condition;
      r.component = component;
    }
  };

  for (Eigen::Index i = 0; i < y.size(); ++i) note(-y[i], tol, "nonnegativity", static_cast<int>(i));
  const double value_scale = std::max({1.0, std::abs(full), std::abs(value) * norm_m});
  note(std::abs(r.value_gap), tol * value_scale, "value", -1);
  const double slack_scale = std::max(1.0, std::pow(y.lpNorm<Eigen::Infinity>(), m - 1));
  for (Eigen::Index i = 0; i < y.size(); ++i) note(-r.slack[i], tol * slack_scale, "slack", static_cast<int>(i));
  return r;
}

/// Enumerates every nonempty subset (by cardinality, then lexicographically),
/// solves the interior problem of each principal sub-tensor and keeps the
/// eigenpairs whose complement slacks are all >= -slack_tol.
inline ParetoSpectrum pareto_spectrum(const Tensor& t, Kind kind, const SolverConfig& cfg,
                                      const SpectrumOptions& opts = {}) {
  const int n = t.dim();
  if (n > opts.max_dim)
    throw std::length_error("dimension " + std::to_string(n) + " exceeds the subset enumeration guard of " +
                            std::to_string(opts.max_dim));
  ParetoSpectrum spec;
  spec.kind = kind;
  spec.warnings = cfg.validate();

  std::vector<IndexSet> subsets;
  subsets.reserve((std::size_t{1} << n) - 1);
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) subsets.push_back(IndexSet::from_mask(mask, n));
  std::stable_sort(subsets.begin(), subsets.end(), [](const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  struct Job {
    std::vector<SubsetCertificate> accepted;
    bool exhaustive = true;
  };
  std::vector<Job> jobs(subsets.size());
  detail::parallel_for(subsets.size(), [&](std::size_t k) {
    const IndexSet& subset = subsets[k];
    const InteriorSolution sol = solve_interior(principal_subtensor(t, subset), kind, cfg);
    jobs[k].exhaustive = sol.exhaustive;
    for (const auto& pair : sol.pairs) {
      SubsetCertificate cert;
      cert.subset = subset;
      cert.pair = pair;
      cert.slacks = complement_slacks(t, subset, pair.vector);
      bool ok = true;
      for (double s : cert.slacks) {
        if (s < -opts.slack_tol) ok = false;
        if (s < 0) cert.boundary = true;
      }
      if (!ok) continue;
      cert.eigenvector = embed(pair.vector, subset, n);
      jobs[k].accepted.push_back(std::move(cert));
    }
  });

  for (auto& job : jobs) {
    spec.exhaustive = spec.exhaustive && job.exhaustive;
    for (auto& cert : job.accepted) {
      const bool dup = std::any_of(spec.items.begin(), spec.items.end(), [&](const SubsetCertificate& c) {
        return std::abs(c.pair.value - cert.pair.value) <= cfg.dedup_tol &&
               (c.eigenvector - cert.eigenvector).lpNorm<Eigen::Infinity>() <= 1e-6;
      });
      if (!dup) spec.items.push_back(std::move(cert));
    }
  }
  if (const auto* best = spec.min_item()) spec.min_value = best->pair.value;
  return spec;
}

class EmptySpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MinPareto {
  double value = 0.0;
  Vector eigenvector;
  IndexSet subset;
  std::vector<std::string> warnings;
};

/// Smallest Pareto eigenvalue and its eigenvector. Throws EmptySpectrumError
/// when no Pareto eigenpair was found.
inline MinPareto min_pareto(const ParetoSpectrum& spec, bool symmetric) {
  const auto* best = spec.min_item();
  if (!best)
    throw EmptySpectrumError(std::string("no Pareto ") + to_string(spec.kind) + "-eigenpair found");
  MinPareto out{best->pair.value, best->eigenvector, best->subset, spec.warnings};
  if (!symmetric)
    out.warnings.push_back("tensor is not symmetric; the minimum Pareto eigenvalue need not equal the "
                           "constrained minimum of A x^m");
  return out;
}

inline MinPareto min_pareto(const Tensor& t, Kind kind, const SolverConfig& cfg, const SpectrumOptions& opts = {}) {
  return min_pareto(pareto_spectrum(t, kind, cfg, opts), t.symmetric());
}

}  // namespace pareto
