#pragma once

// Direct minimization of A x^m over the nonnegative part of the unit sphere
// (m-norm for H, 2-norm for Z). Independent of the spectrum code: it is the
// other side of the min-value identity checked by the acceptance suite.

#include "pareto/detail/parallel.hpp"
#include "pareto/eigensolvers.hpp"
#include "pareto/tensor.hpp"

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pareto {

struct MinimizeResult {
  double value = 0.0;
  Vector argmin;
  double kkt_residual = 0.0;
  Kind kind = Kind::H;
  int starts_used = 0;
  int converged_starts = 0;  // starts that met the stationarity test
  std::vector<std::string> warnings;
};

struct KktEstimate {
  double lambda = 0.0;
  Vector y;
  double residual = 0.0;
};

/// Multiplier estimates at a feasible x: lambda = A x^m,
/// y = A x^{m-1} - lambda rhs(x), residual = max(max_i -y_i, |x.y|).
inline KktEstimate kkt_residual(const Tensor& t, const Vector& x, Kind kind) {
  detail::require_dim(t, x);
  if (x.size() > 0 && x.minCoeff() < -1e-12) throw std::invalid_argument("kkt_residual: x has negative components");
  if (std::abs(norm(x, norm_exponent(kind, t.order())) - 1.0) > 1e-8)
    throw std::invalid_argument("kkt_residual: x is not normalized");
  KktEstimate k;
  k.lambda = apply_full(t, x);
  k.y = apply_contract(t, x) - k.lambda * eigen_rhs(kind, t.order(), x);
  k.residual = std::max({0.0, -k.y.minCoeff(), std::abs(x.dot(k.y))});
  return k;
}

namespace detail {

/// Clamp negatives to zero, then rescale to the unit sphere of the kind's
/// norm. Returns false for the zero vector.
inline bool project_feasible(Kind kind, int order, Vector& x) {
  x = x.cwiseMax(0.0);
  const double nx = norm(x, norm_exponent(kind, order));
  if (!(nx > 0.0) || !std::isfinite(nx)) return false;
  x /= nx;
  return true;
}

/// Gradient with the component along the norm constraint's gradient
/// removed: grad - nu * dc, nu chosen so that x . result = 0.
inline Vector reduced_gradient(Kind kind, int order, const Vector& x, const Vector& grad) {
  const Vector dc = kind == Kind::H ? Vector(order * power(x, order - 1)) : Vector(2.0 * x);
  return grad - (x.dot(grad) / x.dot(dc)) * dc;
}

/// Infinity norm of the reduced gradient over directions that keep x >= 0,
/// divided by m so that it reads like the KKT slack y.
inline double projected_gradient_norm(int order, const Vector& x, const Vector& reduced) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    worst = std::max(worst, x[i] > 0.0 ? std::abs(reduced[i]) : std::max(0.0, -reduced[i]));
  return worst / order;
}

struct StartOutcome {
  Vector x;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
};

inline StartOutcome projected_descent(const Tensor& t, Kind kind, const SolverConfig& cfg, Vector x) {
  constexpr double kStationary = 1e-9;
  constexpr double kArmijo = 1e-4;
  StartOutcome out;
  double f = apply_full(t, x);
  for (int it = 0; it < cfg.max_iters; ++it) {
    const Vector dir = reduced_gradient(kind, t.order(), x, full_gradient(t, x));
    if (projected_gradient_norm(t.order(), x, dir) <= kStationary) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    double alpha = 1.0;
    for (int halving = 0; halving < 60; ++halving, alpha *= 0.5) {
      Vector trial = x - alpha * dir;
      if (!project_feasible(kind, t.order(), trial)) continue;
      const double f_trial = apply_full(t, trial);
      if (f_trial <= f - kArmijo * (trial - x).squaredNorm() / alpha) {
        accepted = (trial - x).lpNorm<Eigen::Infinity>() > 0.0;
        x = std::move(trial);
        f = f_trial;
        break;
      }
    }
    if (!accepted) {
      out.converged = projected_gradient_norm(t.order(), x, dir) <= kStationary;
      break;
    }
  }
  out.x = std::move(x);
  out.value = f;
  return out;
}

}  // namespace detail

/// Multistart projected-gradient minimization of A x^m over
/// {x >= 0, ||x|| = 1}. Returns the best local minimum found.
inline MinimizeResult minimize(const Tensor& t, Kind kind, const SolverConfig& cfg) {
  MinimizeResult res;
  res.kind = kind;
  res.warnings = cfg.validate();
  if (!t.symmetric())
    res.warnings.push_back("tensor is not symmetric; the minimum need not be a Pareto eigenvalue");

  const int n = t.dim();
  const int m = t.order();
  const int starts = cfg.starts_for(n);
  std::vector<detail::StartOutcome> outcomes(static_cast<std::size_t>(starts));
  detail::parallel_for(outcomes.size(), [&](std::size_t s) {
    auto rng = detail::start_rng(cfg.seed, 16 + static_cast<std::uint64_t>(kind), s);
    outcomes[s] = detail::projected_descent(t, kind, cfg, detail::random_start(rng, n, kind, m));
  });

  const detail::StartOutcome* best = nullptr;
  for (const auto& o : outcomes) {
    res.converged_starts += o.converged ? 1 : 0;
    if (!best || o.value < best->value || (o.value == best->value && detail::lex_less(o.x, best->x))) best = &o;
  }
  res.starts_used = starts;
  res.argmin = best->x;
  detail::project_feasible(kind, m, res.argmin);
  res.value = apply_full(t, res.argmin);
  res.kkt_residual = kkt_residual(t, res.argmin, kind).residual;
  return res;
}

/// Smallest value of A x^m over a simplex grid {k / resolution : sum k =
/// resolution} mapped radially onto the kind's unit sphere. Every grid point
/// is feasible, so this bounds the true minimum from above.
inline double grid_lower_bound(const Tensor& t, Kind kind, int resolution) {
  const int n = t.dim();
  if (n > 4) throw std::invalid_argument("grid_lower_bound supports dim <= 4, got " + std::to_string(n));
  if (resolution < 8) throw std::invalid_argument("grid resolution must be >= 8");

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> walk = [&](int pos, int remaining) {
    if (pos == n - 1) {
      counts[static_cast<std::size_t>(pos)] = remaining;
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = static_cast<double>(counts[static_cast<std::size_t>(i)]) / resolution;
      detail::project_feasible(kind, t.order(), x);
      best = std::min(best, apply_full(t, x));
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      counts[static_cast<std::size_t>(pos)] = k;
      walk(pos + 1, remaining - k);
    }
  };
  walk(0, resolution);
  return best;
}

}  // namespace pareto
