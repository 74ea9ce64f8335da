#pragma once

// Interior (strictly positive) H- and Z-eigenpairs of a tensor.
//
//   H:  A w^{m-1} = lambda w^{[m-1]},              sum w_i^m = 1
//   Z:  A w^{m-1} = mu (w.w)^{(m-2)/2} w,          w.w = 1
//
// General tensors are handled by multistart damped Newton on the square
// system (w, value); dimension 1 and symmetric matrices (m = 2) are solved
// in closed form. Only solutions with every component above pos_tol are
// returned.

#include "pareto/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pareto {

enum class Kind { H, Z };

inline const char* to_string(Kind k) { return k == Kind::H ? "H" : "Z"; }

/// Exponent of the normalization used for each kind: m for H, 2 for Z.
inline double norm_exponent(Kind kind, int order) { return kind == Kind::H ? order : 2.0; }

struct EigenPair {
  double value = 0.0;
  Vector vector;
  Kind kind = Kind::H;
  double residual = 0.0;
};

struct SolverConfig {
  int starts = 0;  // 0 selects 200 * dim
  int max_iters = 200;
  double tol = 1e-10;
  double pos_tol = 1e-8;
  double dedup_tol = 1e-8;
  std::uint64_t seed = 20130701;

  int starts_for(int dim) const { return starts > 0 ? starts : 200 * dim; }

  /// Throws on invalid values; returns non-fatal warnings.
  std::vector<std::string> validate() const {
    if (starts < 0) throw std::invalid_argument("starts must be >= 1 (or 0 for the default)");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(tol > 0) || !(pos_tol > 0) || !(dedup_tol > 0))
      throw std::invalid_argument("solver tolerances must be positive");
    std::vector<std::string> warnings;
    if (dedup_tol < tol) warnings.push_back("dedup_tol is smaller than tol; near-duplicate eigenpairs may survive");
    return warnings;
  }
};

/// Right-hand side of the defining equation: x^{[m-1]} (H) or
/// (x.x)^{(m-2)/2} x (Z).
inline Vector eigen_rhs(Kind kind, int order, const Vector& x) {
  if (kind == Kind::H) return power(x, order - 1);
  return std::pow(x.squaredNorm(), (order - 2) / 2.0) * x;
}

/// Infinity norm of A x^{m-1} - value * rhs(x).
inline double residual(const Tensor& t, double value, const Vector& x, Kind kind) {
  detail::require_dim(t, x);
  return (apply_contract(t, x) - value * eigen_rhs(kind, t.order(), x)).lpNorm<Eigen::Infinity>();
}

inline double residual(const Tensor& t, const EigenPair& pair) {
  return residual(t, pair.value, pair.vector, pair.kind);
}

/// Interior eigenpairs plus whether the search was exhaustive (closed form)
/// rather than multistart.
struct InteriorSolution {
  std::vector<EigenPair> pairs;
  bool exhaustive = false;
};

namespace detail {

inline double norm_power_sum(Kind kind, int order, const Vector& w) {
  if (kind == Kind::Z) return w.squaredNorm();
  double s = 0.0;
  for (double v : w) s += ipow(std::abs(v), order);
  return s;
}

inline Vector normalize(Kind kind, int order, Vector w) {
  return w / norm(w, norm_exponent(kind, order));
}

/// Residual vector of the augmented square system at (w, value).
inline Vector newton_residual(const Tensor& t, Kind kind, const Vector& w, double value) {
  const int n = t.dim();
  Vector f(n + 1);
  f.head(n) = apply_contract(t, w) - value * eigen_rhs(kind, t.order(), w);
  f[n] = norm_power_sum(kind, t.order(), w) - 1.0;
  return f;
}

inline Matrix newton_jacobian(const Tensor& t, Kind kind, const Vector& w, double value) {
  const int n = t.dim();
  const int m = t.order();
  Matrix jac = Matrix::Zero(n + 1, n + 1);
  Matrix rhs_jac(n, n);
  Vector norm_grad(n);
  if (kind == Kind::H) {
    rhs_jac.setZero();
    for (int i = 0; i < n; ++i) {
      rhs_jac(i, i) = (m - 1) * ipow(w[i], m - 2);
      const double a = std::abs(w[i]);
      norm_grad[i] = m * ipow(a, m - 1) * (w[i] < 0 ? -1.0 : 1.0);
    }
  } else {
    const double s = w.squaredNorm();
    rhs_jac = std::pow(s, (m - 2) / 2.0) * Matrix::Identity(n, n);
    if (m != 2) rhs_jac += (m - 2) * std::pow(s, (m - 4) / 2.0) * (w * w.transpose());
    norm_grad = 2.0 * w;
  }
  jac.topLeftCorner(n, n) = contract_jacobian(t, w) - value * rhs_jac;
  jac.col(n).head(n) = -eigen_rhs(kind, m, w);
  jac.row(n).head(n) = norm_grad.transpose();
  return jac;
}

/// Per-start generator derived from (seed, start index) only, so starts can
/// be evaluated in any order.
inline std::mt19937_64 start_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Normalized start with i.i.d. uniform(0.1, 1) components.
inline Vector random_start(std::mt19937_64& rng, int n, Kind kind, int order) {
  std::uniform_real_distribution<double> dist(0.1, 1.0);
  Vector w(n);
  for (int i = 0; i < n; ++i) w[i] = dist(rng);
  return normalize(kind, order, std::move(w));
}

inline bool same_pair(const EigenPair& a, const EigenPair& b, double dedup_tol) {
  return std::abs(a.value - b.value) <= dedup_tol && a.vector.size() == b.vector.size() &&
         (a.vector - b.vector).lpNorm<Eigen::Infinity>() <= 1e-6;
}

inline bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void sort_pairs(std::vector<EigenPair>& pairs) {
  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.value != b.value) return a.value < b.value;
    return lex_less(a.vector, b.vector);
  });
}

/// Damped Newton from one start. Returns false when the start is abandoned.
inline bool newton_solve(const Tensor& t, Kind kind, const SolverConfig& cfg, double tol, Vector& w,
                         double& value) {
  const int n = t.dim();
  Vector f = newton_residual(t, kind, w, value);
  double fnorm = f.lpNorm<Eigen::Infinity>();
  int polish = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (fnorm <= tol && ++polish > 2) break;
    Vector step = newton_jacobian(t, kind, w, value).completeOrthogonalDecomposition().solve(-f);
    if (!step.allFinite()) return fnorm <= tol;
    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 30; ++halving, alpha *= 0.5) {
      const Vector w_new = w + alpha * step.head(n);
      const double v_new = value + alpha * step[n];
      const Vector f_new = newton_residual(t, kind, w_new, v_new);
      const double n_new = f_new.lpNorm<Eigen::Infinity>();
      if (std::isfinite(n_new) && n_new < fnorm) {
        w = w_new;
        value = v_new;
        f = f_new;
        fnorm = n_new;
        accepted = true;
        break;
      }
    }
    if (!accepted) return fnorm <= tol;
  }
  return fnorm <= tol;
}

// A small absolute residual says nothing about equation i when w_i^{m-1}
// is itself tiny; points creeping toward a boundary eigenvector would pass.
// Every ratio (A w^{m-1})_i / rhs_i must match the eigenvalue instead.
inline constexpr double kRatioTol = 1e-6;

inline double ratio_spread(const Tensor& t, const EigenPair& pair) {
  const Vector c = apply_contract(t, pair.vector);
  const Vector r = eigen_rhs(pair.kind, t.order(), pair.vector);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) worst = std::max(worst, std::abs(c[i] / r[i] - pair.value));
  return worst;
}

inline InteriorSolution solve_dim1(const Tensor& t, Kind kind) {
  EigenPair p;
  p.value = t.coefficient(0, std::vector<int>(static_cast<std::size_t>(t.order() - 1), 0));
  p.vector = Vector::Ones(1);
  p.kind = kind;
  p.residual = residual(t, p);
  return {{p}, true};
}

/// Symmetric matrices: classical eigenpairs whose eigenvector can be signed
/// strictly positive. Returns nothing when an eigenvalue is repeated, since a
/// positive vector may then sit anywhere in a multi-dimensional eigenspace.
inline std::optional<InteriorSolution> solve_symmetric_matrix(const Tensor& t, Kind kind, const SolverConfig& cfg) {
  const int n = t.dim();
  Matrix a = Matrix::Zero(n, n);
  for (const auto& term : t.terms()) a(term.lead, term.trailing[0]) += term.coeff;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) return std::nullopt;
  const Vector& values = es.eigenvalues();
  const double gap_tol = 1e-9 * std::max(1.0, t.scale());
  for (int k = 1; k < n; ++k)
    if (values[k] - values[k - 1] <= gap_tol) return std::nullopt;

  InteriorSolution out{{}, true};
  for (int k = 0; k < n; ++k) {
    Vector v = es.eigenvectors().col(k).normalized();
    if (v.sum() < 0) v = -v;
    if (v.minCoeff() <= cfg.pos_tol) continue;
    EigenPair p{values[k], v, kind, 0.0};
    p.residual = residual(t, p);
    out.pairs.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

/// All interior eigenpairs of `t` that the solver can find.
inline InteriorSolution solve_interior(const Tensor& t, Kind kind, const SolverConfig& cfg) {
  cfg.validate();
  if (t.dim() == 1) return detail::solve_dim1(t, kind);
  if (t.order() == 2 && t.symmetric())
    if (auto closed = detail::solve_symmetric_matrix(t, kind, cfg)) return *closed;

  const int n = t.dim();
  const int m = t.order();
  const double tol = cfg.tol * std::max(1.0, t.scale());
  const double p = norm_exponent(kind, m);

  InteriorSolution out{{}, false};
  const int starts = cfg.starts_for(n);
  for (int s = 0; s < starts; ++s) {
    auto rng = detail::start_rng(cfg.seed, static_cast<std::uint64_t>(kind), static_cast<std::uint64_t>(s));
    Vector w = detail::random_start(rng, n, kind, m);
    double value = apply_full(t, w) / detail::norm_power_sum(kind, m, w);
    if (!detail::newton_solve(t, kind, cfg, tol, w, value)) continue;
    if (w.minCoeff() <= cfg.pos_tol) continue;
    w /= norm(w, p);
    if (w.minCoeff() <= cfg.pos_tol) continue;

    EigenPair pair{value, std::move(w), kind, 0.0};
    pair.residual = residual(t, pair);
    if (!(pair.residual <= tol)) continue;
    if (detail::ratio_spread(t, pair) > detail::kRatioTol * std::max(1.0, t.scale())) continue;

    const bool dup = std::any_of(out.pairs.begin(), out.pairs.end(),
                                 [&](const EigenPair& q) { return detail::same_pair(pair, q, cfg.dedup_tol); });
    if (!dup) out.pairs.push_back(std::move(pair));
  }
  detail::sort_pairs(out.pairs);
  return out;
}

/// Strictly positive H-eigenpairs, eigenvectors unit in the m-norm.
inline std::vector<EigenPair> solve_h_interior(const Tensor& t, const SolverConfig& cfg) {
  return solve_interior(t, Kind::H, cfg).pairs;
}

/// Strictly positive Z-eigenpairs, eigenvectors unit in the 2-norm.
inline std::vector<EigenPair> solve_z_interior(const Tensor& t, const SolverConfig& cfg) {
  return solve_interior(t, Kind::Z, cfg).pairs;
}

}  // namespace pareto
