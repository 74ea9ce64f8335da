#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace pareto {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Sorted set of 0-based coordinate indices, used to select principal
/// sub-tensors and to place sub-tensor eigenvectors back into R^n.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> members) : members_(members) { canonicalize(); }
  explicit IndexSet(std::vector<int> members) : members_(std::move(members)) { canonicalize(); }

  /// All of {0, ..., n-1}.
  static IndexSet full(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return IndexSet(std::move(m));
  }

  /// Subset encoded by the bits of `mask` (bit i set <=> i in the set).
  static IndexSet from_mask(unsigned long mask, int n) {
    std::vector<int> m;
    for (int i = 0; i < n; ++i)
      if (mask & (1UL << i)) m.push_back(i);
    return IndexSet(std::move(m));
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  int operator[](std::size_t k) const { return members_[k]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  std::span<const int> members() const { return members_; }

  bool contains(int i) const { return std::binary_search(members_.begin(), members_.end(), i); }

  /// Position of `i` inside the set, or -1.
  int position(int i) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), i);
    if (it == members_.end() || *it != i) return -1;
    return static_cast<int>(it - members_.begin());
  }

  /// Indices of {0..n-1} not in the set, ascending.
  std::vector<int> complement(int n) const {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
      if (!contains(i)) out.push_back(i);
    return out;
  }

  /// 1-based rendering, e.g. "{1,3}".
  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(members_[k] + 1);
    }
    return s + "}";
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  void canonicalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<int> members_;
};

/// One raw coefficient a_{i1 i2 ... im}, indices 0-based.
struct RawEntry {
  std::vector<int> index;
  double value = 0.0;
};

/// m-order n-dimensional real tensor stored by slices.
///
/// A slice is keyed by the leading index i and the sorted multiset of the
/// m-1 trailing indices; its coefficient is the sum of all raw entries
/// a_{i i2..im} whose trailing indices collapse to that multiset. This is
/// exactly the information A x^{m-1} (and hence A x^m) depends on, so
/// non-symmetric inputs are represented faithfully.
class Tensor {
 public:
  struct Term {
    int lead = 0;
    std::vector<int> trailing;  // sorted, length order-1
    double coeff = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
  };

  Tensor() = default;

  /// Aggregates raw entries into slices. Duplicate multi-indices sum. With
  /// `symmetrize`, every raw entry is first averaged over all m! index
  /// permutations. Without it, the symmetric flag is still set when the
  /// aggregated slices happen to describe a fully symmetric tensor.
  static Tensor build(int order, int dim, std::span<const RawEntry> entries, bool symmetrize = false) {
    if (order < 2) throw std::invalid_argument("tensor order must be >= 2, got " + std::to_string(order));
    if (dim < 1) throw std::invalid_argument("tensor dimension must be >= 1, got " + std::to_string(dim));

    for (const auto& e : entries) {
      if (static_cast<int>(e.index.size()) != order)
        throw std::invalid_argument("entry index has length " + std::to_string(e.index.size()) +
                                    ", expected " + std::to_string(order));
      for (int i : e.index)
        if (i < 0 || i >= dim)
          throw std::out_of_range("entry index " + std::to_string(i + 1) + " outside 1.." + std::to_string(dim));
      if (!std::isfinite(e.value)) throw std::invalid_argument("entry value is not finite");
    }

    std::map<std::pair<int, std::vector<int>>, double> slices;
    if (symmetrize) {
      // The symmetric average of a multiset group S with total T puts
      // T * mult_i(S) / m on slice (i, S \ {i}).
      std::map<std::vector<int>, double> groups;
      for (const auto& e : entries) {
        auto key = e.index;
        std::sort(key.begin(), key.end());
        groups[key] += e.value;
      }
      for (const auto& [ms, total] : groups) {
        for (std::size_t k = 0; k < ms.size(); ++k) {
          if (k > 0 && ms[k] == ms[k - 1]) continue;
          const auto mult = std::count(ms.begin(), ms.end(), ms[k]);
          std::vector<int> trailing = ms;
          trailing.erase(trailing.begin() + static_cast<std::ptrdiff_t>(k));
          slices[{ms[k], std::move(trailing)}] += total * static_cast<double>(mult) / order;
        }
      }
    } else {
      for (const auto& e : entries) {
        std::vector<int> trailing(e.index.begin() + 1, e.index.end());
        std::sort(trailing.begin(), trailing.end());
        slices[{e.index.front(), std::move(trailing)}] += e.value;
      }
    }

    Tensor t;
    t.order_ = order;
    t.dim_ = dim;
    for (auto& [key, c] : slices)
      if (c != 0.0) t.terms_.push_back({key.first, key.second, c});
    t.symmetric_ = symmetrize || t.slices_symmetric();
    return t;
  }

  int order() const { return order_; }
  int dim() const { return dim_; }
  bool symmetric() const { return symmetric_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Largest absolute slice coefficient (0 for the zero tensor).
  double scale() const {
    double s = 0.0;
    for (const auto& t : terms_) s = std::max(s, std::abs(t.coeff));
    return s;
  }

  /// Coefficient of slice (lead, trailing); trailing need not be sorted.
  double coefficient(int lead, std::vector<int> trailing) const {
    std::sort(trailing.begin(), trailing.end());
    auto it = std::lower_bound(terms_.begin(), terms_.end(), 0, [&](const Term& t, int) {
      return std::tie(t.lead, t.trailing) < std::tie(lead, trailing);
    });
    if (it == terms_.end() || it->lead != lead || it->trailing != trailing) return 0.0;
    return it->coeff;
  }

  /// Equality of the slices map (the symmetric flag is derived data).
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.order_ == b.order_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Builds a tensor from already-canonical terms (sorted, unique keys).
  static Tensor from_terms(int order, int dim, std::vector<Term> terms) {
    Tensor t;
    t.order_ = order;
    t.dim_ = dim;
    t.terms_ = std::move(terms);
    t.symmetric_ = t.slices_symmetric();
    return t;
  }

 private:
  // Symmetric iff, for every full multiset S, coefficient(i, S\{i}) / mult_i(S)
  // does not depend on i.
  bool slices_symmetric() const {
    std::map<std::vector<int>, std::vector<double>> seen;
    for (const auto& t : terms_) {
      std::vector<int> ms = t.trailing;
      ms.insert(std::upper_bound(ms.begin(), ms.end(), t.lead), t.lead);
      seen.try_emplace(ms);
    }
    for (const auto& [ms, unused] : seen) {
      double ref = 0.0;
      bool first = true;
      for (std::size_t k = 0; k < ms.size(); ++k) {
        if (k > 0 && ms[k] == ms[k - 1]) continue;
        const auto mult = std::count(ms.begin(), ms.end(), ms[k]);
        std::vector<int> trailing = ms;
        trailing.erase(trailing.begin() + static_cast<std::ptrdiff_t>(k));
        const double v = coefficient(ms[k], trailing) / static_cast<double>(mult);
        if (first) {
          ref = v;
          first = false;
        } else if (std::abs(v - ref) > 1e-12 * std::max({1.0, std::abs(v), std::abs(ref)})) {
          return false;
        }
      }
    }
    return true;
  }

  int order_ = 2;
  int dim_ = 1;
  std::vector<Term> terms_;
  bool symmetric_ = true;
};

namespace detail {

inline void require_dim(const Tensor& t, const Vector& x) {
  if (x.size() != t.dim())
    throw std::invalid_argument("vector has dimension " + std::to_string(x.size()) + ", tensor has " +
                                std::to_string(t.dim()));
}

inline double monomial(const Vector& x, std::span<const int> idx) {
  double p = 1.0;
  for (int i : idx) p *= x[i];
  return p;
}

/// x^k for small non-negative integer k; exact sign handling for negatives.
inline double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace detail

/// A x^{m-1}: component i is sum over slices with lead i of coeff * x^{trailing}.
inline Vector apply_contract(const Tensor& t, const Vector& x) {
  detail::require_dim(t, x);
  Vector out = Vector::Zero(t.dim());
  for (const auto& term : t.terms()) out[term.lead] += term.coeff * detail::monomial(x, term.trailing);
  return out;
}

/// A x^m = x . A x^{m-1}.
inline double apply_full(const Tensor& t, const Vector& x) { return x.dot(apply_contract(t, x)); }

/// Jacobian of x -> A x^{m-1}.
inline Matrix contract_jacobian(const Tensor& t, const Vector& x) {
  detail::require_dim(t, x);
  const int n = t.dim();
  Matrix jac = Matrix::Zero(n, n);
  for (const auto& term : t.terms()) {
    const auto& tr = term.trailing;
    for (std::size_t k = 0; k < tr.size(); ++k) {
      double p = term.coeff;
      for (std::size_t l = 0; l < tr.size(); ++l)
        if (l != k) p *= x[tr[l]];
      jac(term.lead, tr[k]) += p;
    }
  }
  return jac;
}

/// Gradient of x -> A x^m; equals m A x^{m-1} for symmetric tensors.
inline Vector full_gradient(const Tensor& t, const Vector& x) {
  return apply_contract(t, x) + contract_jacobian(t, x).transpose() * x;
}

/// A^N: slices whose indices all lie in N, relabeled by position in N.
inline Tensor principal_subtensor(const Tensor& t, const IndexSet& subset) {
  if (subset.empty()) throw std::invalid_argument("principal sub-tensor of an empty index set");
  for (int i : subset)
    if (i < 0 || i >= t.dim())
      throw std::out_of_range("subset member " + std::to_string(i + 1) + " outside 1.." + std::to_string(t.dim()));

  std::vector<Tensor::Term> kept;
  for (const auto& term : t.terms()) {
    const int lead = subset.position(term.lead);
    if (lead < 0) continue;
    std::vector<int> trailing;
    trailing.reserve(term.trailing.size());
    bool inside = true;
    for (int i : term.trailing) {
      const int p = subset.position(i);
      if (p < 0) {
        inside = false;
        break;
      }
      trailing.push_back(p);
    }
    if (inside) kept.push_back({lead, std::move(trailing), term.coeff});
  }
  // Relabeling is monotone, so the lexicographic order of terms is preserved.
  return Tensor::from_terms(t.order(), static_cast<int>(subset.size()), std::move(kept));
}

/// Places w (indexed by position in N) into R^n with zeros off N.
inline Vector embed(const Vector& w, const IndexSet& subset, int n) {
  if (static_cast<std::size_t>(w.size()) != subset.size())
    throw std::invalid_argument("embed: vector of size " + std::to_string(w.size()) + " for subset of size " +
                                std::to_string(subset.size()));
  Vector y = Vector::Zero(n);
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] < 0 || subset[k] >= n) throw std::out_of_range("embed: subset member outside 1..n");
    y[subset[k]] = w[static_cast<Eigen::Index>(k)];
  }
  return y;
}

/// The k-norm (sum |x_i|^k)^(1/k), k >= 1.
inline double norm(const Vector& x, double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("norm exponent must be >= 1");
  if (k == 2.0) return x.norm();
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), k);
  return std::pow(s, 1.0 / k);
}

/// x^{[k]}: componentwise k-th power.
inline Vector power(const Vector& x, int k) {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = detail::ipow(x[i], k);
  return out;
}

inline Vector ones(int n) { return Vector::Ones(n); }

}  // namespace pareto
