#pragma once

// Built-in tensors with known Pareto spectra.

#include "pareto/tensor.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace pareto::fixtures {

namespace detail {

/// Raw entry from a 1-based index, as the tensors are usually written down.
inline RawEntry entry(std::initializer_list<int> one_based, double value) {
  RawEntry e;
  for (int i : one_based) e.index.push_back(i - 1);
  e.value = value;
  return e;
}

}  // namespace detail

/// Order 4, dim 2, not symmetric: A x^4 = x1^4 + 2 x2^4 - 3 x1^2 x2^2 with
/// A x^3 = (x1^3 - x1 x2^2, 2 x2^3 - 2 x1^2 x2).
inline Tensor two_well_quartic() {
  using detail::entry;
  const std::vector<RawEntry> raw{entry({1, 1, 1, 1}, 1.0), entry({2, 2, 2, 2}, 2.0),
                                  entry({1, 1, 2, 2}, -1.0), entry({2, 2, 1, 1}, -2.0)};
  return Tensor::build(4, 2, raw);
}

/// Order 3, dim 2, symmetric: A x^3 = x1^3 + x1 x2^2 - 2 x1^2 x2 + 2 x2^3.
inline Tensor rejected_vertex_cubic() {
  using detail::entry;
  std::vector<RawEntry> raw{entry({1, 1, 1}, 1.0), entry({2, 2, 2}, 2.0)};
  for (auto idx : {std::initializer_list<int>{1, 2, 2}, {2, 1, 2}, {2, 2, 1}}) raw.push_back(entry(idx, 1.0 / 3));
  for (auto idx : {std::initializer_list<int>{1, 1, 2}, {1, 2, 1}, {2, 1, 1}}) raw.push_back(entry(idx, -2.0 / 3));
  return Tensor::build(3, 2, raw);
}

/// Order 4, dim 2, symmetric family: A x^4 = x1^4 + x2^4 + 4 t x1^3 x2.
inline Tensor skewed_quartic(double t) {
  using detail::entry;
  std::vector<RawEntry> raw{entry({1, 1, 1, 1}, 1.0), entry({2, 2, 2, 2}, 1.0)};
  for (auto idx : {std::initializer_list<int>{1, 1, 1, 2}, {1, 2, 1, 1}, {1, 1, 2, 1}, {2, 1, 1, 1}})
    raw.push_back(entry(idx, t));
  return Tensor::build(4, 2, raw);
}

/// Diagonal tensor with a_{i...i} = diagonal[i].
inline Tensor diagonal(int order, const std::vector<double>& diagonal) {
  std::vector<RawEntry> raw;
  for (std::size_t i = 0; i < diagonal.size(); ++i)
    raw.push_back({std::vector<int>(static_cast<std::size_t>(order), static_cast<int>(i)), diagonal[i]});
  return Tensor::build(order, static_cast<int>(diagonal.size()), raw);
}

/// Closed-form minimum of skewed_quartic(t) over the nonnegative unit 4-norm
/// sphere: min(1 + 27^{1/4} t, 1).
inline double skewed_quartic_gamma(double t) { return std::min(1.0 + std::pow(27.0, 0.25) * t, 1.0); }

/// Interior H-eigenvector of skewed_quartic(t) for t != 0.
inline Vector skewed_quartic_interior_vector() {
  Vector v(2);
  v << std::pow(0.75, 0.25), std::pow(0.25, 0.25);
  return v;
}

/// Threshold t below which skewed_quartic(t) stops being copositive.
inline double skewed_quartic_threshold() { return -std::pow(27.0, -0.25); }

}  // namespace pareto::fixtures
