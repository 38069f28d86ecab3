#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "majbound/errors.hpp"

namespace majbound {

/// Numeric tolerance for comparisons, mass checks and tie detection.
inline constexpr double kNumTol = 1e-9;
/// Tolerance when validating that a vector is already sorted descending.
inline constexpr double kSortTol = 1e-12;

template <class Scalar>
using VectorX = Eigen::Vector<Scalar, Eigen::Dynamic>;

/// Probability-like vector: non-negative components in non-increasing order.
/// Mass (the component sum) is 1 for a single distribution and M for the
/// direct sum of M of them; it is fixed at construction.
template <class Scalar = double>
class DistVector {
 public:
  DistVector() = default;

  /// Adopts a vector that is already sorted descending (within kSortTol).
  /// Entries in [-kNumTol, 0) are clamped to zero; anything more negative,
  /// NaN, or an ascent beyond kSortTol is rejected.
  static DistVector fromDescending(VectorX<Scalar> v) {
    validate(v);
    for (Eigen::Index i = 0; i + 1 < v.size(); ++i) {
      if (v[i + 1] > v[i] + Scalar(kSortTol))
        throw InvalidDistribution("components not sorted descending at index " +
                                  std::to_string(i + 1));
    }
    return DistVector(std::move(v));
  }

  const VectorX<Scalar>& components() const { return c_; }
  Scalar mass() const { return mass_; }
  Eigen::Index size() const { return c_.size(); }
  Scalar operator[](Eigen::Index i) const { return c_[i]; }

  /// Partial sums: entry k holds the sum of the largest k+1 components.
  /// Non-decreasing and concave, with last entry equal to mass().
  VectorX<Scalar> cumulative() const {
    VectorX<Scalar> out(c_.size());
    Scalar run = Scalar(0);
    for (Eigen::Index i = 0; i < c_.size(); ++i) out[i] = (run += c_[i]);
    return out;
  }

  friend bool operator==(const DistVector& a, const DistVector& b) {
    return a.c_.size() == b.c_.size() && a.c_ == b.c_;
  }

 private:
  explicit DistVector(VectorX<Scalar> v) : c_(std::move(v)), mass_(c_.sum()) {}

  static void validate(VectorX<Scalar>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::isnan(static_cast<double>(v[i])))
        throw InvalidDistribution("NaN component at index " + std::to_string(i));
      if (v[i] < Scalar(-kNumTol))
        throw InvalidDistribution("negative component " + std::to_string(static_cast<double>(v[i])) +
                                  " at index " + std::to_string(i));
      if (v[i] < Scalar(0)) v[i] = Scalar(0);
    }
  }

  VectorX<Scalar> c_;
  Scalar mass_ = Scalar(0);
};

/// Sorts a raw vector into a DistVector. Ties keep their input order
/// (stable), so repeated runs are bit-identical.
template <class Scalar>
DistVector<Scalar> sort_descending(VectorX<Scalar> raw) {
  for (Eigen::Index i = 0; i < raw.size(); ++i)
    if (std::isnan(static_cast<double>(raw[i])))
      throw InvalidDistribution("NaN component at index " + std::to_string(i));
  std::vector<Scalar> tmp(raw.data(), raw.data() + raw.size());
  std::stable_sort(tmp.begin(), tmp.end(), std::greater<Scalar>());
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw[i] = tmp[static_cast<size_t>(i)];
  return DistVector<Scalar>::fromDescending(std::move(raw));
}

template <class Scalar>
DistVector<Scalar> sort_descending(std::initializer_list<Scalar> raw) {
  VectorX<Scalar> v(static_cast<Eigen::Index>(raw.size()));
  Eigen::Index i = 0;
  for (Scalar x : raw) v[i++] = x;
  return sort_descending(std::move(v));
}

}  // namespace majbound
