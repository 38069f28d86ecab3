#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "majbound/dist_vector.hpp"
#include "majbound/errors.hpp"

namespace majbound {

enum class Ordering { Equal, Less, Greater, Incomparable };

namespace detail {

template <class Scalar>
void check_compatible(const DistVector<Scalar>& a, const DistVector<Scalar>& b) {
  if (a.size() != b.size())
    throw IncompatibleVectors("length mismatch: " + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()));
  if (std::abs(static_cast<double>(a.mass() - b.mass())) > kNumTol)
    throw IncompatibleVectors("mass mismatch: " + std::to_string(static_cast<double>(a.mass())) +
                              " vs " + std::to_string(static_cast<double>(b.mass())));
}

}  // namespace detail

/// a majorizes b: every partial sum of a dominates the matching partial sum
/// of b, up to tol. Vectors must share length and mass.
template <class Scalar>
bool majorizes(const DistVector<Scalar>& a, const DistVector<Scalar>& b,
               Scalar tol = Scalar(kNumTol)) {
  detail::check_compatible(a, b);
  Scalar ca = Scalar(0), cb = Scalar(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    ca += a[i];
    cb += b[i];
    if (cb > ca + tol) return false;
  }
  return true;
}

/// Classifies the pair under the majorization preorder. Equal means mutual
/// majorization (partial sums agree within tol), not bitwise equality.
template <class Scalar>
Ordering compare(const DistVector<Scalar>& a, const DistVector<Scalar>& b,
                 Scalar tol = Scalar(kNumTol)) {
  const bool ab = majorizes(a, b, tol);
  const bool ba = majorizes(b, a, tol);
  if (ab && ba) return Ordering::Equal;
  if (ab) return Ordering::Greater;
  if (ba) return Ordering::Less;
  return Ordering::Incomparable;
}

/// Differences of the pointwise-max cumulative profile of a and b. The
/// smallest vector whose partial sums dominate both, but generally not
/// sorted descending; flattening turns it into the join.
template <class Scalar>
VectorX<Scalar> beta_vector(const DistVector<Scalar>& a, const DistVector<Scalar>& b) {
  detail::check_compatible(a, b);
  VectorX<Scalar> out(a.size());
  Scalar ca = Scalar(0), cb = Scalar(0), prev = Scalar(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    ca += a[i];
    cb += b[i];
    const Scalar top = std::max(ca, cb);
    out[i] = top - prev;
    prev = top;
  }
  return out;
}

/// One averaging pass of the flattening procedure. Finds the first ascent
/// b[j] > b[j-1], then the longest block ending at j whose average a
/// satisfies b[start-1] >= a (the start may be 0), and replaces the block by
/// its average. Returns nullopt when the vector is already descending.
/// Each pass removes the first ascent without creating one before it, and
/// the result stays pointwise-dominant in cumulative sums.
template <class Scalar>
std::optional<VectorX<Scalar>> flatten_once(const VectorX<Scalar>& b) {
  const Eigen::Index n = b.size();
  Eigen::Index j = -1;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (b[i] > b[i - 1]) {
      j = i;
      break;
    }
  }
  if (j < 0) return std::nullopt;

  Scalar sum = b[j];
  Eigen::Index count = 1;
  Eigen::Index start = j;  // always reachable: start == 0 accepts any average
  for (Eigen::Index s = j - 1; s >= 0; --s) {
    sum += b[s];
    ++count;
    const Scalar avg = sum / Scalar(count);
    if (s == 0 || b[s - 1] >= avg) {
      start = s;
      break;
    }
  }

  VectorX<Scalar> out = b;
  const Scalar avg = sum / Scalar(count);
  for (Eigen::Index i = start; i <= j; ++i) out[i] = avg;
  return out;
}

/// Least upper bound of {a, b} under majorization: flatten the beta vector
/// until descending. Terminates in at most size-1 passes.
template <class Scalar>
DistVector<Scalar> join(const DistVector<Scalar>& a, const DistVector<Scalar>& b) {
  VectorX<Scalar> cur = beta_vector(a, b);
  for (Eigen::Index pass = 0;; ++pass) {
    auto next = flatten_once(cur);
    if (!next) break;
    if (pass + 1 >= cur.size())
      throw Error("flattening exceeded the size-1 pass bound");
    cur = std::move(*next);
  }
  return DistVector<Scalar>::fromDescending(std::move(cur));
}

/// Greatest lower bound of {a, b}: differences of the pointwise-min
/// cumulative profile. The min of two concave profiles is concave, so the
/// result is already descending.
template <class Scalar>
DistVector<Scalar> meet(const DistVector<Scalar>& a, const DistVector<Scalar>& b) {
  detail::check_compatible(a, b);
  VectorX<Scalar> out(a.size());
  Scalar ca = Scalar(0), cb = Scalar(0), prev = Scalar(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    ca += a[i];
    cb += b[i];
    const Scalar bot = std::min(ca, cb);
    out[i] = bot - prev;
    prev = bot;
  }
  return DistVector<Scalar>::fromDescending(std::move(out));
}

/// Fold of join over a non-empty list; associativity makes the order
/// irrelevant up to numerical noise.
template <class Scalar>
DistVector<Scalar> join_many(const std::vector<DistVector<Scalar>>& vs) {
  if (vs.empty()) throw EmptyInput("join of an empty list");
  DistVector<Scalar> acc = vs.front();
  for (size_t i = 1; i < vs.size(); ++i) acc = join(acc, vs[i]);
  return acc;
}

}  // namespace majbound
