#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "majbound/dist_vector.hpp"
#include "majbound/lattice.hpp"
#include "majbound/quantum.hpp"

namespace majbound {

/// Shannon entropy in bits, 0 log 0 = 0. Applied to mass-M vectors as-is
/// (no normalization), which is what the lattice metric needs.
template <class Scalar>
Scalar shannon(const DistVector<Scalar>& v) {
  Scalar h = Scalar(0);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] > Scalar(0)) h -= v[i] * std::log2(v[i]);
  return h;
}

/// Renyi entropy of order alpha > 0 in bits; alpha == 1 falls back to
/// Shannon.
template <class Scalar>
Scalar renyi(const DistVector<Scalar>& v, Scalar alpha) {
  if (!(alpha > Scalar(0)) || std::isinf(static_cast<double>(alpha)))
    throw InvalidOrder("Renyi order must be a finite positive number");
  if (alpha == Scalar(1)) return shannon(v);
  Scalar p = Scalar(0);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] > Scalar(0)) p += std::pow(v[i], alpha);
  return std::log2(p) / (Scalar(1) - alpha);
}

/// Relative entropy D(s || chi) in bits over the sorted components.
/// +infinity (a value, not an error) when s has mass outside chi's support.
template <class Scalar>
Scalar relative_entropy(const DistVector<Scalar>& s, const DistVector<Scalar>& chi) {
  if (s.size() != chi.size())
    throw IncompatibleVectors("length mismatch: " + std::to_string(s.size()) + " vs " +
                              std::to_string(chi.size()));
  Scalar d = Scalar(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] <= Scalar(0)) continue;
    if (chi[i] <= Scalar(0)) return std::numeric_limits<Scalar>::infinity();
    d += s[i] * (std::log2(s[i]) - std::log2(chi[i]));
  }
  return d;
}

/// Distance on the majorization lattice: d(a, b) = H(a) + H(b) - 2 H(a v b).
template <class Scalar>
Scalar lattice_metric(const DistVector<Scalar>& a, const DistVector<Scalar>& b) {
  return shannon(a) + shannon(b) - Scalar(2) * shannon(join(a, b));
}

/// For two distributions both majorized by s:
/// H(chi1) + H(chi2) >= 2 H(s) + d(chi1, chi2).
template <class Scalar>
bool corollary2_check(const DistVector<Scalar>& chi1, const DistVector<Scalar>& chi2,
                      const DistVector<Scalar>& s, Scalar tol = Scalar(kNumTol)) {
  if (!majorizes(s, chi1, tol)) throw NotUpperBound("s does not majorize the first argument");
  if (!majorizes(s, chi2, tol)) throw NotUpperBound("s does not majorize the second argument");
  return shannon(chi1) + shannon(chi2) + tol >=
         Scalar(2) * shannon(s) + lattice_metric(chi1, chi2);
}

/// State-independent lower bound H(s) on the entropy sum of the
/// measurements.
double entropic_bound(std::span<const Measurement> ms, const DistVector<double>& spectrum);

/// Sum of the outcome entropies of each measurement on one state.
double sum_measurement_entropies(std::span<const Measurement> ms, const QuantumState& state);

/// H(s) + D(s || chi(state)): still a valid lower bound on the entropy sum,
/// never below H(s).
double improved_entropic_bound(std::span<const Measurement> ms,
                               const DistVector<double>& spectrum, const QuantumState& state);

}  // namespace majbound
