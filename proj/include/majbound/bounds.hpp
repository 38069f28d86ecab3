#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "majbound/dist_vector.hpp"
#include "majbound/lattice.hpp"
#include "majbound/quantum.hpp"

namespace majbound {

/// Hard budget on the number of subset tuples visited per call.
inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;
/// Maximizers within this of the optimum are all collected and joined.
inline constexpr double kTieTol = 1e-9;

/// Multi-index (n_1, ..., n_M) with 0 <= n_j <= K_j and sum n.
struct Composition {
  std::vector<int> parts;
};

/// One choice of n_j outcomes (0-based, ascending) per measurement.
struct SubsetChoice {
  std::vector<std::vector<int>> outcomes;  // outcomes[j] for measurement j
};

/// A tuple attaining the level-n optimum, with the attaining value and state.
struct Maximizer {
  Composition composition;
  SubsetChoice subsets;
  double tau = 0.0;
};

/// Level-n result: the optimal partial-sum value, every tuple attaining it
/// (within kTieTol, enumeration order), and the join of their direct-sum
/// distributions.
struct SnRecord {
  int n = 0;
  double omega = 0.0;
  std::vector<Maximizer> maximizers;
  DistVector<double> s_n;
};

/// Least upper bound s (join over all levels), the per-level records, and
/// the weaker sorted bound built from first differences of the omegas.
struct BoundResult {
  DistVector<double> s;
  std::vector<SnRecord> records;
  DistVector<double> rpz;
};

/// Sum of the effect operators of the chosen outcomes of one measurement.
HermitianOperator subset_operator(const Measurement& m, const std::vector<int>& outcomes);

/// All compositions of n with parts bounded by limits, ordered
/// lexicographically descending in the first differing part:
/// n=2, limits (2,2) -> (2,0), (1,1), (0,2).
std::vector<Composition> enumerate_compositions(int n, const std::vector<int>& limits);

/// Number of subset tuples at level n, saturating at kEnumerationLimit + 1.
std::uint64_t enumeration_count(int n, const std::vector<int>& limits);

/// Largest-eigenvalue functional: descending eigenvalues of op dotted with
/// the descending spectrum. For a pure spectrum this is just the top
/// eigenvalue.
double tau_n(const HermitianOperator& op, const DistVector<double>& spectrum);

/// State attaining tau_n: descending eigenvectors of op weighted by the
/// descending spectrum.
QuantumState maximizer_state(const HermitianOperator& op, const DistVector<double>& spectrum);

/// Exhaustive level-n optimization over compositions and outcome subsets.
SnRecord compute_s_n(std::span<const Measurement> ms, const DistVector<double>& spectrum,
                     int n);

/// Full bound: levels n = 1 .. (total outcomes - 1); the trivial levels 0 and
/// the full sum are skipped.
BoundResult least_upper_bound(std::span<const Measurement> ms,
                              const DistVector<double>& spectrum);

/// Raw first differences (omega_1, omega_2 - omega_1, ..., mass - omega_last);
/// not necessarily descending.
RealVector omega_differences(const std::vector<SnRecord>& records, double mass);

/// The differences sorted descending: the weaker comparison bound.
DistVector<double> rpz_bound(const std::vector<SnRecord>& records, double mass);

/// Worker count for the level scan: MAJBOUND_THREADS if set (>= 1), else the
/// hardware concurrency. Results do not depend on it.
int worker_thread_count();

}  // namespace majbound
