#include "majbound/bounds.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <numeric>
#include <string>
#include <thread>

namespace majbound {

namespace {

void check_problem(std::span<const Measurement> ms, const DistVector<double>& spectrum) {
  if (ms.empty()) throw EmptyInput("no measurements");
  const Eigen::Index d = ms.front().dim();
  for (size_t j = 1; j < ms.size(); ++j)
    if (ms[j].dim() != d)
      throw DimensionMismatch("measurement " + std::to_string(j) + " acts on dimension " +
                              std::to_string(ms[j].dim()) + ", expected " + std::to_string(d));
  if (spectrum.size() != d)
    throw DimensionMismatch("spectrum length " + std::to_string(spectrum.size()) +
                            " vs dimension " + std::to_string(d));
  if (std::abs(spectrum.mass() - 1.0) > kNumTol)
    throw InvalidSpectrum("spectrum mass " + std::to_string(spectrum.mass()) + " is not 1");
}

int total_outcomes(std::span<const Measurement> ms) {
  int t = 0;
  for (const Measurement& m : ms) t += m.outcome_count();
  return t;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t cap = kEnumerationLimit + 1;
  if (b != 0 && a > cap / b) return cap;
  return std::min(a * b, cap);
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return std::min(a + b, kEnumerationLimit + 1);
}

std::uint64_t binom_sat(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Exact below the cap (64-bit mantissa), saturating far above it.
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  if (!(r <= static_cast<long double>(kEnumerationLimit))) return kEnumerationLimit + 1;
  return static_cast<std::uint64_t>(r + 0.5L);
}

/// Next k-combination of {0..n-1} in lexicographic order; false after the last.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void first_combination(std::vector<int>& c, int k) {
  c.resize(static_cast<size_t>(k));
  std::iota(c.begin(), c.end(), 0);
}

/// Lexicographic odometer over tuples of outcome subsets, one combination
/// per measurement, measurement 0 most significant.
class TupleIter {
 public:
  TupleIter(const std::vector<int>& counts, const Composition& comp)
      : counts_(counts), cur_(counts.size()) {
    for (size_t j = 0; j < counts_.size(); ++j)
      first_combination(cur_[j], comp.parts[j]);
  }

  const std::vector<std::vector<int>>& current() const { return cur_; }
  bool done() const { return done_; }

  void advance() {
    for (int j = static_cast<int>(cur_.size()) - 1; j >= 0; --j) {
      if (next_combination(cur_[static_cast<size_t>(j)], counts_[static_cast<size_t>(j)]))
        return;
      first_combination(cur_[static_cast<size_t>(j)],
                        static_cast<int>(cur_[static_cast<size_t>(j)].size()));
    }
    done_ = true;
  }

 private:
  std::vector<int> counts_;
  std::vector<std::vector<int>> cur_;
  bool done_ = false;
};

double tau_of_matrix(const ComplexMatrix& op, const DistVector<double>& spectrum) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(op, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EigensolverFailure("eigensolver did not converge");
  const Eigen::Index d = op.rows();
  double t = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) t += es.eigenvalues()[d - 1 - i] * spectrum[i];
  return t;
}

ComplexMatrix tuple_operator(const std::vector<std::vector<ComplexMatrix>>& effects,
                             const std::vector<std::vector<int>>& picks, Eigen::Index d) {
  ComplexMatrix op = ComplexMatrix::Zero(d, d);
  for (size_t j = 0; j < picks.size(); ++j)
    for (int i : picks[j]) op += effects[j][static_cast<size_t>(i)];
  return op;
}

/// Max of tau over all subset tuples of one composition.
double composition_max(const std::vector<std::vector<ComplexMatrix>>& effects,
                       const std::vector<int>& counts, const Composition& comp,
                       const DistVector<double>& spectrum, Eigen::Index d) {
  double best = -std::numeric_limits<double>::infinity();
  for (TupleIter it(counts, comp); !it.done(); it.advance())
    best = std::max(best, tau_of_matrix(tuple_operator(effects, it.current(), d), spectrum));
  return best;
}

}  // namespace

HermitianOperator subset_operator(const Measurement& m, const std::vector<int>& outcomes) {
  ComplexMatrix op = ComplexMatrix::Zero(m.dim(), m.dim());
  for (int i : outcomes) op += m.effect(i);  // effect() range-checks
  return HermitianOperator(std::move(op));
}

std::vector<Composition> enumerate_compositions(int n, const std::vector<int>& limits) {
  if (n < 0) throw IndexOutOfRange("negative level " + std::to_string(n));
  std::vector<Composition> out;
  std::vector<int> cur(limits.size());
  std::vector<int> tail_room(limits.size() + 1, 0);  // sum of limits after position j
  for (int j = static_cast<int>(limits.size()) - 1; j >= 0; --j)
    tail_room[static_cast<size_t>(j)] =
        tail_room[static_cast<size_t>(j) + 1] + limits[static_cast<size_t>(j)];

  auto rec = [&](auto&& self, size_t j, int remaining) -> void {
    if (j == limits.size()) {
      if (remaining == 0) out.push_back({cur});
      return;
    }
    const int hi = std::min(limits[j], remaining);
    const int lo = std::max(0, remaining - tail_room[j + 1]);
    for (int v = hi; v >= lo; --v) {
      cur[j] = v;
      self(self, j + 1, remaining - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

std::uint64_t enumeration_count(int n, const std::vector<int>& limits) {
  std::uint64_t total = 0;
  for (const Composition& c : enumerate_compositions(n, limits)) {
    std::uint64_t prod = 1;
    for (size_t j = 0; j < limits.size(); ++j)
      prod = sat_mul(prod, binom_sat(limits[j], c.parts[j]));
    total = sat_add(total, prod);
  }
  return total;
}

double tau_n(const HermitianOperator& op, const DistVector<double>& spectrum) {
  if (op.dim() != spectrum.size())
    throw DimensionMismatch("operator dimension " + std::to_string(op.dim()) +
                            " vs spectrum length " + std::to_string(spectrum.size()));
  return tau_of_matrix(op.matrix(), spectrum);
}

QuantumState maximizer_state(const HermitianOperator& op, const DistVector<double>& spectrum) {
  if (op.dim() != spectrum.size())
    throw DimensionMismatch("operator dimension " + std::to_string(op.dim()) +
                            " vs spectrum length " + std::to_string(spectrum.size()));
  const SpectralDecomposition sd = spectral_decompose(op);
  QuantumState rho = QuantumState::from_spectrum(spectrum, sd.eigenvectors);
  const double attained = (op.matrix() * rho.rho()).trace().real();
  const double target = sd.eigenvalues.dot(spectrum.components());
  if (std::abs(attained - target) > 1e-8)
    throw Error("maximizer state does not attain the optimum: " + std::to_string(attained) +
                " vs " + std::to_string(target));
  return rho;
}

SnRecord compute_s_n(std::span<const Measurement> ms, const DistVector<double>& spectrum,
                     int n) {
  check_problem(ms, spectrum);
  const int total = total_outcomes(ms);
  if (n < 1 || n > total - 1)
    throw IndexOutOfRange("level " + std::to_string(n) + " outside [1, " +
                          std::to_string(total - 1) + "]");

  std::vector<int> counts(ms.size());
  for (size_t j = 0; j < ms.size(); ++j) counts[j] = ms[j].outcome_count();
  if (enumeration_count(n, counts) > kEnumerationLimit)
    throw EnumerationLimit("level " + std::to_string(n) + " needs more than " +
                           std::to_string(kEnumerationLimit) + " subset tuples");

  const Eigen::Index d = ms.front().dim();
  std::vector<std::vector<ComplexMatrix>> effects(ms.size());
  for (size_t j = 0; j < ms.size(); ++j)
    for (int i = 0; i < ms[j].outcome_count(); ++i) effects[j].push_back(ms[j].effect(i));

  const std::vector<Composition> comps = enumerate_compositions(n, counts);

  // Pass 1: per-composition maxima, then the global optimum.
  std::vector<double> comp_max(comps.size());
  const int threads = std::min<int>(worker_thread_count(), static_cast<int>(comps.size()));
  if (threads > 1) {
    std::vector<std::future<void>> futs;
    const size_t chunk = (comps.size() + static_cast<size_t>(threads) - 1) /
                         static_cast<size_t>(threads);
    for (int t = 0; t < threads; ++t) {
      const size_t lo = static_cast<size_t>(t) * chunk;
      const size_t hi = std::min(comps.size(), lo + chunk);
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (size_t c = lo; c < hi; ++c)
          comp_max[c] = composition_max(effects, counts, comps[c], spectrum, d);
      }));
    }
    for (auto& f : futs) f.get();
  } else {
    for (size_t c = 0; c < comps.size(); ++c)
      comp_max[c] = composition_max(effects, counts, comps[c], spectrum, d);
  }
  const double omega = *std::max_element(comp_max.begin(), comp_max.end());

  // Pass 2: revisit only near-optimal compositions, collect every tuple tied
  // with the optimum (enumeration order fixes the maximizer ordering).
  SnRecord rec;
  rec.n = n;
  rec.omega = omega;
  std::vector<DistVector<double>> dists;
  for (size_t c = 0; c < comps.size(); ++c) {
    if (comp_max[c] < omega - kTieTol) continue;
    for (TupleIter it(counts, comps[c]); !it.done(); it.advance()) {
      const ComplexMatrix op = tuple_operator(effects, it.current(), d);
      const double tau = tau_of_matrix(op, spectrum);
      if (tau < omega - kTieTol) continue;
      const QuantumState rho = maximizer_state(HermitianOperator(op), spectrum);
      dists.push_back(direct_sum_distribution(ms, rho));
      rec.maximizers.push_back({comps[c], {it.current()}, tau});
    }
  }
  rec.s_n = join_many(dists);
  return rec;
}

BoundResult least_upper_bound(std::span<const Measurement> ms,
                              const DistVector<double>& spectrum) {
  check_problem(ms, spectrum);
  const int total = total_outcomes(ms);
  if (total < 2) throw EmptyInput("need at least two outcomes overall");

  std::vector<int> counts(ms.size());
  for (size_t j = 0; j < ms.size(); ++j) counts[j] = ms[j].outcome_count();
  std::uint64_t work = 0;
  for (int n = 1; n < total; ++n) work = sat_add(work, enumeration_count(n, counts));
  if (work > kEnumerationLimit)
    throw EnumerationLimit("full scan needs more than " +
                           std::to_string(kEnumerationLimit) + " subset tuples");

  BoundResult out;
  std::vector<DistVector<double>> sns;
  for (int n = 1; n < total; ++n) {
    out.records.push_back(compute_s_n(ms, spectrum, n));
    sns.push_back(out.records.back().s_n);
  }
  out.s = join_many(sns);
  out.rpz = rpz_bound(out.records, static_cast<double>(ms.size()));
  return out;
}

RealVector omega_differences(const std::vector<SnRecord>& records, double mass) {
  if (records.empty()) throw EmptyInput("no level records");
  RealVector t(records.size() + 1);
  double prev = 0.0;
  for (size_t i = 0; i < records.size(); ++i) {
    t[static_cast<Eigen::Index>(i)] = records[i].omega - prev;
    prev = records[i].omega;
  }
  t[static_cast<Eigen::Index>(records.size())] = mass - prev;
  return t;
}

DistVector<double> rpz_bound(const std::vector<SnRecord>& records, double mass) {
  return sort_descending(omega_differences(records, mass));
}

int worker_thread_count() {
  if (const char* env = std::getenv("MAJBOUND_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace majbound
