#include "majbound/entropy.hpp"

#include "majbound/bounds.hpp"

namespace majbound {

double entropic_bound(std::span<const Measurement> ms, const DistVector<double>& spectrum) {
  return shannon(least_upper_bound(ms, spectrum).s);
}

double sum_measurement_entropies(std::span<const Measurement> ms, const QuantumState& state) {
  if (ms.empty()) throw EmptyInput("no measurements");
  double h = 0.0;
  for (const Measurement& m : ms) h += shannon(outcome_distribution(m, state));
  return h;
}

double improved_entropic_bound(std::span<const Measurement> ms,
                               const DistVector<double>& spectrum,
                               const QuantumState& state) {
  const BoundResult r = least_upper_bound(ms, spectrum);
  const DistVector<double> chi = direct_sum_distribution(ms, state);
  return shannon(r.s) + relative_entropy(r.s, chi);
}

}  // namespace majbound
