#include "majbound/verify.hpp"

#include <cmath>
#include <numbers>

namespace majbound {

namespace {

/// Folds one sampled state into the report: violations and per-level slack.
void check_state(const DistVector<double>& chi, const DistVector<double>& s,
                 std::uint64_t seed, const std::string& desc, double tol,
                 VerificationReport& rep) {
  double cc = 0.0, cs = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    cc += chi[k];
    cs += s[k];
    const double slack = cc - cs;
    if (slack > rep.max_slack_per_level[k]) rep.max_slack_per_level[k] = slack;
    if (slack > tol)
      rep.violations.push_back({seed, desc, static_cast<int>(k) + 1, slack});
  }
}

QuantumState rebuild_maximizer(std::span<const Measurement> ms,
                               const DistVector<double>& spectrum, const Maximizer& m) {
  const Eigen::Index d = ms.front().dim();
  ComplexMatrix op = ComplexMatrix::Zero(d, d);
  for (size_t j = 0; j < ms.size(); ++j)
    for (int i : m.subsets.outcomes[j]) op += ms[j].effect(i);
  return maximizer_state(HermitianOperator(std::move(op)), spectrum);
}

void finalize(const BoundResult& bound, double tol, VerificationReport& rep) {
  rep.tightness_achieved = verify_tightness(bound.records, bound.s, tol);
  rep.rpz_strictly_worse = compare(bound.rpz, bound.s) == Ordering::Greater;
}

}  // namespace

std::vector<bool> verify_tightness(const std::vector<SnRecord>& records,
                                   const DistVector<double>& s, double tol) {
  const VectorX<double> prof = s.cumulative();
  std::vector<bool> out;
  out.reserve(records.size());
  for (const SnRecord& r : records) {
    if (r.n < 1 || r.n > prof.size()) throw IndexOutOfRange("record level " + std::to_string(r.n));
    out.push_back(std::abs(prof[r.n - 1] - r.omega) <= tol);
  }
  return out;
}

VerificationReport verify_upper_bound(std::span<const Measurement> ms,
                                      const DistVector<double>& spectrum,
                                      const BoundResult& bound, int samples,
                                      std::uint64_t seed, double tol) {
  if (samples < 0) throw IndexOutOfRange("negative sample count");
  VerificationReport rep;
  rep.samples = samples;
  rep.max_slack_per_level =
      RealVector::Constant(bound.s.size(), -std::numeric_limits<double>::infinity());

  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const QuantumState rho = random_state_with_spectrum(spectrum, rng);
    check_state(direct_sum_distribution(ms, rho), bound.s, seed,
                "sample " + std::to_string(i), tol, rep);
  }
  for (const SnRecord& r : bound.records) {
    for (size_t k = 0; k < r.maximizers.size(); ++k) {
      const QuantumState rho = rebuild_maximizer(ms, spectrum, r.maximizers[k]);
      check_state(direct_sum_distribution(ms, rho), bound.s, seed,
                  "maximizer n=" + std::to_string(r.n) + " #" + std::to_string(k), tol, rep);
    }
  }
  finalize(bound, tol, rep);
  return rep;
}

VerificationReport grid_oracle_qubit(std::span<const Measurement> ms,
                                     const DistVector<double>& spectrum,
                                     const BoundResult& bound, int grid_steps,
                                     double tol) {
  if (ms.empty()) throw EmptyInput("no measurements");
  if (ms.front().dim() != 2)
    throw UnsupportedDimension("grid oracle covers dimension 2 only, got " +
                               std::to_string(ms.front().dim()));
  if (spectrum.size() != 2)
    throw DimensionMismatch("spectrum length " + std::to_string(spectrum.size()) +
                            " vs dimension 2");
  if (grid_steps < 2) throw IndexOutOfRange("grid steps must be >= 2");

  VerificationReport rep;
  rep.samples = grid_steps * grid_steps;
  rep.max_slack_per_level =
      RealVector::Constant(bound.s.size(), -std::numeric_limits<double>::infinity());

  for (int i = 0; i < grid_steps; ++i) {
    const double half = 0.5 * std::numbers::pi * i / (grid_steps - 1);
    for (int j = 0; j < grid_steps; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / grid_steps;
      const Complex e(std::cos(phi), std::sin(phi));
      ComplexVector psi(2), perp(2);
      psi << Complex(std::cos(half), 0.0), e * std::sin(half);
      perp << -std::conj(e) * std::sin(half), Complex(std::cos(half), 0.0);
      ComplexMatrix rho = spectrum[0] * psi * psi.adjoint() +
                          spectrum[1] * perp * perp.adjoint();
      check_state(direct_sum_distribution(ms, QuantumState::density(std::move(rho))),
                  bound.s, 0,
                  "grid i=" + std::to_string(i) + " j=" + std::to_string(j), tol, rep);
    }
  }
  finalize(bound, tol, rep);
  return rep;
}

}  // namespace majbound
