#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "majbound/bounds.hpp"

namespace majbound {

/// One partial sum of a sampled distribution exceeding the bound's.
struct Violation {
  std::uint64_t seed = 0;
  std::string state;
  int level = 0;  // 1-based partial-sum index
  double deficit = 0.0;
};

struct VerificationReport {
  int samples = 0;
  std::vector<Violation> violations;
  /// Per level k: max over tested states of cumsum_k(chi) - cumsum_k(s).
  /// Near zero at a tight level, negative where the bound has margin.
  RealVector max_slack_per_level;
  /// Per level n: does the bound's n-th partial sum equal the optimum
  /// (i.e. some state attains it)?
  std::vector<bool> tightness_achieved;
  bool rpz_strictly_worse = false;
  bool passed() const { return violations.empty(); }
};

/// Samples seeded random states with the given spectrum, injects the
/// recorded maximizer states, and checks chi(rho) is majorized by bound.s
/// for every one of them.
VerificationReport verify_upper_bound(std::span<const Measurement> ms,
                                      const DistVector<double>& spectrum,
                                      const BoundResult& bound, int samples,
                                      std::uint64_t seed, double tol = 1e-8);

/// Level n is tight when the bound's n-th partial sum equals omega_n.
std::vector<bool> verify_tightness(const std::vector<SnRecord>& records,
                                   const DistVector<double>& s, double tol = 1e-8);

/// Deterministic grid_steps^2 Bloch-sphere scan, theta in [0, pi] inclusive
/// (so the poles are sampled exactly) and phi in [0, 2pi); dimension 2 only.
/// The angles parametrize the state's eigenbasis, so mixed spectra scan the
/// full orbit too. Same checks and report as verify_upper_bound.
VerificationReport grid_oracle_qubit(std::span<const Measurement> ms,
                                     const DistVector<double>& spectrum,
                                     const BoundResult& bound, int grid_steps,
                                     double tol = 1e-8);

}  // namespace majbound
