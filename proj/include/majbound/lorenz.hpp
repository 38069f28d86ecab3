#pragma once

#include <string>
#include <utility>
#include <vector>

#include "majbound/dist_vector.hpp"

namespace majbound {

/// Piecewise-linear curve through (k, sum of the largest k components) for
/// k = 0..dim; y[0] = 0, y[dim] = mass. Concave for sorted input.
struct LorenzCurve {
  VectorX<double> y;
  Eigen::Index dim() const { return y.size() - 1; }
  double mass() const { return y[y.size() - 1]; }
};

LorenzCurve lorenz_curve(const DistVector<double>& v);

/// a dominates b pointwise (>= at every abscissa, up to tol). Equivalent to
/// majorization of the underlying vectors.
bool lorenz_dominates(const LorenzCurve& a, const LorenzCurve& b, double tol = kNumTol);

/// True when the claimed bound lies on or above every curve in the family
/// (within tol at every vertex).
bool envelope_check(const LorenzCurve& bound, const std::vector<LorenzCurve>& curves,
                    double tol = 1e-8);

/// CSV rows `name,k,y` (12 significant digits), one row per vertex; fixed
/// header `name,k,y`. Deterministic byte output.
void export_curves(const std::vector<std::pair<std::string, LorenzCurve>>& curves,
                   const std::string& path);
std::string curves_to_csv(const std::vector<std::pair<std::string, LorenzCurve>>& curves);

}  // namespace majbound
