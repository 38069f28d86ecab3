#include "majbound/lorenz.hpp"

#include <fstream>
#include <sstream>

#include "majbound/errors.hpp"
#include "majbound/io.hpp"

namespace majbound {

LorenzCurve lorenz_curve(const DistVector<double>& v) {
  LorenzCurve c;
  c.y.resize(v.size() + 1);
  c.y[0] = 0.0;
  c.y.tail(v.size()) = v.cumulative();
  return c;
}

bool lorenz_dominates(const LorenzCurve& a, const LorenzCurve& b, double tol) {
  if (a.y.size() != b.y.size())
    throw IncompatibleVectors("curve length mismatch: " + std::to_string(a.y.size() - 1) +
                              " vs " + std::to_string(b.y.size() - 1));
  return ((a.y - b.y).array() >= -tol).all();
}

bool envelope_check(const LorenzCurve& bound, const std::vector<LorenzCurve>& curves,
                    double tol) {
  for (const LorenzCurve& c : curves)
    if (!lorenz_dominates(bound, c, tol)) return false;
  return true;
}

std::string curves_to_csv(const std::vector<std::pair<std::string, LorenzCurve>>& curves) {
  std::ostringstream out;
  out << "name,k,y\n";
  for (const auto& [name, c] : curves)
    for (Eigen::Index k = 0; k < c.y.size(); ++k)
      out << name << ',' << k << ',' << format_significant(c.y[k]) << '\n';
  return out.str();
}

void export_curves(const std::vector<std::pair<std::string, LorenzCurve>>& curves,
                   const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << curves_to_csv(curves);
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace majbound
