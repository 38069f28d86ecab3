#include "majbound/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace majbound {

using nlohmann::json;

namespace {

json parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw SchemaError("(document)", std::string("not valid JSON: ") + e.what());
  }
}

double require_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw SchemaError(field, "must be a number");
  return j.get<double>();
}

Complex parse_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError(field, "must be a [re, im] pair");
  return Complex(require_number(j[0], field + "[0]"), require_number(j[1], field + "[1]"));
}

/// Row-major nested array of [re, im] pairs into a matrix with the given
/// number of rows; every row must have the same length.
ComplexMatrix parse_matrix(const json& j, Eigen::Index rows, const std::string& field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw SchemaError(field, "must be an array of " + std::to_string(rows) + " rows");
  if (j.empty() || !j[0].is_array())
    throw SchemaError(field + "[0]", "must be an array of [re, im] pairs");
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw SchemaError(row_field, "rows must all have " + std::to_string(cols) + " entries");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = parse_complex(j[r][c], row_field + "[" + std::to_string(c) + "]");
  }
  return m;
}

RealVector parse_real_vector(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw SchemaError(field, "must be a non-empty array of numbers");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = require_number(j[static_cast<size_t>(i)], field + "[" + std::to_string(i) + "]");
  return v;
}

DistVector<double> parse_spectrum(const json& j, int dim, const std::string& field) {
  RealVector v = parse_real_vector(j, field);
  if (v.size() != dim)
    throw SchemaError(field, "length " + std::to_string(v.size()) + " does not match dimension " +
                                 std::to_string(dim));
  try {
    DistVector<double> s = sort_descending(std::move(v));
    if (std::abs(s.mass() - 1.0) > kNumTol) throw SchemaError(field, "must sum to 1");
    return s;
  } catch (const InvalidDistribution& e) {
    throw SchemaError(field, e.what());
  }
}

ComplexMatrix basis_columns(std::initializer_list<std::initializer_list<double>> cols) {
  const Eigen::Index d = static_cast<Eigen::Index>(cols.begin()->size());
  ComplexMatrix m(d, static_cast<Eigen::Index>(cols.size()));
  Eigen::Index c = 0;
  for (const auto& col : cols) {
    Eigen::Index r = 0;
    for (double x : col) m(r++, c) = Complex(x, 0.0);
    ++c;
  }
  return m;
}

}  // namespace

ProblemSpec problem_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("(document)", "must be a JSON object");
  if (!j.contains("v") || !j["v"].is_number_integer() || j["v"].get<int>() != 1)
    throw SchemaError("v", "must be the integer 1");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw SchemaError("dimension", "must be an integer");
  const int dim = j["dimension"].get<int>();
  if (dim < 1) throw SchemaError("dimension", "must be >= 1");

  ProblemSpec spec;
  spec.dimension = dim;

  if (j.contains("spectrum")) {
    spec.spectrum = parse_spectrum(j["spectrum"], dim, "spectrum");
  } else {
    RealVector v = RealVector::Zero(dim);
    v[0] = 1.0;
    spec.spectrum = DistVector<double>::fromDescending(std::move(v));
  }

  if (!j.contains("measurements") || !j["measurements"].is_array() || j["measurements"].empty())
    throw SchemaError("measurements", "must be a non-empty array");
  for (size_t k = 0; k < j["measurements"].size(); ++k) {
    const json& jm = j["measurements"][k];
    const std::string field = "measurements[" + std::to_string(k) + "]";
    if (!jm.is_object()) throw SchemaError(field, "must be an object");
    const bool has_basis = jm.contains("basis");
    const bool has_effects = jm.contains("effects");
    if (has_basis == has_effects)
      throw SchemaError(field, "needs exactly one of 'basis' or 'effects'");
    try {
      if (has_basis) {
        spec.measurements.push_back(
            Measurement::projective(parse_matrix(jm["basis"], dim, field + ".basis")));
      } else {
        const json& je = jm["effects"];
        if (!je.is_array() || je.empty())
          throw SchemaError(field + ".effects", "must be a non-empty array");
        std::vector<ComplexMatrix> effects;
        for (size_t e = 0; e < je.size(); ++e)
          effects.push_back(
              parse_matrix(je[e], dim, field + ".effects[" + std::to_string(e) + "]"));
        spec.measurements.push_back(Measurement::povm(std::move(effects)));
      }
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(field + (has_basis ? ".basis" : ".effects"), e.what());
    }
    spec.names.push_back(jm.contains("name") && jm["name"].is_string()
                             ? jm["name"].get<std::string>()
                             : "M" + std::to_string(k));
  }
  return spec;
}

ProblemSpec load_problem(const std::string& path) { return problem_from_json(parse_file(path)); }

QuantumState state_from_json(const json& j, int dim) {
  if (!j.is_object()) throw SchemaError("(document)", "must be a JSON object");
  const bool has_vec = j.contains("vector");
  const bool has_rho = j.contains("density");
  if (has_vec == has_rho)
    throw SchemaError("(document)", "needs exactly one of 'vector' or 'density'");
  try {
    if (has_vec) {
      const json& jv = j["vector"];
      if (!jv.is_array() || static_cast<int>(jv.size()) != dim)
        throw SchemaError("vector", "must be an array of " + std::to_string(dim) +
                                        " [re, im] pairs");
      ComplexVector psi(dim);
      for (Eigen::Index i = 0; i < dim; ++i)
        psi[i] = parse_complex(jv[static_cast<size_t>(i)],
                               "vector[" + std::to_string(i) + "]");
      return QuantumState::pure(psi);
    }
    return QuantumState::density(parse_matrix(j["density"], dim, "density"));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(has_vec ? "vector" : "density", e.what());
  }
}

QuantumState load_state(const std::string& path, int dim) {
  return state_from_json(parse_file(path), dim);
}

DistVector<double> dist_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("components") ? j["components"] : j;
  try {
    return sort_descending(parse_real_vector(arr, "components"));
  } catch (const InvalidDistribution& e) {
    throw SchemaError("components", e.what());
  }
}

DistVector<double> load_dist(const std::string& path) { return dist_from_json(parse_file(path)); }

ProblemSpec example_problem(const std::string& name, double theta) {
  ProblemSpec spec;
  if (name == "qubit-xz") {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    spec.dimension = 2;
    spec.measurements = {Measurement::projective(basis_columns({{c, s}, {s, -c}})),
                         Measurement::projective(basis_columns({{1, 0}, {0, 1}}))};
    spec.names = {"A", "B"};
  } else if (name == "three-pauli") {
    const double r = std::sqrt(0.5);
    ComplexMatrix y(2, 2);
    y << Complex(r, 0), Complex(r, 0), Complex(0, r), Complex(0, -r);
    spec.dimension = 2;
    spec.measurements = {Measurement::projective(basis_columns({{r, r}, {r, -r}})),
                         Measurement::projective(std::move(y)),
                         Measurement::projective(basis_columns({{1, 0}, {0, 1}}))};
    spec.names = {"X", "Y", "Z"};
  } else if (name == "qutrit-coles") {
    const double a = 1.0 / std::sqrt(3.0), b = 1.0 / std::sqrt(2.0), c = 1.0 / std::sqrt(6.0);
    spec.dimension = 3;
    spec.measurements = {
        Measurement::projective(basis_columns({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})),
        Measurement::projective(
            basis_columns({{a, b, c}, {a, 0, -2 * c}, {a, -b, c}}))};
    spec.names = {"X", "Y"};
  } else {
    throw SchemaError("example", "unknown example '" + name + "'");
  }
  RealVector v = RealVector::Zero(spec.dimension);
  v[0] = 1.0;
  spec.spectrum = DistVector<double>::fromDescending(std::move(v));
  return spec;
}

std::string format_significant(double x, int digits) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double round_significant(double x, int digits) {
  return std::stod(format_significant(x, digits));
}

json to_json(const RealVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(round_significant(v[i]));
  return arr;
}

json to_json(const DistVector<double>& v) { return to_json(v.components()); }

json to_json(const BoundResult& r) {
  json levels = json::array();
  for (const SnRecord& rec : r.records) {
    json maxers = json::array();
    for (const Maximizer& m : rec.maximizers) {
      json subsets = json::array();
      for (const auto& outcomes : m.subsets.outcomes) subsets.push_back(outcomes);
      maxers.push_back({{"composition", m.composition.parts},
                        {"subsets", subsets},
                        {"tau", round_significant(m.tau)}});
    }
    levels.push_back({{"n", rec.n},
                      {"omega", round_significant(rec.omega)},
                      {"s_n", to_json(rec.s_n)},
                      {"maximizers", maxers}});
  }
  return {{"s", to_json(r.s)}, {"levels", levels}, {"rpz", to_json(r.rpz)}};
}

json to_json(const VerificationReport& r) {
  json viols = json::array();
  for (const Violation& v : r.violations)
    viols.push_back({{"seed", v.seed},
                     {"state", v.state},
                     {"level", v.level},
                     {"deficit", round_significant(v.deficit)}});
  json slack = json::array();
  for (Eigen::Index i = 0; i < r.max_slack_per_level.size(); ++i) {
    const double s = r.max_slack_per_level[i];
    slack.push_back(std::isinf(s) ? json() : json(round_significant(s)));
  }
  return {{"samples", r.samples},
          {"violations", viols},
          {"max_slack_per_level", slack},
          {"tightness_achieved", r.tightness_achieved},
          {"rpz_strictly_worse", r.rpz_strictly_worse},
          {"pass", r.passed()}};
}

}  // namespace majbound
