#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "majbound/bounds.hpp"
#include "majbound/quantum.hpp"
#include "majbound/verify.hpp"

namespace majbound {

/// A bound computation problem: dimension, state spectrum (descending,
/// defaults to pure) and at least one measurement.
struct ProblemSpec {
  int dimension = 0;
  DistVector<double> spectrum;
  std::vector<Measurement> measurements;
  std::vector<std::string> names;  // one per measurement, for diagnostics
};

/// Schema v1: {"v":1, "dimension":d, "spectrum":[...]?, "measurements":[...]}
/// where each measurement carries either "basis" (columns are the basis
/// vectors) or "effects", both as row-major nested arrays of [re, im] pairs.
/// Violations raise SchemaError naming the offending field.
ProblemSpec problem_from_json(const nlohmann::json& j);
ProblemSpec load_problem(const std::string& path);

/// {"vector": [[re,im], ...]} or {"density": row-major [re,im] matrix}.
QuantumState state_from_json(const nlohmann::json& j, int dim);
QuantumState load_state(const std::string& path, int dim);

/// Bare array of numbers or {"components": [...]}; sorted on load.
DistVector<double> dist_from_json(const nlohmann::json& j);
DistVector<double> load_dist(const std::string& path);

/// Built-in problems: "qubit-xz" (theta-dependent), "three-pauli",
/// "qutrit-coles".
ProblemSpec example_problem(const std::string& name, double theta);

/// Shortest decimal with the given significance; -0 normalized to 0.
std::string format_significant(double x, int digits = 12);
double round_significant(double x, int digits = 12);

nlohmann::json to_json(const RealVector& v);
nlohmann::json to_json(const DistVector<double>& v);
nlohmann::json to_json(const BoundResult& r);
nlohmann::json to_json(const VerificationReport& r);

}  // namespace majbound
