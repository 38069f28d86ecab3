#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "majbound/bounds.hpp"
#include "majbound/entropy.hpp"
#include "majbound/io.hpp"
#include "majbound/lorenz.hpp"
#include "majbound/verify.hpp"

namespace {

using namespace majbound;
using nlohmann::json;

struct ProblemOpts {
  std::string input;
  std::string example;
  double theta = std::numbers::pi / 2;
  std::vector<double> spectrum;
};

void add_problem_options(CLI::App* cmd, ProblemOpts& o) {
  auto* in = cmd->add_option("--input", o.input, "problem spec JSON file");
  auto* ex = cmd->add_option("--example", o.example,
                             "built-in problem: qubit-xz, three-pauli, qutrit-coles");
  in->excludes(ex);
  cmd->add_option("--theta", o.theta, "angle for qubit-xz (radians)");
  cmd->add_option("--spectrum", o.spectrum, "state eigenvalues, e.g. 0.8,0.2")
      ->delimiter(',');
}

ProblemSpec resolve_problem(const ProblemOpts& o) {
  ProblemSpec spec;
  if (!o.input.empty())
    spec = load_problem(o.input);
  else if (!o.example.empty())
    spec = example_problem(o.example, o.theta);
  else
    throw SchemaError("input", "provide --input FILE or --example NAME");
  if (!o.spectrum.empty()) {
    RealVector v(static_cast<Eigen::Index>(o.spectrum.size()));
    for (size_t i = 0; i < o.spectrum.size(); ++i) v[static_cast<Eigen::Index>(i)] = o.spectrum[i];
    if (v.size() != spec.dimension)
      throw SchemaError("spectrum", "length " + std::to_string(v.size()) +
                                        " does not match dimension " +
                                        std::to_string(spec.dimension));
    try {
      spec.spectrum = sort_descending(std::move(v));
    } catch (const InvalidDistribution& e) {
      throw SchemaError("spectrum", e.what());
    }
    if (std::abs(spec.spectrum.mass() - 1.0) > kNumTol)
      throw SchemaError("spectrum", "must sum to 1");
  }
  return spec;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json problem_header(const ProblemSpec& spec) {
  return {{"dimension", spec.dimension},
          {"spectrum", to_json(spec.spectrum)},
          {"measurements", spec.names}};
}

json num_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round_significant(x);
}

/// Removes eps from the bound's level-k partial sum (negative control).
DistVector<double> deflate_bound(const DistVector<double>& s, double eps, int level) {
  if (level < 1 || level >= s.size())
    throw SchemaError("level", "must be in [1, " + std::to_string(s.size() - 1) + "]");
  RealVector v = s.components();
  v[level - 1] -= eps;
  v[level] += eps;
  try {
    return DistVector<double>::fromDescending(std::move(v));
  } catch (const InvalidDistribution& e) {
    throw SchemaError("deflate", std::string("deflated bound is not a valid distribution: ") +
                                     e.what());
  }
}

int run_bound(const ProblemOpts& po, const std::string& output) {
  const ProblemSpec spec = resolve_problem(po);
  const BoundResult r = least_upper_bound(spec.measurements, spec.spectrum);
  json out = problem_header(spec);
  out.update(to_json(r));
  write_output(output, dump(out));
  return 0;
}

int run_verify(const ProblemOpts& po, const std::string& output, int samples,
               std::uint64_t seed, double tol, int grid, double deflate, int level) {
  const ProblemSpec spec = resolve_problem(po);
  BoundResult r = least_upper_bound(spec.measurements, spec.spectrum);
  if (deflate > 0.0) r.s = deflate_bound(r.s, deflate, level);
  const VerificationReport rep =
      grid > 0 ? grid_oracle_qubit(spec.measurements, spec.spectrum, r, grid, tol)
               : verify_upper_bound(spec.measurements, spec.spectrum, r, samples, seed, tol);
  json out = problem_header(spec);
  out["s"] = to_json(r.s);
  out.update(to_json(rep));
  write_output(output, dump(out));
  return rep.passed() ? 0 : 1;
}

int run_lorenz(const ProblemOpts& po, const std::string& output) {
  const ProblemSpec spec = resolve_problem(po);
  const BoundResult r = least_upper_bound(spec.measurements, spec.spectrum);

  // Identical level curves are merged; the name lists every level they carry.
  std::vector<std::pair<std::string, LorenzCurve>> curves;
  std::vector<DistVector<double>> reps;
  std::vector<std::string> names;
  for (const SnRecord& rec : r.records) {
    bool merged = false;
    for (size_t g = 0; g < reps.size(); ++g) {
      if ((reps[g].components() - rec.s_n.components()).cwiseAbs().maxCoeff() <= 1e-12) {
        names[g] += "=s(" + std::to_string(rec.n) + ")";
        merged = true;
        break;
      }
    }
    if (!merged) {
      reps.push_back(rec.s_n);
      names.push_back("s(" + std::to_string(rec.n) + ")");
    }
  }
  for (size_t g = 0; g < reps.size(); ++g) curves.emplace_back(names[g], lorenz_curve(reps[g]));
  curves.emplace_back("s", lorenz_curve(r.s));
  curves.emplace_back("chi_mix",
                      lorenz_curve(direct_sum_distribution(
                          spec.measurements, maximally_mixed(spec.dimension))));
  write_output(output, curves_to_csv(curves));
  return 0;
}

int run_entropy(const ProblemOpts& po, const std::string& output, double alpha,
                const std::string& state_path) {
  const ProblemSpec spec = resolve_problem(po);
  const BoundResult r = least_upper_bound(spec.measurements, spec.spectrum);
  json out = problem_header(spec);
  const double hs = shannon(r.s);
  out["H_s"] = round_significant(hs);
  if (alpha > 0.0) {
    out["alpha"] = round_significant(alpha);
    out["H_alpha_s"] = round_significant(renyi(r.s, alpha));
  }
  bool chain_ok = true;
  if (!state_path.empty()) {
    const QuantumState rho = load_state(state_path, spec.dimension);
    const DistVector<double> chi = direct_sum_distribution(spec.measurements, rho);
    const double sum_h = sum_measurement_entropies(spec.measurements, rho);
    const double d = relative_entropy(r.s, chi);
    const double improved = hs + d;
    chain_ok = sum_h + 1e-9 >= improved && improved + 1e-9 >= hs;
    out["sum_H"] = round_significant(sum_h);
    out["relative_entropy"] = num_or_inf(d);
    out["improved_bound"] = num_or_inf(improved);
    out["chain_ok"] = chain_ok;
  }
  write_output(output, dump(out));
  return chain_ok ? 0 : 1;
}

int run_compare(const std::string& a_path, const std::string& b_path,
                const std::string& output) {
  const DistVector<double> a = load_dist(a_path);
  const DistVector<double> b = load_dist(b_path);
  const Ordering ord = compare(a, b);
  const char* names[] = {"Equal", "Less", "Greater", "Incomparable"};
  json out = {{"order", names[static_cast<int>(ord)]},
              {"join", to_json(join(a, b))},
              {"meet", to_json(meet(a, b))},
              {"distance", round_significant(lattice_metric(a, b))}};
  write_output(output, dump(out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"least upper bound of the direct-sum majorization uncertainty relation"};
  app.require_subcommand(1);

  ProblemOpts po_bound, po_verify, po_lorenz, po_entropy;
  std::string out_bound, out_verify, out_lorenz, out_entropy, out_compare;
  int samples = 1000, grid = 0, level = 0;
  std::uint64_t seed = 12345;
  double tol = 1e-8, deflate = 0.0, alpha = 0.0;
  std::string cmp_a, cmp_b, state_path;

  CLI::App* bound = app.add_subcommand("bound", "compute the least upper bound s");
  add_problem_options(bound, po_bound);
  bound->add_option("--output", out_bound, "output path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "randomized check that s is an upper bound");
  add_problem_options(verify, po_verify);
  verify->add_option("--samples", samples, "random states to draw (default 1000)");
  verify->add_option("--seed", seed, "RNG seed (default 12345)");
  verify->add_option("--tol", tol, "violation tolerance (default 1e-8)");
  verify->add_option("--grid", grid, "use an NxN Bloch-sphere grid instead (dimension 2)");
  auto* defl = verify->add_option("--deflate", deflate,
                                  "shrink a partial sum of s by this much (negative control)");
  verify->add_option("--level", level, "level whose partial sum --deflate shrinks")
      ->needs(defl);
  defl->needs(verify->get_option("--level"));
  verify->add_option("--output", out_verify, "output path (default stdout)");

  CLI::App* lorenz = app.add_subcommand("lorenz", "export Lorenz curves as CSV");
  add_problem_options(lorenz, po_lorenz);
  lorenz->add_option("--output", out_lorenz, "output path (default stdout)");

  CLI::App* entropy = app.add_subcommand("entropy", "entropic bounds derived from s");
  add_problem_options(entropy, po_entropy);
  entropy->add_option("--alpha", alpha, "also report the Renyi entropy of this order");
  entropy->add_option("--state", state_path, "state JSON for the state-dependent chain");
  entropy->add_option("--output", out_entropy, "output path (default stdout)");

  CLI::App* cmp = app.add_subcommand("compare", "order, join, meet and distance of two vectors");
  cmp->add_option("a", cmp_a, "first vector JSON file")->required();
  cmp->add_option("b", cmp_b, "second vector JSON file")->required();
  cmp->add_option("--output", out_compare, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bound->parsed()) return run_bound(po_bound, out_bound);
    if (verify->parsed())
      return run_verify(po_verify, out_verify, samples, seed, tol, grid, deflate, level);
    if (lorenz->parsed()) return run_lorenz(po_lorenz, out_lorenz);
    if (entropy->parsed()) return run_entropy(po_entropy, out_entropy, alpha, state_path);
    if (cmp->parsed()) return run_compare(cmp_a, cmp_b, out_compare);
  } catch (const EnumerationLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
