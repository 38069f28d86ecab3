#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "majbound/bounds.hpp"
#include "majbound/lorenz.hpp"
#include "oracles.hpp"

using namespace majbound;

namespace {

DistVector<double> dv(std::initializer_list<double> xs) {
  VectorX<double> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return DistVector<double>::fromDescending(std::move(v));
}

}  // namespace

TEST_CASE("lorenz_curve vertices") {
  const auto c = lorenz_curve(dv({1.0, 0.0}));
  REQUIRE(c.y.size() == 3);
  CHECK(c.y[0] == 0.0);
  CHECK(c.y[1] == 1.0);
  CHECK(c.y[2] == 1.0);
  CHECK(c.dim() == 2);
  CHECK(c.mass() == 1.0);

  // the uniform mass-2 line of two qubit measurements
  const auto mix = lorenz_curve(dv({0.5, 0.5, 0.5, 0.5}));
  for (Eigen::Index k = 0; k <= 4; ++k) CHECK(mix.y[k] == doctest::Approx(0.5 * k));

  // qutrit bound curve
  const double r6 = std::sqrt(6.0);
  const auto s = lorenz_curve(dv({1.0, r6 / 3.0, 1.0 - r6 / 3.0, 0.0, 0.0, 0.0}));
  CHECK(std::abs(s.y[1] - 1.0) < 1e-12);
  CHECK(std::abs(s.y[2] - (1.0 + r6 / 3.0)) < 1e-12);
  CHECK(std::abs(s.y[3] - 2.0) < 1e-12);
  CHECK(std::abs(s.y[6] - 2.0) < 1e-12);
}

TEST_CASE("curves of sorted vectors are concave and non-decreasing") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 6);
    const auto v = oracle::random_dist(rng, n, trial % 2 ? 1.0 : 3.0);
    const auto c = lorenz_curve(v);
    for (Eigen::Index k = 1; k < c.y.size(); ++k) {
      CHECK(c.y[k] >= c.y[k - 1] - 1e-12);
      if (k + 1 < c.y.size())
        CHECK(c.y[k + 1] - c.y[k] <= c.y[k] - c.y[k - 1] + 1e-12);
    }
  }
}

TEST_CASE("pointwise dominance is majorization") {
  Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 6);
    const auto a = oracle::random_dist(rng, n, 1.0);
    const auto b = oracle::random_dist(rng, n, 1.0);
    const bool dom = lorenz_dominates(lorenz_curve(a), lorenz_curve(b));
    CHECK(dom == majorizes(a, b));
  }
}

TEST_CASE("envelope_check against the level curves") {
  const double c = std::cos(std::numbers::pi / 8);
  const double c2 = c * c;
  const auto s1 = dv({1.0, 0.5, 0.5, 0.0});
  const auto s2 = dv({c2, c2, 1.0 - c2, 1.0 - c2});
  const double r = std::sqrt(2.0) / 2.0;
  const auto s = dv({1.0, r, 1.0 - r, 0.0});

  CHECK(envelope_check(lorenz_curve(s), {lorenz_curve(s1), lorenz_curve(s2)}));
  CHECK(envelope_check(lorenz_curve(s), {lorenz_curve(s1)}));
  // a lowered bound fails
  const auto low = dv({0.9, r, 1.1 - r, 0.0});
  CHECK_FALSE(envelope_check(lorenz_curve(low), {lorenz_curve(s1), lorenz_curve(s2)}));

  CHECK_THROWS_AS(lorenz_dominates(lorenz_curve(s), lorenz_curve(dv({1.0, 0.0}))),
                  IncompatibleVectors);
}

TEST_CASE("mixed state curve is the floor among same-mass curves") {
  // chi of the maximally mixed state is the lowest Lorenz curve any state
  // of the same problem can produce
  const double theta = 1.1;
  const double ch = std::cos(theta / 2.0), sh = std::sin(theta / 2.0);
  ComplexMatrix u(2, 2);
  u << Complex(ch, 0), Complex(sh, 0), Complex(sh, 0), Complex(-ch, 0);
  const std::vector<Measurement> ms = {
      Measurement::projective(u), Measurement::projective(ComplexMatrix::Identity(2, 2))};
  const auto floor_curve = lorenz_curve(direct_sum_distribution(ms, maximally_mixed(2)));
  Rng rng(47);
  for (int i = 0; i < 200; ++i) {
    const auto chi = direct_sum_distribution(ms, random_pure_state(2, rng));
    CHECK(lorenz_dominates(lorenz_curve(chi), floor_curve, 1e-9));
  }
}

TEST_CASE("CSV export bytes") {
  const std::vector<std::pair<std::string, LorenzCurve>> curves = {
      {"a", lorenz_curve(dv({0.75, 0.25}))},
      {"b", lorenz_curve(dv({0.5, 0.5}))},
  };
  const std::string expect =
      "name,k,y\n"
      "a,0,0\n"
      "a,1,0.75\n"
      "a,2,1\n"
      "b,0,0\n"
      "b,1,0.5\n"
      "b,2,1\n";
  CHECK(curves_to_csv(curves) == expect);

  // round-trip through a file, byte for byte, twice
  const auto dir = std::filesystem::temp_directory_path() / "majbound_lorenz_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "curves.csv").string();
  export_curves(curves, path);
  std::ostringstream got1;
  got1 << std::ifstream(path).rdbuf();
  CHECK(got1.str() == expect);
  export_curves(curves, path);
  std::ostringstream got2;
  got2 << std::ifstream(path).rdbuf();
  CHECK(got1.str() == got2.str());
  std::filesystem::remove_all(dir);

  // I/O failure carries the path
  try {
    export_curves(curves, "/nonexistent-dir/curves.csv");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/") != std::string::npos);
  }
}
