#include <doctest.h>

#include <cmath>
#include <vector>

#include "lppl/errors.hpp"
#include "lppl/model.hpp"
#include "lppl/rng.hpp"
#include "lppl/series.hpp"
#include "lppl/synthetic.hpp"

using namespace lppl;

namespace {

// h0 that makes the power-law hazard branch the exact derivative of the
// degradation path, so -integral(hazard) == degradation_path.
double coupled_h0(double delta, double G) {
  return std::pow((delta - 1.0) * G, 1.0 / (1.0 - delta));
}

double trapezoid_hazard(const HazardParams& hp, double a, double b, int n) {
  double h = (b - a) / n;
  double sum = 0.5 * (hazard(hp, a) + hazard(hp, b));
  for (int i = 1; i < n; ++i) sum += hazard(hp, a + i * h);
  return sum * h;
}

}  // namespace

TEST_CASE("hazard matches hand-computed branch values") {
  // Exponential branch.
  CHECK(hazard({1.0, 0.5, 2.0, 1.0, 0.0}, 3.0) ==
        doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-15));
  CHECK(hazard({1.0, 0.5, 2.0, 1.0, 0.0}, 1.0) == 2.0);

  // Sub-linear branch: [(1-delta) (t-t0) G]^(1/(1-delta)).
  CHECK(hazard({0.5, 2.0, 1.0, 0.0, 0.0}, 3.0) ==
        doctest::Approx(9.0).epsilon(1e-15));
  CHECK(hazard({0.5, 2.0, 1.0, 0.0, 0.0}, 0.0) == 0.0);

  // Super-linear branch: [(delta-1) (tc-t) G]^(1/(1-delta)).
  CHECK(hazard({2.0, 1.0, 1.0, 0.0, 10.0}, 9.5) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hazard({3.0, 0.125, 1.0, 0.0, 10.0}, 6.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hazard solves its own rate law") {
  // Central difference of the closed form against G * h^delta.
  const double step = 1e-5;
  for (double delta : {0.5, 1.0, 1.5, 3.0}) {
    HazardParams hp{delta, 0.8, 1.3, 0.0, 20.0};
    for (double t : {1.0, 3.0, 7.5, 12.0}) {
      double dh = (hazard(hp, t + step) - hazard(hp, t - step)) / (2 * step);
      double rhs = hp.G * std::pow(hazard(hp, t), delta);
      CHECK(std::abs(dh - rhs) <= 1e-6 * std::max(std::abs(rhs), 1e-12));
    }
  }
}

TEST_CASE("hazard rejects arguments outside the branch domains") {
  CHECK_THROWS_AS(hazard({0.5, 1.0, 1.0, 5.0, 0.0}, 4.0), DomainError);
  CHECK_THROWS_AS(hazard({2.0, 1.0, 1.0, 0.0, 10.0}, 10.0), DomainError);
  CHECK_THROWS_AS(hazard({2.0, 1.0, 1.0, 0.0, 10.0}, 11.0), DomainError);
  CHECK_THROWS_AS(hazard({1.0, 0.0, 1.0, 0.0, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(hazard({1.0, -1.0, 1.0, 0.0, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(hazard({1.0, 1.0, 0.0, 0.0, 0.0}, 1.0), DomainError);
}

TEST_CASE("degradation_path reproduces a hand-computed value") {
  // delta = 3: eta = -1/2, eta + 1 = 1/2, so with h0 = 1, tc - t = 4 and
  // tc - t0 = 9 the path value is 2 * (sqrt(4) - sqrt(9)) = -2.
  HazardParams hp{3.0, 1.0, 1.0, 0.0, 9.0};
  std::vector<double> p = degradation_path(hp, {0.0, 5.0});
  REQUIRE(p.size() == 2);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("degradation_path enforces its domain") {
  CHECK_THROWS_AS(degradation_path({2.0, 1.0, 1.0, 0.0, 9.0}, {1.0}),
                  SingularExponentError);
  CHECK_THROWS_AS(degradation_path({1.0, 1.0, 1.0, 0.0, 9.0}, {1.0}),
                  DomainError);
  CHECK_THROWS_AS(degradation_path({0.5, 1.0, 1.0, 0.0, 9.0}, {1.0}),
                  DomainError);
  CHECK_THROWS_AS(degradation_path({3.0, 1.0, 1.0, 0.0, 9.0}, {9.0}),
                  DomainError);
  CHECK_THROWS_AS(degradation_path({3.0, 1.0, 1.0, 9.0, 9.0}, {1.0}),
                  DomainError);
}

TEST_CASE("degradation_path is the negative integral of the hazard") {
  SplitRng rng(301);
  for (int rep = 0; rep < 6; ++rep) {
    double delta = (rep % 2 == 0) ? rng.uniform(2.2, 5.0) : rng.uniform(1.2, 1.8);
    double G = rng.uniform(0.2, 2.0);
    double t0 = rng.uniform(-2.0, 2.0);
    double tc = t0 + rng.uniform(5.0, 15.0);
    HazardParams hp{delta, G, coupled_h0(delta, G), t0, tc};

    std::vector<double> ts;
    for (int k = 1; k <= 4; ++k) ts.push_back(t0 + k * 0.2 * (tc - t0) * 0.9);
    std::vector<double> path = degradation_path(hp, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      double integral = trapezoid_hazard(hp, t0, ts[i], 200000);
      CHECK(std::abs(path[i] + integral) <=
            1e-6 * std::max(std::abs(integral), 1e-9));
    }
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i] < path[i - 1]);
  }
}

TEST_CASE("gen_lppl_series produces a valid deterministic series") {
  LpplParams p{80, 5.0, -0.4, 0.45, 0.15, 0.1, 6.0};
  SynthSpec spec{p, 1e-3, 0.03, 150, 0, 42};
  SynthResult r = gen_lppl_series(spec);

  CHECK_NOTHROW(validate_series(r.series));
  CHECK(r.series.size() == 230);
  CHECK(r.ib_index == 229);
  CHECK(r.series.front().date == spec.start_date);
  CHECK(r.ib_day == spec.start_date + 229);
  CHECK(r.series[r.ib_index].date == r.ib_day);

  SynthResult again = gen_lppl_series(spec);
  REQUIRE(again.series.size() == r.series.size());
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    CHECK(again.series[i].date == r.series[i].date);
    CHECK(again.series[i].value == r.series[i].value);
  }

  SynthSpec other = spec;
  other.seed = 43;
  SynthResult diff = gen_lppl_series(other);
  int changed = 0;
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    if (diff.series[i].value != r.series[i].value) ++changed;
  }
  CHECK(changed > 200);
}

TEST_CASE("gen_lppl_series noiseless output equals the model curve") {
  LpplParams p{60, 4.0, -0.3, 0.5, 0.1, -0.05, 5.0};
  SynthSpec spec{p, 0.0, 0.0, 40, 0, 7};
  SynthResult r = gen_lppl_series(spec);
  std::vector<double> c = curve(p);
  for (int j = 0; j < 60; ++j) {
    CHECK(std::log(r.series[40 + j].value) ==
          doctest::Approx(c[j]).epsilon(1e-12));
  }
  // The noiseless prefix holds the segment's first log-level.
  for (int j = 0; j < 40; ++j) {
    CHECK(std::log(r.series[j].value) == doctest::Approx(c[0]).epsilon(1e-12));
  }
}

TEST_CASE("gen_lppl_series validates its spec") {
  LpplParams p{60, 4.0, -0.3, 0.5, 0.1, -0.05, 5.0};
  SynthSpec bad{p, 0.0, 0.0, 40, 99, 7};  // length != prefix + l_max
  CHECK_THROWS_AS(gen_lppl_series(bad), DataError);
  bad = SynthSpec{p, -0.1, 0.0, 40, 0, 7};
  CHECK_THROWS_AS(gen_lppl_series(bad), DataError);
  bad = SynthSpec{p, 0.0, 0.0, 40, 0, 7};
  bad.params.l_max = 0;
  CHECK_THROWS_AS(gen_lppl_series(bad), DataError);
}
