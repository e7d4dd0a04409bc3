#pragma once

#include <cstdint>
#include <utility>

#include "lppl/model.hpp"
#include "lppl/series.hpp"

namespace lppl {

// Search space and policy for the window fit. m and omega live in open
// intervals (the optimizer keeps `margin` away from the bounds); l_range is
// inclusive. Short windows admit too many spuriously good fits, so when
// several window lengths reach indistinguishable mse (within tie_abs +
// tie_rel * mse) the longest window wins by default.
struct FitConstraints {
  std::pair<double, double> m_range{0.0, 1.0};
  std::pair<double, double> omega_range{2.0, 8.0};
  std::pair<int, int> l_range{31, 100};
  bool A_positive = true;
  int n_starts = 20;
  int max_iters = 200;
  std::uint64_t seed = 0;
  double margin = 1e-6;
  double tie_abs = 1e-9;
  double tie_rel = 1e-6;
  bool prefer_larger_l_on_tie = true;
};

// Linear sub-solution for fixed (m, omega).
struct LinearFit {
  double A = 0.0;
  double B = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double mse = 0.0;
};

struct FitResult {
  LpplParams params;
  double mse = 0.0;
  std::size_t end_index = 0;  // index of the anchor point in the source series
  bool converged = false;     // optimizer hit its tolerance, not the iter cap
};

// Ordinary least squares of the transformed window onto the basis
// {1, x^m, x^m cos(omega ln x), x^m sin(omega ln x)} with x = window offset
// from the end + 1. Throws DegenerateBasisError when the basis is
// rank-deficient or numerically ill-conditioned.
LinearFit solve_linear(double m, double omega, const TimeSeries& win,
                       Transform transform);

// Multi-start local search over (m, omega) with the linear parameters
// eliminated by solve_linear. Random starts are drawn from per-
// (anchor date, window length, start index) streams derived from c.seed, so
// results do not depend on evaluation order. Throws NoFeasibleFitError when
// no start yields a candidate satisfying the constraints, RangeError when
// the window length is outside l_range.
FitResult fit_window(const TimeSeries& win, const FitConstraints& c,
                     Transform transform);

// Best fit over all window lengths in l_range ending at end_index.
// Requires end_index + 1 >= max(l_range) so every length is available.
// mse ties across lengths are resolved per c.prefer_larger_l_on_tie.
FitResult fit_best(const TimeSeries& series, std::size_t end_index,
                   const FitConstraints& c, Transform transform);

}  // namespace lppl
