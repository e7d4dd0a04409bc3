#pragma once

#include <cstdint>
#include <vector>

#include "lppl/model.hpp"
#include "lppl/series.hpp"

namespace lppl {

// Parameters of the failure-rate law dh/dt = G * h^delta. h0 is the scale
// constant of the solution: the rate at t0 for delta = 1, and the prefactor
// of the power-law branch used by degradation_path for delta > 1.
struct HazardParams {
  double delta = 1.0;
  double G = 1.0;   // > 0
  double h0 = 1.0;  // > 0
  double t0 = 0.0;
  double tc = 0.0;  // critical time, only meaningful for delta > 1
};

// Closed-form solution of the rate law:
//   delta = 1: h0 * exp(G * (t - t0))
//   delta < 1: [(1 - delta) * (t - t0) * G]^(1 / (1 - delta)),  t >= t0
//   delta > 1: [(delta - 1) * (tc - t) * G]^(1 / (1 - delta)),  t <  tc
// Throws DomainError outside the stated domains.
double hazard(const HazardParams& hp, double t);

// Log-degradation P(t) = h0/(eta+1) * [(tc-t)^(eta+1) - (tc-t0)^(eta+1)]
// with eta = 1/(1-delta), normalised so P(t0) = 0. Defined for delta > 1
// and singular at delta = 2 (eta + 1 = 0), where SingularExponentError is
// thrown. Every t must be < tc.
std::vector<double> degradation_path(const HazardParams& hp,
                                     const std::vector<double>& times);

// Recipe for a synthetic daily series: `prefix` days of stationary noise
// followed by an oscillating power-law segment of params.l_max days. In log
// space the segment is curve(params) plus N(0, noise_sigma^2) noise; the
// prefix is the segment's first log-value plus N(0, prefix_sigma^2) noise.
// length, when nonzero, must equal prefix + params.l_max.
struct SynthSpec {
  LpplParams params;
  double noise_sigma = 0.0;
  double prefix_sigma = 0.0;
  std::size_t prefix = 0;
  std::size_t length = 0;  // 0 means prefix + params.l_max
  std::uint64_t seed = 0;
  std::int64_t start_date = 737294;  // 2019-08-23
};

struct SynthResult {
  TimeSeries series;
  std::size_t ib_index = 0;  // last day of the power-law segment
  std::int64_t ib_day = 0;   // ordinal date of that day
};

SynthResult gen_lppl_series(const SynthSpec& spec);

}  // namespace lppl
