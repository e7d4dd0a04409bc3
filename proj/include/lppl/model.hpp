#pragma once

#include <vector>

#include "lppl/series.hpp"

namespace lppl {

// Parameters of the oscillating power-law
//   W(x) = A + x^m * (B + C1*cos(omega*ln x) + C2*sin(omega*ln x))
// where x counts days backwards from the anchor point (x = 1 is "now").
// The two amplitudes C1/C2 linearise the phase of the cosine; see
// to_phase_form / from_phase_form for the (C, phi) view.
struct LpplParams {
  int l_max = 0;      // window length the parameters were fitted on
  double A = 0.0;     // level; fits keep A > 0 on positive data
  double B = 0.0;     // power-law amplitude, unconstrained
  double m = 0.0;     // power-law exponent, fits keep 0 < m < 1
  double C1 = 0.0;    // cosine amplitude, unconstrained
  double C2 = 0.0;    // sine amplitude, unconstrained
  double omega = 0.0; // angular log-frequency, fits keep 2 < omega < 8
};

// Value-space transform applied to observations before comparing them with
// the model curve.
enum class Transform { log, identity };

struct PhaseForm {
  double C = 0.0;
  double phi = 0.0;
};

// C = sqrt(C1^2 + C2^2), phi = atan2(-C2, C1).
PhaseForm to_phase_form(double c1, double c2);

// C1 = C*cos(phi), C2 = -C*sin(phi).
void from_phase_form(const PhaseForm& pf, double& c1, double& c2);

// Evaluates W at x > 0; throws DomainError otherwise (ln x is undefined).
double eval_lppl(const LpplParams& p, double x);

// The model sampled at x = l_max, l_max-1, ..., 1, i.e. in chronological
// order with the anchor point last.
std::vector<double> curve(const LpplParams& p);

// Mean squared residual between the transformed window values and curve(p),
// aligned chronologically. Throws ShapeError unless win.size() == l_max.
double fit_mse(const LpplParams& p, const TimeSeries& win, Transform transform);

}  // namespace lppl
