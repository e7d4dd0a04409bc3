#include "lppl/model.hpp"

#include <cmath>
#include <string>

#include "lppl/errors.hpp"

namespace lppl {

PhaseForm to_phase_form(double c1, double c2) {
  return {std::sqrt(c1 * c1 + c2 * c2), std::atan2(-c2, c1)};
}

void from_phase_form(const PhaseForm& pf, double& c1, double& c2) {
  c1 = pf.C * std::cos(pf.phi);
  c2 = -pf.C * std::sin(pf.phi);
}

double eval_lppl(const LpplParams& p, double x) {
  if (!(x > 0.0)) {
    throw DomainError("eval_lppl requires x > 0, got " + std::to_string(x));
  }
  double lx = std::log(x);
  return p.A + std::exp(p.m * lx) *
                   (p.B + p.C1 * std::cos(p.omega * lx) +
                    p.C2 * std::sin(p.omega * lx));
}

std::vector<double> curve(const LpplParams& p) {
  if (p.l_max < 1) {
    throw DomainError("curve requires l_max >= 1, got " +
                      std::to_string(p.l_max));
  }
  std::vector<double> out(static_cast<std::size_t>(p.l_max));
  for (int i = 0; i < p.l_max; ++i) {
    out[static_cast<std::size_t>(i)] = eval_lppl(p, double(p.l_max - i));
  }
  return out;
}

double fit_mse(const LpplParams& p, const TimeSeries& win, Transform transform) {
  if (static_cast<int>(win.size()) != p.l_max) {
    throw ShapeError("window of size " + std::to_string(win.size()) +
                     " does not match l_max = " + std::to_string(p.l_max));
  }
  std::vector<double> model = curve(p);
  double acc = 0.0;
  for (std::size_t i = 0; i < win.size(); ++i) {
    double obs = transform == Transform::log ? std::log(win[i].value)
                                             : win[i].value;
    double r = obs - model[i];
    acc += r * r;
  }
  return acc / static_cast<double>(win.size());
}

}  // namespace lppl
