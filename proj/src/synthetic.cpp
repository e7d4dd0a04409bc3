#include "lppl/synthetic.hpp"

#include <cmath>
#include <string>

#include "lppl/errors.hpp"
#include "lppl/rng.hpp"

namespace lppl {
namespace {

void check_common(const HazardParams& hp) {
  if (!(hp.G > 0.0) || !(hp.h0 > 0.0)) {
    throw DomainError("hazard requires G > 0 and h0 > 0");
  }
}

}  // namespace

double hazard(const HazardParams& hp, double t) {
  check_common(hp);
  if (hp.delta == 1.0) {
    return hp.h0 * std::exp(hp.G * (t - hp.t0));
  }
  double inv = 1.0 / (1.0 - hp.delta);
  if (hp.delta < 1.0) {
    if (t < hp.t0) {
      throw DomainError("hazard with delta < 1 requires t >= t0");
    }
    return std::pow((1.0 - hp.delta) * (t - hp.t0) * hp.G, inv);
  }
  if (t >= hp.tc) {
    throw DomainError("hazard with delta > 1 requires t < tc");
  }
  return std::pow((hp.delta - 1.0) * (hp.tc - t) * hp.G, inv);
}

std::vector<double> degradation_path(const HazardParams& hp,
                                     const std::vector<double>& times) {
  check_common(hp);
  if (!(hp.delta > 1.0)) {
    throw DomainError("degradation_path requires delta > 1");
  }
  if (hp.delta == 2.0) {
    throw SingularExponentError(
        "degradation_path is singular at delta = 2 (eta + 1 = 0)");
  }
  if (!(hp.tc > hp.t0)) {
    throw DomainError("degradation_path requires tc > t0");
  }
  double eta = 1.0 / (1.0 - hp.delta);
  double e1 = eta + 1.0;
  double shift = std::pow(hp.tc - hp.t0, e1);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!(t < hp.tc)) {
      throw DomainError("degradation_path requires every t < tc");
    }
    out.push_back(hp.h0 / e1 * (std::pow(hp.tc - t, e1) - shift));
  }
  return out;
}

SynthResult gen_lppl_series(const SynthSpec& spec) {
  if (spec.params.l_max < 1) {
    throw DataError("gen_lppl_series requires params.l_max >= 1");
  }
  if (spec.noise_sigma < 0.0 || spec.prefix_sigma < 0.0) {
    throw DataError("noise levels must be >= 0");
  }
  std::size_t l = static_cast<std::size_t>(spec.params.l_max);
  std::size_t total = spec.prefix + l;
  if (spec.length != 0 && spec.length != total) {
    throw DataError("length " + std::to_string(spec.length) +
                    " != prefix + l_max = " + std::to_string(total));
  }

  std::vector<double> seg = curve(spec.params);
  double base = seg.front();
  SplitRng rng(spec.seed);

  SynthResult out;
  out.series.reserve(total);
  std::int64_t date = spec.start_date;
  for (std::size_t i = 0; i < spec.prefix; ++i) {
    double w = base + spec.prefix_sigma * rng.normal();
    out.series.push_back({date++, std::exp(w)});
  }
  for (std::size_t i = 0; i < l; ++i) {
    double w = seg[i] + spec.noise_sigma * rng.normal();
    out.series.push_back({date++, std::exp(w)});
  }
  out.ib_index = total - 1;
  out.ib_day = out.series.back().date;
  return out;
}

}  // namespace lppl
