#include "lppl/fitter.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lppl/errors.hpp"
#include "lppl/rng.hpp"

namespace lppl {
namespace {

constexpr double kDegenerate = 1e30;   // objective for rank-deficient basis
constexpr double kInfeasibleA = 1e12;  // base penalty when A <= 0 is rejected
constexpr double kCondFloor = 1e-12;   // pivot ratio below which we give up

// Transformed observations and precomputed ln x, plus scratch space for the
// basis columns so repeated solves do not allocate.
struct Prepared {
  std::vector<double> y;
  std::vector<double> lnx;
  mutable std::vector<double> b1, b2, b3;
};

Prepared prepare(const TimeSeries& win, Transform transform) {
  Prepared p;
  std::size_t n = win.size();
  p.y.resize(n);
  p.lnx.resize(n);
  p.b1.resize(n);
  p.b2.resize(n);
  p.b3.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.y[i] = transform == Transform::log ? std::log(win[i].value)
                                         : win[i].value;
    p.lnx[i] = std::log(static_cast<double>(n - i));
  }
  return p;
}

// Core OLS for fixed (m, omega). Returns false when the basis is degenerate.
bool solve_prepared(double m, double omega, const Prepared& p, LinearFit* out) {
  const std::size_t n = p.y.size();
  for (std::size_t i = 0; i < n; ++i) {
    double lx = p.lnx[i];
    double g = std::exp(m * lx);
    double ph = omega * lx;
    p.b1[i] = g;
    p.b2[i] = g * std::cos(ph);
    p.b3[i] = g * std::sin(ph);
  }

  Eigen::Matrix4d G;
  Eigen::Vector4d r;
  double s1 = 0, s2 = 0, s3 = 0;
  double g11 = 0, g12 = 0, g13 = 0, g22 = 0, g23 = 0, g33 = 0;
  double r0 = 0, r1 = 0, r2 = 0, r3 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = p.y[i], b1 = p.b1[i], b2 = p.b2[i], b3 = p.b3[i];
    s1 += b1;
    s2 += b2;
    s3 += b3;
    g11 += b1 * b1;
    g12 += b1 * b2;
    g13 += b1 * b3;
    g22 += b2 * b2;
    g23 += b2 * b3;
    g33 += b3 * b3;
    r0 += y;
    r1 += y * b1;
    r2 += y * b2;
    r3 += y * b3;
  }
  G << double(n), s1, s2, s3,
       s1, g11, g12, g13,
       s2, g12, g22, g23,
       s3, g13, g23, g33;
  r << r0, r1, r2, r3;

  // Column equilibration keeps the pivot-ratio test meaningful across scales.
  Eigen::Vector4d s;
  for (int j = 0; j < 4; ++j) {
    double d = G(j, j);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    s(j) = std::sqrt(d);
  }
  Eigen::Matrix4d Gs = G;
  Eigen::Vector4d rs = r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) Gs(i, j) /= s(i) * s(j);
    rs(i) /= s(i);
  }

  Eigen::LDLT<Eigen::Matrix4d> ldlt(Gs);
  if (ldlt.info() != Eigen::Success) return false;
  Eigen::Vector4d d = ldlt.vectorD();
  double dmin = d.minCoeff(), dmax = d.maxCoeff();
  if (!(dmin > 0.0) || dmin < kCondFloor * dmax) return false;

  Eigen::Vector4d c = ldlt.solve(rs);
  for (int j = 0; j < 4; ++j) c(j) /= s(j);

  // Explicit residual pass: the algebraic shortcut y'y - c'G c cancels
  // catastrophically for near-exact fits.
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitv = c(0) + c(1) * p.b1[i] + c(2) * p.b2[i] + c(3) * p.b3[i];
    double e = p.y[i] - fitv;
    acc += e * e;
  }
  out->A = c(0);
  out->B = c(1);
  out->C1 = c(2);
  out->C2 = c(3);
  out->mse = acc / static_cast<double>(n);
  return true;
}

struct Bounds {
  double m_lo, m_hi, w_lo, w_hi;
};

double objective(double m, double omega, const Prepared& p, bool a_positive,
                 LinearFit* out) {
  if (!solve_prepared(m, omega, p, out)) return kDegenerate;
  if (a_positive && !(out->A > 0.0)) {
    return kInfeasibleA + std::min(-out->A, kInfeasibleA);
  }
  return out->mse;
}

struct Vertex {
  double m, w, f;
};

// Deterministic Nelder-Mead on the (m, omega) box. All candidate points are
// clamped into the box, so the returned point always satisfies the open
// interval constraints (by the caller's margin).
struct NmOut {
  double m, w;
  bool converged;
};

NmOut nelder_mead(const Prepared& p, bool a_positive, const Bounds& b,
                  double m0, double w0, int max_iters) {
  auto clamp = [&](double& m, double& w) {
    m = std::clamp(m, b.m_lo, b.m_hi);
    w = std::clamp(w, b.w_lo, b.w_hi);
  };
  LinearFit scratch;
  auto eval = [&](double m, double w) {
    return objective(m, w, p, a_positive, &scratch);
  };

  double dm = 0.08 * (b.m_hi - b.m_lo);
  double dw = 0.08 * (b.w_hi - b.w_lo);
  if (m0 + dm > b.m_hi) dm = -dm;
  if (w0 + dw > b.w_hi) dw = -dw;

  std::array<Vertex, 3> v;
  v[0] = {m0, w0, 0};
  v[1] = {m0 + dm, w0, 0};
  v[2] = {m0, w0 + dw, 0};
  for (auto& x : v) {
    clamp(x.m, x.w);
    x.f = eval(x.m, x.w);
  }

  const double m_scale = b.m_hi - b.m_lo;
  const double w_scale = b.w_hi - b.w_lo;
  const double tol = 1e-9;
  bool converged = false;

  for (int it = 0; it < max_iters; ++it) {
    std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& c) {
      if (a.f != c.f) return a.f < c.f;
      if (a.m != c.m) return a.m < c.m;
      return a.w < c.w;
    });
    double diam = 0.0;
    for (int i = 1; i < 3; ++i) {
      diam = std::max(diam, std::abs(v[i].m - v[0].m) / m_scale +
                                std::abs(v[i].w - v[0].w) / w_scale);
    }
    if (diam < tol) {
      converged = true;
      break;
    }

    double cm = 0.5 * (v[0].m + v[1].m);
    double cw = 0.5 * (v[0].w + v[1].w);
    double rm = cm + (cm - v[2].m);
    double rw = cw + (cw - v[2].w);
    clamp(rm, rw);
    double fr = eval(rm, rw);
    if (fr < v[0].f) {
      double em = cm + 2.0 * (cm - v[2].m);
      double ew = cw + 2.0 * (cw - v[2].w);
      clamp(em, ew);
      double fe = eval(em, ew);
      if (fe < fr) {
        v[2] = {em, ew, fe};
      } else {
        v[2] = {rm, rw, fr};
      }
    } else if (fr < v[1].f) {
      v[2] = {rm, rw, fr};
    } else {
      double km = cm + 0.5 * (v[2].m - cm);
      double kw = cw + 0.5 * (v[2].w - cw);
      clamp(km, kw);
      double fk = eval(km, kw);
      if (fk < v[2].f) {
        v[2] = {km, kw, fk};
      } else {
        for (int i = 1; i < 3; ++i) {
          v[i].m = v[0].m + 0.5 * (v[i].m - v[0].m);
          v[i].w = v[0].w + 0.5 * (v[i].w - v[0].w);
          clamp(v[i].m, v[i].w);
          v[i].f = eval(v[i].m, v[i].w);
        }
      }
    }
  }

  std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& c) {
    if (a.f != c.f) return a.f < c.f;
    if (a.m != c.m) return a.m < c.m;
    return a.w < c.w;
  });
  return {v[0].m, v[0].w, converged};
}

void check_constraints(const FitConstraints& c) {
  if (!(c.m_range.first < c.m_range.second) ||
      !(c.omega_range.first < c.omega_range.second) ||
      c.l_range.first < 1 || c.l_range.first > c.l_range.second ||
      c.n_starts < 1 || c.max_iters < 1 || !(c.margin > 0.0)) {
    throw RangeError("invalid fit constraints");
  }
}

}  // namespace

LinearFit solve_linear(double m, double omega, const TimeSeries& win,
                       Transform transform) {
  if (win.empty()) {
    throw ShapeError("solve_linear requires a non-empty window");
  }
  Prepared p = prepare(win, transform);
  LinearFit out;
  if (!solve_prepared(m, omega, p, &out)) {
    throw DegenerateBasisError(
        "regression basis is rank-deficient or ill-conditioned (window size " +
        std::to_string(win.size()) + ")");
  }
  return out;
}

FitResult fit_window(const TimeSeries& win, const FitConstraints& c,
                     Transform transform) {
  check_constraints(c);
  const int L = static_cast<int>(win.size());
  if (L < c.l_range.first || L > c.l_range.second) {
    throw RangeError("window length " + std::to_string(L) +
                     " outside l_range [" + std::to_string(c.l_range.first) +
                     ", " + std::to_string(c.l_range.second) + "]");
  }

  Prepared p = prepare(win, transform);
  Bounds b{c.m_range.first + c.margin, c.m_range.second - c.margin,
           c.omega_range.first + c.margin, c.omega_range.second - c.margin};

  bool found = false;
  LinearFit best_lin;
  double best_m = 0, best_w = 0, best_mse = std::numeric_limits<double>::infinity();
  bool best_conv = false;

  const auto anchor = static_cast<std::uint64_t>(win.back().date);
  for (int s = 0; s < c.n_starts; ++s) {
    SplitRng rng = SplitRng::derive(
        c.seed, {anchor, static_cast<std::uint64_t>(L),
                 static_cast<std::uint64_t>(s)});
    double m0 = rng.uniform(b.m_lo, b.m_hi);
    double w0 = rng.uniform(b.w_lo, b.w_hi);
    NmOut nm = nelder_mead(p, c.A_positive, b, m0, w0, c.max_iters);
    LinearFit lin;
    if (!solve_prepared(nm.m, nm.w, p, &lin)) continue;
    if (c.A_positive && !(lin.A > 0.0)) continue;
    if (lin.mse < best_mse) {
      best_mse = lin.mse;
      best_lin = lin;
      best_m = nm.m;
      best_w = nm.w;
      best_conv = nm.converged;
      found = true;
    }
  }

  if (!found) {
    throw NoFeasibleFitError("no feasible fit for window of length " +
                             std::to_string(L));
  }

  FitResult out;
  out.params = {L, best_lin.A, best_lin.B, best_m, best_lin.C1, best_lin.C2,
                best_w};
  out.mse = best_mse;
  out.end_index = win.size() - 1;
  out.converged = best_conv;
  return out;
}

FitResult fit_best(const TimeSeries& series, std::size_t end_index,
                   const FitConstraints& c, Transform transform) {
  check_constraints(c);
  if (end_index >= series.size()) {
    throw RangeError("end_index out of range");
  }
  if (end_index + 1 < static_cast<std::size_t>(c.l_range.second)) {
    throw RangeError("end_index " + std::to_string(end_index) +
                     " leaves fewer than max(l_range) = " +
                     std::to_string(c.l_range.second) + " points");
  }

  std::vector<FitResult> fits;
  fits.reserve(static_cast<std::size_t>(c.l_range.second - c.l_range.first + 1));
  for (int l = c.l_range.first; l <= c.l_range.second; ++l) {
    TimeSeries win = window(series, end_index, static_cast<std::size_t>(l));
    try {
      fits.push_back(fit_window(win, c, transform));
    } catch (const NoFeasibleFitError&) {
      // This length has no feasible candidate; the others may.
    }
  }
  if (fits.empty()) {
    throw NoFeasibleFitError("no feasible fit for any window length ending at "
                             "index " + std::to_string(end_index));
  }

  double min_mse = std::numeric_limits<double>::infinity();
  for (const auto& f : fits) min_mse = std::min(min_mse, f.mse);
  double eps = c.tie_abs + c.tie_rel * min_mse;

  const FitResult* pick = nullptr;
  for (const auto& f : fits) {
    if (f.mse > min_mse + eps) continue;
    if (pick == nullptr ||
        (c.prefer_larger_l_on_tie ? f.params.l_max > pick->params.l_max
                                  : f.params.l_max < pick->params.l_max)) {
      pick = &f;
    }
  }

  FitResult out = *pick;
  out.end_index = end_index;
  return out;
}

}  // namespace lppl
