#pragma once

// Two-component explicit Runge-Kutta driver shared by the plain and delayed
// integrators. Not part of the installed interface.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>

#include "rydlv/errors.hpp"
#include "rydlv/integrator.hpp"

namespace rydlv::detail {

using Vec2 = std::array<double, 2>;

inline Vec2 axpy(const Vec2& y, double h, const Vec2& k) { return {y[0] + h * k[0], y[1] + h * k[1]}; }

/// One accepted step together with its continuous extension.
struct StepRecord {
  double t0 = 0.0;
  double t1 = 0.0;
  Vec2 y0{};
  Vec2 y1{};
  Vec2 f0{};
  Vec2 f1{};
  bool dopri = false;
  std::array<Vec2, 5> rcont{};  // Hairer's contd5 coefficients

  double h() const { return t1 - t0; }

  Vec2 eval(double t) const {
    const double h = t1 - t0;
    const double theta = (t - t0) / h;
    Vec2 out{};
    if (dopri) {
      const double theta1 = 1.0 - theta;
      for (int i = 0; i < 2; ++i) {
        out[i] = rcont[0][i] +
                 theta * (rcont[1][i] +
                          theta1 * (rcont[2][i] + theta * (rcont[3][i] + theta1 * rcont[4][i])));
      }
    } else {
      out = hermite(t);
    }
    // Between two positive end points a polynomial can dip through zero when
    // the component falls by orders of magnitude; interpolate geometrically.
    for (int i = 0; i < 2; ++i) {
      if (!(out[i] > 0.0) && y0[i] > 0.0 && y1[i] > 0.0) {
        out[i] = std::pow(y0[i], 1.0 - theta) * std::pow(y1[i], theta);
      }
    }
    return out;
  }

  /// Cubic Hermite interpolant from the end-point values and slopes.
  Vec2 hermite(double t) const {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    Vec2 out{};
    for (int i = 0; i < 2; ++i) {
      out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    }
    return out;
  }
};

struct StepLimits {
  double max_step = std::numeric_limits<double>::infinity();
  /// Derivative discontinuities sit at t0 + k·spacing; steps never straddle
  /// one. Zero disables.
  double breakpoint_spacing = 0.0;
};

inline constexpr double kNegativeTolerance = 1e-9;

inline std::string at_time(double t) {
  std::ostringstream os;
  os.precision(17);
  os << " at t=" << t << " ms";
  return os.str();
}

/// Clamps tiny negative undershoots to zero; throws on non-finite values or on
/// undershoots beyond kNegativeTolerance. Returns true when a value was clamped.
inline bool check_state(Vec2& y, double t) {
  bool clamped = false;
  for (double& v : y) {
    if (!std::isfinite(v)) {
      throw NumericalError("non-finite state" + at_time(t), t);
    }
    if (v < 0.0) {
      if (v < -kNegativeTolerance) {
        throw NumericalError("negative population" + at_time(t), t);
      }
      v = 0.0;
      clamped = true;
    }
  }
  return clamped;
}

inline double next_breakpoint(double t_origin, double t, const StepLimits& lim) {
  if (lim.breakpoint_spacing <= 0.0) return std::numeric_limits<double>::infinity();
  const double k = std::floor((t - t_origin) / lim.breakpoint_spacing + 1e-9) + 1.0;
  return t_origin + k * lim.breakpoint_spacing;
}

// Dormand-Prince 5(4) tableau.
namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp

/// Drives `rhs(t, y) -> Vec2` from (t0, y0) to t_end, calling `on_step(record)`
/// after every accepted step.
template <class Rhs, class OnStep>
void drive(Rhs&& rhs, double t0, Vec2 y, double t_end, const IntegratorOptions& opts,
           const StepLimits& lim, OnStep&& on_step) {
  if (!(t_end > t0)) return;
  const double span = t_end - t0;
  std::size_t steps = 0;

  auto count_step = [&](double t) {
    if (++steps > opts.max_steps) {
      throw NumericalError("step limit exceeded" + at_time(t), t);
    }
  };

  Vec2 f = rhs(t0, y);
  double t = t0;

  if (opts.method == IntegratorMethod::rk4_fixed) {
    // Uniform grid that lands on t_end (and on every breakpoint when the
    // spacing is set) without accumulating round-off in t.
    double h = std::min(opts.step, lim.max_step);
    double grid_unit = span;
    if (lim.breakpoint_spacing > 0.0) grid_unit = lim.breakpoint_spacing;
    const double per_unit = std::ceil(grid_unit / h - 1e-9);
    h = grid_unit / per_unit;
    const auto n_steps = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
    for (std::size_t i = 1; i <= n_steps; ++i) {
      const double t_next = (i == n_steps) ? t_end : t0 + static_cast<double>(i) * h;
      const double hh = t_next - t;
      count_step(t);
      const Vec2 k1 = f;
      const Vec2 k2 = rhs(t + 0.5 * hh, axpy(y, 0.5 * hh, k1));
      const Vec2 k3 = rhs(t + 0.5 * hh, axpy(y, 0.5 * hh, k2));
      const Vec2 k4 = rhs(t_next, axpy(y, hh, k3));
      Vec2 y1{};
      for (int j = 0; j < 2; ++j) {
        y1[j] = y[j] + hh / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      }
      check_state(y1, t_next);
      const Vec2 f1 = rhs(t_next, y1);
      StepRecord rec;
      rec.t0 = t;
      rec.t1 = t_next;
      rec.y0 = y;
      rec.y1 = y1;
      rec.f0 = f;
      rec.f1 = f1;
      on_step(static_cast<const StepRecord&>(rec));
      t = t_next;
      y = y1;
      f = f1;
    }
    return;
  }

  // Adaptive Dormand-Prince. Per-step error is held a decade below the
  // requested tolerance; global drift of the first integral then stays within
  // 100x the request over many periods.
  const double rtol = 0.1 * opts.rtol;
  const double atol = 0.1 * opts.atol;
  auto scaled_norm = [&](const Vec2& v, const Vec2& ya, const Vec2& yb) {
    double acc = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double sk = atol + rtol * std::max(std::abs(ya[j]), std::abs(yb[j]));
      acc += (v[j] / sk) * (v[j] / sk);
    }
    return std::sqrt(acc / 2.0);
  };

  // Starting step (Hairer & Wanner, hinit).
  double h = 0.0;
  {
    const double d0 = scaled_norm(y, y, y);
    const double d1 = scaled_norm(f, y, y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h0 = std::min({h0, span, lim.max_step});
    const Vec2 y1 = axpy(y, h0, f);
    const Vec2 f1 = rhs(t + h0, y1);
    const Vec2 df{f1[0] - f[0], f1[1] - f[1]};
    const double d2 = scaled_norm(df, y, y) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6 * span, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = std::min({100.0 * h0, h1, lim.max_step});
  }

  bool last_rejected = false;
  while (t < t_end) {
    const double bp = next_breakpoint(t0, t, lim);
    double limit = std::min(t_end, bp);
    double hh = std::min({h, lim.max_step, limit - t});
    // Avoid a sliver step just before the landing point.
    if (t + 1.01 * hh >= limit) hh = limit - t;
    count_step(t);

    using namespace dp;
    const Vec2& k1 = f;
    const Vec2 k2 = rhs(t + c2 * hh, axpy(y, hh * a21, k1));
    const Vec2 k3 = rhs(t + c3 * hh, {y[0] + hh * (a31 * k1[0] + a32 * k2[0]),
                                      y[1] + hh * (a31 * k1[1] + a32 * k2[1])});
    const Vec2 k4 = rhs(t + c4 * hh, {y[0] + hh * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                                      y[1] + hh * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])});
    const Vec2 k5 = rhs(t + c5 * hh,
                        {y[0] + hh * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                         y[1] + hh * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])});
    const double t_new = (hh == limit - t) ? limit : t + hh;
    const Vec2 k6 = rhs(t_new, {y[0] + hh * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] +
                                             a64 * k4[0] + a65 * k5[0]),
                                y[1] + hh * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] +
                                             a64 * k4[1] + a65 * k5[1])});
    Vec2 y1{};
    for (int j = 0; j < 2; ++j) {
      y1[j] = y[j] + hh * (a71 * k1[j] + a73 * k3[j] + a74 * k4[j] + a75 * k5[j] + a76 * k6[j]);
    }
    bool finite = std::isfinite(y1[0]) && std::isfinite(y1[1]);
    Vec2 k7{};
    double err = std::numeric_limits<double>::infinity();
    if (finite) {
      k7 = rhs(t_new, y1);
      Vec2 e{};
      for (int j = 0; j < 2; ++j) {
        e[j] = hh * (e1 * k1[j] + e3 * k3[j] + e4 * k4[j] + e5 * k5[j] + e6 * k6[j] + e7 * k7[j]);
      }
      err = scaled_norm(e, y, y1);
      finite = std::isfinite(err);
    }

    // A positive component may not cross zero within one step; shrinking the
    // step restores positivity for the LV right-hand side.
    const bool crossed = (y[0] > 0.0 && y1[0] < 0.0) || (y[1] > 0.0 && y1[1] < 0.0);
    if (finite && err <= 1.0 && !crossed) {
      if (check_state(y1, t_new)) k7 = rhs(t_new, y1);
      StepRecord rec;
      rec.t0 = t;
      rec.t1 = t_new;
      rec.y0 = y;
      rec.y1 = y1;
      rec.f0 = k1;
      rec.f1 = k7;
      rec.dopri = true;
      for (int j = 0; j < 2; ++j) {
        const double ydiff = y1[j] - y[j];
        const double bspl = hh * k1[j] - ydiff;
        rec.rcont[0][j] = y[j];
        rec.rcont[1][j] = ydiff;
        rec.rcont[2][j] = bspl;
        rec.rcont[3][j] = ydiff - hh * k7[j] - bspl;
        rec.rcont[4][j] = hh * (d1 * k1[j] + d3 * k3[j] + d4 * k4[j] + d5 * k5[j] + d6 * k6[j] +
                                d7 * k7[j]);
      }
      on_step(static_cast<const StepRecord&>(rec));
      double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
      // A step shortened to land on t_end or a breakpoint says nothing against h.
      h = (hh < h) ? std::max(h, hh * fac) : hh * fac;
      t = t_new;
      y = y1;
      f = k7;
      last_rejected = false;
    } else {
      double fac = finite ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0) : 0.25;
      if (finite && crossed) fac = std::min(fac, 0.5);
      h = hh * fac;
      last_rejected = true;
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        throw NumericalError(finite ? "step size underflow" + at_time(t)
                                    : "non-finite state" + at_time(t),
                             t);
      }
    }
  }
}

}  // namespace rydlv::detail
