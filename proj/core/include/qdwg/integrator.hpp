#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "qdwg/error.hpp"

namespace qdwg {

struct StepControl {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.0;  // 0: unbounded
  double initial_step = 0.0;
  long max_steps = 50'000'000;
};

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
};

/// Dormand–Prince 5(4) with FSAL and PI-free classic step control.
///
/// `State` is any Eigen dense type; the right-hand side has the signature
/// f(t, y, dydt). Stops exactly at every time in `stops` (ascending, > t0)
/// and calls observe(t, y) there.
template <class State>
class Dopri5 {
 public:
  using Rhs = std::function<void(double, const State&, State&)>;
  using Observer = std::function<void(double, const State&)>;

  Dopri5(Rhs f, StepControl ctl) : f_(std::move(f)), ctl_(ctl) {}

  IntegrationStats integrate(State& y, double t0, const std::vector<double>& stops,
                             const Observer& observe = {}) {
    IntegrationStats stats;
    if (stops.empty()) return stats;
    double t = t0;
    k1_.resizeLike(y);
    f_(t, y, k1_);
    double h = ctl_.initial_step > 0 ? ctl_.initial_step : initial_step(t, y, stops.back() - t0);

    for (double stop : stops) {
      if (stop < t) throw std::invalid_argument("Dopri5: stop times must be ascending");
      while (t < stop) {
        if (stats.accepted + stats.rejected > ctl_.max_steps)
          throw NumericalError("Dopri5: step budget exhausted");
        if (ctl_.max_step > 0) h = std::min(h, ctl_.max_step);
        double h_try = h;
        bool last = false;
        if (t + h_try >= stop || stop - (t + h_try) < 1e-12 * std::abs(stop)) {
          h_try = stop - t;
          last = true;
        }
        const double err = attempt(t, y, h_try);
        if (err <= 1.0) {
          ++stats.accepted;
          t = last ? stop : t + h_try;
          y.swap(y_new_);
          k1_.swap(k7_);
          const double fac =
              err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
          // a step clipped to a stop time says little about the natural step
          h = last ? std::max(h, h_try * fac) : h_try * fac;
        } else {
          ++stats.rejected;
          h = h_try * std::max(0.1, 0.9 * std::pow(err, -0.2));
        }
        if (!(h > 0) || h < 1e-15 * std::max(1.0, std::abs(t))) {
          std::ostringstream msg;
          msg << "Dopri5: step size underflow at t = " << t;
          throw NumericalError(msg.str());
        }
      }
      if (observe) observe(t, y);
    }
    return stats;
  }

 private:
  double attempt(double t, const State& y, double h) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    tmp_ = y + h * a21 * k1_;
    f_(t + h / 5, tmp_, k2_);
    tmp_ = y + h * (a31 * k1_ + a32 * k2_);
    f_(t + 3 * h / 10, tmp_, k3_);
    tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    f_(t + 4 * h / 5, tmp_, k4_);
    tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    f_(t + 8 * h / 9, tmp_, k5_);
    tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    f_(t + h, tmp_, k6_);
    y_new_ = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    f_(t + h, y_new_, k7_);
    tmp_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);

    const auto scale = (ctl_.abs_tol + ctl_.rel_tol * y.array().abs().max(y_new_.array().abs()));
    const double err = std::sqrt((tmp_.array().abs() / scale).square().mean());
    return std::isfinite(err) ? err : std::numeric_limits<double>::infinity();
  }

  double initial_step(double t, const State& y, double span) {
    const auto scale = (ctl_.abs_tol + ctl_.rel_tol * y.array().abs());
    const double d0 = std::sqrt((y.array().abs() / scale).square().mean());
    const double d1 = std::sqrt((k1_.array().abs() / scale).square().mean());
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    tmp_ = y + h0 * k1_;
    f_(t + h0, tmp_, k2_);
    const double d2 = std::sqrt(((k2_ - k1_).array().abs() / scale).square().mean()) / h0;
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                 : std::pow(0.01 / std::max(d1, d2), 0.2);
    return std::min({100 * h0, h1, span});
  }

  Rhs f_;
  StepControl ctl_;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y_new_;
};

}  // namespace qdwg
