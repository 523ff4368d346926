#pragma once

#include "pathtrans/types.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace pathtrans {

/// Number of steps and effective step size after splitting.
struct StepPlan {
  long steps = 0;
  double step = 0.0;
};

/// Fixed-step classical RK4 for y' = f(tau, side, y) from tau = s to tau = t,
/// restarting at every breakpoint strictly between s and t. Runs backward when
/// t < s. Evaluations at a piece endpoint use the one-sided limit from inside
/// the piece. `step` is the largest allowed step; each piece is divided into
/// ceil(|piece| / step) equal steps.
template <class State, class Rhs>
State rk4_along(const Rhs& f, std::span<const double> breaks, double s, double t, State y, double step,
                StepPlan* plan = nullptr) {
  if (plan) *plan = {};
  if (s == t) return y;
  const bool forward = t > s;
  std::vector<double> knots{s};
  std::vector<double> inner;
  for (double b : breaks)
    if (std::min(s, t) < b && b < std::max(s, t)) inner.push_back(b);
  std::sort(inner.begin(), inner.end());
  if (!forward) std::reverse(inner.begin(), inner.end());
  knots.insert(knots.end(), inner.begin(), inner.end());
  knots.push_back(t);

  // Facing into a forward piece [a, b]: Right at a, Left at b.
  const Side start_side = forward ? Side::Right : Side::Left;
  const Side end_side = flip(start_side);
  long total = 0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k], b = knots[k + 1];
    const long n = std::max(1L, static_cast<long>(std::ceil(std::abs(b - a) / step - 1e-9)));
    const double h = (b - a) / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
      const double tau = a + h * static_cast<double>(i);
      const double tau_end = i + 1 == n ? b : a + h * static_cast<double>(i + 1);
      const double mid = tau + 0.5 * h;
      const State k1 = f(tau, start_side, y);
      const State k2 = f(mid, start_side, State(y + (0.5 * h) * k1));
      const State k3 = f(mid, start_side, State(y + (0.5 * h) * k2));
      const State k4 = f(tau_end, i + 1 == n ? end_side : start_side, State(y + h * k3));
      y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    total += n;
  }
  if (plan) *plan = {total, std::abs(t - s) / static_cast<double>(total)};
  return y;
}

}  // namespace pathtrans
