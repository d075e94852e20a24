#pragma once

#include <cstdint>
#include <functional>

#include "qpcert/rng.hpp"
#include "qpcert/vector.hpp"

namespace qpcert {

/// Multi-start compass (coordinate pattern) maximization over the box
/// [-1,1]^d. Derivative-free; the objective carries its own penalties.
/// Deterministic for a fixed seed and start count.
inline Vector compass_maximize(const std::function<double(const Vector&)>& f,
                               std::size_t d, int starts, std::uint64_t seed,
                               int iters_per_start = 200) {
  Rng rng(seed);
  Vector best = Vector::zeros(d);
  double best_v = f(best);
  for (int s = 0; s < starts; ++s) {
    Vector u = Vector::zeros(d);
    for (std::size_t j = 0; j < d; ++j) u.ref(j) = rng.uniform(-1.0, 1.0);
    double v = f(u);
    double step = 0.5;
    for (int it = 0; it < iters_per_start && step > 1e-7; ++it) {
      bool improved = false;
      for (std::size_t j = 0; j < d; ++j) {
        for (double dir : {+1.0, -1.0}) {
          Vector y = u;
          double yj = y[j] + dir * step;
          if (yj > 1.0) yj = 1.0;
          if (yj < -1.0) yj = -1.0;
          y.ref(j) = yj;
          const double vy = f(y);
          if (vy > v + 1e-15) {
            u = y;
            v = vy;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (v > best_v) {
      best_v = v;
      best = u;
    }
  }
  return best;
}

}  // namespace qpcert
