#pragma once

#include <vector>

#include "fireline/geometry.hpp"

namespace fireline::test {

// Slope-discretized path tree on an exact lattice: x moves by k * dx per time
// step dt, |k| <= K with K dx = eps dt. Steps whose open segment crosses a
// barrier segment are dropped. Returns m1 of the reachable x set at time T.
inline double path_tree_measure(const std::vector<Segment>& segs, double eps, double T, int steps, int K,
                                double x0 = 0.0) {
  const double dt = T / steps;
  const double dx = eps * dt / K;
  const long half = static_cast<long>(K) * steps;
  const long width = 2 * half + 1;
  Barrier b = split_components(segs);
  std::vector<Box> boxes;
  for (const auto& s : segs) {
    Box bx;
    bx.add(s.a);
    bx.add(s.b);
    boxes.push_back(bx);
  }
  std::vector<char> cur(width, 0), next(width, 0);
  cur[half] = 1;
  for (int n = 0; n < steps; ++n) {
    std::fill(next.begin(), next.end(), 0);
    const double t0 = n * dt, t1 = (n + 1) * dt;
    for (long i = 0; i < width; ++i) {
      if (!cur[i]) continue;
      const double xa = x0 + (i - half) * dx;
      for (int k = -K; k <= K; ++k) {
        long j = i + k;
        if (j < 0 || j >= width || next[j]) continue;
        Point p{t0, xa}, q{t1, x0 + (j - half) * dx};
        Box st;
        st.add(p);
        st.add(q);
        bool near = false;
        for (const auto& bx : boxes)
          if (!(bx.hi.x < st.lo.x || bx.lo.x > st.hi.x || bx.hi.y < st.lo.y || bx.lo.y > st.hi.y)) near = true;
        if (near && !visible(p, q, b)) continue;
        next[j] = 1;
      }
    }
    std::swap(cur, next);
  }
  // each reachable node stands for a cell of width dx; adjacent runs merge
  double m = 0.0;
  long run = 0;
  for (long i = 0; i <= width; ++i) {
    if (i < width && cur[i]) {
      ++run;
    } else if (run) {
      m += (run - 1) * dx;
      run = 0;
    }
  }
  return m;
}

}  // namespace fireline::test
