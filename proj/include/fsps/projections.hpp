#pragma once

#include "fsps/types.hpp"

namespace fsps {

inline double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

Vec soft_threshold(const Vec& v, double t);

Vec project_box(const Vec& v, const Vec& lo, const Vec& hi);

// Euclidean projection onto {x : e^T x = 1, x >= 0} by sort and threshold.
Vec project_simplex(const Vec& v);

// Euclidean projection onto the l1 ball of the given radius.
Vec project_l1_ball(const Vec& v, double radius);

// Euclidean projection onto the l2 ball of the given radius about the origin.
Vec project_l2_ball(const Vec& v, double radius);

// Compensated (Kahan) summation; keeps simplex membership checks well under
// the 1e-12 documentation tolerance even for long vectors.
double kahan_sum(const Vec& v);

}  // namespace fsps
