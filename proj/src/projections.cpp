#include "fsps/projections.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fsps {

Vec soft_threshold(const Vec& v, double t) {
  Vec out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = soft_threshold(v[i], t);
  return out;
}

Vec project_box(const Vec& v, const Vec& lo, const Vec& hi) {
  return v.cwiseMax(lo).cwiseMin(hi);
}

double kahan_sum(const Vec& v) {
  double sum = 0.0, comp = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double y = v[i] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

Vec project_simplex(const Vec& v) {
  const Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Index j = 0; j < n; ++j) {
    cumsum += u[j];
    const double cand = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - cand > 0.0) theta = cand;
  }
  Vec out(n);
  for (Index i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

Vec project_l1_ball(const Vec& v, double radius) {
  double l1 = 0.0;
  for (Index i = 0; i < v.size(); ++i) l1 += std::abs(v[i]);
  if (l1 <= radius) return v;
  const Vec w = project_simplex(v.cwiseAbs() / radius);
  Vec out(v.size());
  for (Index i = 0; i < v.size(); ++i)
    out[i] = (v[i] < 0.0 ? -radius : radius) * w[i];
  return out;
}

Vec project_l2_ball(const Vec& v, double radius) {
  const double nrm = v.norm();
  if (nrm <= radius) return v;
  return v * (radius / nrm);
}

}  // namespace fsps
