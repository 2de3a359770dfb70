#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>

#include "fsps/problem.hpp"

namespace fsps {

// ||u - v|| divided by the number of entries (not its square root).
double rmse(const Vec& u, const Vec& v);

// Mean of local similarity indices over non-overlapping 8x8 windows
// (partial border windows dropped); c1 = c2 = 0.05, 1/63 moment scaling.
double ssim(const Vec& u, const Vec& v, int rows, int cols);

// ||x - x_true|| / ||x_true||
double rerr(const Vec& x, const Vec& x_true);

// ||max(-x, 0)||_1 + | ||x||_1 - 1 |, the simplex infeasibility measure.
double infeas(const Vec& x);

struct StatResult {
  double value = 0.0;
  // True when some oracle lacks a parametric subdifferential and only a
  // feasible selection entered the minimization.
  bool upper_bound_only = false;
};

// Lifted limiting stationarity residual
//   dist(0, (A* dg(Ax) + grad h(x) + N_S(x)) f(Kx) - (g(Ax)+h(x)+shift) K* df(Kx))
// computed by projected gradient over the parametrized subdifferentials.
// Throws UnsupportedOperationError when the feasible set carries no
// normal-cone model.
StatResult stat_residual(const FractionalProblem& p, const Vec& x,
                         int iterations = 500);

struct MetricReport {
  double obj = 0.0;
  double infeas = 0.0;
  std::optional<double> stat;
  bool stat_upper_bound = false;
  std::optional<double> rmse;
  std::optional<double> ssim;
  std::optional<double> rerr;
  double wall_time_s = 0.0;
  int iterations = 0;
};

nlohmann::json metric_report_to_json(const MetricReport& r);

}  // namespace fsps
