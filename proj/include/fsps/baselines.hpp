#pragma once

#include "fsps/solver.hpp"

namespace fsps {

struct DinkelbachConfig {
  int outer_cap = 50;
  int inner_budget = 200;
  double inner_tol = 1e-8;
  double rel_change_tol = 1e-6;  // same stopping rule as the splitting solver
  double c_change_tol = 1e-9;
  StopDenominator stop_denominator = StopDenominator::NextIterate;
  double inner_nu = 1.0;
  double inner_gamma = 1.0;

  void validate() const;
};

struct DinkelbachResult {
  Vec x;
  std::vector<double> c_history;  // c_0 = F(x0), then one value per outer step
  IterationTrace trace;           // one record per outer step
  RunReport report;
};

// Classical parametric scheme: x^{k+1} approximately minimizes
// g(Ax) + h(x) - c_k f(Kx) over S, then c_{k+1} = F(x^{k+1}).
DinkelbachResult dinkelbach_run(const FractionalProblem& p,
                                const DinkelbachConfig& cfg, const Vec& x0);

// Majorize-minimize subproblem solver: linearize -c f(K.) through a
// subgradient, take the primal-dual projection step, and keep the subproblem
// objective nonincreasing by growing the step modulus when needed.
Vec dinkelbach_subproblem(const FractionalProblem& p, double c, const Vec& x_init,
                          int budget, double tol = 1e-8, double nu = 1.0,
                          double gamma = 1.0);

// Simultaneous algebraic reconstruction:
//   x <- Proj_box(x + relaxation V^{-1} P^T W^{-1} (meas - P x))
// with W/V the row/column sums of P floored at 1e-12.
Vec sart_run(const SparseMat& projector, const Vec& measurements, const Vec& x0,
             int iterations, double relaxation, const Vec& lo, const Vec& hi);

struct DivergenceTraceEntry {
  int k;
  Vec x, y, z;
  double theta;
};

// Exact replay of the gamma = 0 two-cycle: the z-update is replaced by the
// minimum-norm minimizer of g*(z) - <z, Ax>, everything else is the plain
// update with beta = 1, delta = 1.
std::vector<DivergenceTraceEntry> divergence_harness(int iterations);

}  // namespace fsps
