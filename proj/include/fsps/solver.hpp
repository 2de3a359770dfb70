#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsps/problem.hpp"

namespace fsps {

// Stopping-rule denominator: ||dx|| / max(eps, ||x^k||) versus
// ||dx|| / max(||x^{k+1}||, eps).
enum class StopDenominator { PrevIterate, NextIterate };

struct LineSearchParams {
  double mu = 1e-3;      // in (0,1)
  double eta = 1.5;      // > 1
  double c = 1e-4;       // > 0
  int memory = 5;        // T >= 0
  int trial_budget = 250;
};

struct FspsConfig {
  double beta = 1.0;    // extrapolation, in (0,2)
  double nu = 1.0;      // > 0
  double q = 0.995;     // backtracking shrink, in (0,1)
  double delta0 = 0.0;  // 0 derives 2 nu + L + 2||A||^2 / gamma0
  double theta0 = 0.0;  // 0 derives F(x0) clamped below by 1e-8
  double gamma0 = 1.0;
  double epsilon = 1.0;  // z-norm guard level, > 0
  int max_iterations = 500;
  double rel_change_tol = 1e-6;
  StopDenominator stop_denominator = StopDenominator::NextIterate;
  int gamma_backtrack_budget = 10000;  // per-iteration cap on j_k
  LineSearchParams line_search;

  void validate() const;  // throws std::invalid_argument naming the field
};

struct SolverState {
  Vec x, y, z, u;
  double theta = 0.0;
  double gamma = 1.0;
  double delta = 1.0;
  int k = 0;
};

struct TraceRecord {
  int k = 0;
  double theta = 0.0, gamma = 0.0, delta = 0.0, psi = 0.0, objective = 0.0;
  double dx = 0.0, du = 0.0, dz = 0.0;
  int gamma_backtracks = 0;
  int ls_trials = 0;
  double time_s = 0.0;
  // extras kept in memory for invariant checks; not part of the CSV contract
  double f_den = 0.0;        // f(K x^k)
  double merit_gamma = 0.0;  // Gamma at W^k (NaN when unavailable)
  double fenchel_gap = 0.0;  // g(w) + g*(z) - <z,w> at w = Ax - gamma z
  double z_norm = 0.0;
  bool ls_flagged = false;
  bool guard_fired = false;
};

struct IterationTrace {
  std::vector<TraceRecord> records;
  // Columns: k,theta,gamma,delta,psi,F,dx,du,dz,jk,ls_trials,time_s
  // (plus a trailing method column when a tag is supplied).
  void write_csv(std::ostream& os,
                 const std::optional<std::string>& method_tag = {}) const;
};

struct RunReport {
  std::string termination;  // "tolerance" | "max_iterations" | ...
  int iterations = 0;
  double wall_time_s = 0.0;
  double objective = 0.0;
};

// Thrown when the positivity backtracking cannot achieve theta > 0 within the
// budget; carries the partial trace. Usually means alpha <= 0, i.e. the model
// needs a numerator shift.
class ThetaBacktrackError : public std::runtime_error {
 public:
  ThetaBacktrackError(const std::string& msg, IterationTrace trace)
      : std::runtime_error(msg), trace(std::move(trace)) {}
  IterationTrace trace;
};

// Augmented primal-dual value
//   <z, Ax> - g*(z) + h(x) + i_S(x) + (delta/2)||x-u||^2 - (gamma/2)||z||^2.
double psi_value(const FractionalProblem& p, const Vec& x, const Vec& z,
                 const Vec& u, double delta, double gamma);

// Pi = Psi / f(Kx); equals theta_k along adaptive iterates.
double merit_pi(const FractionalProblem& p, const Vec& x, const Vec& z,
                const Vec& u, double delta, double gamma);

// Gamma = Psi / (<Kx, y> - f*(y)); throws std::domain_error when the
// denominator is nonpositive or f*(y) = +inf.
double merit_gamma(const FractionalProblem& p, const Vec& x, const Vec& y,
                   const Vec& z, const Vec& u, double delta, double gamma);

// One conceptual update with caller-supplied gamma/delta (taken from state).
SolverState fsps_step(const FractionalProblem& p, const SolverState& state,
                      double beta);

struct SolveResult {
  SolverState state;
  IterationTrace trace;
  RunReport report;
};

// Adaptive scheme: theta-positivity backtracking on gamma, the delta formula
// 2 nu + L + 2||A||^2 / gamma, and the z-norm guard.
SolveResult adaptive_fsps_run(const FractionalProblem& p, const FspsConfig& cfg,
                              const Vec& x0, const Vec& z0, const Vec& u0);

// Adaptive scheme with nonmonotone line search. theta and z are computed from
// x^k before the step; accepted steps satisfy the windowed decrease test.
SolveResult nls_run(const FractionalProblem& p, const FspsConfig& cfg,
                    const Vec& x0, const Vec& u0);

bool stopping_check(const Vec& x_next, const Vec& x_prev, double tol,
                    StopDenominator den = StopDenominator::NextIterate);

struct DescentViolation {
  int k;
  double lhs, rhs;
};

// Verifies Psi_{k+1} - theta_k f(Kx^{k+1}) <= -c1 dx^2 - c2 du^2 - c3 dz^2
// with c1 = nu, c2 = delta(2-beta)/(2 beta), c3 = gamma/2 past the gamma
// freeze index. Violations are data, not errors.
std::vector<DescentViolation> descent_check(const IterationTrace& trace,
                                            double beta, double nu,
                                            double slack = 1e-8);

// First index into trace.records after which gamma never changes.
int gamma_freeze_index(const IterationTrace& trace);

}  // namespace fsps
