#include "fsps/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "fsps/problems.hpp"

namespace fsps {

namespace {
double subproblem_objective(const FractionalProblem& p, const Vec& x, double c) {
  return p.g->value(p.A.apply(x)) + p.h->value(x) - c * p.f->value(p.K.apply(x));
}
}  // namespace

void DinkelbachConfig::validate() const {
  if (outer_cap < 1 || inner_budget < 1)
    throw std::invalid_argument("DinkelbachConfig: budgets must be positive");
  if (!(inner_tol > 0) || !(rel_change_tol > 0) || !(c_change_tol > 0))
    throw std::invalid_argument("DinkelbachConfig: tolerances must be positive");
  if (!(inner_nu > 0) || !(inner_gamma > 0))
    throw std::invalid_argument("DinkelbachConfig: inner parameters must be positive");
}

Vec dinkelbach_subproblem(const FractionalProblem& p, double c, const Vec& x_init,
                          int budget, double tol, double nu, double gamma) {
  if (budget < 1)
    throw std::invalid_argument("dinkelbach_subproblem: budget must be >= 1");
  const double norm_a = p.A.norm_estimate();
  double delta = 2.0 * nu + p.h->lipschitz() + 2.0 * norm_a * norm_a / gamma;

  Vec x = x_init;
  Vec u = x;
  Vec z = Vec::Zero(p.g->dim());
  double phi = subproblem_objective(p, x, c);
  for (int it = 0; it < budget; ++it) {
    const Vec y = p.f->subgradient(p.K.apply(x));
    const Vec dir = c * p.K.adjoint(y) - p.h->gradient(x) - p.A.adjoint(z);
    Vec x_next = p.set.project(u + dir / delta);
    double phi_next = subproblem_objective(p, x_next, c);
    // Majorization safeguard: shrink the step until the true subproblem
    // objective does not increase.
    int grow = 0;
    while (phi_next > phi + 1e-12 && grow < 60) {
      delta *= 2.0;
      x_next = p.set.project(u + dir / delta);
      phi_next = subproblem_objective(p, x_next, c);
      ++grow;
    }
    if (phi_next > phi + 1e-12) break;  // no further descent available
    const Vec u_next = x_next;  // beta = 1 extrapolation
    const Vec z_next =
        p.g->prox_conjugate(p.A.apply(x_next) / gamma, 1.0 / gamma);
    const double rel =
        (x_next - x).norm() / std::max(x_next.norm(),
                                       std::numeric_limits<double>::epsilon());
    x = x_next;
    u = u_next;
    z = z_next;
    phi = phi_next;
    if (rel < tol) break;
  }
  return x;
}

DinkelbachResult dinkelbach_run(const FractionalProblem& p,
                                const DinkelbachConfig& cfg, const Vec& x0) {
  cfg.validate();
  if (!p.set.is_member(x0, kMembershipTol))
    throw ModelViolationError("dinkelbach_run: x0 is not feasible");
  const double f0 = p.denominator(x0);
  if (f0 <= 0.0)
    throw ModelViolationError("dinkelbach_run: nonpositive f(Kx0)");

  const auto t0 = std::chrono::steady_clock::now();
  DinkelbachResult out;
  Vec x = x0;
  double c = p.objective_or_inf(x);
  if (!std::isfinite(c))
    throw ModelViolationError("dinkelbach_run: F(x0) is not finite");
  out.c_history.push_back(c);

  std::string termination = "max_iterations";
  for (int k = 0; k < cfg.outer_cap; ++k) {
    const Vec x_next = dinkelbach_subproblem(p, c, x, cfg.inner_budget,
                                             cfg.inner_tol, cfg.inner_nu,
                                             cfg.inner_gamma);
    const double c_next = p.objective_or_inf(x_next);
    if (!std::isfinite(c_next))
      throw ModelViolationError("dinkelbach_run: inner solver left the domain");

    TraceRecord rec;
    rec.k = k + 1;
    rec.theta = c_next;  // the parametric level plays the role of theta
    rec.objective = c_next;
    rec.dx = (x_next - x).norm();
    rec.f_den = p.denominator(x_next);
    rec.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                               t0)
                     .count();
    out.trace.records.push_back(rec);
    out.c_history.push_back(c_next);

    const bool x_stop = stopping_check(x_next, x, cfg.rel_change_tol,
                                       cfg.stop_denominator);
    const bool c_stop = std::abs(c_next - c) <= cfg.c_change_tol;
    x = x_next;
    c = c_next;
    if (x_stop && c_stop) {
      termination = "tolerance";
      break;
    }
  }
  out.x = x;
  out.report.termination = termination;
  out.report.iterations = static_cast<int>(out.trace.records.size());
  out.report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.report.objective = c;
  return out;
}

Vec sart_run(const SparseMat& projector, const Vec& measurements, const Vec& x0,
             int iterations, double relaxation, const Vec& lo, const Vec& hi) {
  if (iterations < 1)
    throw std::invalid_argument("sart_run: iterations must be >= 1");
  if (measurements.size() != projector.rows() || x0.size() != projector.cols())
    throw std::invalid_argument("sart_run: dimension mismatch");

  Vec row_sums = Vec::Zero(projector.rows());
  Vec col_sums = Vec::Zero(projector.cols());
  for (int r = 0; r < projector.outerSize(); ++r)
    for (SparseMat::InnerIterator it(projector, r); it; ++it) {
      row_sums[it.row()] += it.value();
      col_sums[it.col()] += it.value();
    }
  row_sums = row_sums.cwiseMax(1e-12);
  col_sums = col_sums.cwiseMax(1e-12);

  Vec x = x0;
  for (int it = 0; it < iterations; ++it) {
    const Vec residual = (measurements - projector * x).cwiseQuotient(row_sums);
    x += relaxation * (projector.transpose() * residual).cwiseQuotient(col_sums);
    x = x.cwiseMax(lo).cwiseMin(hi);
  }
  return x;
}

std::vector<DivergenceTraceEntry> divergence_harness(int iterations) {
  if (iterations < 2)
    throw std::invalid_argument("divergence_harness: iterations must be >= 2");
  const DivergenceInstance inst = make_divergence_instance();
  const FractionalProblem& p = inst.problem;

  // Minimum-norm minimizer of g*(z) - <z, w> for g = l1: sign pattern on the
  // support of w, zero elsewhere.
  const auto min_norm_z = [](const Vec& w) {
    Vec z = Vec::Zero(w.size());
    for (Index i = 0; i < w.size(); ++i)
      if (w[i] > 0.0)
        z[i] = 1.0;
      else if (w[i] < 0.0)
        z[i] = -1.0;
    return z;
  };

  Vec x = inst.x0, u = inst.x0, z = inst.x0;
  double theta = inst.theta0;
  constexpr double delta = 1.0;  // delta_k = 1, gamma_k = 0, beta = 1
  std::vector<DivergenceTraceEntry> out;
  out.reserve(iterations);
  for (int k = 0; k < iterations; ++k) {
    const Vec y = p.f->subgradient(p.K.apply(x));
    const Vec arg = u + (theta / delta) * p.K.adjoint(y) -
                    (1.0 / delta) * p.h->gradient(x) -
                    (1.0 / delta) * p.A.adjoint(z);
    const Vec x_next = p.set.project(arg);
    const Vec u_next = x_next;  // beta = 1
    const Vec z_next = min_norm_z(p.A.apply(x_next));
    const double psi = psi_value(p, x_next, z_next, u_next, delta, 0.0);
    theta = psi / p.denominator(x_next);
    x = x_next;
    u = u_next;
    z = z_next;
    out.push_back({k + 1, x, y, z, theta});
  }
  return out;
}

}  // namespace fsps
