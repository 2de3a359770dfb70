#include "fsps/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace fsps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kEps = std::numeric_limits<double>::epsilon();

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void require_positive(double v, const char* field) {
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << "FspsConfig: " << field << " must be > 0, got " << v;
    throw std::invalid_argument(os.str());
  }
}

double derive_delta(const FspsConfig& cfg, const FractionalProblem& p,
                    double gamma) {
  const double na = p.A.norm_estimate();
  return 2.0 * cfg.nu + p.h->lipschitz() + 2.0 * na * na / gamma;
}

double fenchel_gap(const FractionalProblem& p, const Vec& ax, double gamma,
                   const Vec& z) {
  const Vec w = ax - gamma * z;
  return p.g->value(w) + p.g->conjugate_value(z) - z.dot(w);
}

double merit_gamma_or_nan(const FractionalProblem& p, const Vec& kx,
                          const Vec& y, double psi) {
  const double fstar = p.f->conjugate_value(y);
  if (!std::isfinite(fstar)) return kNan;
  const double den = kx.dot(y) - fstar;
  if (den <= 0.0) return kNan;
  return psi / den;
}

}  // namespace

void FspsConfig::validate() const {
  if (!(beta > 0.0 && beta < 2.0))
    throw std::invalid_argument("FspsConfig: beta must lie in (0,2)");
  require_positive(nu, "nu");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("FspsConfig: q must lie in (0,1)");
  if (delta0 < 0.0) throw std::invalid_argument("FspsConfig: delta0 must be >= 0");
  if (theta0 < 0.0) throw std::invalid_argument("FspsConfig: theta0 must be >= 0");
  require_positive(gamma0, "gamma0");
  require_positive(epsilon, "epsilon");
  if (max_iterations < 1)
    throw std::invalid_argument("FspsConfig: max_iterations must be >= 1");
  require_positive(rel_change_tol, "rel_change_tol");
  if (gamma_backtrack_budget < 1)
    throw std::invalid_argument("FspsConfig: gamma_backtrack_budget must be >= 1");
  if (!(line_search.mu > 0.0 && line_search.mu < 1.0))
    throw std::invalid_argument("FspsConfig: line_search.mu must lie in (0,1)");
  if (!(line_search.eta > 1.0))
    throw std::invalid_argument("FspsConfig: line_search.eta must be > 1");
  require_positive(line_search.c, "line_search.c");
  if (line_search.memory < 0)
    throw std::invalid_argument("FspsConfig: line_search.memory must be >= 0");
  if (line_search.trial_budget < 1)
    throw std::invalid_argument("FspsConfig: line_search.trial_budget must be >= 1");
}

double psi_value(const FractionalProblem& p, const Vec& x, const Vec& z,
                 const Vec& u, double delta, double gamma) {
  if (!p.set.is_member(x)) return kInf;
  const double gstar = p.g->conjugate_value(z);
  if (!std::isfinite(gstar)) return -kInf;  // flagged: z escaped dom g*
  return z.dot(p.A.apply(x)) - gstar + p.h->value(x) +
         0.5 * delta * (x - u).squaredNorm() - 0.5 * gamma * z.squaredNorm();
}

double merit_pi(const FractionalProblem& p, const Vec& x, const Vec& z,
                const Vec& u, double delta, double gamma) {
  const double den = p.denominator(x);
  if (den <= 0.0)
    throw ModelViolationError("merit_pi: nonpositive denominator f(Kx)");
  return psi_value(p, x, z, u, delta, gamma) / den;
}

double merit_gamma(const FractionalProblem& p, const Vec& x, const Vec& y,
                   const Vec& z, const Vec& u, double delta, double gamma) {
  const double fstar = p.f->conjugate_value(y);
  if (!std::isfinite(fstar))
    throw std::domain_error("merit_gamma: f*(y) = +inf");
  const double den = p.K.apply(x).dot(y) - fstar;
  if (den <= 0.0)
    throw std::domain_error("merit_gamma: nonpositive Fenchel denominator");
  return psi_value(p, x, z, u, delta, gamma) / den;
}

SolverState fsps_step(const FractionalProblem& p, const SolverState& state,
                      double beta) {
  if (!(state.gamma > 0.0))
    throw std::invalid_argument("fsps_step: gamma must be > 0");
  SolverState next;
  next.y = p.f->subgradient(p.K.apply(state.x));
  const Vec arg = state.u + (state.theta / state.delta) * p.K.adjoint(next.y) -
                  (1.0 / state.delta) * p.h->gradient(state.x) -
                  (1.0 / state.delta) * p.A.adjoint(state.z);
  next.x = p.set.project(arg);
  next.u = (1.0 - beta) * state.u + beta * next.x;
  next.z = p.g->prox_conjugate(p.A.apply(next.x) / state.gamma, 1.0 / state.gamma);
  const double den = p.denominator(next.x);
  if (den <= 0.0)
    throw ModelViolationError("fsps_step: nonpositive denominator f(Kx)");
  next.theta = psi_value(p, next.x, next.z, next.u, state.delta, state.gamma) / den;
  next.gamma = state.gamma;
  next.delta = state.delta;
  next.k = state.k + 1;
  return next;
}

bool stopping_check(const Vec& x_next, const Vec& x_prev, double tol,
                    StopDenominator den) {
  const double dx = (x_next - x_prev).norm();
  if (dx <= kEps) return true;  // machine-precision floor
  const double scale = den == StopDenominator::PrevIterate
                           ? std::max(kEps, x_prev.norm())
                           : std::max(x_next.norm(), kEps);
  return dx / scale <= tol;
}

SolveResult adaptive_fsps_run(const FractionalProblem& p, const FspsConfig& cfg,
                              const Vec& x0, const Vec& z0, const Vec& u0) {
  cfg.validate();
  if (!p.set.is_member(x0, kMembershipTol))
    throw ModelViolationError("adaptive_fsps_run: x0 is not feasible");

  SolveResult out;
  IterationTrace& trace = out.trace;
  const auto t0 = std::chrono::steady_clock::now();

  Vec x = x0, u = u0, z = z0;
  double gamma = cfg.gamma0;
  double delta = cfg.delta0 > 0.0 ? cfg.delta0 : derive_delta(cfg, p, gamma);
  double theta = cfg.theta0;
  if (theta == 0.0) {
    const double f0 = p.objective_or_inf(x0);
    if (!std::isfinite(f0))
      throw ModelViolationError("adaptive_fsps_run: F(x0) is not finite");
    theta = std::max(f0, 1e-8);
  }

  Vec kx = p.K.apply(x);
  std::string termination = "max_iterations";
  int k = 0;
  for (; k < cfg.max_iterations; ++k) {
    const Vec y = p.f->subgradient(kx);
    const Vec arg = u + (theta / delta) * p.K.adjoint(y) -
                    (1.0 / delta) * p.h->gradient(x) -
                    (1.0 / delta) * p.A.adjoint(z);
    const Vec x_next = p.set.project(arg);
    const Vec u_next = (1.0 - cfg.beta) * u + cfg.beta * x_next;
    const Vec kx_next = p.K.apply(x_next);
    const double f_next = p.f->value(kx_next);
    if (f_next <= 0.0)
      throw ModelViolationError("adaptive_fsps_run: nonpositive f(Kx)");

    const Vec ax_next = p.A.apply(x_next);
    double gamma_trial = gamma, psi = 0.0, theta_next = 0.0;
    Vec z_next;
    int jk = 0;
    bool found = false;
    for (; jk < cfg.gamma_backtrack_budget; ++jk) {
      gamma_trial = gamma * std::pow(cfg.q, jk);
      z_next = p.g->prox_conjugate(ax_next / gamma_trial, 1.0 / gamma_trial);
      psi = psi_value(p, x_next, z_next, u_next, delta, gamma_trial);
      theta_next = psi / f_next;
      if (theta_next > 0.0) {
        found = true;
        break;
      }
    }
    if (!found)
      throw ThetaBacktrackError(
          "adaptive_fsps_run: theta-positivity backtracking exhausted; the "
          "numerator likely fails alpha > 0 - consider shift_numerator",
          trace);

    double gamma_next = gamma_trial;
    double delta_next = derive_delta(cfg, p, gamma_next);
    const double z_norm = z_next.norm();
    const bool guard = z_norm > std::min(cfg.epsilon / gamma_next,
                                         std::sqrt(2.0 * cfg.epsilon / gamma_next));
    if (guard) {
      gamma_next *= cfg.q;
      delta_next = derive_delta(cfg, p, gamma_next);
    }

    TraceRecord rec;
    rec.k = k + 1;
    rec.theta = theta_next;
    rec.gamma = gamma_next;
    rec.delta = delta_next;
    rec.psi = psi;
    rec.objective = p.objective_or_inf(x_next);
    rec.dx = (x_next - x).norm();
    rec.du = (u_next - u).norm();
    rec.dz = (z_next - z).norm();
    rec.gamma_backtracks = jk;
    rec.ls_trials = 0;
    rec.time_s = seconds_since(t0);
    rec.f_den = f_next;
    rec.merit_gamma = merit_gamma_or_nan(p, kx_next, y, psi);
    rec.fenchel_gap = fenchel_gap(p, ax_next, gamma_trial, z_next);
    rec.z_norm = z_norm;
    rec.guard_fired = guard;
    trace.records.push_back(rec);

    const bool stop = stopping_check(x_next, x, cfg.rel_change_tol,
                                     cfg.stop_denominator);
    x = x_next;
    u = u_next;
    z = z_next;
    kx = kx_next;
    theta = theta_next;
    gamma = gamma_next;
    delta = delta_next;
    if (stop) {
      ++k;
      termination = "tolerance";
      break;
    }
  }

  out.state = SolverState{x, p.f->subgradient(kx), z, u, theta, gamma, delta, k};
  out.report.termination = termination;
  out.report.iterations = static_cast<int>(trace.records.size());
  out.report.wall_time_s = seconds_since(t0);
  out.report.objective = p.objective_or_inf(x);
  return out;
}

SolveResult nls_run(const FractionalProblem& p, const FspsConfig& cfg,
                    const Vec& x0, const Vec& u0) {
  cfg.validate();
  if (!p.set.is_member(x0, kMembershipTol))
    throw ModelViolationError("nls_run: x0 is not feasible");

  SolveResult out;
  IterationTrace& trace = out.trace;
  const auto t0 = std::chrono::steady_clock::now();
  const LineSearchParams& ls = cfg.line_search;

  Vec x = x0, u = u0;
  Vec z_prev = Vec::Zero(p.g->dim());
  double gamma = cfg.gamma0;
  double delta = cfg.delta0 > 0.0 ? cfg.delta0 : derive_delta(cfg, p, gamma);

  std::vector<double> f_history{p.objective_or_inf(x)};
  std::string termination = "max_iterations";
  int k = 0;
  for (; k < cfg.max_iterations; ++k) {
    const Vec kx = p.K.apply(x);
    const double fkx = p.f->value(kx);
    if (fkx <= 0.0)
      throw ModelViolationError("nls_run: nonpositive f(Kx) at the iterate");
    const Vec ax = p.A.apply(x);

    // gamma backtracking on Psi positivity; theta and z come from x^k.
    double theta = 0.0, psi = 0.0, gamma_used = gamma;
    Vec z;
    bool found = false;
    for (int j = 0; j < cfg.gamma_backtrack_budget; ++j) {
      gamma_used = gamma * std::pow(cfg.q, j);
      z = p.g->prox_conjugate(ax / gamma_used, 1.0 / gamma_used);
      psi = psi_value(p, x, z, u, delta, gamma_used);
      theta = psi / fkx;
      if (theta > 0.0) {
        found = true;
        gamma = gamma_used;
        break;
      }
    }
    if (!found)
      throw ThetaBacktrackError(
          "nls_run: theta-positivity backtracking exhausted; the numerator "
          "likely fails alpha > 0 - consider shift_numerator",
          trace);

    const double delta_base = derive_delta(cfg, p, gamma);
    const Vec y = p.f->subgradient(kx);
    const Vec dir = theta * p.K.adjoint(y) - p.h->gradient(x) - p.A.adjoint(z);

    double f_window = f_history.back();
    const std::size_t lo =
        f_history.size() > static_cast<std::size_t>(ls.memory) + 1
            ? f_history.size() - static_cast<std::size_t>(ls.memory) - 1
            : 0;
    for (std::size_t i = lo; i < f_history.size(); ++i)
      f_window = std::max(f_window, f_history[i]);

    Vec x_next;
    int trials = 0;
    bool accepted = false;
    for (int s = 0; s < ls.trial_budget; ++s) {
      const double delta_trial = ls.mu * std::pow(ls.eta, s) * delta_base;
      x_next = p.set.project(u + dir / delta_trial);
      ++trials;
      const double f_val = p.objective_or_inf(x_next);
      if (f_val <= f_window - 0.5 * ls.c * (x - x_next).squaredNorm()) {
        accepted = true;
        break;
      }
    }
    // Budget exhausted: keep the final (smallest-step) trial and flag it.
    const Vec u_next = u - cfg.beta * (u - x_next);

    double gamma_next = gamma;
    double delta_next = delta;
    const double z_norm = z.norm();
    const bool guard = z_norm > std::min(cfg.epsilon / gamma,
                                         std::sqrt(2.0 * cfg.epsilon / gamma));
    if (guard) {
      gamma_next = gamma * cfg.q;
      delta_next = derive_delta(cfg, p, gamma_next);
    }

    TraceRecord rec;
    rec.k = k + 1;
    rec.theta = theta;
    rec.gamma = gamma_next;
    rec.delta = delta_next;
    rec.psi = psi;
    rec.objective = p.objective_or_inf(x_next);
    rec.dx = (x_next - x).norm();
    rec.du = (u_next - u).norm();
    rec.dz = (z - z_prev).norm();
    rec.gamma_backtracks = 0;
    rec.ls_trials = trials;
    rec.time_s = seconds_since(t0);
    rec.f_den = fkx;
    rec.merit_gamma = kNan;
    rec.fenchel_gap = fenchel_gap(p, ax, gamma_used, z);
    rec.z_norm = z_norm;
    rec.ls_flagged = !accepted;
    rec.guard_fired = guard;
    trace.records.push_back(rec);

    f_history.push_back(rec.objective);
    const bool stop = stopping_check(x_next, x, cfg.rel_change_tol,
                                     cfg.stop_denominator);
    z_prev = z;
    x = x_next;
    u = u_next;
    gamma = gamma_next;
    delta = delta_next;
    if (stop) {
      ++k;
      termination = "tolerance";
      break;
    }
  }

  out.state.x = x;
  out.state.u = u;
  out.state.z = z_prev;
  out.state.y = p.f->subgradient(p.K.apply(x));
  out.state.gamma = gamma;
  out.state.delta = delta;
  out.state.theta = trace.records.empty() ? 0.0 : trace.records.back().theta;
  out.state.k = k;
  out.report.termination = termination;
  out.report.iterations = static_cast<int>(trace.records.size());
  out.report.wall_time_s = seconds_since(t0);
  out.report.objective = p.objective_or_inf(x);
  return out;
}

int gamma_freeze_index(const IterationTrace& trace) {
  if (trace.records.empty()) return 0;
  const double last = trace.records.back().gamma;
  int idx = static_cast<int>(trace.records.size()) - 1;
  while (idx > 0 && trace.records[idx - 1].gamma == last) --idx;
  return idx;
}

std::vector<DescentViolation> descent_check(const IterationTrace& trace,
                                            double beta, double nu,
                                            double slack) {
  std::vector<DescentViolation> out;
  const int freeze = gamma_freeze_index(trace);
  const int n = static_cast<int>(trace.records.size());
  if (n < freeze + 3) return out;
  const double gamma = trace.records.back().gamma;
  const double delta = trace.records.back().delta;
  const double c1 = nu;
  const double c2 = delta * (2.0 - beta) / (2.0 * beta);
  const double c3 = 0.5 * gamma;
  for (int i = freeze + 1; i + 1 < n; ++i) {
    const TraceRecord& cur = trace.records[i];
    const TraceRecord& nxt = trace.records[i + 1];
    const double lhs = nxt.psi - cur.theta * nxt.f_den;
    const double rhs = -c1 * nxt.dx * nxt.dx - c2 * nxt.du * nxt.du -
                       c3 * nxt.dz * nxt.dz;
    if (lhs > rhs + slack) out.push_back({nxt.k, lhs, rhs});
  }
  return out;
}

void IterationTrace::write_csv(std::ostream& os,
                               const std::optional<std::string>& method_tag) const {
  os << "k,theta,gamma,delta,psi,F,dx,du,dz,jk,ls_trials,time_s";
  if (method_tag) os << ",method";
  os << "\n";
  char buf[512];
  for (const TraceRecord& r : records) {
    std::snprintf(buf, sizeof(buf),
                  "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%.6f",
                  r.k, r.theta, r.gamma, r.delta, r.psi, r.objective, r.dx, r.du,
                  r.dz, r.gamma_backtracks, r.ls_trials, r.time_s);
    os << buf;
    if (method_tag) os << "," << *method_tag;
    os << "\n";
  }
}

}  // namespace fsps
