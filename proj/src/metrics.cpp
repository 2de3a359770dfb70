#include "fsps/metrics.hpp"

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "fsps/projections.hpp"

namespace fsps {

double rmse(const Vec& u, const Vec& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("rmse: dimension mismatch");
  return (u - v).norm() / static_cast<double>(u.size());
}

double ssim(const Vec& u, const Vec& v, int rows, int cols) {
  if (u.size() != v.size() ||
      u.size() != static_cast<Index>(rows) * cols)
    throw std::invalid_argument("ssim: dimension mismatch");
  if (rows < 8 || cols < 8)
    throw std::invalid_argument("ssim: images smaller than one 8x8 window");
  constexpr double c1 = 0.05, c2 = 0.05;
  double acc = 0.0;
  int windows = 0;
  for (int bi = 0; bi + 8 <= rows; bi += 8) {
    for (int bj = 0; bj + 8 <= cols; bj += 8) {
      double mu_u = 0.0, mu_v = 0.0;
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
          const Index id = static_cast<Index>(bi + i) * cols + (bj + j);
          mu_u += u[id];
          mu_v += v[id];
        }
      mu_u /= 64.0;
      mu_v /= 64.0;
      double var_u = 0.0, var_v = 0.0, cov = 0.0;
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
          const Index id = static_cast<Index>(bi + i) * cols + (bj + j);
          const double du = u[id] - mu_u, dv = v[id] - mu_v;
          var_u += du * du;
          var_v += dv * dv;
          cov += du * dv;
        }
      var_u /= 63.0;
      var_v /= 63.0;
      cov /= 63.0;
      acc += ((2.0 * mu_u * mu_v + c1) * (2.0 * cov + c2)) /
             ((mu_u * mu_u + mu_v * mu_v + c1) * (var_u + var_v + c2));
      ++windows;
    }
  }
  return acc / windows;
}

double rerr(const Vec& x, const Vec& x_true) {
  const double n = x_true.norm();
  if (n <= 0.0) throw std::invalid_argument("rerr: zero ground truth");
  return (x - x_true).norm() / n;
}

double infeas(const Vec& x) {
  double neg = 0.0, l1 = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    neg += std::max(-x[i], 0.0);
    l1 += std::abs(x[i]);
  }
  return neg + std::abs(l1 - 1.0);
}

namespace {

// One parametrized convex factor of the product set the residual ranges over.
struct SubdiffParam {
  SubdifferentialSet set;
  Vec weights;  // Hull: simplex weights
  Vec point;    // CoordBox / balls: the current element (anchor included)

  explicit SubdiffParam(SubdifferentialSet s) : set(std::move(s)) {
    switch (set.kind) {
      case SubdifferentialSet::Kind::Hull:
        weights = Vec::Constant(static_cast<Index>(set.vertices.size()),
                                1.0 / static_cast<double>(set.vertices.size()));
        break;
      default:
        point = set.representative();
    }
  }

  Vec element() const {
    if (set.kind == SubdifferentialSet::Kind::Hull) {
      Vec out = Vec::Zero(set.dim());
      for (std::size_t i = 0; i < set.vertices.size(); ++i)
        out += weights[static_cast<Index>(i)] * set.vertices[i];
      return out;
    }
    return point;
  }

  // Scale of the linearization (sup-norm bound of d element / d params).
  double scale() const {
    switch (set.kind) {
      case SubdifferentialSet::Kind::Hull: {
        double mx = 0.0;
        for (const Vec& v : set.vertices) mx = std::max(mx, v.norm());
        return mx;
      }
      default:
        return 1.0;
    }
  }

  void step(const Vec& grad_element, double step_size) {
    switch (set.kind) {
      case SubdifferentialSet::Kind::Singleton:
        return;
      case SubdifferentialSet::Kind::Hull: {
        Vec g(weights.size());
        for (std::size_t i = 0; i < set.vertices.size(); ++i)
          g[static_cast<Index>(i)] = set.vertices[i].dot(grad_element);
        weights = project_simplex(weights - step_size * g);
        return;
      }
      case SubdifferentialSet::Kind::CoordBox:
        point = (point - step_size * grad_element)
                    .cwiseMax(set.lo)
                    .cwiseMin(set.hi);
        return;
      case SubdifferentialSet::Kind::L1Ball:
        point = set.anchor + project_l1_ball(point - set.anchor -
                                                 step_size * grad_element,
                                             set.radius);
        return;
      case SubdifferentialSet::Kind::L2Ball:
        point = set.anchor + project_l2_ball(point - set.anchor -
                                                 step_size * grad_element,
                                             set.radius);
        return;
    }
  }
};

SubdifferentialSet singleton_set(Vec v) {
  SubdifferentialSet s;
  s.kind = SubdifferentialSet::Kind::Singleton;
  s.anchor = std::move(v);
  return s;
}

}  // namespace

StatResult stat_residual(const FractionalProblem& p, const Vec& x,
                         int iterations) {
  if (!p.set.has_normal_cone_model())
    throw UnsupportedOperationError(
        "stat_residual: feasible set has no normal-cone model");
  if (!p.set.is_member(x, kMembershipTol))
    throw ModelViolationError("stat_residual: x is not feasible");

  const Vec ax = p.A.apply(x);
  const Vec kx = p.K.apply(x);
  const double f_val = p.f->value(kx);
  if (f_val <= 0.0)
    throw ModelViolationError("stat_residual: nonpositive f(Kx)");
  const double num_val = p.g->value(ax) + p.h->value(x) + p.shift;
  const Vec grad_h = p.h->gradient(x);
  const NormalConeModel cone = p.set.normal_cone(x);

  StatResult result;
  const auto model_or_selection = [&result](const ConvexFunction& fn,
                                            const Vec& at) {
    if (fn.has_subdifferential_model()) return fn.subdifferential(at);
    result.upper_bound_only = true;
    return singleton_set(fn.subgradient(at));
  };
  SubdiffParam g_param(model_or_selection(*p.g, ax));
  SubdiffParam f_param(model_or_selection(*p.f, kx));

  const double norm_a = p.A.norm_estimate();
  const double norm_k = p.K.norm_estimate();
  const double jac_bound = f_val * norm_a * g_param.scale() +
                           std::abs(num_val) * norm_k * f_param.scale();
  const double step = 1.0 / std::max(jac_bound * jac_bound, 1e-12);

  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= iterations; ++it) {
    const Vec a_vec = f_val * (p.A.adjoint(g_param.element()) + grad_h) -
                      num_val * p.K.adjoint(f_param.element());
    const Vec t = -a_vec;
    const Vec resid = t - p.set.project_normal_cone(cone, t);
    best = std::min(best, resid.norm());
    if (it == iterations || best == 0.0) break;
    // d(.5 ||resid||^2)/d a = -resid; chain through the two linear maps.
    const Vec grad_g = -f_val * p.A.apply(resid);
    const Vec grad_f = num_val * p.K.apply(resid);
    g_param.step(grad_g, step);
    f_param.step(grad_f, step);
  }
  result.value = best;
  return result;
}

nlohmann::json metric_report_to_json(const MetricReport& r) {
  nlohmann::json j;
  j["obj"] = r.obj;
  j["infeas"] = r.infeas;
  if (r.stat) {
    j["stat"] = *r.stat;
    if (r.stat_upper_bound) j["stat_upper_bound"] = true;
  }
  if (r.rmse) j["rmse"] = *r.rmse;
  if (r.ssim) j["ssim"] = *r.ssim;
  if (r.rerr) j["rerr"] = *r.rerr;
  j["time_s"] = r.wall_time_s;
  j["iterations"] = r.iterations;
  return j;
}

}  // namespace fsps
