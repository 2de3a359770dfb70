#include "fsps/feasible_set.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "fsps/projections.hpp"

namespace fsps {

namespace {
// Tight tolerance for the projection short-circuit; raw projection outputs
// re-enter as members at this level, which makes project idempotent.
constexpr double kProjectShortCircuitTol = 1e-12;
}  // namespace

Vec FeasibleSet::project(const Vec& v) const {
  if (v.size() != dim_)
    throw std::invalid_argument("FeasibleSet::project: dimension mismatch");
  if (is_member(v, kProjectShortCircuitTol)) return v;
  switch (kind_) {
    case Kind::Box:
      return project_box(v, lo_, hi_);
    case Kind::Simplex:
      return project_simplex(v);
    case Kind::Generic:
      return projector_(v);
  }
  return v;
}

bool FeasibleSet::is_member(const Vec& v, double tol) const {
  if (v.size() != dim_) return false;
  switch (kind_) {
    case Kind::Box:
      for (Index i = 0; i < dim_; ++i)
        if (v[i] < lo_[i] - tol || v[i] > hi_[i] + tol) return false;
      return true;
    case Kind::Simplex: {
      if (v.minCoeff() < -tol) return false;
      return std::abs(kahan_sum(v) - 1.0) <= tol;
    }
    case Kind::Generic:
      return (v - projector_(v)).norm() <= tol;
  }
  return false;
}

NormalConeModel FeasibleSet::normal_cone(const Vec& x, double tol) const {
  NormalConeModel model;
  switch (kind_) {
    case Kind::Box: {
      model.kind = NormalConeModel::Kind::Box;
      model.box_activity.resize(static_cast<std::size_t>(dim_), 0);
      for (Index i = 0; i < dim_; ++i) {
        const bool at_lo = x[i] <= lo_[i] + tol;
        const bool at_hi = x[i] >= hi_[i] - tol;
        if (at_lo && at_hi)
          model.box_activity[i] = 2;
        else if (at_lo)
          model.box_activity[i] = -1;
        else if (at_hi)
          model.box_activity[i] = 1;
      }
      return model;
    }
    case Kind::Simplex: {
      model.kind = NormalConeModel::Kind::Simplex;
      model.simplex_support.resize(static_cast<std::size_t>(dim_), 0);
      for (Index i = 0; i < dim_; ++i)
        model.simplex_support[i] = x[i] > tol ? 1 : 0;
      return model;
    }
    case Kind::Generic:
      throw UnsupportedOperationError(
          "FeasibleSet: no normal-cone model for a generic set");
  }
  return model;
}

Vec FeasibleSet::project_normal_cone(const NormalConeModel& model,
                                     const Vec& t) const {
  Vec out(t.size());
  if (model.kind == NormalConeModel::Kind::Box) {
    for (Index i = 0; i < t.size(); ++i) {
      switch (model.box_activity[i]) {
        case -1: out[i] = std::min(t[i], 0.0); break;
        case 1: out[i] = std::max(t[i], 0.0); break;
        case 2: out[i] = t[i]; break;
        default: out[i] = 0.0;
      }
    }
    return out;
  }
  // Simplex: N = {v : v_i = c on the support, v_i <= c off it}. The best c
  // solves a 1-D water-filling problem over the off-support breakpoints.
  std::vector<double> off;
  double sum = 0.0;
  Index m = 0;
  for (Index i = 0; i < t.size(); ++i) {
    if (model.simplex_support[i]) {
      sum += t[i];
      ++m;
    } else {
      off.push_back(t[i]);
    }
  }
  if (m == 0) throw std::invalid_argument("project_normal_cone: empty support");
  std::sort(off.begin(), off.end(), std::greater<double>());
  double c = sum / static_cast<double>(m);
  for (double tv : off) {
    if (tv > c) {
      sum += tv;
      ++m;
      c = sum / static_cast<double>(m);
    } else {
      break;
    }
  }
  for (Index i = 0; i < t.size(); ++i)
    out[i] = model.simplex_support[i] ? c : std::min(t[i], c);
  return out;
}

const Vec& FeasibleSet::lower() const {
  if (kind_ != Kind::Box)
    throw UnsupportedOperationError("FeasibleSet: bounds only exist for boxes");
  return lo_;
}

const Vec& FeasibleSet::upper() const {
  if (kind_ != Kind::Box)
    throw UnsupportedOperationError("FeasibleSet: bounds only exist for boxes");
  return hi_;
}

nlohmann::json FeasibleSet::describe() const {
  switch (kind_) {
    case Kind::Box:
      return {{"kind", "box"},
              {"lower", std::vector<double>(lo_.data(), lo_.data() + lo_.size())},
              {"upper", std::vector<double>(hi_.data(), hi_.data() + hi_.size())}};
    case Kind::Simplex:
      return {{"kind", "simplex"}, {"dim", dim_}};
    case Kind::Generic:
      return {{"kind", "generic"}, {"dim", dim_}};
  }
  return {};
}

FeasibleSet FeasibleSet::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size() || (hi - lo).minCoeff() < 0.0)
    throw std::invalid_argument("FeasibleSet::box: invalid bounds");
  FeasibleSet s;
  s.kind_ = Kind::Box;
  s.dim_ = lo.size();
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

FeasibleSet FeasibleSet::simplex(Index n) {
  if (n < 1) throw std::invalid_argument("FeasibleSet::simplex: empty");
  FeasibleSet s;
  s.kind_ = Kind::Simplex;
  s.dim_ = n;
  return s;
}

FeasibleSet FeasibleSet::generic(Index n, std::function<Vec(const Vec&)> projector) {
  FeasibleSet s;
  s.kind_ = Kind::Generic;
  s.dim_ = n;
  s.projector_ = std::move(projector);
  return s;
}

}  // namespace fsps
