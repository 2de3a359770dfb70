#include "fsps/convex_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "fsps/projections.hpp"

namespace fsps {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDomainTol = 1e-9;    // slack on conjugate-domain indicators
constexpr double kKinkTol = 1e-12;     // "at the kink" detection
constexpr double kActiveTol = 1e-8;    // relative argmax-tie tolerance
}  // namespace

Index SubdifferentialSet::dim() const {
  switch (kind) {
    case Kind::Singleton:
    case Kind::L1Ball:
    case Kind::L2Ball:
      return anchor.size();
    case Kind::CoordBox:
      return lo.size();
    case Kind::Hull:
      return vertices.empty() ? 0 : vertices.front().size();
  }
  return 0;
}

Vec SubdifferentialSet::representative() const {
  switch (kind) {
    case Kind::Singleton:
    case Kind::L1Ball:
    case Kind::L2Ball:
      return anchor;
    case Kind::CoordBox: {
      Vec mid = lo;
      for (Index i = 0; i < mid.size(); ++i)
        if (lo[i] <= 0.0 && 0.0 <= hi[i]) mid[i] = 0.0;  // min-norm coordinate
      return mid;
    }
    case Kind::Hull:
      return vertices.front();
  }
  return anchor;
}

Vec ConvexFunction::prox(const Vec&, double) const {
  throw UnsupportedOperationError("ConvexFunction: no prox rule registered");
}

Vec ConvexFunction::prox_conjugate(const Vec& v, double kappa) const {
  // Extended Moreau identity; requires the primal prox.
  return v - kappa * prox(v / kappa, 1.0 / kappa);
}

SubdifferentialSet ConvexFunction::subdifferential(const Vec&) const {
  throw UnsupportedOperationError("ConvexFunction: no subdifferential model");
}

std::shared_ptr<const ConvexFunction> ConvexFunction::add_quadratic(double) const {
  throw UnsupportedOperationError(
      "ConvexFunction: quadratic augmentation not supported for this oracle");
}

// ---------------------------------------------------------------------------

namespace {

class ZeroFunction final : public ConvexFunction {
 public:
  explicit ZeroFunction(Index dim) : dim_(dim) {}

  Index dim() const override { return dim_; }
  double value(const Vec&) const override { return 0.0; }

  double conjugate_value(const Vec& z) const override {
    return z.lpNorm<Eigen::Infinity>() <= kDomainTol ? 0.0 : kInf;
  }

  bool has_prox() const override { return true; }
  Vec prox(const Vec& v, double) const override { return v; }
  Vec prox_conjugate(const Vec& v, double) const override {
    return Vec::Zero(v.size());
  }

  Vec subgradient(const Vec&) const override { return Vec::Zero(dim_); }
  std::optional<double> subgradient_bound() const override { return 0.0; }

  bool has_subdifferential_model() const override { return true; }
  SubdifferentialSet subdifferential(const Vec&) const override {
    SubdifferentialSet s;
    s.kind = SubdifferentialSet::Kind::Singleton;
    s.anchor = Vec::Zero(dim_);
    return s;
  }

  std::shared_ptr<const ConvexFunction> add_quadratic(double s) const override {
    return make_scaled_l1(dim_, 0.0, s);
  }

  nlohmann::json describe() const override {
    return {{"kind", "zero"}, {"dim", dim_}};
  }

 private:
  Index dim_;
};

class ScaledL1 final : public ConvexFunction {
 public:
  ScaledL1(Index dim, double tau, double s) : dim_(dim), tau_(tau), s_(s) {
    if (tau < 0 || s < 0 || tau + s <= 0)
      throw std::invalid_argument("ScaledL1: need tau >= 0, s >= 0, tau + s > 0");
  }

  Index dim() const override { return dim_; }

  double value(const Vec& w) const override {
    return tau_ * w.lpNorm<1>() + 0.5 * s_ * w.squaredNorm();
  }

  double conjugate_value(const Vec& z) const override {
    if (s_ == 0.0) {
      const double scale = std::max(1.0, tau_);
      return z.lpNorm<Eigen::Infinity>() <= tau_ + kDomainTol * scale ? 0.0 : kInf;
    }
    double acc = 0.0;
    for (Index i = 0; i < z.size(); ++i) {
      const double excess = std::max(std::abs(z[i]) - tau_, 0.0);
      acc += excess * excess;
    }
    return acc / (2.0 * s_);
  }

  bool has_prox() const override { return true; }

  Vec prox(const Vec& v, double kappa) const override {
    return soft_threshold(v, kappa * tau_) / (1.0 + kappa * s_);
  }

  Vec prox_conjugate(const Vec& v, double kappa) const override {
    if (s_ == 0.0) return v.cwiseMax(-tau_).cwiseMin(tau_);
    return v - (kappa / (kappa + s_)) * soft_threshold(v, tau_);
  }

  Vec subgradient(const Vec& w) const override {
    Vec out(w.size());
    for (Index i = 0; i < w.size(); ++i) {
      const double sign = w[i] > kKinkTol ? 1.0 : (w[i] < -kKinkTol ? -1.0 : 0.0);
      out[i] = tau_ * sign + s_ * w[i];
    }
    return out;
  }

  std::optional<double> subgradient_bound() const override {
    if (s_ == 0.0) return tau_ * std::sqrt(static_cast<double>(dim_));
    return std::nullopt;
  }

  bool has_subdifferential_model() const override { return true; }

  SubdifferentialSet subdifferential(const Vec& w) const override {
    SubdifferentialSet out;
    out.kind = SubdifferentialSet::Kind::CoordBox;
    out.lo.resize(w.size());
    out.hi.resize(w.size());
    for (Index i = 0; i < w.size(); ++i) {
      if (std::abs(w[i]) <= kKinkTol) {
        out.lo[i] = -tau_ + s_ * w[i];
        out.hi[i] = tau_ + s_ * w[i];
      } else {
        out.lo[i] = out.hi[i] = tau_ * (w[i] > 0 ? 1.0 : -1.0) + s_ * w[i];
      }
    }
    return out;
  }

  std::shared_ptr<const ConvexFunction> add_quadratic(double s) const override {
    return make_scaled_l1(dim_, tau_, s_ + s);
  }

  nlohmann::json describe() const override {
    return {{"kind", "scaled_l1"}, {"dim", dim_}, {"tau", tau_}, {"s", s_}};
  }

 private:
  Index dim_;
  double tau_, s_;
};

class LinfShifted final : public ConvexFunction {
 public:
  LinfShifted(Vec r, double s) : r_(std::move(r)), s_(s) {
    if (s < 0) throw std::invalid_argument("LinfShifted: s must be >= 0");
  }

  Index dim() const override { return r_.size(); }

  double value(const Vec& w) const override {
    return (r_ - w).lpNorm<Eigen::Infinity>() + 0.5 * s_ * w.squaredNorm();
  }

  double conjugate_value(const Vec& z) const override {
    if (s_ == 0.0) {
      return z.lpNorm<1>() <= 1.0 + kDomainTol ? z.dot(r_) : kInf;
    }
    // (||.||_inf + s/2 ||.||^2)* is a squared distance to the l1 ball.
    const Vec v = s_ * r_ - z;
    const double d2 = (v - project_l1_ball(v, 1.0)).squaredNorm();
    return z.dot(r_) - 0.5 * s_ * r_.squaredNorm() + d2 / (2.0 * s_);
  }

  bool has_prox() const override { return true; }

  Vec prox(const Vec& v, double kappa) const override {
    // Substituting w = r - y reduces to a prox of the pure sup norm.
    const double a = s_ + 1.0 / kappa;
    const Vec target = (s_ * r_ + (r_ - v) / kappa) / a;
    const double lambda = 1.0 / a;
    const Vec w = target - lambda * project_l1_ball(target / lambda, 1.0);
    return r_ - w;
  }

  Vec subgradient(const Vec& w) const override {
    const Vec rw = r_ - w;
    Vec out = s_ * w;
    const double mx = rw.lpNorm<Eigen::Infinity>();
    if (mx <= kKinkTol) return out;  // 0 is in the subdifferential of the norm at 0
    for (Index i = 0; i < rw.size(); ++i) {
      if (std::abs(rw[i]) == mx) {  // lowest-index argmax
        out[i] += rw[i] > 0 ? -1.0 : 1.0;
        break;
      }
    }
    return out;
  }

  std::optional<double> subgradient_bound() const override {
    if (s_ == 0.0) return 1.0;
    return std::nullopt;
  }

  bool has_subdifferential_model() const override { return true; }

  SubdifferentialSet subdifferential(const Vec& w) const override {
    const Vec rw = r_ - w;
    SubdifferentialSet out;
    out.anchor = s_ * w;
    const double mx = rw.lpNorm<Eigen::Infinity>();
    if (mx <= kKinkTol) {
      out.kind = SubdifferentialSet::Kind::L1Ball;
      out.radius = 1.0;
      return out;
    }
    out.kind = SubdifferentialSet::Kind::Hull;
    for (Index i = 0; i < rw.size(); ++i) {
      if (std::abs(rw[i]) >= mx - kActiveTol * std::max(1.0, mx)) {
        Vec v = out.anchor;
        v[i] += rw[i] > 0 ? -1.0 : 1.0;
        out.vertices.push_back(std::move(v));
      }
    }
    return out;
  }

  std::shared_ptr<const ConvexFunction> add_quadratic(double s) const override {
    return make_linf_shifted(r_, s_ + s);
  }

  nlohmann::json describe() const override {
    return {{"kind", "linf_shifted"},
            {"r", std::vector<double>(r_.data(), r_.data() + r_.size())},
            {"s", s_}};
  }

 private:
  Vec r_;
  double s_;
};

class EuclideanNorm final : public ConvexFunction {
 public:
  EuclideanNorm(Index dim, double c) : dim_(dim), c_(c) {
    if (c < 0) throw std::invalid_argument("EuclideanNorm: c must be >= 0");
  }

  Index dim() const override { return dim_; }
  double value(const Vec& w) const override { return w.norm() + c_; }

  double conjugate_value(const Vec& y) const override {
    return y.norm() <= 1.0 + kDomainTol ? -c_ : kInf;
  }

  bool has_prox() const override { return true; }

  Vec prox(const Vec& v, double kappa) const override {
    const double nrm = v.norm();
    if (nrm <= kappa) return Vec::Zero(v.size());
    return v * (1.0 - kappa / nrm);
  }

  Vec prox_conjugate(const Vec& v, double) const override {
    return project_l2_ball(v, 1.0);
  }

  Vec subgradient(const Vec& w) const override {
    const double nrm = w.norm();
    if (nrm <= kKinkTol) return Vec::Zero(w.size());
    return w / nrm;
  }

  std::optional<double> subgradient_bound() const override { return 1.0; }

  bool has_subdifferential_model() const override { return true; }

  SubdifferentialSet subdifferential(const Vec& w) const override {
    SubdifferentialSet out;
    const double nrm = w.norm();
    if (nrm <= kKinkTol) {
      out.kind = SubdifferentialSet::Kind::L2Ball;
      out.anchor = Vec::Zero(w.size());
      out.radius = 1.0;
    } else {
      out.kind = SubdifferentialSet::Kind::Singleton;
      out.anchor = w / nrm;
    }
    return out;
  }

  nlohmann::json describe() const override {
    return {{"kind", "euclidean_norm"}, {"dim", dim_}, {"c", c_}};
  }

 private:
  Index dim_;
  double c_;
};

class AffineSum final : public ConvexFunction {
 public:
  AffineSum(Index dim, double c) : dim_(dim), c_(c) {}

  Index dim() const override { return dim_; }
  double value(const Vec& w) const override { return w.sum() + c_; }

  double conjugate_value(const Vec& y) const override {
    return (y - Vec::Ones(y.size())).lpNorm<Eigen::Infinity>() <= kDomainTol ? -c_
                                                                             : kInf;
  }

  bool has_prox() const override { return true; }
  Vec prox(const Vec& v, double kappa) const override {
    return v - kappa * Vec::Ones(v.size());
  }

  Vec subgradient(const Vec&) const override { return Vec::Ones(dim_); }
  std::optional<double> subgradient_bound() const override {
    return std::sqrt(static_cast<double>(dim_));
  }

  bool has_subdifferential_model() const override { return true; }
  SubdifferentialSet subdifferential(const Vec&) const override {
    SubdifferentialSet out;
    out.kind = SubdifferentialSet::Kind::Singleton;
    out.anchor = Vec::Ones(dim_);
    return out;
  }

  nlohmann::json describe() const override {
    return {{"kind", "affine_sum"}, {"dim", dim_}, {"c", c_}};
  }

 private:
  Index dim_;
  double c_;
};

class MaxBlockSqNorm final : public ConvexFunction {
 public:
  MaxBlockSqNorm(Index blocks, Index block_dim)
      : blocks_(blocks), block_dim_(block_dim) {
    if (blocks < 1 || block_dim < 1)
      throw std::invalid_argument("MaxBlockSqNorm: empty block structure");
  }

  Index dim() const override { return blocks_ * block_dim_; }

  double value(const Vec& w) const override {
    double mx = 0.0;
    for (Index i = 0; i < blocks_; ++i)
      mx = std::max(mx, w.segment(i * block_dim_, block_dim_).squaredNorm());
    return mx;
  }

  double conjugate_value(const Vec& y) const override {
    // (max_i ||.||^2)* = (sum_i ||y_i|| / 2)^2
    double acc = 0.0;
    for (Index i = 0; i < blocks_; ++i)
      acc += y.segment(i * block_dim_, block_dim_).norm();
    return 0.25 * acc * acc;
  }

  Vec subgradient(const Vec& w) const override {
    Index best = 0;
    double mx = -1.0;
    for (Index i = 0; i < blocks_; ++i) {
      const double v = w.segment(i * block_dim_, block_dim_).squaredNorm();
      if (v > mx) {
        mx = v;
        best = i;
      }
    }
    Vec out = Vec::Zero(dim());
    out.segment(best * block_dim_, block_dim_) =
        2.0 * w.segment(best * block_dim_, block_dim_);
    return out;
  }

  bool has_subdifferential_model() const override { return true; }

  SubdifferentialSet subdifferential(const Vec& w) const override {
    std::vector<double> norms(blocks_);
    double mx = 0.0;
    for (Index i = 0; i < blocks_; ++i) {
      norms[i] = w.segment(i * block_dim_, block_dim_).squaredNorm();
      mx = std::max(mx, norms[i]);
    }
    SubdifferentialSet out;
    out.kind = SubdifferentialSet::Kind::Hull;
    out.anchor = Vec::Zero(dim());
    for (Index i = 0; i < blocks_; ++i) {
      if (norms[i] >= mx - kActiveTol * std::max(1.0, mx)) {
        Vec v = Vec::Zero(dim());
        v.segment(i * block_dim_, block_dim_) =
            2.0 * w.segment(i * block_dim_, block_dim_);
        out.vertices.push_back(std::move(v));
      }
    }
    return out;
  }

  nlohmann::json describe() const override {
    return {{"kind", "max_block_sq_norm"},
            {"blocks", blocks_},
            {"block_dim", block_dim_}};
  }

 private:
  Index blocks_, block_dim_;
};

}  // namespace

ConvexFunctionPtr make_zero_function(Index dim) {
  return std::make_shared<ZeroFunction>(dim);
}
ConvexFunctionPtr make_scaled_l1(Index dim, double tau, double s) {
  return std::make_shared<ScaledL1>(dim, tau, s);
}
ConvexFunctionPtr make_linf_shifted(Vec r, double s) {
  return std::make_shared<LinfShifted>(std::move(r), s);
}
ConvexFunctionPtr make_euclidean_norm(Index dim, double c) {
  return std::make_shared<EuclideanNorm>(dim, c);
}
ConvexFunctionPtr make_affine_sum(Index dim, double c) {
  return std::make_shared<AffineSum>(dim, c);
}
ConvexFunctionPtr make_max_block_sq_norm(Index blocks, Index block_dim) {
  return std::make_shared<MaxBlockSqNorm>(blocks, block_dim);
}

}  // namespace fsps
