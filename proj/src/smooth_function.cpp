#include "fsps/smooth_function.hpp"

#include <nlohmann/json.hpp>
#include <utility>

namespace fsps {

namespace {

class ZeroSmooth final : public SmoothFunction {
 public:
  explicit ZeroSmooth(Index dim) : dim_(dim) {}
  Index dim() const override { return dim_; }
  double value(const Vec&) const override { return 0.0; }
  Vec gradient(const Vec&) const override { return Vec::Zero(dim_); }
  double lipschitz() const override { return 0.0; }
  nlohmann::json describe() const override {
    return {{"kind", "zero"}, {"dim", dim_}};
  }

 private:
  Index dim_;
};

class QuadraticResidual final : public SmoothFunction {
 public:
  QuadraticResidual(LinearOperator B, Vec b, double c0)
      : B_(std::move(B)), b_(std::move(b)), c0_(c0) {
    if (b_.size() != B_.output_dim())
      throw std::invalid_argument("QuadraticResidual: b dimension mismatch");
    const double n = B_.norm_estimate();
    lipschitz_ = n * n;
  }

  Index dim() const override { return B_.input_dim(); }

  double value(const Vec& x) const override {
    return 0.5 * (B_.apply(x) - b_).squaredNorm() + c0_;
  }

  Vec gradient(const Vec& x) const override {
    return B_.adjoint(B_.apply(x) - b_);
  }

  double lipschitz() const override { return lipschitz_; }

  nlohmann::json describe() const override {
    return {{"kind", "quadratic_residual"},
            {"B", B_.descriptor()},
            {"b", std::vector<double>(b_.data(), b_.data() + b_.size())},
            {"c0", c0_}};
  }

 private:
  LinearOperator B_;
  Vec b_;
  double c0_;
  double lipschitz_;
};

class QuadraticDownshift final : public SmoothFunction {
 public:
  QuadraticDownshift(SmoothFunctionPtr inner, double s, LinearOperator A)
      : inner_(std::move(inner)), s_(s), A_(std::move(A)) {
    if (s <= 0) throw std::invalid_argument("QuadraticDownshift: s must be > 0");
    const double na = A_.norm_estimate();
    lipschitz_ = inner_->lipschitz() + s_ * na * na;
  }

  Index dim() const override { return inner_->dim(); }

  double value(const Vec& x) const override {
    return inner_->value(x) - 0.5 * s_ * A_.apply(x).squaredNorm();
  }

  Vec gradient(const Vec& x) const override {
    return inner_->gradient(x) - s_ * A_.adjoint(A_.apply(x));
  }

  double lipschitz() const override { return lipschitz_; }

  nlohmann::json describe() const override {
    return {{"kind", "quadratic_downshift"},
            {"s", s_},
            {"inner", inner_->describe()}};
  }

 private:
  SmoothFunctionPtr inner_;
  double s_;
  LinearOperator A_;
  double lipschitz_;
};

}  // namespace

SmoothFunctionPtr make_zero_smooth(Index dim) {
  return std::make_shared<ZeroSmooth>(dim);
}

SmoothFunctionPtr make_quadratic_residual(LinearOperator B, Vec b, double c0) {
  return std::make_shared<QuadraticResidual>(std::move(B), std::move(b), c0);
}

SmoothFunctionPtr make_quadratic_downshift(SmoothFunctionPtr inner, double s,
                                           LinearOperator A) {
  return std::make_shared<QuadraticDownshift>(std::move(inner), s, std::move(A));
}

}  // namespace fsps
