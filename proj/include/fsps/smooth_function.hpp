#pragma once

#include <nlohmann/json_fwd.hpp>

#include "fsps/linear_operator.hpp"
#include "fsps/types.hpp"

namespace fsps {

// Differentiable term with Lipschitz-continuous gradient.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;
  virtual Index dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual double lipschitz() const = 0;
  virtual nlohmann::json describe() const = 0;
};

using SmoothFunctionPtr = std::shared_ptr<const SmoothFunction>;

// h(x) = 0
SmoothFunctionPtr make_zero_smooth(Index dim);

// h(x) = 0.5 ||B x - b||^2 + c0,  L = ||B||^2 (from B's norm estimate)
SmoothFunctionPtr make_quadratic_residual(LinearOperator B, Vec b, double c0 = 0.0);

// h(x) = inner(x) - (s/2) ||A x||^2,  L = L_inner + s ||A||^2
SmoothFunctionPtr make_quadratic_downshift(SmoothFunctionPtr inner, double s,
                                           LinearOperator A);

}  // namespace fsps
