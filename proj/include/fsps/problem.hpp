#pragma once

#include <nlohmann/json.hpp>
#include <optional>

#include "fsps/convex_function.hpp"
#include "fsps/feasible_set.hpp"
#include "fsps/linear_operator.hpp"
#include "fsps/smooth_function.hpp"

namespace fsps {

// A single-ratio fractional program
//   min over x in S of (g(Ax) + h(x) + shift) / f(Kx).
struct FractionalProblem {
  FeasibleSet set;
  LinearOperator A;
  LinearOperator K;
  ConvexFunctionPtr g;
  ConvexFunctionPtr f;
  SmoothFunctionPtr h;
  double shift = 0.0;
  double s_cvx = 0.0;
  std::optional<Vec> x_true;
  // Generator recipe when a named family built this instance; lets the JSON
  // round trip stay exact for seeded generators.
  nlohmann::json generator;

  Index dim() const { return set.dim(); }

  double numerator(const Vec& x) const;    // g(Ax) + h(x) + shift (may be +inf)
  double denominator(const Vec& x) const;  // f(Kx)

  // Objective value; throws ModelViolationError on x far outside S or on a
  // nonpositive denominator, returns +inf when g(Ax) = +inf.
  double objective(const Vec& x) const;

  // Total evaluation for line searches: +inf instead of throwing.
  double objective_or_inf(const Vec& x) const;

  void check_dimensions() const;
};

// Replaces g by g + (s/2)||.||^2 and h by h - (s/2)||A.||^2; objective values
// are unchanged and the gradient Lipschitz constant grows by s ||A||^2.
FractionalProblem convexify(const FractionalProblem& p, double s);

// Adds the constant c > 0 to the numerator.
FractionalProblem shift_numerator(const FractionalProblem& p, double c);

}  // namespace fsps
