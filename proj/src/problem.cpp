#include "fsps/problem.hpp"

#include <cmath>
#include <limits>

namespace fsps {

double FractionalProblem::numerator(const Vec& x) const {
  return g->value(A.apply(x)) + h->value(x) + shift;
}

double FractionalProblem::denominator(const Vec& x) const {
  return f->value(K.apply(x));
}

double FractionalProblem::objective(const Vec& x) const {
  if (!set.is_member(x))
    throw ModelViolationError("objective: point is not feasible");
  const double den = denominator(x);
  if (den <= 0.0)
    throw ModelViolationError("objective: nonpositive denominator f(Kx)");
  return numerator(x) / den;
}

double FractionalProblem::objective_or_inf(const Vec& x) const {
  const double den = denominator(x);
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return numerator(x) / den;
}

void FractionalProblem::check_dimensions() const {
  const Index n = set.dim();
  if (A.input_dim() != n || K.input_dim() != n || h->dim() != n ||
      g->dim() != A.output_dim() || f->dim() != K.output_dim())
    throw std::invalid_argument("FractionalProblem: inconsistent dimensions");
}

FractionalProblem convexify(const FractionalProblem& p, double s) {
  if (s <= 0.0) throw std::invalid_argument("convexify: s must be > 0");
  FractionalProblem out = p;
  out.g = p.g->add_quadratic(s);
  out.h = make_quadratic_downshift(p.h, s, p.A);
  out.s_cvx = p.s_cvx + s;
  out.generator.clear();  // the recipe no longer reproduces this instance
  return out;
}

FractionalProblem shift_numerator(const FractionalProblem& p, double c) {
  if (c <= 0.0) throw std::invalid_argument("shift_numerator: c must be > 0");
  FractionalProblem out = p;
  out.shift = p.shift + c;
  return out;
}

}  // namespace fsps
