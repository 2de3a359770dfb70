#include "fsps/linear_operator.hpp"

#include <cmath>

#include "fsps/rng.hpp"

namespace fsps {

Vec LinearOperator::apply(const Vec& x) const {
  if (x.size() != input_dim_)
    throw std::invalid_argument("LinearOperator::apply: dimension mismatch");
  return apply_(x);
}

Vec LinearOperator::adjoint(const Vec& y) const {
  if (y.size() != output_dim_)
    throw std::invalid_argument("LinearOperator::adjoint: dimension mismatch");
  return adjoint_(y);
}

double LinearOperator::norm_estimate() const {
  if (!norm_estimate_)
    throw UnsupportedOperationError("LinearOperator: norm estimate unset");
  return *norm_estimate_;
}

LinearOperator LinearOperator::identity(Index n) {
  LinearOperator op(n, n, [](const Vec& x) { return x; },
                    [](const Vec& y) { return y; });
  return op.with_norm_estimate(1.0).with_descriptor(
      {{"kind", "identity"}, {"n", n}});
}

LinearOperator LinearOperator::dense(Mat m) {
  auto mat = std::make_shared<const Mat>(std::move(m));
  LinearOperator op(
      mat->cols(), mat->rows(), [mat](const Vec& x) -> Vec { return (*mat) * x; },
      [mat](const Vec& y) -> Vec { return mat->transpose() * y; });
  std::vector<double> data(mat->size());
  for (Index r = 0; r < mat->rows(); ++r)
    for (Index c = 0; c < mat->cols(); ++c)
      data[static_cast<std::size_t>(r * mat->cols() + c)] = (*mat)(r, c);
  return op.with_descriptor({{"kind", "dense"},
                             {"rows", mat->rows()},
                             {"cols", mat->cols()},
                             {"data", data}});
}

LinearOperator LinearOperator::sparse(std::shared_ptr<const SparseMat> m) {
  LinearOperator op(
      m->cols(), m->rows(), [m](const Vec& x) -> Vec { return (*m) * x; },
      [m](const Vec& y) -> Vec { return m->transpose() * y; });
  return op;
}

double op_norm_estimate(const LinearOperator& op, int iters, std::uint64_t seed) {
  if (op.input_dim() <= 0 || op.output_dim() <= 0)
    throw std::invalid_argument("op_norm_estimate: zero-dimensional operator");
  if (iters < 1) throw std::invalid_argument("op_norm_estimate: iters must be >= 1");
  Rng rng(seed);
  Vec v = rng.normal_vector(op.input_dim());
  const double nv = v.norm();
  if (nv == 0.0) return 0.0;
  v /= nv;
  double estimate = 0.0;
  for (int i = 0; i < iters; ++i) {
    Vec w = op.adjoint(op.apply(v));
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;  // v in the null space; norm estimate collapses
    estimate = std::sqrt(nw);
    v = w / nw;
  }
  return estimate;
}

}  // namespace fsps
