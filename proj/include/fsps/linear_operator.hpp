#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <utility>

#include "fsps/types.hpp"

namespace fsps {

using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Matrix-free linear map: forward/adjoint oracles plus a cached operator-norm
// estimate. Immutable after construction.
class LinearOperator {
 public:
  using ApplyFn = std::function<Vec(const Vec&)>;

  LinearOperator() = default;
  LinearOperator(Index input_dim, Index output_dim, ApplyFn apply, ApplyFn adjoint)
      : input_dim_(input_dim),
        output_dim_(output_dim),
        apply_(std::move(apply)),
        adjoint_(std::move(adjoint)) {}

  Index input_dim() const { return input_dim_; }
  Index output_dim() const { return output_dim_; }

  Vec apply(const Vec& x) const;
  Vec adjoint(const Vec& y) const;

  bool has_norm_estimate() const { return norm_estimate_.has_value(); }
  // Cached estimate of the operator norm; throws if unset.
  double norm_estimate() const;
  LinearOperator with_norm_estimate(double value) const {
    LinearOperator copy = *this;
    copy.norm_estimate_ = value;
    return copy;
  }

  // Serialization recipe (kind + parameters); empty for ad-hoc operators.
  const nlohmann::json& descriptor() const { return descriptor_; }
  LinearOperator with_descriptor(nlohmann::json d) const {
    LinearOperator copy = *this;
    copy.descriptor_ = std::move(d);
    return copy;
  }

  static LinearOperator identity(Index n);
  static LinearOperator dense(Mat m);
  static LinearOperator sparse(std::shared_ptr<const SparseMat> m);

 private:
  Index input_dim_ = 0;
  Index output_dim_ = 0;
  ApplyFn apply_;
  ApplyFn adjoint_;
  std::optional<double> norm_estimate_;
  nlohmann::json descriptor_;
};

// Power-iteration estimate of ||op||, deterministic for a fixed seed.
double op_norm_estimate(const LinearOperator& op, int iters, std::uint64_t seed);

}  // namespace fsps
