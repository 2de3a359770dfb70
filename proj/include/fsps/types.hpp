#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <string>

namespace fsps {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kMembershipTol = 1e-9;

// Thrown when an evaluation leaves the model's validity region,
// e.g. a nonpositive denominator value.
class ModelViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an oracle is asked for a rule it does not carry
// (prox of a generic function, subdifferential model of a generic set, ...).
class UnsupportedOperationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fsps
