#pragma once

#include <functional>
#include <nlohmann/json_fwd.hpp>
#include <vector>

#include "fsps/types.hpp"

namespace fsps {

// Normal cone of the set at a point, in the parametric form the stationarity
// residual needs. Box: per-coordinate activity; simplex: support pattern.
struct NormalConeModel {
  enum class Kind { Box, Simplex };
  Kind kind = Kind::Box;
  std::vector<std::int8_t> box_activity;  // -1 lower, +1 upper, 0 inactive, 2 pinned (lo==hi)
  std::vector<std::uint8_t> simplex_support;
};

// Nonempty convex compact feasible set with a projection oracle.
class FeasibleSet {
 public:
  enum class Kind { Box, Simplex, Generic };

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }

  // Euclidean projection. Members (tight tolerance) are returned unchanged,
  // which makes the projection exactly idempotent.
  Vec project(const Vec& v) const;

  bool is_member(const Vec& v, double tol = kMembershipTol) const;

  bool has_normal_cone_model() const { return kind_ != Kind::Generic; }
  NormalConeModel normal_cone(const Vec& x, double tol = kMembershipTol) const;
  // Euclidean projection of t onto the normal cone described by the model.
  Vec project_normal_cone(const NormalConeModel& model, const Vec& t) const;

  const Vec& lower() const;
  const Vec& upper() const;

  nlohmann::json describe() const;

  static FeasibleSet box(Vec lo, Vec hi);
  static FeasibleSet simplex(Index n);
  static FeasibleSet generic(Index n, std::function<Vec(const Vec&)> projector);

 private:
  FeasibleSet() = default;
  Kind kind_ = Kind::Generic;
  Index dim_ = 0;
  Vec lo_, hi_;
  std::function<Vec(const Vec&)> projector_;
};

}  // namespace fsps
