#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <vector>

#include "fsps/types.hpp"

namespace fsps {

// Parametric description of a convex subdifferential at a point. The set is
// anchor + {varying part}, where the varying part depends on the kind:
//   Singleton : {0}
//   CoordBox  : componentwise intervals [lo, hi] (anchor folded into bounds)
//   Hull      : convex hull of `vertices`
//   L1Ball    : {b : ||b||_1 <= radius}
//   L2Ball    : {b : ||b||   <= radius}
struct SubdifferentialSet {
  enum class Kind { Singleton, CoordBox, Hull, L1Ball, L2Ball };
  Kind kind = Kind::Singleton;
  Vec anchor;
  Vec lo, hi;
  std::vector<Vec> vertices;
  double radius = 0.0;

  Index dim() const;
  // A deterministic element, consistent with the subgradient() selection.
  Vec representative() const;
};

// Proper convex lsc function with the oracles the splitting scheme consumes:
// value, conjugate value, prox, conjugate prox, subgradient selection, and a
// parametric subdifferential where available.
class ConvexFunction {
 public:
  virtual ~ConvexFunction() = default;

  virtual Index dim() const = 0;
  virtual double value(const Vec& w) const = 0;
  virtual double conjugate_value(const Vec& z) const = 0;

  virtual bool has_prox() const { return false; }
  // argmin_y value(y) + ||y - v||^2 / (2 kappa)
  virtual Vec prox(const Vec& v, double kappa) const;
  // prox of the conjugate with modulus kappa; default falls back on the
  // extended Moreau identity  prox_{g*,k}(t) = t - k prox_{g,1/k}(t/k).
  virtual Vec prox_conjugate(const Vec& v, double kappa) const;

  // One valid subgradient, deterministic selection (0 at norm kinks,
  // lowest-index argmax for max-type functions).
  virtual Vec subgradient(const Vec& w) const = 0;

  // Optional bound on selected subgradient norms over the relevant compact set.
  virtual std::optional<double> subgradient_bound() const { return std::nullopt; }

  virtual bool has_subdifferential_model() const { return false; }
  virtual SubdifferentialSet subdifferential(const Vec& w) const;

  // Returns the oracle for value + (s/2)||.||^2; unsupported by default.
  virtual std::shared_ptr<const ConvexFunction> add_quadratic(double s) const;

  virtual nlohmann::json describe() const = 0;
};

using ConvexFunctionPtr = std::shared_ptr<const ConvexFunction>;

// g(w) = 0
ConvexFunctionPtr make_zero_function(Index dim);

// g(w) = tau ||w||_1 + (s/2) ||w||^2,  tau >= 0, s >= 0, tau + s > 0
ConvexFunctionPtr make_scaled_l1(Index dim, double tau, double s = 0.0);

// g(w) = ||r - w||_inf + (s/2) ||w||^2
ConvexFunctionPtr make_linf_shifted(Vec r, double s = 0.0);

// f(w) = ||w||_2 + c,  c >= 0
ConvexFunctionPtr make_euclidean_norm(Index dim, double c = 0.0);

// f(w) = e^T w + c
ConvexFunctionPtr make_affine_sum(Index dim, double c);

// f(w) = max_i ||w_i||^2 over `blocks` blocks of size `block_dim`
ConvexFunctionPtr make_max_block_sq_norm(Index blocks, Index block_dim);

}  // namespace fsps
