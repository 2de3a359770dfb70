#pragma once

#include <string>
#include <vector>

#include "fsps/problem.hpp"

namespace fsps {

// Two-dimensional sparse-recovery toy: S = [0,1]^2, A = K = I, g = tau l1,
// h = 0.5 ||Bx - b||^2 with the 2x2 DCT matrix B, f the Euclidean norm.
// Comes with its published start and geometric gamma schedule.
struct ToyRecovery {
  FractionalProblem problem;
  Vec x0, z0, u0;
  double theta0 = 0.8053;
  double gamma_ratio = 0.9999;  // gamma_k = gamma_ratio^k
  double nu = 2.5;              // delta_k = 2 nu + L + 2 ||A||^2 / gamma_k
  Vec x_star;
};
ToyRecovery make_toy_recovery();

// The 2-cycle construction: S = [0,1]^2, A = K = I, g = l1,
// h = 0.5 ||x||^2, f(x) = e^T x + 0.5; start x0 = z0 = u0 = (0,1).
struct DivergenceInstance {
  FractionalProblem problem;
  Vec x0;  // == z0 == u0
  double theta0 = 1.0;
};
DivergenceInstance make_divergence_instance();

// Robust sharp-ratio instance on the simplex:
//   g = ||r - .||_inf (+ s/2 quadratic), f = max_i ||x_i||^2,
//   A x = (a_i^T x)_i, K x = (C_i^{1/2} x)_i, h = 0 before convexification.
// Returned with s = 0.01 pre-applied. Deterministic per seed.
FractionalProblem make_sharp_ratio(int n, int m1, int m2, std::uint64_t seed,
                                   double s = 0.01);

// Forward-difference gradient (Neumann boundary): R^{n^2} -> R^{2 n^2},
// horizontal differences first, then vertical.
LinearOperator discrete_gradient(int n_img);

// Ray-driven parallel-beam projection matrix with exact intersection lengths.
// Image on [-n/2, n/2]^2 with unit pixels; detector bins of unit width
// centered on the axis. One row per (angle, detector) pair.
SparseMat parallel_beam_matrix(int n_img, const std::vector<double>& angles_deg,
                               int detectors);

// Standard ten-ellipse head phantom, values clamped to [0,1], row-major.
Vec shepp_logan(int n_img);

struct CtInstance {
  FractionalProblem problem;  // convexified, box [0,1]
  std::shared_ptr<const SparseMat> projector;
  Vec measurements;
  Vec phantom;
  int n_img = 0;
  std::vector<double> angles_deg;
  double tau = 0.1, s = 0.1, sigma = 0.0;
};

// Limited-angle CT stack: equispaced angles over [0, range_deg), default
// detector count ceil(n sqrt(2)) + 4, Gaussian measurement noise of sd sigma.
CtInstance make_ct_problem(int n_img, double range_deg, double sigma,
                           std::uint64_t seed, int detectors = 0,
                           double tau = 0.1, double s = 0.1);

// 8-bit binary PGM, row-major, values clamped from [0,1].
void write_pgm(const std::string& path, const Vec& image, int n_img);
void write_vector_csv(const std::string& path, const Vec& v);

}  // namespace fsps
