#include "fsps/problems.hpp"

#include <Eigen/QR>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "fsps/rng.hpp"

namespace fsps {

namespace {
constexpr int kNormIters = 100;
constexpr std::uint64_t kNormSeed = 0;

LinearOperator with_power_norm(LinearOperator op) {
  return op.with_norm_estimate(op_norm_estimate(op, kNormIters, kNormSeed));
}
}  // namespace

ToyRecovery make_toy_recovery() {
  const double c = 1.0 / std::sqrt(2.0);
  Mat b_mat(2, 2);
  b_mat << c, c, c, -c;
  Vec x_star(2);
  x_star << 1.0, 0.0;
  const Vec b = b_mat * x_star;

  ToyRecovery toy;
  toy.problem.set = FeasibleSet::box(Vec::Zero(2), Vec::Ones(2));
  toy.problem.A = LinearOperator::identity(2);
  toy.problem.K = LinearOperator::identity(2);
  toy.problem.g = make_scaled_l1(2, 1e-3);
  toy.problem.f = make_euclidean_norm(2);
  toy.problem.h = make_quadratic_residual(
      LinearOperator::dense(b_mat).with_norm_estimate(1.0), b);
  toy.problem.x_true = x_star;
  toy.x0 = Vec(2);
  toy.x0 << 0.2, 1.0;
  toy.u0 = toy.x0;
  toy.z0 = Vec(2);
  toy.z0 << 1e-3, 1e-3;
  toy.x_star = x_star;
  toy.problem.generator = {{"kind", "toy"}};
  toy.problem.check_dimensions();
  return toy;
}

DivergenceInstance make_divergence_instance() {
  DivergenceInstance inst;
  inst.problem.set = FeasibleSet::box(Vec::Zero(2), Vec::Ones(2));
  inst.problem.A = LinearOperator::identity(2);
  inst.problem.K = LinearOperator::identity(2);
  inst.problem.g = make_scaled_l1(2, 1.0);
  inst.problem.f = make_affine_sum(2, 0.5);
  inst.problem.h =
      make_quadratic_residual(LinearOperator::identity(2), Vec::Zero(2));
  inst.x0 = Vec(2);
  inst.x0 << 0.0, 1.0;
  inst.problem.generator = {{"kind", "diverge"}};
  inst.problem.check_dimensions();
  return inst;
}

FractionalProblem make_sharp_ratio(int n, int m1, int m2, std::uint64_t seed,
                                   double s) {
  if (n < 1 || m1 < 1 || m2 < 1)
    throw std::invalid_argument("make_sharp_ratio: dimensions must be >= 1");
  Rng rng(seed);

  Mat a_rows(m1, n);
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < n; ++j) a_rows(i, j) = rng.uniform();
  Vec r(m1);
  for (int i = 0; i < m1; ++i)
    r[i] = a_rows.row(i).cwiseAbs().maxCoeff() + rng.uniform();

  auto roots = std::make_shared<std::vector<Mat>>();
  roots->reserve(m2);
  for (int i = 0; i < m2; ++i) {
    Mat gaussian(n, n);
    for (int row = 0; row < n; ++row)
      for (int col = 0; col < n; ++col) gaussian(row, col) = rng.normal();
    const Mat q = Eigen::HouseholderQR<Mat>(gaussian).householderQ();
    Vec eig(n);
    for (int j = 0; j < n; ++j) eig[j] = rng.uniform(1e-3, 1.0 + 1e-3);
    roots->push_back(q * eig.cwiseSqrt().asDiagonal() * q.transpose());
  }

  const Index nn = n, p_dim = static_cast<Index>(m2) * n;
  LinearOperator k_op(
      nn, p_dim,
      [roots, n, m2](const Vec& x) {
        Vec out(static_cast<Index>(m2) * n);
        for (int i = 0; i < m2; ++i)
          out.segment(static_cast<Index>(i) * n, n) = (*roots)[i] * x;
        return out;
      },
      [roots, n, m2](const Vec& y) {
        Vec out = Vec::Zero(n);
        for (int i = 0; i < m2; ++i)
          out += (*roots)[i].transpose() * y.segment(static_cast<Index>(i) * n, n);
        return out;
      });

  FractionalProblem prob;
  prob.set = FeasibleSet::simplex(n);
  prob.A = with_power_norm(LinearOperator::dense(a_rows));
  prob.K = with_power_norm(std::move(k_op));
  prob.g = make_linf_shifted(r);
  prob.f = make_max_block_sq_norm(m2, n);
  prob.h = make_zero_smooth(n);
  prob.check_dimensions();
  if (s > 0.0) prob = convexify(prob, s);
  prob.generator = {{"kind", "sharp-ratio"}, {"n", n},   {"m1", m1},
                    {"m2", m2},              {"seed", seed}, {"s", s}};
  return prob;
}

LinearOperator discrete_gradient(int n_img) {
  if (n_img < 2)
    throw std::invalid_argument("discrete_gradient: n_img must be >= 2");
  const Index n = n_img;
  const Index nn = n * n;
  LinearOperator op(
      nn, 2 * nn,
      [n, nn](const Vec& v) {
        Vec out = Vec::Zero(2 * nn);
        for (Index i = 0; i < n; ++i) {
          for (Index j = 0; j < n; ++j) {
            const Index id = i * n + j;
            if (j + 1 < n) out[id] = v[id + 1] - v[id];        // horizontal
            if (i + 1 < n) out[nn + id] = v[id + n] - v[id];   // vertical
          }
        }
        return out;
      },
      [n, nn](const Vec& w) {
        Vec out = Vec::Zero(nn);
        for (Index i = 0; i < n; ++i) {
          for (Index j = 0; j < n; ++j) {
            const Index id = i * n + j;
            if (j + 1 < n) {
              out[id] -= w[id];
              out[id + 1] += w[id];
            }
            if (i + 1 < n) {
              out[id] -= w[nn + id];
              out[id + n] += w[nn + id];
            }
          }
        }
        return out;
      });
  op = op.with_descriptor({{"kind", "discrete_gradient"}, {"n_img", n_img}});
  return with_power_norm(std::move(op));
}

SparseMat parallel_beam_matrix(int n_img, const std::vector<double>& angles_deg,
                               int detectors) {
  if (n_img < 8) throw std::invalid_argument("parallel_beam_matrix: n_img < 8");
  if (angles_deg.empty())
    throw std::invalid_argument("parallel_beam_matrix: no angles");
  if (detectors < 1)
    throw std::invalid_argument("parallel_beam_matrix: detectors < 1");

  const double half = n_img / 2.0;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(angles_deg.size()) * detectors * 2 *
                n_img);
  std::vector<double> crossings;
  int row = 0;
  for (double ang : angles_deg) {
    const double phi = ang * M_PI / 180.0;
    const double dx = -std::sin(phi), dy = std::cos(phi);
    for (int det = 0; det < detectors; ++det, ++row) {
      const double t = det - (detectors - 1) / 2.0;
      const double px = t * std::cos(phi), py = t * std::sin(phi);
      // Clip the line p + s d against the image square.
      double smin = -1e300, smax = 1e300;
      bool miss = false;
      for (auto [c, dc] : {std::pair{px, dx}, std::pair{py, dy}}) {
        if (std::abs(dc) < 1e-14) {
          if (c < -half || c > half) miss = true;
        } else {
          double s1 = (-half - c) / dc, s2 = (half - c) / dc;
          if (s1 > s2) std::swap(s1, s2);
          smin = std::max(smin, s1);
          smax = std::min(smax, s2);
        }
      }
      if (miss || smin >= smax) continue;
      crossings.clear();
      crossings.push_back(smin);
      crossings.push_back(smax);
      for (auto [c, dc] : {std::pair{px, dx}, std::pair{py, dy}}) {
        if (std::abs(dc) < 1e-14) continue;
        for (int k = 0; k <= n_img; ++k) {
          const double sline = (-half + k - c) / dc;
          if (sline > smin && sline < smax) crossings.push_back(sline);
        }
      }
      std::sort(crossings.begin(), crossings.end());
      for (std::size_t m = 0; m + 1 < crossings.size(); ++m) {
        const double len = crossings[m + 1] - crossings[m];
        if (len <= 1e-14) continue;
        const double mid = 0.5 * (crossings[m] + crossings[m + 1]);
        const double x = px + mid * dx, y = py + mid * dy;
        const int col_j = static_cast<int>(std::floor(x + half));
        const int row_i = static_cast<int>(std::floor(half - y));
        if (row_i >= 0 && row_i < n_img && col_j >= 0 && col_j < n_img)
          trips.emplace_back(row, row_i * n_img + col_j, len);
      }
    }
  }
  SparseMat out(static_cast<Index>(angles_deg.size()) * detectors,
                static_cast<Index>(n_img) * n_img);
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

namespace {
struct Ellipse {
  double intensity, a, b, x0, y0, phi_deg;
};
// Toft's contrast variant of the ten-ellipse head phantom.
constexpr Ellipse kPhantom[] = {
    {1.0, .69, .92, 0, 0, 0},      {-.8, .6624, .8740, 0, -.0184, 0},
    {-.2, .1100, .3100, .22, 0, -18}, {-.2, .1600, .4100, -.22, 0, 18},
    {.1, .2100, .2500, 0, .35, 0}, {.1, .0460, .0460, 0, .1, 0},
    {.1, .0460, .0460, 0, -.1, 0}, {.1, .0460, .0230, -.08, -.605, 0},
    {.1, .0230, .0230, 0, -.606, 0}, {.1, .0230, .0460, .06, -.605, 0},
};
}  // namespace

Vec shepp_logan(int n_img) {
  if (n_img < 8) throw std::invalid_argument("shepp_logan: n_img < 8");
  Vec img = Vec::Zero(static_cast<Index>(n_img) * n_img);
  for (int i = 0; i < n_img; ++i) {
    for (int j = 0; j < n_img; ++j) {
      const double x = (j + 0.5) * 2.0 / n_img - 1.0;
      const double y = 1.0 - (i + 0.5) * 2.0 / n_img;
      double v = 0.0;
      for (const Ellipse& e : kPhantom) {
        const double p = e.phi_deg * M_PI / 180.0;
        const double xr = (x - e.x0) * std::cos(p) + (y - e.y0) * std::sin(p);
        const double yr = -(x - e.x0) * std::sin(p) + (y - e.y0) * std::cos(p);
        if ((xr / e.a) * (xr / e.a) + (yr / e.b) * (yr / e.b) <= 1.0)
          v += e.intensity;
      }
      img[static_cast<Index>(i) * n_img + j] = std::min(1.0, std::max(0.0, v));
    }
  }
  return img;
}

CtInstance make_ct_problem(int n_img, double range_deg, double sigma,
                           std::uint64_t seed, int detectors, double tau,
                           double s) {
  if (n_img < 8) throw std::invalid_argument("make_ct_problem: n_img < 8");
  if (sigma < 0) throw std::invalid_argument("make_ct_problem: sigma < 0");
  if (detectors <= 0)
    detectors = static_cast<int>(std::ceil(n_img * std::sqrt(2.0))) + 4;

  CtInstance inst;
  inst.n_img = n_img;
  inst.tau = tau;
  inst.s = s;
  inst.sigma = sigma;
  const int n_angles = static_cast<int>(std::lround(range_deg));
  for (int a = 0; a < n_angles; ++a) inst.angles_deg.push_back(a);

  inst.projector = std::make_shared<const SparseMat>(
      parallel_beam_matrix(n_img, inst.angles_deg, detectors));
  inst.phantom = shepp_logan(n_img);
  inst.measurements = (*inst.projector) * inst.phantom;
  if (sigma > 0.0) {
    Rng rng(seed);
    for (Index i = 0; i < inst.measurements.size(); ++i)
      inst.measurements[i] += sigma * rng.normal();
  }

  const Index nn = static_cast<Index>(n_img) * n_img;
  LinearOperator p_op = with_power_norm(
      LinearOperator::sparse(inst.projector)
          .with_descriptor({{"kind", "parallel_beam"},
                            {"n_img", n_img},
                            {"angles_deg", inst.angles_deg},
                            {"detectors", detectors}}));
  FractionalProblem prob;
  prob.set = FeasibleSet::box(Vec::Zero(nn), Vec::Ones(nn));
  prob.A = discrete_gradient(n_img);
  prob.K = prob.A;
  prob.g = make_scaled_l1(2 * nn, tau);
  prob.f = make_euclidean_norm(2 * nn);
  prob.h = make_quadratic_residual(std::move(p_op), inst.measurements);
  prob.x_true = inst.phantom;
  prob.check_dimensions();
  inst.problem = s > 0.0 ? convexify(prob, s) : prob;
  inst.problem.generator = {{"kind", "ct"},        {"n_img", n_img},
                            {"range_deg", range_deg}, {"sigma", sigma},
                            {"seed", seed},        {"detectors", detectors},
                            {"tau", tau},          {"s", s}};
  return inst;
}

void write_pgm(const std::string& path, const Vec& image, int n_img) {
  if (image.size() != static_cast<Index>(n_img) * n_img)
    throw std::invalid_argument("write_pgm: size mismatch");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_pgm: cannot open " + path);
  os << "P5\n" << n_img << " " << n_img << "\n255\n";
  for (Index i = 0; i < image.size(); ++i) {
    const double v = std::min(1.0, std::max(0.0, image[i]));
    os.put(static_cast<char>(std::lround(v * 255.0)));
  }
}

void write_vector_csv(const std::string& path, const Vec& v) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_vector_csv: cannot open " + path);
  char buf[64];
  for (Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v[i]);
    os << buf;
  }
}

}  // namespace fsps
