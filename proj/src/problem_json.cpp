#include "fsps/problem_json.hpp"

#include "fsps/problems.hpp"

namespace fsps {

namespace {

Vec vec_from_json(const nlohmann::json& j) {
  const auto data = j.get<std::vector<double>>();
  Vec v(static_cast<Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) v[static_cast<Index>(i)] = data[i];
  return v;
}

nlohmann::json vec_to_json(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

SmoothFunctionPtr smooth_from_json(const nlohmann::json& j,
                                   const LinearOperator& problem_a) {
  const std::string kind = j.at("kind");
  if (kind == "zero") return make_zero_smooth(j.at("dim").get<Index>());
  if (kind == "quadratic_residual") {
    LinearOperator b_op = operator_from_json(j.at("B"));
    if (!b_op.has_norm_estimate())
      b_op = b_op.with_norm_estimate(op_norm_estimate(b_op, 100, 0));
    return make_quadratic_residual(std::move(b_op), vec_from_json(j.at("b")),
                                   j.value("c0", 0.0));
  }
  if (kind == "quadratic_downshift") {
    // The downward quadratic is always tied to the problem's A operator.
    return make_quadratic_downshift(smooth_from_json(j.at("inner"), problem_a),
                                    j.at("s").get<double>(), problem_a);
  }
  throw std::invalid_argument("smooth_from_json: unknown kind '" + kind + "'");
}

}  // namespace

FeasibleSet set_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind");
  if (kind == "box")
    return FeasibleSet::box(vec_from_json(j.at("lower")),
                            vec_from_json(j.at("upper")));
  if (kind == "simplex") return FeasibleSet::simplex(j.at("dim").get<Index>());
  throw std::invalid_argument("set_from_json: unknown kind '" + kind + "'");
}

LinearOperator operator_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind");
  if (kind == "identity")
    return LinearOperator::identity(j.at("n").get<Index>());
  if (kind == "dense") {
    const Index rows = j.at("rows").get<Index>();
    const Index cols = j.at("cols").get<Index>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (static_cast<Index>(data.size()) != rows * cols)
      throw std::invalid_argument("operator_from_json: dense data size mismatch");
    Mat m(rows, cols);
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c)
        m(r, c) = data[static_cast<std::size_t>(r * cols + c)];
    LinearOperator op = LinearOperator::dense(std::move(m));
    return op.with_norm_estimate(op_norm_estimate(op, 100, 0));
  }
  if (kind == "discrete_gradient")
    return discrete_gradient(j.at("n_img").get<int>());
  if (kind == "parallel_beam") {
    const int n_img = j.at("n_img").get<int>();
    const auto angles = j.at("angles_deg").get<std::vector<double>>();
    const int detectors = j.at("detectors").get<int>();
    auto mat = std::make_shared<const SparseMat>(
        parallel_beam_matrix(n_img, angles, detectors));
    LinearOperator op = LinearOperator::sparse(mat).with_descriptor(j);
    return op.with_norm_estimate(op_norm_estimate(op, 100, 0));
  }
  throw std::invalid_argument("operator_from_json: unknown kind '" + kind + "'");
}

ConvexFunctionPtr convex_function_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind");
  if (kind == "zero") return make_zero_function(j.at("dim").get<Index>());
  if (kind == "scaled_l1")
    return make_scaled_l1(j.at("dim").get<Index>(), j.at("tau").get<double>(),
                          j.value("s", 0.0));
  if (kind == "linf_shifted")
    return make_linf_shifted(vec_from_json(j.at("r")), j.value("s", 0.0));
  if (kind == "euclidean_norm")
    return make_euclidean_norm(j.at("dim").get<Index>(), j.value("c", 0.0));
  if (kind == "affine_sum")
    return make_affine_sum(j.at("dim").get<Index>(), j.at("c").get<double>());
  if (kind == "max_block_sq_norm")
    return make_max_block_sq_norm(j.at("blocks").get<Index>(),
                                  j.at("block_dim").get<Index>());
  throw std::invalid_argument("convex_function_from_json: unknown kind '" +
                              kind + "'");
}

nlohmann::json problem_to_json(const FractionalProblem& p) {
  nlohmann::json j;
  if (!p.generator.empty()) {
    j["generator"] = p.generator;
  } else {
    if (p.A.descriptor().empty() || p.K.descriptor().empty())
      throw UnsupportedOperationError(
          "problem_to_json: operator carries no serialization recipe");
    j["set"] = p.set.describe();
    j["A"] = p.A.descriptor();
    j["K"] = p.K.descriptor();
    j["g"] = p.g->describe();
    j["f"] = p.f->describe();
    j["h"] = p.h->describe();
  }
  j["shift"] = p.shift;
  j["s_cvx"] = p.s_cvx;
  if (p.x_true) j["x_true"] = vec_to_json(*p.x_true);
  return j;
}

FractionalProblem problem_from_json(const nlohmann::json& j) {
  FractionalProblem p;
  if (j.contains("generator")) {
    const nlohmann::json& g = j.at("generator");
    const std::string kind = g.at("kind");
    if (kind == "toy") {
      p = make_toy_recovery().problem;
    } else if (kind == "diverge") {
      p = make_divergence_instance().problem;
    } else if (kind == "sharp-ratio") {
      p = make_sharp_ratio(g.at("n").get<int>(), g.at("m1").get<int>(),
                           g.at("m2").get<int>(),
                           g.at("seed").get<std::uint64_t>(), g.value("s", 0.01));
    } else if (kind == "ct") {
      p = make_ct_problem(g.at("n_img").get<int>(), g.at("range_deg").get<double>(),
                          g.value("sigma", 0.0), g.value("seed", std::uint64_t{0}),
                          g.value("detectors", 0), g.value("tau", 0.1),
                          g.value("s", 0.1))
              .problem;
    } else {
      throw std::invalid_argument("problem_from_json: unknown generator '" +
                                  kind + "'");
    }
  } else {
    p.set = set_from_json(j.at("set"));
    p.A = operator_from_json(j.at("A"));
    if (!p.A.has_norm_estimate())
      p.A = p.A.with_norm_estimate(op_norm_estimate(p.A, 100, 0));
    p.K = operator_from_json(j.at("K"));
    if (!p.K.has_norm_estimate())
      p.K = p.K.with_norm_estimate(op_norm_estimate(p.K, 100, 0));
    p.g = convex_function_from_json(j.at("g"));
    p.f = convex_function_from_json(j.at("f"));
    p.h = smooth_from_json(j.at("h"), p.A);
    p.s_cvx = j.value("s_cvx", 0.0);  // already folded into g and h
    p.check_dimensions();
  }
  if (j.contains("shift") && j.at("shift").get<double>() > 0.0)
    p = shift_numerator(p, j.at("shift").get<double>());
  if (j.contains("x_true")) p.x_true = vec_from_json(j.at("x_true"));
  return p;
}

}  // namespace fsps
