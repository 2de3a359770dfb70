#pragma once

#include <nlohmann/json.hpp>

#include "fsps/problem.hpp"

namespace fsps {

// JSON description of a problem instance. Named generator families serialize
// as their recipe; everything else uses the component-wise schema
// {set, A, K, g, f, h, shift, s_cvx}.
nlohmann::json problem_to_json(const FractionalProblem& p);

FractionalProblem problem_from_json(const nlohmann::json& j);

// Component deserializers, also used by the experiment config loader.
FeasibleSet set_from_json(const nlohmann::json& j);
LinearOperator operator_from_json(const nlohmann::json& j);
ConvexFunctionPtr convex_function_from_json(const nlohmann::json& j);

}  // namespace fsps
