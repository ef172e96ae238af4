// Copyright 2026 The strengthnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "strengthnet/ranker/rank_svm.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "strengthnet/common/error.hpp"

namespace strengthnet::ranker {

double ranking_objective(const Eigen::VectorXd& w, const Eigen::MatrixXd& diffs_ordered,
                         const Eigen::MatrixXd& diffs_similar, double c_ordered,
                         double c_similar) {
  double obj = 0.5 * w.squaredNorm();
  if (diffs_ordered.rows() > 0) {
    const Eigen::ArrayXd margins = (diffs_ordered * w).array();
    obj += c_ordered * (1.0 - margins).max(0.0).square().sum();
  }
  if (diffs_similar.rows() > 0) {
    obj += c_similar * (diffs_similar * w).squaredNorm();
  }
  return obj;
}

namespace {

Eigen::VectorXd ranking_gradient(const Eigen::VectorXd& w,
                                 const Eigen::MatrixXd& diffs_ordered,
                                 const Eigen::MatrixXd& diffs_similar, double c_ordered,
                                 double c_similar) {
  Eigen::VectorXd grad = w;
  if (diffs_ordered.rows() > 0) {
    const Eigen::ArrayXd hinge = (1.0 - (diffs_ordered * w).array()).max(0.0);
    grad.noalias() -= 2.0 * c_ordered * (diffs_ordered.transpose() * hinge.matrix());
  }
  if (diffs_similar.rows() > 0) {
    grad.noalias() += 2.0 * c_similar * (diffs_similar.transpose() * (diffs_similar * w));
  }
  return grad;
}

Eigen::MatrixXd build_diffs(const Eigen::MatrixXd& features,
                            const std::vector<std::pair<int, int>>& pairs) {
  Eigen::MatrixXd diffs(static_cast<long>(pairs.size()), features.cols());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    if (i < 0 || j < 0 || i >= features.rows() || j >= features.rows()) {
      throw InvalidInput("train_ranker: pair index out of range");
    }
    if (i == j) throw InvalidInput("train_ranker: degenerate pair (i == j)");
    diffs.row(static_cast<long>(p)) = features.row(i) - features.row(j);
  }
  return diffs;
}

}  // namespace

RankingModel train_ranker(const Eigen::MatrixXd& features, const PairSets& pairs,
                          const RankerOptions& options) {
  if (!features.allFinite()) throw InvalidInput("train_ranker: non-finite features");
  if (options.c_ordered <= 0.0 || options.c_similar <= 0.0) {
    throw InvalidInput("train_ranker: penalty weights must be positive");
  }
  if (pairs.ordered.empty()) throw InsufficientData("train_ranker: no ordered pairs");

  RankingModel model;
  model.emotion = pairs.emotion;
  model.dataset_id = pairs.dataset_id;
  model.c_ordered = options.c_ordered;
  model.c_similar = options.c_similar;

  const long dim = features.cols();
  if (options.standardize) {
    model.feature_mean = features.colwise().mean();
    Eigen::VectorXd var = (features.rowwise() - model.feature_mean.transpose())
                              .array()
                              .square()
                              .colwise()
                              .mean();
    model.feature_std.resize(dim);
    for (long d = 0; d < dim; ++d) {
      model.feature_std(d) = var(d) > 1e-24 ? std::sqrt(var(d)) : 1.0;
    }
  } else {
    model.feature_mean = Eigen::VectorXd::Zero(dim);
    model.feature_std = Eigen::VectorXd::Ones(dim);
  }
  const Eigen::MatrixXd standardized =
      (features.rowwise() - model.feature_mean.transpose()).array().rowwise() /
      model.feature_std.transpose().array();

  const Eigen::MatrixXd diffs_o = build_diffs(standardized, pairs.ordered);
  const Eigen::MatrixXd diffs_s = build_diffs(standardized, pairs.similar);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  double obj = ranking_objective(w, diffs_o, diffs_s, options.c_ordered, options.c_similar);

  double step = 1.0;
  int since_improvement = 0;
  double window_anchor = obj;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd grad =
        ranking_gradient(w, diffs_o, diffs_s, options.c_ordered, options.c_similar);
    const double grad_norm_sq = grad.squaredNorm();
    if (grad_norm_sq < 1e-24) {
      model.converged = true;
      break;
    }

    // backtracking line search, Armijo condition with c = 1e-4
    double trial_step = step * 2.0;  // allow growth after easy iterations
    double new_obj = 0.0;
    Eigen::VectorXd w_new;
    while (true) {
      w_new = w - trial_step * grad;
      new_obj = ranking_objective(w_new, diffs_o, diffs_s, options.c_ordered,
                                  options.c_similar);
      if (new_obj <= obj - 1e-4 * trial_step * grad_norm_sq) break;
      trial_step *= 0.5;
      if (trial_step < 1e-18) break;
    }
    if (new_obj >= obj) {
      // step underflow; cannot make progress
      model.converged = true;
      break;
    }
    w = w_new;
    obj = new_obj;
    step = trial_step;

    // convergence window on objective decrease
    ++since_improvement;
    if (since_improvement >= options.tolerance_window) {
      if (window_anchor - obj < options.tolerance) {
        model.converged = true;
        ++iter;
        break;
      }
      window_anchor = obj;
      since_improvement = 0;
    }
  }

  model.w = w;
  model.objective = obj;
  model.iterations = iter;
  return model;
}

double score(const RankingModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.w.size()) {
    throw InvalidInput("score: feature dimension " + std::to_string(x.size()) +
                       " does not match model dimension " + std::to_string(model.w.size()));
  }
  const Eigen::VectorXd standardized =
      (x - model.feature_mean).array() / model.feature_std.array();
  return model.w.dot(standardized);
}

void save_ranking_model(const std::string& path, const RankingModel& model) {
  nlohmann::json j;
  j["emotion"] = data::emotion_name(model.emotion);
  j["dataset_id"] = model.dataset_id;
  j["w"] = std::vector<double>(model.w.data(), model.w.data() + model.w.size());
  j["feature_mean"] = std::vector<double>(model.feature_mean.data(),
                                          model.feature_mean.data() + model.feature_mean.size());
  j["feature_std"] = std::vector<double>(model.feature_std.data(),
                                         model.feature_std.data() + model.feature_std.size());
  j["c_ordered"] = model.c_ordered;
  j["c_similar"] = model.c_similar;
  j["objective"] = model.objective;
  j["iterations"] = model.iterations;
  j["converged"] = model.converged;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

RankingModel load_ranking_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open ranking model: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad ranking model json " + path + ": " + e.what());
  }
  RankingModel model;
  const auto emotion = data::parse_emotion(j.at("emotion").get<std::string>());
  if (!emotion) throw ParseError("bad emotion in " + path);
  model.emotion = *emotion;
  model.dataset_id = j.at("dataset_id").get<std::string>();
  const auto as_vec = [](const nlohmann::json& arr) {
    const auto v = arr.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size())).eval();
  };
  model.w = as_vec(j.at("w"));
  model.feature_mean = as_vec(j.at("feature_mean"));
  model.feature_std = as_vec(j.at("feature_std"));
  model.c_ordered = j.at("c_ordered").get<double>();
  model.c_similar = j.at("c_similar").get<double>();
  model.objective = j.at("objective").get<double>();
  model.iterations = j.at("iterations").get<int>();
  model.converged = j.at("converged").get<bool>();
  if (model.w.size() != model.feature_mean.size() ||
      model.w.size() != model.feature_std.size()) {
    throw ParseError("inconsistent dimensions in " + path);
  }
  return model;
}

}  // namespace strengthnet::ranker
