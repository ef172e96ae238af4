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

#ifndef STRENGTHNET_RANKER_RANK_SVM_HPP_
#define STRENGTHNET_RANKER_RANK_SVM_HPP_

#include <Eigen/Core>
#include <string>

#include "strengthnet/data/manifest.hpp"
#include "strengthnet/ranker/pair_sets.hpp"

namespace strengthnet::ranker {

// Linear ranking function R(x) = w' x learned from ordered and similar
// pairs. Features are standardized before training; the stored mean/std
// make scoring consistent for any later input.
struct RankingModel {
  Eigen::VectorXd w;
  Eigen::VectorXd feature_mean;
  Eigen::VectorXd feature_std;
  data::Emotion emotion = data::Emotion::kHappy;
  std::string dataset_id;
  double c_ordered = 1.0;
  double c_similar = 1.0;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct RankerOptions {
  double c_ordered = 1.0;
  double c_similar = 1.0;
  int max_iterations = 5000;
  // converged when the objective decreased by less than tolerance over a
  // window of tolerance_window iterations
  double tolerance = 1e-8;
  int tolerance_window = 10;
  bool standardize = true;
};

// Primal objective on raw difference vectors:
//   0.5 ||w||^2 + c_o * sum max(0, 1 - w'(x_i - x_j))^2
//                + c_s * sum (w'(x_i - x_j))^2
// diffs_* hold one difference vector per row.
double ranking_objective(const Eigen::VectorXd& w, const Eigen::MatrixXd& diffs_ordered,
                         const Eigen::MatrixXd& diffs_similar, double c_ordered,
                         double c_similar);

// Full-batch gradient descent with backtracking line search on the squared
// hinge reformulation. The objective is non-increasing across iterations.
// Returns the best iterate with converged=false if the iteration cap is hit.
// Throws InvalidInput on non-finite features or unresolvable pair indices.
RankingModel train_ranker(const Eigen::MatrixXd& features, const PairSets& pairs,
                          const RankerOptions& options = {});

// w' standardize(x). Throws InvalidInput on dimension mismatch.
double score(const RankingModel& model, const Eigen::VectorXd& x);

// JSON round trip.
void save_ranking_model(const std::string& path, const RankingModel& model);
RankingModel load_ranking_model(const std::string& path);

}  // namespace strengthnet::ranker

#endif  // STRENGTHNET_RANKER_RANK_SVM_HPP_
