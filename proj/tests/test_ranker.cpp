#include <doctest.h>

#include <cmath>

#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"
#include "strengthnet/ranker/labels.hpp"
#include "strengthnet/ranker/pair_sets.hpp"
#include "strengthnet/ranker/rank_svm.hpp"
#include "test_util.hpp"

using namespace strengthnet;
using namespace strengthnet::ranker;

namespace {

data::CorpusManifest tiny_manifest(int neutral, int happy) {
  data::CorpusManifest m;
  for (int i = 0; i < neutral; ++i) {
    data::ManifestRow row;
    row.utterance_id = "n" + std::to_string(i);
    row.dataset_id = "toy";
    row.emotion = data::Emotion::kNeutral;
    m.rows.push_back(row);
  }
  for (int i = 0; i < happy; ++i) {
    data::ManifestRow row;
    row.utterance_id = "h" + std::to_string(i);
    row.dataset_id = "toy";
    row.emotion = data::Emotion::kHappy;
    m.rows.push_back(row);
  }
  return m;
}

// 6-point 2-D instance used for the oracle comparisons:
// rows 0..2 emotional, rows 3..5 neutral.
Eigen::MatrixXd toy_features() {
  Eigen::MatrixXd x(6, 2);
  x << 2.0, 0.5,
       1.5, 1.0,
       2.2, -0.3,
       0.0, 0.2,
       0.3, -0.2,
       -0.5, 0.5;
  return x;
}

PairSets toy_pairs() {
  PairSets p;
  p.emotion = data::Emotion::kHappy;
  p.dataset_id = "toy";
  p.ordered = {{0, 3}, {1, 4}, {2, 5}, {0, 4}};
  p.similar = {{3, 5}, {1, 2}};
  return p;
}

Eigen::MatrixXd diffs_for(const Eigen::MatrixXd& x,
                          const std::vector<std::pair<int, int>>& pairs) {
  Eigen::MatrixXd d(static_cast<long>(pairs.size()), x.cols());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    d.row(static_cast<long>(k)) = x.row(pairs[k].first) - x.row(pairs[k].second);
  }
  return d;
}

}  // namespace

TEST_CASE("pair sets enumerate fully when under the cap") {
  const auto m = tiny_manifest(2, 2);
  const PairSets sets = build_pair_sets(m, data::Emotion::kHappy, 100, 1);
  CHECK(sets.ordered.size() == 4);   // 2 emotional x 2 neutral
  CHECK(sets.similar.size() == 2);   // one neutral pair + one emotional pair
  int neutral_pairs = 0, emotional_pairs = 0;
  for (const auto& [i, j] : sets.similar) {
    CHECK(i != j);
    const bool i_neutral = m.rows[static_cast<std::size_t>(i)].emotion == data::Emotion::kNeutral;
    const bool j_neutral = m.rows[static_cast<std::size_t>(j)].emotion == data::Emotion::kNeutral;
    CHECK(i_neutral == j_neutral);  // same domain
    (i_neutral ? neutral_pairs : emotional_pairs) += 1;
  }
  CHECK(neutral_pairs == 1);
  CHECK(emotional_pairs == 1);
  for (const auto& [i, j] : sets.ordered) {
    CHECK(m.rows[static_cast<std::size_t>(i)].emotion == data::Emotion::kHappy);
    CHECK(m.rows[static_cast<std::size_t>(j)].emotion == data::Emotion::kNeutral);
  }
}

TEST_CASE("pair sets respect the cap and the seed") {
  const auto m = tiny_manifest(30, 30);
  const PairSets a = build_pair_sets(m, data::Emotion::kHappy, 50, 9);
  CHECK(a.ordered.size() == 50);
  CHECK(a.similar.size() == 50);
  const PairSets b = build_pair_sets(m, data::Emotion::kHappy, 50, 9);
  CHECK(a.ordered == b.ordered);
  CHECK(a.similar == b.similar);
  const PairSets c = build_pair_sets(m, data::Emotion::kHappy, 50, 10);
  CHECK(a.ordered != c.ordered);
}

TEST_CASE("pair sets need both domains") {
  CHECK_THROWS_AS(build_pair_sets(tiny_manifest(1, 0), data::Emotion::kHappy, 10, 1),
                  InsufficientData);
  CHECK_THROWS_AS(build_pair_sets(tiny_manifest(0, 1), data::Emotion::kHappy, 10, 1),
                  InsufficientData);
}

TEST_CASE("single separable 1-D constraint turns w positive") {
  Eigen::MatrixXd x(2, 1);
  x << 1.0, 0.0;
  PairSets p;
  p.emotion = data::Emotion::kHappy;
  p.ordered = {{0, 1}};
  RankerOptions opts;
  opts.standardize = false;
  const RankingModel model = train_ranker(x, p, opts);
  CHECK(model.w(0) > 0.0);
  const Eigen::MatrixXd d = diffs_for(x, p.ordered);
  const Eigen::MatrixXd none(0, 1);
  const double at_zero = ranking_objective(Eigen::VectorXd::Zero(1), d, none, 1.0, 1.0);
  CHECK(model.objective < at_zero);
}

TEST_CASE("trained objective matches the dense grid-search oracle") {
  const Eigen::MatrixXd x = toy_features();
  const PairSets p = toy_pairs();
  RankerOptions opts;
  opts.standardize = false;
  const RankingModel model = train_ranker(x, p, opts);

  // oracle: exhaustive scan of w in [-5,5]^2 at step 0.01
  const Eigen::MatrixXd d_o = diffs_for(x, p.ordered);
  const Eigen::MatrixXd d_s = diffs_for(x, p.similar);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    for (int j = 0; j <= 1000; ++j) {
      Eigen::VectorXd w(2);
      w << -5.0 + 0.01 * i, -5.0 + 0.01 * j;
      best = std::min(best, ranking_objective(w, d_o, d_s, 1.0, 1.0));
    }
  }
  CHECK(model.objective <= best + 1e-12);  // solver at least as good as the grid
  CHECK(std::abs(model.objective - best) / best < 1e-2);
  CHECK(model.converged);
}

TEST_CASE("duplicating the ordered set equals doubling its weight") {
  const Eigen::MatrixXd x = toy_features();
  PairSets doubled = toy_pairs();
  const PairSets base = toy_pairs();
  doubled.ordered.insert(doubled.ordered.end(), base.ordered.begin(), base.ordered.end());
  RankerOptions opts;
  opts.standardize = false;
  const RankingModel a = train_ranker(x, doubled, opts);

  RankerOptions opts2 = opts;
  opts2.c_ordered = 2.0;
  const RankingModel b = train_ranker(x, toy_pairs(), opts2);
  CHECK(std::abs(a.objective - b.objective) < 1e-6);
  CHECK((a.w - b.w).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("objective is non-increasing across iteration budgets") {
  const Eigen::MatrixXd x = toy_features();
  const PairSets p = toy_pairs();
  double prev = std::numeric_limits<double>::infinity();
  for (int iters : {1, 2, 4, 8, 16, 32, 64}) {
    RankerOptions opts;
    opts.standardize = false;
    opts.max_iterations = iters;
    const RankingModel model = train_ranker(x, p, opts);
    CHECK(model.objective <= prev + 1e-12);
    prev = model.objective;
  }
}

TEST_CASE("training is deterministic") {
  const Eigen::MatrixXd x = toy_features();
  const RankingModel a = train_ranker(x, toy_pairs());
  const RankingModel b = train_ranker(x, toy_pairs());
  CHECK((a.w - b.w).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.objective == b.objective);
}

TEST_CASE("score is linear and satisfies separable training pairs") {
  const Eigen::MatrixXd x = toy_features();
  const PairSets p = toy_pairs();
  const RankingModel model = train_ranker(x, p);

  CHECK(score(model, Eigen::VectorXd::Zero(2)) ==
        doctest::Approx(-model.w.dot(model.feature_mean.cwiseQuotient(model.feature_std)))
            .epsilon(1e-12));
  // linearity in the standardized space: score(a+b) + score(0) == score(a) + score(b)
  Eigen::VectorXd va(2), vb(2);
  va << 0.7, -0.4;
  vb << -0.2, 1.1;
  CHECK(score(model, va + vb) + score(model, Eigen::VectorXd::Zero(2)) ==
        doctest::Approx(score(model, va) + score(model, vb)).epsilon(1e-9));

  for (const auto& [i, j] : p.ordered) {
    CHECK(score(model, x.row(i).transpose()) > score(model, x.row(j).transpose()));
  }
}

TEST_CASE("score without standardization is plainly linear") {
  Eigen::MatrixXd x(2, 2);
  x << 1.0, 0.0, 0.0, 1.0;
  PairSets p;
  p.emotion = data::Emotion::kHappy;
  p.ordered = {{0, 1}};
  RankerOptions opts;
  opts.standardize = false;
  const RankingModel model = train_ranker(x, p, opts);
  CHECK(score(model, Eigen::VectorXd::Zero(2)) == 0.0);
  Eigen::VectorXd va(2), vb(2);
  va << 0.3, 0.9;
  vb << -1.2, 0.4;
  CHECK(score(model, va + vb) ==
        doctest::Approx(score(model, va) + score(model, vb)).epsilon(1e-9));
}

TEST_CASE("scaling w scales raw scores but not normalized labels") {
  const Eigen::MatrixXd x = toy_features();
  RankingModel model = train_ranker(x, toy_pairs());
  std::vector<ScoredUtterance> scored;
  for (int i = 0; i < 6; ++i) {
    ScoredUtterance s;
    s.utterance_id = "u" + std::to_string(i);
    s.dataset_id = "toy";
    s.emotion = data::Emotion::kHappy;
    s.raw_score = score(model, x.row(i).transpose());
    scored.push_back(s);
  }
  RankingModel scaled = model;
  scaled.w *= 3.0;
  std::vector<ScoredUtterance> scored_scaled = scored;
  for (int i = 0; i < 6; ++i) {
    scored_scaled[static_cast<std::size_t>(i)].raw_score =
        score(scaled, x.row(i).transpose());
    CHECK(scored_scaled[static_cast<std::size_t>(i)].raw_score ==
          doctest::Approx(3.0 * scored[static_cast<std::size_t>(i)].raw_score).epsilon(1e-9));
  }
  const auto a = normalize_scores(scored);
  const auto b = normalize_scores(scored_scaled);
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    CHECK(a.labels[i].normalized == doctest::Approx(b.labels[i].normalized).epsilon(1e-9));
  }
}

TEST_CASE("normalize maps {2,4,6} to {0,0.5,1}") {
  std::vector<ScoredUtterance> scored(3);
  for (int i = 0; i < 3; ++i) {
    scored[static_cast<std::size_t>(i)].utterance_id = "u" + std::to_string(i);
    scored[static_cast<std::size_t>(i)].dataset_id = "d";
    scored[static_cast<std::size_t>(i)].emotion = data::Emotion::kSad;
    scored[static_cast<std::size_t>(i)].raw_score = 2.0 * (i + 1);
  }
  const auto result = normalize_scores(scored);
  CHECK(result.labels[0].normalized == 0.0);
  CHECK(result.labels[1].normalized == doctest::Approx(0.5));
  CHECK(result.labels[2].normalized == 1.0);
  CHECK(result.warnings.empty());
}

TEST_CASE("degenerate group pins labels at 0.5 with a warning") {
  std::vector<ScoredUtterance> scored(3);
  for (int i = 0; i < 3; ++i) {
    scored[static_cast<std::size_t>(i)].utterance_id = "u" + std::to_string(i);
    scored[static_cast<std::size_t>(i)].dataset_id = "d";
    scored[static_cast<std::size_t>(i)].emotion = data::Emotion::kAngry;
    scored[static_cast<std::size_t>(i)].raw_score = 7.0;
  }
  const auto result = normalize_scores(scored);
  for (const auto& l : result.labels) CHECK(l.normalized == 0.5);
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("DegenerateGroup") != std::string::npos);
}

TEST_CASE("normalization is invariant to positive affine raw transforms") {
  strengthnet::Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform(0.1, 5.0);
    const double b = rng.uniform(-10.0, 10.0);
    std::vector<ScoredUtterance> scored(8);
    std::vector<ScoredUtterance> transformed(8);
    for (int i = 0; i < 8; ++i) {
      auto& s = scored[static_cast<std::size_t>(i)];
      s.utterance_id = "u" + std::to_string(i);
      s.dataset_id = "d";
      s.emotion = data::Emotion::kHappy;
      s.raw_score = rng.uniform(-3.0, 3.0);
      transformed[static_cast<std::size_t>(i)] = s;
      transformed[static_cast<std::size_t>(i)].raw_score = a * s.raw_score + b;
    }
    const auto r1 = normalize_scores(scored);
    const auto r2 = normalize_scores(transformed);
    for (std::size_t i = 0; i < r1.labels.size(); ++i) {
      CHECK(r1.labels[i].normalized == doctest::Approx(r2.labels[i].normalized).epsilon(1e-9));
    }
  }
}

TEST_CASE("normalized labels preserve the raw-score ordering per group") {
  strengthnet::Rng rng(123);
  std::vector<ScoredUtterance> scored(12);
  for (int i = 0; i < 12; ++i) {
    auto& s = scored[static_cast<std::size_t>(i)];
    s.utterance_id = "u" + std::to_string(i);
    s.dataset_id = i < 6 ? "d1" : "d2";
    s.emotion = data::Emotion::kSurprise;
    s.raw_score = rng.uniform(-5.0, 5.0);
  }
  const auto result = normalize_scores(scored);
  for (std::size_t i = 0; i < scored.size(); ++i) {
    for (std::size_t j = 0; j < scored.size(); ++j) {
      if (result.labels[i].dataset_id != result.labels[j].dataset_id) continue;
      if (scored[i].raw_score < scored[j].raw_score) {
        CHECK(result.labels[i].normalized <= result.labels[j].normalized);
      }
    }
  }
}

TEST_CASE("ranking model json round trip") {
  testutil::TempDir tmp("ranker");
  RankingModel model = train_ranker(toy_features(), toy_pairs());
  save_ranking_model(tmp.str("model.json"), model);
  const RankingModel loaded = load_ranking_model(tmp.str("model.json"));
  CHECK((loaded.w - model.w).cwiseAbs().maxCoeff() == 0.0);
  CHECK(loaded.emotion == model.emotion);
  CHECK(loaded.objective == model.objective);
  CHECK(loaded.converged == model.converged);
}

TEST_CASE("non-finite features are rejected") {
  Eigen::MatrixXd x = toy_features();
  x(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(train_ranker(x, toy_pairs()), InvalidInput);
}
