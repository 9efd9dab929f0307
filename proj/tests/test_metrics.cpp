#include "doctest.h"

#include "artssl/metrics.hpp"

using namespace artssl;

namespace {

// Test pool where x[0] encodes the scripted outcome:
// 0 = correct prediction, 1 = wrong prediction, 2 = abstention.
std::vector<LabeledSample> scripted(const std::vector<std::pair<int, int>>& plan) {
  std::vector<LabeledSample> pool;
  for (const auto& [y, outcome] : plan)
    pool.push_back({Vec{static_cast<double>(outcome)}, y});
  return pool;
}

std::optional<int> scripted_predict(std::span<const double> x, int y, std::size_t classes) {
  int outcome = static_cast<int>(x[0]);
  if (outcome == 2) return std::nullopt;
  if (outcome == 0) return y;
  return (y + 1) % static_cast<int>(classes);
}

Metrics run_scripted(const std::vector<std::pair<int, int>>& plan, std::size_t classes) {
  auto pool = scripted(plan);
  std::size_t i = 0;
  Predictor p = [&](std::span<const double> x) { return scripted_predict(x, pool[i++].y, classes); };
  return evaluate(p, pool, classes);
}

}  // namespace

TEST_CASE("coverage, correctness and accuracy decompose as predicted x correct") {
  // 10 samples: 6 right, 2 wrong, 2 abstentions
  std::vector<std::pair<int, int>> plan = {{0, 0}, {1, 0}, {2, 0}, {0, 0}, {1, 0},
                                           {2, 0}, {0, 1}, {1, 1}, {2, 2}, {0, 2}};
  Metrics m = run_scripted(plan, 3);
  CHECK(m.total == 10);
  CHECK(m.predicted == 8);
  CHECK(m.correct == 6);
  CHECK(m.coverage == doctest::Approx(0.8));
  CHECK(m.correctness == doctest::Approx(0.75));
  CHECK(m.accuracy == doctest::Approx(0.6));
  CHECK(m.accuracy == doctest::Approx(m.coverage * m.correctness));
  // three classes: no binary diagnostics
  CHECK_FALSE(m.sensitivity.has_value());
  CHECK_FALSE(m.specificity.has_value());
}

TEST_CASE("binary tasks report sensitivity and specificity with class 1 positive") {
  // positives: 4 right, 1 wrong; negatives: 3 right, 2 wrong
  std::vector<std::pair<int, int>> plan = {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 1},
                                           {0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 1}};
  Metrics m = run_scripted(plan, 2);
  CHECK(m.sensitivity.value() == doctest::Approx(0.8));
  CHECK(m.specificity.value() == doctest::Approx(0.6));

  // an abstention is a miss on both sides
  Metrics abst = run_scripted({{1, 2}, {1, 0}, {0, 2}, {0, 0}}, 2);
  CHECK(abst.sensitivity.value() == doctest::Approx(0.5));
  CHECK(abst.specificity.value() == doctest::Approx(0.5));
}

TEST_CASE("an all-abstaining predictor scores zero without dividing by zero") {
  Metrics m = run_scripted({{0, 2}, {1, 2}}, 2);
  CHECK(m.predicted == 0);
  CHECK(m.coverage == 0.0);
  CHECK(m.correctness == 0.0);
  CHECK(m.accuracy == 0.0);
}

TEST_CASE("evaluating an empty test pool is an error") {
  Predictor p = [](std::span<const double>) { return std::optional<int>{0}; };
  CHECK_THROWS_AS(evaluate(p, {}, 2), DataError);
}

TEST_CASE("model overloads honor the per-call search depth") {
  SslArtModel m(2, ArtParams{0.9, 0.001, 1.0});
  m.pretrain(Vec{0.9, 0.9});           // unlabeled node next to the queries
  m.train_labeled(Vec{0.1, 0.1}, 0);
  m.finalize_labels();
  std::vector<LabeledSample> test{{Vec{0.85, 0.85}, 0}, {Vec{0.9, 0.9}, 0}};

  Metrics shallow = evaluate(m, test, 1);
  CHECK(shallow.coverage == 0.0);
  Metrics deep = evaluate(m, test, 2);
  CHECK(deep.coverage == 1.0);
  CHECK(deep.correctness == 1.0);
  // the model's own depth (unbounded) is the default
  CHECK(evaluate(m, test).coverage == 1.0);
}

TEST_CASE("test labels beyond the model's classes widen the observed class count") {
  SslArtModel m(2, ArtParams{0.5, 0.001, 1.0});
  m.train_labeled(Vec{0.5, 0.5}, 0);
  m.finalize_labels();
  // model knows one class, the pool carries a second: still a binary task
  std::vector<LabeledSample> test{{Vec{0.5, 0.5}, 0}, {Vec{0.5, 0.5}, 1}};
  Metrics res = evaluate(m, test);
  CHECK(res.sensitivity.has_value());
  CHECK(res.sensitivity.value() == 0.0);
  CHECK(res.specificity.value() == 1.0);
}

TEST_CASE("node counts for every model shape") {
  SslArtModel ssl(2, ArtParams{0.9, 0.001, 1.0});
  ssl.pretrain(Vec{0.9, 0.9});
  ssl.train_labeled(Vec{0.1, 0.1}, 0);
  ssl.finalize_labels();
  NodeCounts nc = node_counts(ssl);
  CHECK(nc.stage1 == 1.0);
  CHECK(nc.stage2 == 2.0);
  CHECK(nc.labeled == 1.0);

  ArtmapModel am(2, ArtParams{0.9, 0.001, 1.0});
  am.pretrain(Vec{0.9, 0.9});
  am.train(Vec{0.1, 0.1}, 0);
  NodeCounts na = node_counts(am);
  CHECK(na.stage1 == 1.0);
  CHECK(na.stage2 == 2.0);
  CHECK(na.labeled == 1.0);

  EnsembleModel ens;
  ens.n_classes = 1;
  ens.voting = Voting::majority;
  ens.members.push_back(std::move(ssl));
  ens.members.push_back(std::move(am));
  ens.class_weights.assign(2, Vec{1.0});
  NodeCounts ne = node_counts(ens);
  CHECK(ne.stage1 == 1.0);
  CHECK(ne.stage2 == 2.0);
  CHECK(ne.labeled == 1.0);
}

TEST_CASE("bootstrap interval brackets the mean and stays within the data range") {
  BootstrapCi ci = bootstrap_ci({0.8, 0.9}, 0.95, 2000, 1);
  CHECK(ci.mean == doctest::Approx(0.85));
  CHECK(ci.lo >= 0.8);
  CHECK(ci.hi <= 0.9);
  CHECK(ci.lo <= ci.mean);
  CHECK(ci.hi >= ci.mean);

  BootstrapCi flat = bootstrap_ci({0.5, 0.5, 0.5}, 0.95, 500, 1);
  CHECK(flat.lo == 0.5);
  CHECK(flat.mean == 0.5);
  CHECK(flat.hi == 0.5);
}

TEST_CASE("bootstrap is seeded and validates its inputs") {
  std::vector<double> vals{0.1, 0.4, 0.35, 0.8, 0.2};
  BootstrapCi a = bootstrap_ci(vals, 0.9, 1000, 42);
  BootstrapCi b = bootstrap_ci(vals, 0.9, 1000, 42);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);

  CHECK_THROWS_AS(bootstrap_ci({0.5}, 0.95, 100, 1), ConfigError);
  CHECK_THROWS_AS(bootstrap_ci(vals, 0.0, 100, 1), ConfigError);
  CHECK_THROWS_AS(bootstrap_ci(vals, 1.0, 100, 1), ConfigError);
  CHECK_THROWS_AS(bootstrap_ci(vals, 0.95, 0, 1), ConfigError);
}
