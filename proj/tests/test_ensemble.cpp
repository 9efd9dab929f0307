#include "doctest.h"

#include "artssl/ensemble.hpp"
#include "artssl/rng.hpp"

using namespace artssl;

namespace {

// Two tight diagonal blobs, trivially separable.
std::vector<LabeledSample> blob_pool(int per_class, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  std::vector<LabeledSample> pool;
  for (int i = 0; i < per_class; ++i) {
    pool.push_back({Vec{u(rng), u(rng)}, 0});
    pool.push_back({Vec{0.8 + u(rng), 0.8 + u(rng)}, 1});
  }
  return pool;
}

MemberModel diagonal_member() {
  SslArtModel m(2, ArtParams{0.9, 0.001, 1.0});
  m.train_labeled(Vec{0.1, 0.1}, 0);
  m.train_labeled(Vec{0.9, 0.9}, 1);
  m.finalize_labels();
  return m;
}

// Predicts `cls` for everything (single labeled node).
MemberModel constant_member(int cls) {
  SslArtModel m(2, ArtParams{0.0, 0.001, 1.0});
  m.train_labeled(Vec{0.5, 0.5}, cls);
  m.finalize_labels();
  return m;
}

}  // namespace

TEST_CASE("name round-trips for mapping and voting") {
  CHECK(mapping_from("otm") == Mapping::one_to_many);
  CHECK(mapping_from("oto") == Mapping::one_to_one);
  CHECK(to_string(Mapping::one_to_one) == "oto");
  CHECK_THROWS_AS(mapping_from("both"), ConfigError);

  CHECK(voting_from("weighted") == Voting::weighted);
  CHECK(voting_from("majority") == Voting::majority);
  CHECK(voting_from("single") == Voting::single);
  CHECK(to_string(Voting::majority) == "majority");
  CHECK_THROWS_AS(voting_from("plurality"), ConfigError);
}

TEST_CASE("class weights are per-class recall on the validation pool") {
  MemberModel m = diagonal_member();
  std::vector<LabeledSample> val{
      {Vec{0.1, 0.1}, 0}, {Vec{0.15, 0.15}, 0},   // both right
      {Vec{0.9, 0.9}, 1}, {Vec{0.2, 0.2}, 1},     // one lands in the wrong blob
  };
  Vec w = compute_class_weights(m, val, 2);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(0.5));

  // a class with no validation samples weighs nothing
  Vec w3 = compute_class_weights(m, val, 3);
  CHECK(w3[2] == 0.0);

  std::vector<LabeledSample> bad{{Vec{0.1, 0.1}, 5}};
  CHECK_THROWS_AS(compute_class_weights(m, bad, 2), DataError);
}

TEST_CASE("a member's vote is its class weight at the predicted class") {
  MemberModel m = diagonal_member();
  Vec weights{1.0, 0.5};
  CHECK(member_vote(m, Vec{0.12, 0.12}, weights) == Vec{1.0, 0.0});
  CHECK(member_vote(m, Vec{0.88, 0.88}, weights) == Vec{0.0, 0.5});
}

TEST_CASE("an abstaining member casts an all-zero vote") {
  SslArtModel ssl(2, ArtParams{0.9, 0.001, 1.0});
  ssl.pretrain(Vec{0.9, 0.9});           // unlabeled node nearest the query
  ssl.train_labeled(Vec{0.1, 0.1}, 0);
  ssl.finalize_labels();
  MemberModel m = std::move(ssl);
  CHECK(member_vote(m, Vec{0.88, 0.88}, Vec{1.0, 1.0}, 1) == Vec{0.0, 0.0});
  CHECK(member_vote(m, Vec{0.88, 0.88}, Vec{1.0, 1.0}, 2) == Vec{1.0, 0.0});
}

TEST_CASE("aggregate: weighted sums scores, majority counts ballots") {
  std::vector<Vec> agree{{0.0, 0.9, 0.0}, {0.0, 0.8, 0.0}, {0.0, 0.0, 0.95}};
  CHECK(aggregate(agree, Voting::weighted).value() == 1);   // 1.7 beats 0.95
  CHECK(aggregate(agree, Voting::majority).value() == 1);   // 2 ballots beat 1

  // one confident member against two weak ones: the rules now disagree
  std::vector<Vec> split{{0.0, 0.99, 0.0}, {0.0, 0.0, 0.3}, {0.0, 0.0, 0.3}};
  CHECK(aggregate(split, Voting::weighted).value() == 1);
  CHECK(aggregate(split, Voting::majority).value() == 2);
}

TEST_CASE("aggregate edge cases: ties to the lowest id, silence stays silent") {
  std::vector<Vec> tied{{0.5, 0.0}, {0.0, 0.5}};
  CHECK(aggregate(tied, Voting::weighted).value() == 0);
  CHECK(aggregate(tied, Voting::majority).value() == 0);

  CHECK_FALSE(aggregate({}, Voting::weighted).has_value());
  std::vector<Vec> silent{{0.0, 0.0}, {0.0, 0.0}};
  CHECK_FALSE(aggregate(silent, Voting::weighted).has_value());
  CHECK_FALSE(aggregate(silent, Voting::majority).has_value());

  std::vector<Vec> ragged{{0.5, 0.0}, {0.5}};
  CHECK_THROWS_AS(aggregate(ragged, Voting::weighted), InternalError);
}

TEST_CASE("zero-weight votes fall back to ballot counting instead of abstaining") {
  EnsembleModel ens;
  ens.voting = Voting::weighted;
  ens.n_classes = 2;
  ens.members.push_back(constant_member(1));
  ens.members.push_back(constant_member(1));
  ens.members.push_back(constant_member(0));
  ens.class_weights.assign(3, Vec{0.0, 0.0});
  CHECK(ens.predict(Vec{0.5, 0.5}).value() == 1);
}

TEST_CASE("an empty ensemble cannot predict") {
  EnsembleModel ens;
  CHECK_THROWS_AS(ens.predict(Vec{0.5, 0.5}), ConfigError);
}

TEST_CASE("train_ensemble validates its options") {
  auto labeled = blob_pool(10, 1);
  std::vector<Vec> unlabeled;
  EnsembleOptions opt;
  opt.params = ArtParams{0.8, 0.001, 1.0};

  opt.members = 0;
  CHECK_THROWS_AS(train_ensemble(2, unlabeled, labeled, opt), ConfigError);

  opt.members = 2;
  opt.voting = Voting::single;
  CHECK_THROWS_AS(train_ensemble(2, unlabeled, labeled, opt), ConfigError);

  opt.voting = Voting::weighted;
  opt.validation_frac = 1.0;
  CHECK_THROWS_AS(train_ensemble(2, unlabeled, labeled, opt), ConfigError);

  opt.validation_frac = 0.2;
  CHECK_THROWS_AS(train_ensemble(2, unlabeled, {}, opt), ConfigError);

  auto bad = labeled;
  bad[0].y = -1;
  CHECK_THROWS_AS(train_ensemble(2, unlabeled, bad, opt), DataError);
}

TEST_CASE("a trained ensemble separates the blobs and stays deterministic") {
  auto labeled = blob_pool(20, 2);
  std::vector<Vec> unlabeled;
  auto rng = make_rng(9);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  for (int i = 0; i < 40; ++i) {
    unlabeled.push_back(Vec{u(rng), u(rng)});
    unlabeled.push_back(Vec{0.8 + u(rng), 0.8 + u(rng)});
  }

  EnsembleOptions opt;
  opt.params = ArtParams{0.85, 0.001, 1.0};
  opt.members = 3;
  opt.seed = 123;

  EnsembleModel a = train_ensemble(2, unlabeled, labeled, opt);
  CHECK(a.size() == 3);
  CHECK(a.class_count() == 2);
  REQUIRE(a.class_weights.size() == 3);
  for (const auto& s : labeled) CHECK(a.predict(s.x).value() == s.y);

  EnsembleModel b = train_ensemble(2, unlabeled, labeled, opt);
  CHECK(a.class_weights == b.class_weights);
  auto qrng = make_rng(10);
  std::uniform_real_distribution<double> q(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    Vec x{q(qrng), q(qrng)};
    CHECK(a.predict(x) == b.predict(x));
  }
}

TEST_CASE("majority training pins every class weight to 1") {
  auto labeled = blob_pool(15, 3);
  EnsembleOptions opt;
  opt.params = ArtParams{0.85, 0.001, 1.0};
  opt.members = 3;
  opt.voting = Voting::majority;
  EnsembleModel ens = train_ensemble(2, {}, labeled, opt);
  for (const auto& row : ens.class_weights) CHECK(row == Vec{1.0, 1.0});
  for (const auto& s : labeled) CHECK(ens.predict(s.x).value() == s.y);
}

TEST_CASE("one-to-one members train and vote the same way") {
  auto labeled = blob_pool(15, 4);
  EnsembleOptions opt;
  opt.params = ArtParams{0.85, 0.001, 1.0};
  opt.mapping = Mapping::one_to_one;
  opt.members = 3;
  EnsembleModel ens = train_ensemble(2, {}, labeled, opt);
  CHECK(std::holds_alternative<ArtmapModel>(ens.members[0]));
  for (const auto& s : labeled) CHECK(ens.predict(s.x).value() == s.y);
}
