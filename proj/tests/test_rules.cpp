#include "doctest.h"

#include "artssl/rules.hpp"

using namespace artssl;

TEST_CASE("quantize snaps to the nearest level, midpoints round up") {
  // Q=5 grid: 0, 0.25, 0.5, 0.75, 1
  CHECK(quantize(0.0, 5) == 1);
  CHECK(quantize(0.3, 5) == 2);
  CHECK(quantize(0.125, 5) == 2);   // exact midpoint goes up
  CHECK(quantize(0.1249, 5) == 1);
  CHECK(quantize(0.6, 5) == 3);
  CHECK(quantize(1.0, 5) == 5);

  CHECK(quantize(0.49, 2) == 1);
  CHECK(quantize(0.5, 2) == 2);

  // out of range clamps (with a warning) instead of failing
  CHECK(quantize(1.2, 5) == 5);
  CHECK(quantize(-0.3, 5) == 1);
  CHECK_THROWS_AS(quantize(0.5, 1), ConfigError);
}

TEST_CASE("hyperbox bounds come straight off the weight vector") {
  auto [u, v] = hyperbox_bounds(Vec{0.2, 0.5, 0.6, 0.3});
  CHECK(u == Vec{0.2, 0.5});
  CHECK(v == Vec{0.4, 0.7});

  // a point box is fine, an inverted one is corruption
  auto [pu, pv] = hyperbox_bounds(Vec{0.25, 0.75});  // exact in binary
  CHECK(pu == pv);
  CHECK_THROWS_AS(hyperbox_bounds(Vec{0.8, 0.8}), InternalError);  // [0.8, 0.2]
  CHECK_THROWS_AS(hyperbox_bounds(Vec{0.1, 0.2, 0.3}), InternalError);
}

TEST_CASE("level vocabulary") {
  CHECK(quant_vocabulary(5) ==
        std::vector<std::string>{"Very Small", "Small", "Medium", "Large", "Very Large"});
  CHECK(quant_vocabulary(3) == std::vector<std::string>{"Small", "Medium", "Large"});
  CHECK(quant_vocabulary(2) == std::vector<std::string>{"Small", "Large"});
  CHECK(quant_vocabulary(4) ==
        std::vector<std::string>{"Level 1", "Level 2", "Level 3", "Level 4"});
}

namespace {

SslArtModel small_model() {
  SslArtModel m(2, ArtParams{0.7, 0.001, 1.0});
  m.pretrain(Vec{0.9, 0.1});                  // stays unlabeled -> no rule
  m.train_labeled(Vec{0.1, 0.55}, 1);
  m.train_labeled(Vec{0.3, 0.45}, 1);         // same node, widens the box
  m.train_labeled(Vec{0.25, 0.5}, 0);         // minority count on that node
  m.finalize_labels();
  return m;
}

}  // namespace

TEST_CASE("one rule per labeled node, counts normalized into confidences") {
  SslArtModel m = small_model();
  REQUIRE(m.committed_node_count() == 2);
  auto rules = extract_rules(m, 5);
  REQUIRE(rules.size() == 1);  // the pretrained node carries no class evidence

  const FuzzyRule& r = rules[0];
  CHECK(r.node == 1);
  CHECK(r.consequent == 1);
  REQUIRE(r.confidences.size() == 2);
  CHECK(r.confidences[0] == doctest::Approx(1.0 / 3.0));
  CHECK(r.confidences[1] == doctest::Approx(2.0 / 3.0));
  CHECK(r.confidences[0] + r.confidences[1] == doctest::Approx(1.0));

  // box is [0.1,0.3] x [0.45,0.55] -> levels [1,2] x [3,3] on the 5-grid
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[0] == std::pair<int, int>{1, 2});
  CHECK(r.levels[1] == std::pair<int, int>{3, 3});
}

TEST_CASE("rule extraction needs finalized labels") {
  SslArtModel m(2, ArtParams{0.7, 0.001, 1.0});
  m.train_labeled(Vec{0.5, 0.5}, 0);
  CHECK_THROWS_AS(extract_rules(m, 5), ConfigError);
  CHECK_THROWS_AS(extract_rules(m, 1), ConfigError);
}

TEST_CASE("rendering matches the pinned phrasing") {
  FuzzyRule r;
  r.node = 1;
  r.levels = {{1, 2}, {3, 3}};
  r.consequent = 1;
  r.confidences = {1.0 / 3.0, 2.0 / 3.0};

  std::string text = render_rule(r, {"width", "height"}, {"ok", "faulty"}, 5);
  CHECK(text ==
        "If width is from \"Very Small\" to \"Small\", AND\n"
        "   height is \"Medium\"\n"
        "Then faulty with confidence estimate=0.667");

  // absent names fall back to positional ones
  std::string bare = render_rule(r, {}, {}, 5);
  CHECK(bare.find("If x1 is from") == 0);
  CHECK(bare.find("Then class 1") != std::string::npos);

  // full certainty renders as 1.0, not 1.000
  r.confidences = {0.0, 1.0};
  CHECK(render_rule(r, {}, {}, 5).find("confidence estimate=1.0") != std::string::npos);

  CHECK_THROWS_AS(render_rule(r, {"only-one"}, {}, 5), ConfigError);
  r.levels = {{0, 2}, {3, 3}};
  CHECK_THROWS_AS(render_rule(r, {}, {}, 5), InternalError);
}

TEST_CASE("text listing numbers rules and names their nodes") {
  SslArtModel m = small_model();
  auto rules = extract_rules(m, 5);
  std::string text = rules_to_text(rules, {"a", "b"}, {"no", "yes"}, 5);
  CHECK(text.find("Rule 1 (node 1):\n") == 0);
  CHECK(text.find("Then yes with confidence estimate=0.667") != std::string::npos);
}

TEST_CASE("csv listing uses level spans and raw confidences") {
  SslArtModel m = small_model();
  auto rules = extract_rules(m, 5);
  std::string csv = rules_to_csv(rules, {"a", "b"}, {"no", "yes"});
  CHECK(csv.find("rule,node,a,b,class,confidence_no,confidence_yes\n") == 0);
  CHECK(csv.find("1,1,1-2,3,yes,") != std::string::npos);
}

TEST_CASE("default names are positional") {
  CHECK(default_feature_names(3) == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(default_class_names(2) == std::vector<std::string>{"class 0", "class 1"});
}
