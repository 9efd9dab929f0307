#include "doctest.h"

#include "artssl/mapfield.hpp"

using namespace artssl;

TEST_CASE("one_hot") {
  CHECK(one_hot(0, 3) == Vec{1.0, 0.0, 0.0});
  CHECK(one_hot(2, 3) == Vec{0.0, 0.0, 1.0});
  CHECK_THROWS_AS(one_hot(3, 3), DataError);
}

TEST_CASE("map-field check is strict") {
  Vec y = one_hot(1, 3);
  Vec linked = one_hot(1, 3);
  Vec other = one_hot(0, 3);
  Vec open(3, 1.0);
  CHECK(map_field_check(y, linked, 0.9));
  CHECK_FALSE(map_field_check(y, other, 0.9));
  CHECK(map_field_check(y, open, 0.9));   // unlinked row accepts anything
  // ratio exactly rho_ab fails the strict test
  CHECK_FALSE(map_field_check(y, linked, 1.0));
  CHECK(map_field_check(y, linked, 0.999999));
}

TEST_CASE("match tracking nudges vigilance just above the current match") {
  Vec A{0.5, 0.5, 0.5, 0.5};              // |A| = 2
  Vec W{0.5, 0.5, 0.25, 0.25};            // |A ^ W| = 1.5, match = 0.75
  CHECK(match_track(A, W, 0.001) == doctest::Approx(0.751).epsilon(1e-12));
  CHECK(match_track(A, A, 0.001) == doctest::Approx(1.001).epsilon(1e-12));
}

TEST_CASE("map-field params validate") {
  CHECK_NOTHROW(MapFieldParams{}.validate());
  CHECK_THROWS_AS((MapFieldParams{1.5, 0.001}).validate(), ConfigError);
  CHECK_THROWS_AS((MapFieldParams{0.9, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS((MapFieldParams{-0.1, 0.001}).validate(), ConfigError);
}

TEST_CASE("map field rows: unlinked is all-ones, linked is one-hot") {
  MapField map;
  map.ensure_nodes(3);
  CHECK(map.linked_count() == 0);
  CHECK(map.row(0, 2) == Vec{1.0, 1.0});
  map.set_link(0, 1);
  CHECK(map.row(0, 2) == Vec{0.0, 1.0});
  CHECK(map.linked_count() == 1);
  CHECK(map.link(0).value() == 1);
  CHECK_FALSE(map.link(1).has_value());

  // re-linking to the same class is a no-op, switching classes is a bug
  CHECK_NOTHROW(map.set_link(0, 1));
  CHECK_THROWS_AS(map.set_link(0, 2), InternalError);
}

TEST_CASE("accepts combines row lookup with the strict check") {
  MapField map;
  map.ensure_nodes(2);
  map.set_link(0, 0);
  CHECK(map.accepts(0, 0, 3, 0.9));
  CHECK_FALSE(map.accepts(0, 1, 3, 0.9));
  CHECK(map.accepts(1, 2, 3, 0.9));  // unlinked node accepts any class
}

TEST_CASE("class dictionary: one node per class id, ready for repeats") {
  ClassArt ca;
  CHECK(ca.class_count() == 0);
  CHECK(ca.learn(0) == 0);
  CHECK(ca.learn(1) == 1);
  CHECK(ca.learn(0) == 0);  // repeat resonates, no duplicate
  CHECK(ca.learn(2) == 2);
  CHECK(ca.class_count() == 3);
  CHECK(ca.class_of(1) == 1);
  CHECK(ca.node_of(1) == 1);
  CHECK(ca.node_classes() == std::vector<int>{0, 1, 2});
}

TEST_CASE("class dictionary grows its dimension on demand") {
  ClassArt ca;
  ca.learn(0);
  ca.learn(5);  // jumps the dimension to 6
  CHECK(ca.class_count() == 2);
  CHECK(ca.node_classes() == std::vector<int>{0, 5});
  CHECK(ca.learn(5) == 1);
  CHECK(ca.learn(3) == 2);
}

TEST_CASE("class dictionary restore round-trips and rejects duplicates") {
  ClassArt ca;
  ca.restore(std::vector<int>{2, 0, 7});
  CHECK(ca.class_count() == 3);
  CHECK(ca.class_of(0) == 2);
  CHECK(ca.class_of(2) == 7);
  CHECK(ca.learn(0) == 1);  // existing class resolves to its node

  ClassArt bad;
  CHECK_THROWS_AS(bad.restore(std::vector<int>{1, 1}), DataError);
}
