#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "artssl/art.hpp"

namespace artssl {

// Plain one-hot (not complement coded): the output coding of the class layer.
Vec one_hot(std::size_t k, std::size_t n);

// Map-field vigilance: |y_b AND row| / |y_b| must strictly exceed rho_ab.
bool map_field_check(std::span<const double> y_b, std::span<const double> row, double rho_ab);

// Match tracking: the vigilance the category layer must beat after the map
// field rejects its winner (winner's match ratio plus a small offset).
double match_track(std::span<const double> A, std::span<const double> winner_weight,
                   double delta);

struct MapFieldParams {
  double rho_ab = 0.9;  // map-field vigilance
  double delta = 1e-3;  // match-tracking offset
  void validate() const;
};

// Category-to-class links, one optional link per category node. An unlinked
// node behaves as an all-ones row: it accepts any class.
class MapField {
 public:
  void ensure_nodes(std::size_t n);
  std::size_t node_rows() const { return links_.size(); }
  std::optional<std::size_t> link(std::size_t j) const;
  void set_link(std::size_t j, std::size_t class_node);
  std::size_t linked_count() const;

  // The row of the association matrix for node j, over n_b class nodes.
  Vec row(std::size_t j, std::size_t n_b) const;
  bool accepts(std::size_t j, std::size_t class_node, std::size_t n_b, double rho_ab) const;

 private:
  std::vector<std::optional<std::size_t>> links_;
};

// Class dictionary: a fuzzy ART network over one-hot class codes run at
// vigilance 1, which collapses to exactly one node per distinct class id.
// The dimension grows as new class ids appear; existing node weights are
// rebuilt exactly (one-hots have no fractional components to disturb).
class ClassArt {
 public:
  explicit ClassArt(double alpha = 1e-3);

  std::size_t class_count() const { return node_class_.size(); }
  std::size_t dim() const { return dim_; }

  // Feed one class observation; returns the class-layer node index.
  std::size_t learn(int class_id);

  int class_of(std::size_t node) const;
  std::optional<std::size_t> node_of(int class_id) const;
  const std::vector<int>& node_classes() const { return node_class_; }
  const ArtNetwork& net() const { return net_; }

  // Rebuild from a saved node -> class id list.
  void restore(const std::vector<int>& node_classes);

 private:
  double alpha_;
  std::size_t dim_;
  ArtNetwork net_;
  std::vector<int> node_class_;

  void grow_to(std::size_t dim);
  ArtNetwork fresh_net(std::size_t dim) const;
};

}  // namespace artssl
