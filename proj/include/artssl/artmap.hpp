#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "artssl/mapfield.hpp"

namespace artssl {

// Supervised model with one-to-one category/class mapping: a category network
// over the inputs, a class dictionary over the labels, and a map field
// linking them. A category node, once linked, accepts only its class; a label
// conflict triggers match tracking, which raises vigilance just past the
// winner's match ratio and re-runs the search so a finer node takes the
// sample.
class ArtmapModel {
 public:
  ArtmapModel(std::size_t dim, ArtParams params, MapFieldParams map_params = {},
              std::size_t search_depth = 0);

  std::size_t dim() const { return dim_; }
  const ArtParams& params() const { return art_a_.params(); }
  const MapFieldParams& map_params() const { return map_params_; }

  // How many top-ranked nodes a prediction may inspect; 0 means no limit.
  std::size_t search_depth() const { return search_depth_; }
  void set_search_depth(std::size_t t) { search_depth_ = t; }

  // Stage 1: unsupervised absorption of an unlabeled sample (x in [0,1]^dim).
  void pretrain(std::span<const double> x);

  // Stage 2: one supervised pair. Returns the category node that took the
  // sample. Unknown class ids grow the dictionary.
  std::size_t train(std::span<const double> x, int class_id);

  // Class of the best-ranked linked node among the top `T` (0 = all).
  // Returns nothing when every inspected node is unlinked. Throws if the
  // model has no links at all.
  std::optional<int> predict(std::span<const double> x, std::size_t T) const;
  std::optional<int> predict(std::span<const double> x) const { return predict(x, search_depth_); }

  std::size_t stage1_node_count() const { return stage1_nodes_; }
  std::size_t committed_node_count() const { return art_a_.committed_count(); }
  std::size_t linked_node_count() const { return map_.linked_count(); }
  std::size_t class_count() const { return class_art_.class_count(); }

  const ArtNetwork& art_a() const { return art_a_; }
  const ClassArt& class_art() const { return class_art_; }
  const MapField& map() const { return map_; }

  const std::vector<std::string>& class_names() const { return class_names_; }
  void set_class_names(std::vector<std::string> names) { class_names_ = std::move(names); }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  void set_feature_names(std::vector<std::string> names) { feature_names_ = std::move(names); }

  // Model loading: append a committed category node with an optional class.
  void restore_node(Vec weight, std::optional<int> class_id);
  void restore_stage1_count(std::size_t n) { stage1_nodes_ = n; }
  void restore_classes(const std::vector<int>& node_classes) { class_art_.restore(node_classes); }

 private:
  std::size_t dim_;
  MapFieldParams map_params_;
  ArtNetwork art_a_;
  ClassArt class_art_;
  MapField map_;
  std::size_t search_depth_;
  std::size_t stage1_nodes_ = 0;
  std::vector<std::string> class_names_;
  std::vector<std::string> feature_names_;
};

}  // namespace artssl
