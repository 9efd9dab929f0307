#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "artssl/mapfield.hpp"

namespace artssl {

// Per-category class-association counts: how many labeled samples of each
// class resonated with each category node. One row per committed node,
// columns indexed by class id.
class OtmTable {
 public:
  void ensure(std::size_t nodes, std::size_t classes);
  void increment(std::size_t node, int class_id);

  std::size_t node_rows() const { return counts_.size(); }
  std::size_t class_cols() const { return classes_; }
  std::uint64_t count(std::size_t node, int class_id) const;
  const std::vector<std::uint64_t>& row(std::size_t node) const;
  std::uint64_t total() const;

  // Most-counted class for a node; ties go to the lowest class id. Empty for
  // a node no labeled sample ever reached.
  std::optional<int> argmax_label(std::size_t node) const;

  void restore_row(std::size_t node, std::vector<std::uint64_t> row);

 private:
  std::vector<std::vector<std::uint64_t>> counts_;
  std::size_t classes_ = 0;
};

struct Prediction {
  static constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);
  std::optional<int> label;          // empty = abstained
  std::size_t rank = 0;              // 1-based rank of the answering node
  std::size_t node = kNoNode;        // category node that answered
};

// Semi-supervised model with one-to-many category/class association. Stage 1
// clusters unlabeled data; stage 2 runs the same vigilance-gated search on
// labeled data — no match tracking, no class veto — and only counts which
// classes land on which node. finalize_labels() turns the counts into one
// label per node by majority.
class SslArtModel {
 public:
  SslArtModel(std::size_t dim, ArtParams params, std::size_t search_depth = 0);

  std::size_t dim() const { return dim_; }
  const ArtParams& params() const { return art_.params(); }

  std::size_t search_depth() const { return search_depth_; }
  void set_search_depth(std::size_t t) { search_depth_ = t; }

  // Stage 1: absorb one unlabeled sample (x in [0,1]^dim).
  void pretrain(std::span<const double> x);

  // Stage 2: absorb one labeled sample and count its class against the node
  // that took it. Returns that node. Unknown class ids grow the dictionary.
  std::size_t train_labeled(std::span<const double> x, int class_id);

  // Assign each node the class with the highest count (ties: lowest class
  // id). Idempotent; must run after the last train_labeled before predict.
  void finalize_labels();
  bool finalized() const { return finalized_; }

  // Walk the top `T` committed nodes by choice value (0 = all) and answer
  // with the first labeled node's class; abstain when none of them carries a
  // label. No vigilance test is applied at prediction time.
  Prediction predict(std::span<const double> x, std::size_t T) const;
  Prediction predict(std::span<const double> x) const { return predict(x, search_depth_); }

  std::size_t stage1_node_count() const { return stage1_nodes_; }
  std::size_t committed_node_count() const { return art_.committed_count(); }
  std::size_t labeled_node_count() const;
  std::optional<int> node_label(std::size_t j) const;

  const ArtNetwork& art() const { return art_; }
  const OtmTable& otm() const { return otm_; }
  const ClassArt& class_art() const { return class_art_; }

  const std::vector<std::string>& class_names() const { return class_names_; }
  void set_class_names(std::vector<std::string> names) { class_names_ = std::move(names); }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  void set_feature_names(std::vector<std::string> names) { feature_names_ = std::move(names); }

  // Model loading hooks.
  void restore_node(Vec weight, std::vector<std::uint64_t> counts_row);
  void restore_stage1_count(std::size_t n) { stage1_nodes_ = n; }
  void restore_classes(const std::vector<int>& node_classes) { class_art_.restore(node_classes); }

 private:
  std::size_t dim_;
  ArtNetwork art_;
  ClassArt class_art_;
  OtmTable otm_;
  std::vector<std::optional<int>> labels_;
  bool finalized_ = false;
  std::size_t search_depth_;
  std::size_t stage1_nodes_ = 0;
  std::vector<std::string> class_names_;
  std::vector<std::string> feature_names_;
};

}  // namespace artssl
