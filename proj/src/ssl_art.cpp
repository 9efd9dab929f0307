#include "artssl/ssl_art.hpp"

#include <string>

namespace artssl {

void OtmTable::ensure(std::size_t nodes, std::size_t classes) {
  if (classes > classes_) classes_ = classes;
  if (counts_.size() < nodes) counts_.resize(nodes);
  for (auto& row : counts_)
    if (row.size() < classes_) row.resize(classes_, 0);
}

void OtmTable::increment(std::size_t node, int class_id) {
  if (class_id < 0) throw DataError("class id must be nonnegative");
  ensure(node + 1, static_cast<std::size_t>(class_id) + 1);
  ++counts_[node][static_cast<std::size_t>(class_id)];
}

std::uint64_t OtmTable::count(std::size_t node, int class_id) const {
  if (node >= counts_.size() || class_id < 0 ||
      static_cast<std::size_t>(class_id) >= counts_[node].size())
    return 0;
  return counts_[node][static_cast<std::size_t>(class_id)];
}

const std::vector<std::uint64_t>& OtmTable::row(std::size_t node) const {
  if (node >= counts_.size()) throw InternalError("count row out of range");
  return counts_[node];
}

std::uint64_t OtmTable::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts_)
    for (auto c : row) t += c;
  return t;
}

std::optional<int> OtmTable::argmax_label(std::size_t node) const {
  if (node >= counts_.size()) return std::nullopt;
  const auto& row = counts_[node];
  std::uint64_t best = 0;
  std::optional<int> label;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] > best) {  // strict: ties keep the lower class id
      best = row[c];
      label = static_cast<int>(c);
    }
  }
  return label;
}

void OtmTable::restore_row(std::size_t node, std::vector<std::uint64_t> row) {
  ensure(node + 1, row.size());
  if (row.size() < classes_) row.resize(classes_, 0);
  counts_[node] = std::move(row);
}

SslArtModel::SslArtModel(std::size_t dim, ArtParams params, std::size_t search_depth)
    : dim_(dim), art_(dim, params), class_art_(params.alpha), search_depth_(search_depth) {}

void SslArtModel::pretrain(std::span<const double> x) {
  Vec A = complement_code(x);
  std::size_t before = art_.committed_count();
  art_.learn(A);
  stage1_nodes_ += art_.committed_count() - before;
}

std::size_t SslArtModel::train_labeled(std::span<const double> x, int class_id) {
  Vec A = complement_code(x);
  class_art_.learn(class_id);
  std::size_t j = art_.learn(A);  // plain search: the label never vetoes the winner
  otm_.increment(j, class_id);
  finalized_ = false;
  return j;
}

void SslArtModel::finalize_labels() {
  otm_.ensure(art_.committed_count(), class_art_.dim());
  labels_.assign(art_.committed_count(), std::nullopt);
  for (std::size_t j = 0; j < labels_.size(); ++j) labels_[j] = otm_.argmax_label(j);
  finalized_ = true;
}

Prediction SslArtModel::predict(std::span<const double> x, std::size_t T) const {
  if (art_.committed_count() == 0)
    throw DataError("model is untrained: no committed nodes to predict with");
  if (!finalized_)
    throw ConfigError("finalize_labels() must run after training and before predict");
  Vec A = complement_code(x);
  auto order = ranked_committed(art_, A);
  std::size_t depth = (T == 0 || T > order.size()) ? order.size() : T;
  for (std::size_t i = 0; i < depth; ++i) {
    std::size_t j = order[i];
    if (j < labels_.size() && labels_[j]) return Prediction{labels_[j], i + 1, j};
  }
  return Prediction{};
}

std::size_t SslArtModel::labeled_node_count() const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < otm_.node_rows(); ++j) n += otm_.argmax_label(j).has_value();
  return n;
}

std::optional<int> SslArtModel::node_label(std::size_t j) const {
  if (!finalized_) throw ConfigError("labels are not finalized");
  if (j >= labels_.size()) throw InternalError("node index out of range");
  return labels_[j];
}

void SslArtModel::restore_node(Vec weight, std::vector<std::uint64_t> counts_row) {
  art_.restore_committed(std::move(weight));
  otm_.restore_row(art_.committed_count() - 1, std::move(counts_row));
  finalized_ = false;
}

}  // namespace artssl
