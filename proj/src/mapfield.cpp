#include "artssl/mapfield.hpp"

#include <string>

namespace artssl {

Vec one_hot(std::size_t k, std::size_t n) {
  if (k >= n)
    throw DataError("one_hot: index " + std::to_string(k) + " out of range for " +
                    std::to_string(n) + " classes");
  Vec y(n, 0.0);
  y[k] = 1.0;
  return y;
}

bool map_field_check(std::span<const double> y_b, std::span<const double> row, double rho_ab) {
  check_same_length(y_b, row, "map_field_check");
  return fuzzy_and_norm(y_b, row) > rho_ab * norm(y_b);
}

double match_track(std::span<const double> A, std::span<const double> winner_weight,
                   double delta) {
  return match_ratio(A, winner_weight) + delta;
}

void MapFieldParams::validate() const {
  if (!(rho_ab >= 0.0 && rho_ab <= 1.0))
    throw ConfigError("map-field vigilance must lie in [0,1], got " + std::to_string(rho_ab));
  if (!(delta > 0.0 && delta < 1.0))
    throw ConfigError("match-tracking offset must lie in (0,1), got " + std::to_string(delta));
}

void MapField::ensure_nodes(std::size_t n) {
  if (links_.size() < n) links_.resize(n);
}

std::optional<std::size_t> MapField::link(std::size_t j) const {
  if (j >= links_.size()) return std::nullopt;
  return links_[j];
}

void MapField::set_link(std::size_t j, std::size_t class_node) {
  ensure_nodes(j + 1);
  if (links_[j] && *links_[j] != class_node)
    throw InternalError("map field: node " + std::to_string(j) + " already linked elsewhere");
  links_[j] = class_node;
}

std::size_t MapField::linked_count() const {
  std::size_t n = 0;
  for (const auto& l : links_) n += l.has_value();
  return n;
}

Vec MapField::row(std::size_t j, std::size_t n_b) const {
  auto l = link(j);
  if (!l) return Vec(n_b, 1.0);  // unlinked: accepts any class
  if (*l >= n_b) throw InternalError("map field: link target out of range");
  return one_hot(*l, n_b);
}

bool MapField::accepts(std::size_t j, std::size_t class_node, std::size_t n_b,
                       double rho_ab) const {
  return map_field_check(one_hot(class_node, n_b), row(j, n_b), rho_ab);
}

ClassArt::ClassArt(double alpha)
    : alpha_(alpha), dim_(1), net_(fresh_net(1)) {}

ArtNetwork ClassArt::fresh_net(std::size_t dim) const {
  // Vigilance 1 with an inclusive boundary: a repeated class matches its own
  // node at ratio exactly 1 and must resonate rather than spawn a duplicate.
  return ArtNetwork(dim, ArtParams{1.0, alpha_, 1.0}, VigilanceBoundary::inclusive);
}

void ClassArt::grow_to(std::size_t dim) {
  if (dim <= dim_) return;
  dim_ = dim;
  net_ = fresh_net(dim_);
  for (int cls : node_class_)
    net_.restore_committed(complement_code(one_hot(static_cast<std::size_t>(cls), dim_)));
}

std::size_t ClassArt::learn(int class_id) {
  if (class_id < 0) throw DataError("class id must be nonnegative");
  auto c = static_cast<std::size_t>(class_id);
  grow_to(c + 1);
  std::size_t j = net_.learn(complement_code(one_hot(c, dim_)));
  if (j == node_class_.size()) {
    node_class_.push_back(class_id);
  } else if (node_class_.at(j) != class_id) {
    throw InternalError("class dictionary resonated on the wrong class node");
  }
  return j;
}

int ClassArt::class_of(std::size_t node) const {
  if (node >= node_class_.size())
    throw InternalError("class node index " + std::to_string(node) + " out of range");
  return node_class_[node];
}

std::optional<std::size_t> ClassArt::node_of(int class_id) const {
  for (std::size_t j = 0; j < node_class_.size(); ++j)
    if (node_class_[j] == class_id) return j;
  return std::nullopt;
}

void ClassArt::restore(const std::vector<int>& node_classes) {
  node_class_.clear();
  dim_ = 1;
  net_ = fresh_net(dim_);
  for (std::size_t i = 0; i < node_classes.size(); ++i) {
    if (node_classes[i] < 0) throw DataError("class id must be nonnegative");
    // a repeated class resolves to its earlier node instead of minting node i
    if (learn(node_classes[i]) != i)
      throw DataError("class dictionary contains a duplicate class id");
  }
}

}  // namespace artssl
