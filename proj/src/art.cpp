#include "artssl/art.hpp"

#include <algorithm>
#include <string>

namespace artssl {

namespace {
constexpr double kBoundaryEps = 1e-12;
}

void ArtParams::validate() const {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw ConfigError("vigilance must lie in [0,1], got " + std::to_string(rho));
  if (!(alpha > 0.0))
    throw ConfigError("choice parameter must be positive, got " + std::to_string(alpha));
  if (!(beta > 0.0 && beta <= 1.0))
    throw ConfigError("learning rate must lie in (0,1], got " + std::to_string(beta));
}

ArtNetwork::ArtNetwork(std::size_t dim, ArtParams params, VigilanceBoundary boundary)
    : dim_(dim), params_(params), boundary_(boundary) {
  if (dim_ == 0) throw ConfigError("feature dimension must be positive");
  params_.validate();
  nodes_.push_back(PrototypeNode{Vec(coded_dim(), 1.0), false});
}

const PrototypeNode& ArtNetwork::node(std::size_t j) const {
  if (j >= nodes_.size())
    throw InternalError("node index " + std::to_string(j) + " out of range");
  return nodes_[j];
}

void ArtNetwork::check_input(std::span<const double> A) const {
  if (A.size() != coded_dim())
    throw DataError("expected complement-coded input of length " + std::to_string(coded_dim()) +
                    ", got " + std::to_string(A.size()));
}

bool ArtNetwork::passes(double ratio, double rho) const {
  if (boundary_ == VigilanceBoundary::inclusive) return ratio >= rho - kBoundaryEps;
  return ratio > rho;
}

Vec ArtNetwork::activations(std::span<const double> A) const {
  check_input(A);
  Vec out(nodes_.size());
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    out[j] = choice(A, nodes_[j].weight, params_.alpha);
  return out;
}

std::optional<ArtNetwork::Resonance> ArtNetwork::search(std::span<const double> A, double rho,
                                                        std::vector<bool>& deactivated) const {
  check_input(A);
  if (deactivated.empty()) deactivated.assign(nodes_.size(), false);
  if (deactivated.size() != nodes_.size())
    throw InternalError("deactivation mask size does not match node count");
  Vec acts = activations(A);
  for (;;) {
    auto j = select_winner(acts, deactivated);
    if (!j) return std::nullopt;
    double ratio = match_ratio(A, nodes_[*j].weight);
    if (passes(ratio, rho)) return Resonance{*j, ratio};
    deactivated[*j] = true;  // reset: this node sits out for the rest of the search
  }
}

std::optional<ArtNetwork::Resonance> ArtNetwork::search(std::span<const double> A,
                                                        std::vector<bool>& deactivated) const {
  return search(A, params_.rho, deactivated);
}

std::size_t ArtNetwork::absorb(std::size_t j, std::span<const double> A) {
  check_input(A);
  if (j >= nodes_.size())
    throw InternalError("absorb: node index " + std::to_string(j) + " out of range");
  PrototypeNode& n = nodes_[j];
  n.weight = update_weight(A, n.weight, params_.beta);
  if (!n.committed) {
    n.committed = true;
    nodes_.push_back(PrototypeNode{Vec(coded_dim(), 1.0), false});
  }
  return j;
}

std::size_t ArtNetwork::learn(std::span<const double> A) {
  std::vector<bool> deactivated;
  auto r = search(A, params_.rho, deactivated);
  // If even the uncommitted node failed vigilance (possible at rho = 1 with a
  // strict boundary), the sample still has to live somewhere: commit it.
  std::size_t j = r ? r->index : uncommitted_index();
  return absorb(j, A);
}

std::vector<std::size_t> ranked_committed(const ArtNetwork& net, std::span<const double> A) {
  Vec acts = net.activations(A);
  std::vector<std::size_t> order(net.committed_count());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (acts[a] != acts[b]) return acts[a] > acts[b];
    return a < b;
  });
  return order;
}

void ArtNetwork::restore_committed(Vec weight) {
  if (weight.size() != coded_dim())
    throw DataError("restored weight has length " + std::to_string(weight.size()) +
                    ", expected " + std::to_string(coded_dim()));
  for (double v : weight)
    if (!(v >= 0.0 && v <= 1.0)) throw DataError("restored weight component outside [0,1]");
  nodes_.back() = PrototypeNode{std::move(weight), true};
  nodes_.push_back(PrototypeNode{Vec(coded_dim(), 1.0), false});
}

}  // namespace artssl
