#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "artssl/fuzzy.hpp"

namespace artssl {

struct ArtParams {
  double rho = 0.9;    // vigilance
  double alpha = 1e-3; // choice parameter
  double beta = 1.0;   // learning rate, 1 = fast learning
  void validate() const;
};

// How the vigilance test treats a match ratio exactly equal to rho. The
// default is strict (ratio must exceed rho). The inclusive mode exists for
// the class-dictionary network run at rho = 1, where a repeated class hits
// the boundary exactly and must still resonate.
enum class VigilanceBoundary { strict, inclusive };

struct PrototypeNode {
  Vec weight;
  bool committed = false;
};

// Fuzzy ART category layer over complement-coded inputs. Keeps one trailing
// uncommitted node (all-ones weight) that competes like any other; committing
// it appends a fresh one, so the layer can always grow.
class ArtNetwork {
 public:
  ArtNetwork(std::size_t dim, ArtParams params,
             VigilanceBoundary boundary = VigilanceBoundary::strict);

  std::size_t dim() const { return dim_; }
  std::size_t coded_dim() const { return 2 * dim_; }
  const ArtParams& params() const { return params_; }
  VigilanceBoundary boundary() const { return boundary_; }

  std::size_t node_count() const { return nodes_.size(); }        // includes uncommitted
  std::size_t committed_count() const { return nodes_.size() - 1; }
  std::size_t uncommitted_index() const { return nodes_.size() - 1; }
  const PrototypeNode& node(std::size_t j) const;
  std::span<const double> weight(std::size_t j) const { return node(j).weight; }

  // Choice values for every node, uncommitted included.
  Vec activations(std::span<const double> A) const;

  struct Resonance {
    std::size_t index;
    double match;  // |A AND W| / |A| of the resonating node
  };

  // Winner-take-all search with reset: repeatedly pick the highest-activation
  // node not yet deactivated, test vigilance at `rho`, and either return it
  // or deactivate it and continue. Returns nothing once every node is
  // deactivated. Does not modify weights; `deactivated` records the resets so
  // a caller can resume the same search (match tracking does).
  std::optional<Resonance> search(std::span<const double> A, double rho,
                                  std::vector<bool>& deactivated) const;
  std::optional<Resonance> search(std::span<const double> A,
                                  std::vector<bool>& deactivated) const;

  // Fold A into node j. Committing the trailing uncommitted node appends a
  // fresh one. Returns j.
  std::size_t absorb(std::size_t j, std::span<const double> A);

  // One full unsupervised learning cycle: search, fall back to the trailing
  // uncommitted node if everything was reset, absorb. Returns the node index.
  std::size_t learn(std::span<const double> A);

  // Append an already-learned committed node (model loading).
  void restore_committed(Vec weight);

 private:
  std::size_t dim_;
  ArtParams params_;
  VigilanceBoundary boundary_;
  std::vector<PrototypeNode> nodes_;

  void check_input(std::span<const double> A) const;
  bool passes(double ratio, double rho) const;
};

// Committed node indices ordered by descending choice value; ties broken by
// the lower index. This is the test-time ranking both supervised models walk.
std::vector<std::size_t> ranked_committed(const ArtNetwork& net, std::span<const double> A);

}  // namespace artssl
