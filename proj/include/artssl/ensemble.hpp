#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "artssl/artmap.hpp"
#include "artssl/dataset.hpp"
#include "artssl/ssl_art.hpp"

namespace artssl {

enum class Mapping { one_to_many, one_to_one };
enum class Voting { weighted, majority, single };

Mapping mapping_from(const std::string& name);    // "otm" / "oto"
Voting voting_from(const std::string& name);      // "weighted" / "majority" / "single"
std::string to_string(Mapping m);
std::string to_string(Voting v);

// An ensemble member is either model kind; both expose the same
// train/predict surface through these helpers.
using MemberModel = std::variant<SslArtModel, ArtmapModel>;

std::optional<int> member_predict(const MemberModel& m, std::span<const double> x,
                                  std::optional<std::size_t> T = {});

// Per-class recall of one member on held-out validation data: weight_c =
// correctly-classified-count / sample-count for class c. A class absent from
// the validation pool gets weight 0 with a warning.
Vec compute_class_weights(const MemberModel& m, const std::vector<LabeledSample>& validation,
                          std::size_t classes);

// One member's contribution to the score vector: its class weight at the
// predicted class, zero elsewhere; all zeros when the member abstains.
Vec member_vote(const MemberModel& m, std::span<const double> x, const Vec& weights,
                std::optional<std::size_t> T = {});

// Fold vote vectors into a decision. Weighted: highest summed score wins.
// Majority: each non-zero vote vector counts one ballot for its top class.
// Ties break to the lowest class id; nothing voted, nothing returned.
std::optional<int> aggregate(const std::vector<Vec>& votes, Voting rule);

struct EnsembleModel {
  std::vector<MemberModel> members;
  std::vector<Vec> class_weights;  // one row per member, one column per class
  Voting voting = Voting::weighted;
  std::size_t n_classes = 0;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;

  std::size_t size() const { return members.size(); }
  std::size_t class_count() const { return n_classes; }

  // Combined prediction. Weighted voting falls back to a plain ballot count
  // when every cast vote carries zero weight, so a zero-weight member still
  // beats silence. Returns nothing only when every member abstains.
  std::optional<int> predict(std::span<const double> x, std::optional<std::size_t> T = {}) const;
};

struct EnsembleOptions {
  ArtParams params;
  MapFieldParams map_params;
  Mapping mapping = Mapping::one_to_many;
  Voting voting = Voting::weighted;
  std::size_t members = 7;
  std::size_t search_depth = 0;     // 0 = unbounded
  double validation_frac = 0.2;     // labeled-pool share held out for class weights
  std::uint64_t seed = 0;
};

// Train M members that differ only in their seeded shuffle of the two pools.
// Each member holds out the tail of its own labeled shuffle for class
// weights, trains on the rest, and (one-to-many) finalizes its node labels.
EnsembleModel train_ensemble(std::size_t dim, const std::vector<Vec>& unlabeled,
                             const std::vector<LabeledSample>& labeled,
                             const EnsembleOptions& opt);

}  // namespace artssl
