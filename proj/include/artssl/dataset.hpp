#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "artssl/fuzzy.hpp"

namespace artssl {

struct Dataset {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;  // index = class id, order of first appearance
  std::vector<Vec> features;             // min-max normalized to [0,1]
  std::vector<int> labels;

  std::size_t size() const { return features.size(); }
  std::size_t class_count() const { return class_names.size(); }
};

// Column selector: 0-based index (negative counts from the end) or a header
// name. The default schema takes the last column as the class and everything
// else as features.
using ColumnRef = std::variant<int, std::string>;

struct Schema {
  std::optional<bool> has_header;           // unset: detect (header iff row 1 has no numeric cell)
  std::optional<ColumnRef> class_column;    // default: last column
  std::vector<ColumnRef> feature_columns;   // default: all non-class columns

  static Schema from_json_file(const std::string& path);
};

// Parse a CSV (plain commas, no quoting), intern class labels in order of
// first appearance, and min-max normalize each feature over the whole file.
// A constant feature normalizes to 0. Parse problems name the row and column.
Dataset load_and_normalize(const std::string& path, const Schema& schema = {});

struct LabeledSample {
  Vec x;
  int y;
};

struct SplitSpec {
  double test_frac = 0.2;
  double labeled_frac = 0.2;                // fraction of the non-test remainder
  std::optional<double> unlabeled_frac;     // default: everything left over
  std::uint64_t seed = 0;
};

struct Splits {
  std::vector<LabeledSample> test;
  std::vector<LabeledSample> labeled;
  std::vector<Vec> unlabeled;
};

// Disjoint shuffled partition: floor(n * test_frac) test rows, then
// floor(remaining * labeled_frac) labeled rows, the rest unlabeled (or
// floor(remaining * unlabeled_frac), dropping the leftover with a warning).
Splits split_dataset(const Dataset& ds, const SplitSpec& spec);

// Flip floor(frac * n) labels, chosen without replacement, each to a
// uniformly random *different* class.
void inject_label_noise(std::vector<LabeledSample>& pool, double frac, std::size_t classes,
                        std::uint64_t seed);

// Add zero-mean Gaussian noise to floor(frac * n) samples. Per-feature
// variance is the feature's mean square over the pool divided by snr (linear
// power ratio); results are clamped back into [0,1].
void inject_feature_noise(std::vector<LabeledSample>& pool, double frac, double snr,
                          std::uint64_t seed);

enum class SyntheticKind { two_gaussians, rings, xor_blobs };

SyntheticKind synthetic_kind_from(const std::string& name);
std::string to_string(SyntheticKind kind);

// Deterministic 2-D two-class generators; `noise` is the Gaussian spread.
// Output is normalized like a loaded dataset.
Dataset make_synthetic(SyntheticKind kind, std::size_t n, double noise, std::uint64_t seed);

}  // namespace artssl
