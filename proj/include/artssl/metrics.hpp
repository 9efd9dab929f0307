#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "artssl/ensemble.hpp"

namespace artssl {

// Coverage = predicted / total, correctness = correct / predicted, accuracy =
// correct / total; an abstention therefore lowers coverage and accuracy but
// not correctness. On two-class tasks class id 1 is "positive";
// sensitivity/specificity stay empty otherwise, and an abstention counts as a
// miss for both.
struct Metrics {
  std::size_t total = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;
  double coverage = 0.0;
  double correctness = 0.0;
  double accuracy = 0.0;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
};

struct NodeCounts {
  double stage1 = 0.0;   // nodes committed by unsupervised training
  double stage2 = 0.0;   // committed nodes after supervised training
  double labeled = 0.0;  // nodes that carry a class
};

using Predictor = std::function<std::optional<int>(std::span<const double>)>;

Metrics evaluate(const Predictor& predict, const std::vector<LabeledSample>& test,
                 std::size_t class_count);

// `T` overrides the model's own search depth for this evaluation only.
Metrics evaluate(const SslArtModel& m, const std::vector<LabeledSample>& test,
                 std::optional<std::size_t> T = {});
Metrics evaluate(const ArtmapModel& m, const std::vector<LabeledSample>& test,
                 std::optional<std::size_t> T = {});
Metrics evaluate(const EnsembleModel& m, const std::vector<LabeledSample>& test,
                 std::optional<std::size_t> T = {});

NodeCounts node_counts(const SslArtModel& m);
NodeCounts node_counts(const ArtmapModel& m);
NodeCounts node_counts(const EnsembleModel& m);  // mean over members

struct BootstrapCi {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Percentile bootstrap of the mean: resample with replacement, take each
// resample's mean, and read the interval off the sorted means.
BootstrapCi bootstrap_ci(const std::vector<double>& values, double level = 0.95,
                         std::size_t resamples = 10000, std::uint64_t seed = 0);

}  // namespace artssl
