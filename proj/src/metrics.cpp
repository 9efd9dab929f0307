#include "artssl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "artssl/rng.hpp"

namespace artssl {

Metrics evaluate(const Predictor& predict, const std::vector<LabeledSample>& test,
                 std::size_t class_count) {
  if (test.empty()) throw DataError("cannot evaluate on an empty test set");
  Metrics m;
  std::size_t pos_total = 0, pos_hit = 0, neg_total = 0, neg_hit = 0;
  for (const auto& s : test) {
    ++m.total;
    auto p = predict(s.x);
    if (p) {
      ++m.predicted;
      if (*p == s.y) ++m.correct;
    }
    if (class_count == 2) {
      if (s.y == 1) {
        ++pos_total;
        pos_hit += p && *p == 1;
      } else {
        ++neg_total;
        neg_hit += p && *p == s.y;
      }
    }
  }
  if (m.total > 0) {
    m.coverage = static_cast<double>(m.predicted) / static_cast<double>(m.total);
    m.accuracy = static_cast<double>(m.correct) / static_cast<double>(m.total);
  }
  if (m.predicted > 0)
    m.correctness = static_cast<double>(m.correct) / static_cast<double>(m.predicted);
  if (class_count == 2) {
    if (pos_total > 0)
      m.sensitivity = static_cast<double>(pos_hit) / static_cast<double>(pos_total);
    if (neg_total > 0)
      m.specificity = static_cast<double>(neg_hit) / static_cast<double>(neg_total);
  }
  return m;
}

namespace {

std::size_t observed_classes(std::size_t model_classes, const std::vector<LabeledSample>& test) {
  int max_label = -1;
  for (const auto& s : test) max_label = std::max(max_label, s.y);
  return std::max(model_classes, static_cast<std::size_t>(max_label + 1));
}

}  // namespace

Metrics evaluate(const SslArtModel& m, const std::vector<LabeledSample>& test,
                 std::optional<std::size_t> T) {
  std::size_t t = T.value_or(m.search_depth());
  return evaluate([&](std::span<const double> x) { return m.predict(x, t).label; }, test,
                  observed_classes(m.class_art().class_count(), test));
}

Metrics evaluate(const ArtmapModel& m, const std::vector<LabeledSample>& test,
                 std::optional<std::size_t> T) {
  std::size_t t = T.value_or(m.search_depth());
  return evaluate([&](std::span<const double> x) { return m.predict(x, t); }, test,
                  observed_classes(m.class_count(), test));
}

Metrics evaluate(const EnsembleModel& m, const std::vector<LabeledSample>& test,
                 std::optional<std::size_t> T) {
  return evaluate([&](std::span<const double> x) { return m.predict(x, T); }, test,
                  observed_classes(m.class_count(), test));
}

NodeCounts node_counts(const SslArtModel& m) {
  return {static_cast<double>(m.stage1_node_count()),
          static_cast<double>(m.committed_node_count()),
          static_cast<double>(m.labeled_node_count())};
}

NodeCounts node_counts(const ArtmapModel& m) {
  return {static_cast<double>(m.stage1_node_count()),
          static_cast<double>(m.committed_node_count()),
          static_cast<double>(m.linked_node_count())};
}

NodeCounts node_counts(const EnsembleModel& m) {
  NodeCounts sum;
  for (const auto& member : m.members) {
    NodeCounts c = std::holds_alternative<SslArtModel>(member)
                       ? node_counts(std::get<SslArtModel>(member))
                       : node_counts(std::get<ArtmapModel>(member));
    sum.stage1 += c.stage1;
    sum.stage2 += c.stage2;
    sum.labeled += c.labeled;
  }
  auto n = static_cast<double>(m.members.empty() ? 1 : m.members.size());
  return {sum.stage1 / n, sum.stage2 / n, sum.labeled / n};
}

BootstrapCi bootstrap_ci(const std::vector<double>& values, double level,
                         std::size_t resamples, std::uint64_t seed) {
  if (values.size() < 2) throw ConfigError("bootstrap needs at least two values");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("confidence level must lie in (0,1)");
  if (resamples == 0) throw ConfigError("bootstrap needs at least one resample");

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());

  auto rng = make_rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> means(resamples);
  for (auto& out : means) {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += values[pick(rng)];
    out = s / static_cast<double>(values.size());
  }
  std::sort(means.begin(), means.end());

  auto at_quantile = [&](double q) {
    double pos = q * static_cast<double>(resamples - 1);
    auto idx = static_cast<std::size_t>(std::llround(pos));
    return means[std::min(idx, resamples - 1)];
  };
  double tail = (1.0 - level) / 2.0;
  return {mean, at_quantile(tail), at_quantile(1.0 - tail)};
}

}  // namespace artssl
