#include "artssl/ensemble.hpp"

#include <algorithm>

#include "artssl/rng.hpp"

namespace artssl {

Mapping mapping_from(const std::string& name) {
  if (name == "otm") return Mapping::one_to_many;
  if (name == "oto") return Mapping::one_to_one;
  throw ConfigError("unknown mapping '" + name + "' (expected otm or oto)");
}

Voting voting_from(const std::string& name) {
  if (name == "weighted") return Voting::weighted;
  if (name == "majority") return Voting::majority;
  if (name == "single") return Voting::single;
  throw ConfigError("unknown voting rule '" + name + "' (expected weighted, majority, or single)");
}

std::string to_string(Mapping m) {
  return m == Mapping::one_to_many ? "otm" : "oto";
}

std::string to_string(Voting v) {
  switch (v) {
    case Voting::weighted: return "weighted";
    case Voting::majority: return "majority";
    case Voting::single: return "single";
  }
  throw InternalError("unhandled voting rule");
}

std::optional<int> member_predict(const MemberModel& m, std::span<const double> x,
                                  std::optional<std::size_t> T) {
  if (const auto* ssl = std::get_if<SslArtModel>(&m))
    return ssl->predict(x, T.value_or(ssl->search_depth())).label;
  const auto& am = std::get<ArtmapModel>(m);
  return am.predict(x, T.value_or(am.search_depth()));
}

Vec compute_class_weights(const MemberModel& m, const std::vector<LabeledSample>& validation,
                          std::size_t classes) {
  std::vector<std::size_t> seen(classes, 0), right(classes, 0);
  for (const auto& s : validation) {
    if (s.y < 0 || static_cast<std::size_t>(s.y) >= classes)
      throw DataError("validation label outside the class range");
    ++seen[static_cast<std::size_t>(s.y)];
    auto p = member_predict(m, s.x);
    if (p && *p == s.y) ++right[static_cast<std::size_t>(s.y)];
  }
  Vec w(classes, 0.0);
  for (std::size_t c = 0; c < classes; ++c) {
    if (seen[c] == 0) {
      warn("class " + std::to_string(c) + " absent from validation; its vote weight is 0");
      continue;
    }
    w[c] = static_cast<double>(right[c]) / static_cast<double>(seen[c]);
  }
  return w;
}

Vec member_vote(const MemberModel& m, std::span<const double> x, const Vec& weights,
                std::optional<std::size_t> T) {
  Vec vote(weights.size(), 0.0);
  auto p = member_predict(m, x, T);
  if (p && static_cast<std::size_t>(*p) < weights.size())
    vote[static_cast<std::size_t>(*p)] = weights[static_cast<std::size_t>(*p)];
  return vote;
}

namespace {

std::optional<int> argmax_positive(const Vec& score) {
  std::optional<int> best;
  for (std::size_t c = 0; c < score.size(); ++c)
    if (score[c] > 0.0 && (!best || score[c] > score[static_cast<std::size_t>(*best)]))
      best = static_cast<int>(c);
  return best;  // ties keep the lower class id (strict improvement required)
}

}  // namespace

std::optional<int> aggregate(const std::vector<Vec>& votes, Voting rule) {
  if (votes.empty()) return std::nullopt;
  std::size_t classes = votes.front().size();
  Vec score(classes, 0.0);
  for (const auto& v : votes) {
    if (v.size() != classes) throw InternalError("vote vectors disagree on class count");
    if (rule == Voting::majority) {
      // One ballot per non-abstaining member, cast at its top-scored class.
      auto c = argmax_positive(v);
      if (c) score[static_cast<std::size_t>(*c)] += 1.0;
    } else {
      for (std::size_t c = 0; c < classes; ++c) score[c] += v[c];
    }
  }
  return argmax_positive(score);
}

std::optional<int> EnsembleModel::predict(std::span<const double> x,
                                          std::optional<std::size_t> T) const {
  if (members.empty()) throw ConfigError("ensemble has no members");
  std::vector<std::optional<int>> preds(members.size());
  bool any = false;
  for (std::size_t m = 0; m < members.size(); ++m) {
    preds[m] = member_predict(members[m], x, T);
    any = any || preds[m].has_value();
  }
  if (!any) return std::nullopt;

  Vec score(n_classes, 0.0);
  for (std::size_t m = 0; m < members.size(); ++m) {
    if (!preds[m]) continue;
    auto c = static_cast<std::size_t>(*preds[m]);
    if (c >= n_classes) throw InternalError("member predicted an unknown class");
    if (voting == Voting::majority) {
      score[c] += 1.0;
    } else {
      score[c] += m < class_weights.size() && c < class_weights[m].size() ? class_weights[m][c]
                                                                          : 0.0;
    }
  }
  if (auto best = argmax_positive(score)) return best;

  // Every cast vote had zero weight. Predictions still exist, so fall back to
  // counting ballots rather than returning nothing.
  Vec ballots(n_classes, 0.0);
  for (const auto& p : preds)
    if (p) ballots[static_cast<std::size_t>(*p)] += 1.0;
  return argmax_positive(ballots);
}

EnsembleModel train_ensemble(std::size_t dim, const std::vector<Vec>& unlabeled,
                             const std::vector<LabeledSample>& labeled,
                             const EnsembleOptions& opt) {
  if (opt.members == 0) throw ConfigError("ensemble needs at least one member");
  if (opt.voting == Voting::single && opt.members != 1)
    throw ConfigError("voting rule 'single' implies exactly one member");
  if (!(opt.validation_frac >= 0.0 && opt.validation_frac < 1.0))
    throw ConfigError("validation fraction must lie in [0,1)");
  if (labeled.empty()) throw ConfigError("ensemble training needs a labeled pool");

  int max_class = 0;
  for (const auto& s : labeled) {
    if (s.y < 0) throw DataError("labeled pool contains a negative class id");
    max_class = std::max(max_class, s.y);
  }
  std::size_t classes = static_cast<std::size_t>(max_class) + 1;

  EnsembleModel ens;
  ens.voting = opt.voting;
  ens.n_classes = classes;

  for (std::size_t m = 0; m < opt.members; ++m) {
    std::uint64_t member_seed = derive_seed(opt.seed, m);
    auto unl_idx = shuffled_indices(unlabeled.size(), derive_seed(member_seed, 1));
    auto lab_idx = shuffled_indices(labeled.size(), derive_seed(member_seed, 2));

    std::size_t n_val =
        static_cast<std::size_t>(opt.validation_frac * static_cast<double>(labeled.size()));
    std::size_t n_fit = labeled.size() - n_val;

    MemberModel member =
        opt.mapping == Mapping::one_to_many
            ? MemberModel(SslArtModel(dim, opt.params, opt.search_depth))
            : MemberModel(ArtmapModel(dim, opt.params, opt.map_params, opt.search_depth));

    std::visit(
        [&](auto& model) {
          for (std::size_t i : unl_idx) model.pretrain(unlabeled[i]);
          for (std::size_t i = 0; i < n_fit; ++i) {
            const auto& s = labeled[lab_idx[i]];
            if constexpr (std::is_same_v<std::decay_t<decltype(model)>, SslArtModel>)
              model.train_labeled(s.x, s.y);
            else
              model.train(s.x, s.y);
          }
          if constexpr (std::is_same_v<std::decay_t<decltype(model)>, SslArtModel>)
            model.finalize_labels();
        },
        member);

    std::vector<LabeledSample> validation;
    validation.reserve(n_val);
    for (std::size_t i = n_fit; i < labeled.size(); ++i) validation.push_back(labeled[lab_idx[i]]);

    ens.class_weights.push_back(opt.voting == Voting::majority
                                    ? Vec(classes, 1.0)
                                    : compute_class_weights(member, validation, classes));
    ens.members.push_back(std::move(member));
  }
  return ens;
}

}  // namespace artssl
