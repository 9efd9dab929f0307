#include "artssl/rules.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace artssl {

int quantize(double v, int Q) {
  if (Q < 2) throw ConfigError("quantization needs at least 2 levels, got " + std::to_string(Q));
  if (v < 0.0 || v > 1.0) {
    warn("quantize: value " + std::to_string(v) + " outside [0,1], clamped");
    v = v < 0.0 ? 0.0 : 1.0;
  }
  // Nearest grid point; floor(x + 0.5) sends exact midpoints to the upper level.
  int level = 1 + static_cast<int>(std::floor(v * (Q - 1) + 0.5));
  return level > Q ? Q : level;
}

std::pair<Vec, Vec> hyperbox_bounds(std::span<const double> W) {
  if (W.size() % 2 != 0) throw InternalError("weight vector has odd length");
  std::size_t d = W.size() / 2;
  Vec u(d), v(d);
  for (std::size_t i = 0; i < d; ++i) {
    u[i] = W[i];
    v[i] = 1.0 - W[d + i];
    if (u[i] > v[i] + 1e-12)
      throw InternalError("degenerate hyperbox: lower corner above upper corner at feature " +
                          std::to_string(i));
    if (v[i] < u[i]) v[i] = u[i];  // collapse fp dust onto a point box
  }
  return {std::move(u), std::move(v)};
}

std::vector<std::string> quant_vocabulary(int Q) {
  switch (Q) {
    case 2: return {"Small", "Large"};
    case 3: return {"Small", "Medium", "Large"};
    case 5: return {"Very Small", "Small", "Medium", "Large", "Very Large"};
    default: {
      std::vector<std::string> v;
      for (int q = 1; q <= Q; ++q) v.push_back("Level " + std::to_string(q));
      return v;
    }
  }
}

std::vector<FuzzyRule> extract_rules(const SslArtModel& model, int Q) {
  if (Q < 2) throw ConfigError("quantization needs at least 2 levels, got " + std::to_string(Q));
  if (!model.finalized())
    throw ConfigError("finalize_labels() must run before extracting rules");

  std::vector<FuzzyRule> rules;
  for (std::size_t j = 0; j < model.committed_node_count(); ++j) {
    auto label = model.node_label(j);
    if (!label) continue;  // unlabeled nodes carry no class evidence

    FuzzyRule r;
    r.node = j;
    r.consequent = *label;

    auto [u, v] = hyperbox_bounds(model.art().weight(j));
    for (std::size_t i = 0; i < u.size(); ++i) {
      int lo = quantize(u[i], Q);
      int hi = quantize(v[i], Q);
      r.levels.emplace_back(lo, hi);
    }

    const auto& row = model.otm().row(j);
    std::uint64_t total = 0;
    for (auto c : row) total += c;
    if (total == 0) throw InternalError("labeled node with an empty count row");
    r.confidences.assign(model.otm().class_cols(), 0.0);
    for (std::size_t c = 0; c < row.size(); ++c)
      r.confidences[c] = static_cast<double>(row[c]) / static_cast<double>(total);

    rules.push_back(std::move(r));
  }
  return rules;
}

namespace {

// "1.0" for certainty, otherwise up to three decimals with the tail trimmed.
std::string format_confidence(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", p);
  std::string s = buf;
  while (s.size() > 3 && s.back() == '0') s.pop_back();
  return s;
}

std::string level_phrase(const std::pair<int, int>& lv, const std::vector<std::string>& vocab) {
  const std::string& lo = vocab[static_cast<std::size_t>(lv.first - 1)];
  if (lv.first == lv.second) return "is \"" + lo + "\"";
  const std::string& hi = vocab[static_cast<std::size_t>(lv.second - 1)];
  return "is from \"" + lo + "\" to \"" + hi + "\"";
}

std::string name_or(const std::vector<std::string>& names, std::size_t i,
                    const std::string& fallback) {
  return i < names.size() && !names[i].empty() ? names[i] : fallback;
}

}  // namespace

std::string render_rule(const FuzzyRule& rule, const std::vector<std::string>& feature_names,
                        const std::vector<std::string>& class_names, int Q) {
  auto vocab = quant_vocabulary(Q);
  if (!feature_names.empty() && feature_names.size() != rule.levels.size())
    throw ConfigError("feature name count " + std::to_string(feature_names.size()) +
                      " does not match the rule's " + std::to_string(rule.levels.size()) +
                      " antecedents");
  for (const auto& lv : rule.levels)
    if (lv.first < 1 || lv.second > Q || lv.first > lv.second)
      throw InternalError("rule level outside the quantization grid");

  std::ostringstream out;
  for (std::size_t i = 0; i < rule.levels.size(); ++i) {
    out << (i == 0 ? "If " : "   ");
    out << name_or(feature_names, i, "x" + std::to_string(i + 1)) << " "
        << level_phrase(rule.levels[i], vocab);
    out << (i + 1 < rule.levels.size() ? ", AND\n" : "\n");
  }
  auto cls = static_cast<std::size_t>(rule.consequent);
  out << "Then " << name_or(class_names, cls, "class " + std::to_string(rule.consequent))
      << " with confidence estimate=" << format_confidence(rule.confidences[cls]);
  return out.str();
}

std::string rules_to_text(const std::vector<FuzzyRule>& rules,
                          const std::vector<std::string>& feature_names,
                          const std::vector<std::string>& class_names, int Q) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    out << "Rule " << i + 1 << " (node " << rules[i].node << "):\n"
        << render_rule(rules[i], feature_names, class_names, Q) << "\n";
    if (i + 1 < rules.size()) out << "\n";
  }
  return out.str();
}

std::string rules_to_csv(const std::vector<FuzzyRule>& rules,
                         const std::vector<std::string>& feature_names,
                         const std::vector<std::string>& class_names) {
  std::ostringstream out;
  std::size_t dim = rules.empty() ? feature_names.size() : rules.front().levels.size();
  std::size_t classes = rules.empty() ? class_names.size() : rules.front().confidences.size();

  out << "rule,node";
  for (std::size_t i = 0; i < dim; ++i)
    out << "," << name_or(feature_names, i, "x" + std::to_string(i + 1));
  out << ",class";
  for (std::size_t c = 0; c < classes; ++c)
    out << ",confidence_" << name_or(class_names, c, "class_" + std::to_string(c));
  out << "\n";

  char buf[32];
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    out << i + 1 << "," << r.node;
    for (const auto& lv : r.levels) {
      out << "," << lv.first;
      if (lv.second != lv.first) out << "-" << lv.second;
    }
    auto cls = static_cast<std::size_t>(r.consequent);
    out << "," << name_or(class_names, cls, "class " + std::to_string(r.consequent));
    for (double p : r.confidences) {
      std::snprintf(buf, sizeof(buf), "%.10g", p);
      out << "," << buf;
    }
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> default_feature_names(std::size_t dim) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= dim; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

std::vector<std::string> default_class_names(std::size_t classes) {
  std::vector<std::string> v;
  for (std::size_t c = 0; c < classes; ++c) v.push_back("class " + std::to_string(c));
  return v;
}

}  // namespace artssl
