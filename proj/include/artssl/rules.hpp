#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "artssl/ssl_art.hpp"

namespace artssl {

// One If-Then rule distilled from a labeled category node: a quantized level
// interval per feature, the node's majority class, and the class-association
// counts normalized into confidence estimates.
struct FuzzyRule {
  std::size_t node = 0;
  std::vector<std::pair<int, int>> levels;  // 1-based inclusive [lo, hi] per feature
  int consequent = 0;
  Vec confidences;                          // per class id, sums to 1
};

// Snap v onto the Q-point grid {0, 1/(Q-1), ..., 1} and return the 1-based
// level. Exact midpoints round up. Values outside [0,1] clamp with a warning.
int quantize(double v, int Q);

// The hyperbox a weight vector encodes: lower corner from the first half,
// upper corner from the complement of the second half.
std::pair<Vec, Vec> hyperbox_bounds(std::span<const double> W);

// Level names; Q=5 gives Very Small / Small / Medium / Large / Very Large.
std::vector<std::string> quant_vocabulary(int Q);

// One rule per labeled node, in node order. Requires finalized labels.
std::vector<FuzzyRule> extract_rules(const SslArtModel& model, int Q);

std::string render_rule(const FuzzyRule& rule, const std::vector<std::string>& feature_names,
                        const std::vector<std::string>& class_names, int Q);

std::string rules_to_text(const std::vector<FuzzyRule>& rules,
                          const std::vector<std::string>& feature_names,
                          const std::vector<std::string>& class_names, int Q);

std::string rules_to_csv(const std::vector<FuzzyRule>& rules,
                         const std::vector<std::string>& feature_names,
                         const std::vector<std::string>& class_names);

// Fallback naming when a model carries no feature or class names.
std::vector<std::string> default_feature_names(std::size_t dim);
std::vector<std::string> default_class_names(std::size_t classes);

}  // namespace artssl
