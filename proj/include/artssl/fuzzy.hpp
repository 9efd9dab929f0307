#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "artssl/errors.hpp"

namespace artssl {

using Vec = std::vector<double>;

// Complement coding: x in [0,1]^d maps to (x, 1-x) in [0,1]^2d.
// Every coded vector has city-block norm exactly d.
inline Vec complement_code(std::span<const double> x) {
  Vec out(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0))
      throw DataError("complement_code: component " + std::to_string(i) +
                      " outside [0,1]: " + std::to_string(x[i]));
    out[i] = x[i];
    out[x.size() + i] = 1.0 - x[i];
  }
  return out;
}

inline void check_same_length(std::span<const double> a, std::span<const double> b,
                              const char* where) {
  if (a.size() != b.size())
    throw DataError(std::string(where) + ": length mismatch " + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()));
}

// Componentwise min.
inline Vec fuzzy_and(std::span<const double> a, std::span<const double> b) {
  check_same_length(a, b, "fuzzy_and");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
  return out;
}

// City-block norm; inputs here are nonnegative so this is a plain sum.
inline double norm(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s += v < 0.0 ? -v : v;
  return s;
}

// |a AND b| without materialising the intermediate vector.
inline double fuzzy_and_norm(std::span<const double> a, std::span<const double> b) {
  check_same_length(a, b, "fuzzy_and_norm");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] < b[i] ? a[i] : b[i];
  return s;
}

// Degree to which x is a fuzzy subset of y: |x AND y| / |y|.
inline double subsethood(std::span<const double> x, std::span<const double> y) {
  double ny = norm(y);
  if (ny == 0.0) throw InternalError("subsethood: zero-norm reference vector");
  return fuzzy_and_norm(x, y) / ny;
}

// Choice (activation) of a node with weight W for coded input A.
inline double choice(std::span<const double> A, std::span<const double> W, double alpha) {
  return fuzzy_and_norm(A, W) / (alpha + norm(W));
}

// Highest activation wins; ties go to the lowest index. `deactivated` may be
// empty (nothing disabled) or one flag per activation.
inline std::optional<std::size_t> select_winner(std::span<const double> activations,
                                                const std::vector<bool>& deactivated) {
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < activations.size(); ++j) {
    if (j < deactivated.size() && deactivated[j]) continue;
    if (!best || activations[j] > activations[*best]) best = j;
  }
  return best;
}

// Resonance test: |A AND W| / |A| must strictly exceed rho.
inline bool vigilance_check(std::span<const double> A, std::span<const double> W, double rho) {
  double na = norm(A);
  if (na == 0.0) throw InternalError("vigilance_check: zero-norm input");
  return fuzzy_and_norm(A, W) / na > rho;
}

inline double match_ratio(std::span<const double> A, std::span<const double> W) {
  double na = norm(A);
  if (na == 0.0) throw InternalError("match_ratio: zero-norm input");
  return fuzzy_and_norm(A, W) / na;
}

// Learning rule: W' = beta*(A AND W) + (1-beta)*W. beta=1 is fast learning.
inline Vec update_weight(std::span<const double> A, std::span<const double> W, double beta) {
  check_same_length(A, W, "update_weight");
  Vec out(W.size());
  for (std::size_t i = 0; i < W.size(); ++i) {
    double m = A[i] < W[i] ? A[i] : W[i];
    out[i] = beta * m + (1.0 - beta) * W[i];
  }
  return out;
}

}  // namespace artssl
