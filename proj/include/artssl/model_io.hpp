#pragma once

#include <string>
#include <variant>

#include "artssl/ensemble.hpp"

namespace artssl {

using AnyModel = std::variant<SslArtModel, ArtmapModel, EnsembleModel>;

// Versioned JSON documents ("artssl-model", version 1). Weights and counts
// round-trip value-exactly; a reloaded model predicts identically.
std::string model_to_json(const AnyModel& model);
AnyModel model_from_json(const std::string& text);

void save_model(const AnyModel& model, const std::string& path);
AnyModel load_model(const std::string& path);

std::string model_kind(const AnyModel& model);  // "ssl_art", "artmap", "ensemble"

}  // namespace artssl
