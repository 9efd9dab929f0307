#include "artssl/model_io.hpp"

#include <fstream>

#include "json.hpp"

namespace artssl {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "artssl-model";
constexpr int kVersion = 1;

json params_to_json(const ArtParams& p) {
  return json{{"rho", p.rho}, {"alpha", p.alpha}, {"beta", p.beta}};
}

ArtParams params_from_json(const json& j) {
  return ArtParams{j.at("rho").get<double>(), j.at("alpha").get<double>(),
                   j.at("beta").get<double>()};
}

json ssl_to_json(const SslArtModel& m) {
  json nodes = json::array();
  for (std::size_t j = 0; j < m.committed_node_count(); ++j) {
    const auto w = m.art().weight(j);
    // Nodes committed after the last labeled sample have no count row yet.
    std::vector<std::uint64_t> counts(m.otm().class_cols(), 0);
    if (j < m.otm().node_rows()) counts = m.otm().row(j);
    nodes.push_back(json{{"weight", Vec(w.begin(), w.end())}, {"counts", counts}});
  }
  return json{{"kind", "ssl_art"},
              {"dim", m.dim()},
              {"params", params_to_json(m.params())},
              {"search_depth", m.search_depth()},
              {"stage1_nodes", m.stage1_node_count()},
              {"class_nodes", m.class_art().node_classes()},
              {"class_names", m.class_names()},
              {"feature_names", m.feature_names()},
              {"nodes", nodes}};
}

SslArtModel ssl_from_json(const json& j) {
  SslArtModel m(j.at("dim").get<std::size_t>(), params_from_json(j.at("params")),
                j.at("search_depth").get<std::size_t>());
  m.restore_classes(j.at("class_nodes").get<std::vector<int>>());
  for (const auto& node : j.at("nodes"))
    m.restore_node(node.at("weight").get<Vec>(),
                   node.at("counts").get<std::vector<std::uint64_t>>());
  m.restore_stage1_count(j.at("stage1_nodes").get<std::size_t>());
  m.set_class_names(j.at("class_names").get<std::vector<std::string>>());
  m.set_feature_names(j.value("feature_names", std::vector<std::string>{}));
  m.finalize_labels();  // labels are derived state: recomputed, not stored
  return m;
}

json artmap_to_json(const ArtmapModel& m) {
  json nodes = json::array();
  for (std::size_t j = 0; j < m.committed_node_count(); ++j) {
    const auto w = m.art_a().weight(j);
    json n{{"weight", Vec(w.begin(), w.end())}};
    if (auto l = m.map().link(j))
      n["class"] = m.class_art().class_of(*l);
    else
      n["class"] = nullptr;
    nodes.push_back(std::move(n));
  }
  return json{{"kind", "artmap"},
              {"dim", m.dim()},
              {"params", params_to_json(m.params())},
              {"rho_ab", m.map_params().rho_ab},
              {"delta", m.map_params().delta},
              {"search_depth", m.search_depth()},
              {"stage1_nodes", m.stage1_node_count()},
              {"class_nodes", m.class_art().node_classes()},
              {"class_names", m.class_names()},
              {"feature_names", m.feature_names()},
              {"nodes", nodes}};
}

ArtmapModel artmap_from_json(const json& j) {
  MapFieldParams mp{j.at("rho_ab").get<double>(), j.at("delta").get<double>()};
  ArtmapModel m(j.at("dim").get<std::size_t>(), params_from_json(j.at("params")), mp,
                j.at("search_depth").get<std::size_t>());
  m.restore_classes(j.at("class_nodes").get<std::vector<int>>());
  for (const auto& node : j.at("nodes")) {
    std::optional<int> cls;
    if (!node.at("class").is_null()) cls = node.at("class").get<int>();
    m.restore_node(node.at("weight").get<Vec>(), cls);
  }
  m.restore_stage1_count(j.at("stage1_nodes").get<std::size_t>());
  m.set_class_names(j.at("class_names").get<std::vector<std::string>>());
  m.set_feature_names(j.value("feature_names", std::vector<std::string>{}));
  return m;
}

json member_to_json(const MemberModel& m) {
  if (const auto* ssl = std::get_if<SslArtModel>(&m)) return ssl_to_json(*ssl);
  return artmap_to_json(std::get<ArtmapModel>(m));
}

MemberModel member_from_json(const json& j) {
  auto kind = j.at("kind").get<std::string>();
  if (kind == "ssl_art") return ssl_from_json(j);
  if (kind == "artmap") return artmap_from_json(j);
  throw DataError("unknown ensemble member kind '" + kind + "'");
}

json ensemble_to_json(const EnsembleModel& m) {
  json members = json::array();
  for (const auto& member : m.members) members.push_back(member_to_json(member));
  return json{{"kind", "ensemble"},
              {"voting", to_string(m.voting)},
              {"classes", m.n_classes},
              {"class_names", m.class_names},
              {"feature_names", m.feature_names},
              {"class_weights", m.class_weights},
              {"members", members}};
}

EnsembleModel ensemble_from_json(const json& j) {
  EnsembleModel m;
  m.voting = voting_from(j.at("voting").get<std::string>());
  m.n_classes = j.at("classes").get<std::size_t>();
  m.class_names = j.at("class_names").get<std::vector<std::string>>();
  m.feature_names = j.value("feature_names", std::vector<std::string>{});
  m.class_weights = j.at("class_weights").get<std::vector<Vec>>();
  for (const auto& member : j.at("members")) m.members.push_back(member_from_json(member));
  if (m.class_weights.size() != m.members.size())
    throw DataError("ensemble document: one weight row per member required");
  return m;
}

json envelope(json body) {
  body["format"] = kFormat;
  body["version"] = kVersion;
  return body;
}

}  // namespace

std::string model_kind(const AnyModel& model) {
  if (std::holds_alternative<SslArtModel>(model)) return "ssl_art";
  if (std::holds_alternative<ArtmapModel>(model)) return "artmap";
  return "ensemble";
}

std::string model_to_json(const AnyModel& model) {
  json j = std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SslArtModel>) return ssl_to_json(m);
        else if constexpr (std::is_same_v<T, ArtmapModel>) return artmap_to_json(m);
        else return ensemble_to_json(m);
      },
      model);
  return envelope(std::move(j)).dump(2);
}

AnyModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("model document is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != kFormat)
      throw DataError("not a model document (missing format marker)");
    if (j.value("version", -1) != kVersion)
      throw DataError("unsupported model document version");
    auto kind = j.at("kind").get<std::string>();
    if (kind == "ssl_art") return ssl_from_json(j);
    if (kind == "artmap") return artmap_from_json(j);
    if (kind == "ensemble") return ensemble_from_json(j);
    throw DataError("unknown model kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model document: ") + e.what());
  }
}

void save_model(const AnyModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << model_to_json(model) << "\n";
  if (!out) throw DataError("write failed: " + path);
}

AnyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return model_from_json(text);
}

}  // namespace artssl
