#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "artssl/dataset.hpp"
#include "artssl/ensemble.hpp"
#include "artssl/metrics.hpp"
#include "artssl/model_io.hpp"
#include "artssl/rules.hpp"

namespace py = pybind11;
using namespace artssl;

namespace {

std::vector<LabeledSample> zip_pool(const std::vector<Vec>& X, const std::vector<int>& y) {
  if (X.size() != y.size())
    throw DataError("features and labels differ in length: " + std::to_string(X.size()) + " vs " +
                    std::to_string(y.size()));
  std::vector<LabeledSample> pool;
  pool.reserve(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) pool.push_back({X[i], y[i]});
  return pool;
}

py::dict dataset_dict(const Dataset& ds) {
  py::dict d;
  d["name"] = ds.name;
  d["features"] = ds.features;
  d["labels"] = ds.labels;
  d["feature_names"] = ds.feature_names;
  d["class_names"] = ds.class_names;
  return d;
}

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["total"] = m.total;
  d["predicted"] = m.predicted;
  d["correct"] = m.correct;
  d["coverage"] = m.coverage;
  d["correctness"] = m.correctness;
  d["accuracy"] = m.accuracy;
  d["sensitivity"] = m.sensitivity ? py::cast(*m.sensitivity) : py::none();
  d["specificity"] = m.specificity ? py::cast(*m.specificity) : py::none();
  return d;
}

py::object opt_label(const std::optional<int>& label) {
  return label ? py::cast(*label) : py::none();
}

template <typename Model>
py::dict eval_dict(const Model& m, const std::vector<Vec>& X, const std::vector<int>& y,
                   std::optional<std::size_t> T) {
  return metrics_dict(evaluate(m, zip_pool(X, y), T));
}

std::vector<std::string> names_or_default(std::vector<std::string> names, std::size_t n,
                                          std::vector<std::string> (*fallback)(std::size_t)) {
  return names.empty() ? fallback(n) : std::move(names);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "incremental semi-supervised pattern classification";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DataError>(m, "DataError");
  py::register_exception<InternalError>(m, "InternalError");

  py::class_<SslArtModel>(m, "SslArt")
      .def(py::init([](std::size_t dim, double rho, double alpha, double beta,
                       std::size_t search_depth) {
             return SslArtModel(dim, ArtParams{rho, alpha, beta}, search_depth);
           }),
           py::arg("dim"), py::arg("rho") = 0.9, py::arg("alpha") = 1e-3, py::arg("beta") = 1.0,
           py::arg("search_depth") = 0)
      .def("pretrain", [](SslArtModel& m_, const Vec& x) { m_.pretrain(x); }, py::arg("x"))
      .def("train_labeled",
           [](SslArtModel& m_, const Vec& x, int y) { return m_.train_labeled(x, y); },
           py::arg("x"), py::arg("y"))
      .def("finalize", &SslArtModel::finalize_labels)
      .def("predict",
           [](const SslArtModel& m_, const Vec& x, std::optional<std::size_t> T) {
             return opt_label((T ? m_.predict(x, *T) : m_.predict(x)).label);
           },
           py::arg("x"), py::arg("T") = py::none())
      .def("predict_info",
           [](const SslArtModel& m_, const Vec& x, std::optional<std::size_t> T) {
             Prediction p = T ? m_.predict(x, *T) : m_.predict(x);
             py::dict d;
             d["label"] = opt_label(p.label);
             d["rank"] = p.rank;
             d["node"] = p.node == Prediction::kNoNode ? py::object(py::none())
                                                       : py::cast(p.node);
             return d;
           },
           py::arg("x"), py::arg("T") = py::none())
      .def("node_label", [](const SslArtModel& m_, std::size_t j) { return opt_label(m_.node_label(j)); })
      .def("node_weight", [](const SslArtModel& m_, std::size_t j) { return m_.art().weight(j); })
      .def("node_counts", [](const SslArtModel& m_, std::size_t j) { return m_.otm().row(j); })
      .def_property_readonly("dim", &SslArtModel::dim)
      .def_property_readonly("nodes", &SslArtModel::committed_node_count)
      .def_property_readonly("labeled_nodes", &SslArtModel::labeled_node_count)
      .def_property_readonly("stage1_nodes", &SslArtModel::stage1_node_count)
      .def_property_readonly("finalized", &SslArtModel::finalized)
      .def_property("search_depth", &SslArtModel::search_depth, &SslArtModel::set_search_depth)
      .def_property("class_names", &SslArtModel::class_names, &SslArtModel::set_class_names)
      .def_property("feature_names", &SslArtModel::feature_names,
                    &SslArtModel::set_feature_names);

  py::class_<ArtmapModel>(m, "Artmap")
      .def(py::init([](std::size_t dim, double rho, double alpha, double beta, double rho_ab,
                       double delta, std::size_t search_depth) {
             return ArtmapModel(dim, ArtParams{rho, alpha, beta}, MapFieldParams{rho_ab, delta},
                                search_depth);
           }),
           py::arg("dim"), py::arg("rho") = 0.9, py::arg("alpha") = 1e-3, py::arg("beta") = 1.0,
           py::arg("rho_ab") = 0.9, py::arg("delta") = 1e-3, py::arg("search_depth") = 0)
      .def("pretrain", [](ArtmapModel& m_, const Vec& x) { m_.pretrain(x); }, py::arg("x"))
      .def("train", [](ArtmapModel& m_, const Vec& x, int y) { return m_.train(x, y); },
           py::arg("x"), py::arg("y"))
      .def("predict",
           [](const ArtmapModel& m_, const Vec& x, std::optional<std::size_t> T) {
             return opt_label(T ? m_.predict(x, *T) : m_.predict(x));
           },
           py::arg("x"), py::arg("T") = py::none())
      .def_property_readonly("dim", &ArtmapModel::dim)
      .def_property_readonly("nodes", &ArtmapModel::committed_node_count)
      .def_property_readonly("linked_nodes", &ArtmapModel::linked_node_count)
      .def_property_readonly("stage1_nodes", &ArtmapModel::stage1_node_count)
      .def_property("search_depth", &ArtmapModel::search_depth, &ArtmapModel::set_search_depth)
      .def_property("class_names", &ArtmapModel::class_names, &ArtmapModel::set_class_names);

  py::class_<EnsembleModel>(m, "Ensemble")
      .def("predict",
           [](const EnsembleModel& m_, const Vec& x, std::optional<std::size_t> T) {
             return opt_label(m_.predict(x, T));
           },
           py::arg("x"), py::arg("T") = py::none())
      .def_property_readonly("size", &EnsembleModel::size)
      .def_property_readonly("classes", &EnsembleModel::class_count)
      .def_property_readonly("voting", [](const EnsembleModel& m_) { return to_string(m_.voting); })
      .def_property_readonly("class_weights",
                             [](const EnsembleModel& m_) { return m_.class_weights; })
      .def_property("class_names",
                    [](const EnsembleModel& m_) { return m_.class_names; },
                    [](EnsembleModel& m_, std::vector<std::string> names) {
                      m_.class_names = std::move(names);
                    });

  m.def("train_ensemble",
        [](std::size_t dim, const std::vector<Vec>& unlabeled, const std::vector<Vec>& X,
           const std::vector<int>& y, const std::string& mapping, const std::string& voting,
           std::size_t members, double rho, double alpha, double beta, double rho_ab, double delta,
           std::size_t search_depth, double validation_frac, std::uint64_t seed) {
          EnsembleOptions opt;
          opt.params = ArtParams{rho, alpha, beta};
          opt.map_params = MapFieldParams{rho_ab, delta};
          opt.mapping = mapping_from(mapping);
          opt.voting = voting_from(voting);
          opt.members = members;
          opt.search_depth = search_depth;
          opt.validation_frac = validation_frac;
          opt.seed = seed;
          return train_ensemble(dim, unlabeled, zip_pool(X, y), opt);
        },
        py::arg("dim"), py::arg("unlabeled"), py::arg("X"), py::arg("y"),
        py::arg("mapping") = "otm", py::arg("voting") = "weighted", py::arg("members") = 7,
        py::arg("rho") = 0.9, py::arg("alpha") = 1e-3, py::arg("beta") = 1.0,
        py::arg("rho_ab") = 0.9, py::arg("delta") = 1e-3, py::arg("search_depth") = 0,
        py::arg("validation_frac") = 0.2, py::arg("seed") = 0);

  m.def("evaluate", &eval_dict<SslArtModel>, py::arg("model"), py::arg("X"), py::arg("y"),
        py::arg("T") = py::none());
  m.def("evaluate", &eval_dict<ArtmapModel>, py::arg("model"), py::arg("X"), py::arg("y"),
        py::arg("T") = py::none());
  m.def("evaluate", &eval_dict<EnsembleModel>, py::arg("model"), py::arg("X"), py::arg("y"),
        py::arg("T") = py::none());

  m.def("load_csv",
        [](const std::string& path, const std::string& schema_path) {
          Schema schema;
          if (!schema_path.empty()) schema = Schema::from_json_file(schema_path);
          return dataset_dict(load_and_normalize(path, schema));
        },
        py::arg("path"), py::arg("schema") = "");

  m.def("make_synthetic",
        [](const std::string& kind, std::size_t n, double noise, std::uint64_t seed) {
          return dataset_dict(make_synthetic(synthetic_kind_from(kind), n, noise, seed));
        },
        py::arg("kind"), py::arg("n") = 400, py::arg("noise") = 0.08, py::arg("seed") = 0);

  m.def("split",
        [](const std::vector<Vec>& X, const std::vector<int>& y, double test_frac,
           double labeled_frac, std::uint64_t seed) {
          Dataset ds;
          ds.dim = X.empty() ? 0 : X.front().size();
          ds.features = X;
          ds.labels = y;
          int max_label = -1;
          for (int label : y) max_label = std::max(max_label, label);
          ds.class_names = default_class_names(static_cast<std::size_t>(max_label + 1));
          Splits sp = split_dataset(ds, SplitSpec{test_frac, labeled_frac, {}, seed});
          py::dict d;
          std::vector<Vec> tx, lx;
          std::vector<int> ty, ly;
          for (const auto& s : sp.test) { tx.push_back(s.x); ty.push_back(s.y); }
          for (const auto& s : sp.labeled) { lx.push_back(s.x); ly.push_back(s.y); }
          d["test_x"] = tx;
          d["test_y"] = ty;
          d["labeled_x"] = lx;
          d["labeled_y"] = ly;
          d["unlabeled_x"] = sp.unlabeled;
          return d;
        },
        py::arg("X"), py::arg("y"), py::arg("test_frac") = 0.2, py::arg("labeled_frac") = 0.2,
        py::arg("seed") = 0);

  m.def("inject_label_noise",
        [](const std::vector<Vec>& X, const std::vector<int>& y, double frac, std::size_t classes,
           std::uint64_t seed) {
          auto pool = zip_pool(X, y);
          inject_label_noise(pool, frac, classes, seed);
          std::vector<int> out;
          out.reserve(pool.size());
          for (const auto& s : pool) out.push_back(s.y);
          return out;
        },
        py::arg("X"), py::arg("y"), py::arg("frac"), py::arg("classes"), py::arg("seed") = 0);

  m.def("rules",
        [](const SslArtModel& model, int quantization) {
          auto rules = extract_rules(model, quantization);
          py::list out;
          for (const auto& r : rules) {
            py::dict d;
            d["node"] = r.node;
            d["levels"] = r.levels;
            d["consequent"] = r.consequent;
            d["confidences"] = r.confidences;
            out.append(d);
          }
          return out;
        },
        py::arg("model"), py::arg("quantization") = 5);

  m.def("rules_text",
        [](const SslArtModel& model, int quantization, std::vector<std::string> feature_names,
           std::vector<std::string> class_names) {
          auto rules = extract_rules(model, quantization);
          if (feature_names.empty()) feature_names = model.feature_names();
          feature_names = names_or_default(std::move(feature_names), model.dim(),
                                           default_feature_names);
          if (class_names.empty()) class_names = model.class_names();
          class_names = names_or_default(std::move(class_names),
                                         model.class_art().class_count(), default_class_names);
          return rules_to_text(rules, feature_names, class_names, quantization);
        },
        py::arg("model"), py::arg("quantization") = 5,
        py::arg("feature_names") = std::vector<std::string>{},
        py::arg("class_names") = std::vector<std::string>{});

  m.def("save_model", [](const SslArtModel& m_, const std::string& path) {
    save_model(AnyModel{m_}, path);
  });
  m.def("save_model", [](const ArtmapModel& m_, const std::string& path) {
    save_model(AnyModel{m_}, path);
  });
  m.def("save_model", [](const EnsembleModel& m_, const std::string& path) {
    save_model(AnyModel{m_}, path);
  });
  m.def("load_model", [](const std::string& path) { return load_model(path); });
}
