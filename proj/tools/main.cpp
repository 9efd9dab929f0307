// artssl: train, evaluate, and inspect incremental pattern classifiers.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "artssl/dataset.hpp"
#include "artssl/ensemble.hpp"
#include "artssl/metrics.hpp"
#include "artssl/model_io.hpp"
#include "artssl/rng.hpp"
#include "artssl/rules.hpp"

namespace {

using namespace artssl;

struct Options {
  std::string data_path;
  std::string schema_path;
  std::string synthetic;
  std::size_t samples = 400;
  double synth_noise = 0.08;

  double rho = 0.9;
  double alpha = 1e-3;
  double beta = 1.0;
  double delta = 1e-3;
  double rho_ab = 0.9;
  std::string mapping = "otm";
  std::string voting = "weighted";
  std::size_t members = 7;
  std::string search_depth = "all";
  int quantization = 5;

  double test_frac = 0.2;
  double labeled_frac = 0.2;
  double validation_frac = 0.2;
  double label_noise = 0.0;
  double feature_noise = 0.0;
  double snr = 10.0;

  std::uint64_t seed = 0;
  std::size_t reps = 1;
  std::string out;

  std::string model_path;
  std::string eval_on = "test";
  std::string names_path;
  std::string format = "text";
  std::string config_path;
};

std::size_t parse_search_depth(const std::string& s) {
  // stoul would happily wrap "-3" around, so insist on digits up front
  if (s == "all" || s == "0") return 0;
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError("--search-depth expects 'all' or a positive integer, got '" + s + "'");
  unsigned long v = 0;
  try {
    v = std::stoul(s);
  } catch (const std::exception&) {
    throw ConfigError("--search-depth expects 'all' or a positive integer, got '" + s + "'");
  }
  if (v == 0)
    throw ConfigError("--search-depth expects 'all' or a positive integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

Dataset load_data(const Options& o) {
  if (!o.data_path.empty() && !o.synthetic.empty())
    throw ConfigError("--data and --synthetic are mutually exclusive");
  if (o.data_path.empty() && o.synthetic.empty())
    throw ConfigError("either --data or --synthetic is required");
  if (!o.data_path.empty()) {
    Schema schema;
    if (!o.schema_path.empty()) schema = Schema::from_json_file(o.schema_path);
    return load_and_normalize(o.data_path, schema);
  }
  return make_synthetic(synthetic_kind_from(o.synthetic), o.samples, o.synth_noise, o.seed);
}

ArtParams art_params(const Options& o) { return ArtParams{o.rho, o.alpha, o.beta}; }
MapFieldParams map_params(const Options& o) { return MapFieldParams{o.rho_ab, o.delta}; }

bool is_single(const Options& o) { return o.voting == "single" || o.members == 1; }

// Deterministic seed streams hanging off --seed.
constexpr std::uint64_t kLabelNoiseStream = 11;
constexpr std::uint64_t kFeatureNoiseStream = 12;
constexpr std::uint64_t kEnsembleStream = 13;
constexpr std::uint64_t kBootstrapStream = 14;
constexpr std::uint64_t kRepStream = 1000;

Splits make_splits(const Dataset& ds, const Options& o, std::uint64_t run_seed) {
  Splits sp = split_dataset(ds, SplitSpec{o.test_frac, o.labeled_frac, {}, run_seed});
  if (o.label_noise > 0.0)
    inject_label_noise(sp.labeled, o.label_noise, ds.class_count(),
                       derive_seed(run_seed, kLabelNoiseStream));
  if (o.feature_noise > 0.0)
    inject_feature_noise(sp.labeled, o.feature_noise, o.snr,
                         derive_seed(run_seed, kFeatureNoiseStream));
  return sp;
}

AnyModel train_model(const Dataset& ds, const Splits& sp, const Options& o,
                     std::uint64_t run_seed) {
  std::size_t depth = parse_search_depth(o.search_depth);
  if (is_single(o)) {
    if (o.mapping == "otm") {
      SslArtModel m(ds.dim, art_params(o), depth);
      for (const auto& x : sp.unlabeled) m.pretrain(x);
      for (const auto& s : sp.labeled) m.train_labeled(s.x, s.y);
      m.finalize_labels();
      m.set_class_names(ds.class_names);
      m.set_feature_names(ds.feature_names);
      return m;
    }
    ArtmapModel m(ds.dim, art_params(o), map_params(o), depth);
    for (const auto& x : sp.unlabeled) m.pretrain(x);
    for (const auto& s : sp.labeled) m.train(s.x, s.y);
    m.set_class_names(ds.class_names);
    m.set_feature_names(ds.feature_names);
    return m;
  }
  EnsembleOptions eo;
  eo.params = art_params(o);
  eo.map_params = map_params(o);
  eo.mapping = mapping_from(o.mapping);
  eo.voting = voting_from(o.voting);
  eo.members = o.members;
  eo.search_depth = depth;
  eo.validation_frac = o.validation_frac;
  eo.seed = derive_seed(run_seed, kEnsembleStream);
  EnsembleModel ens = train_ensemble(ds.dim, sp.unlabeled, sp.labeled, eo);
  ens.class_names = ds.class_names;
  ens.feature_names = ds.feature_names;
  return ens;
}

Metrics eval_model(const AnyModel& model, const std::vector<LabeledSample>& test,
                   std::optional<std::size_t> T) {
  return std::visit([&](const auto& m) { return evaluate(m, test, T); }, model);
}

NodeCounts counts_of(const AnyModel& model) {
  return std::visit([](const auto& m) { return node_counts(m); }, model);
}

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "na"; }

const char* kRowHeader =
    "run,seed,rho,members,mapping,voting,search_depth,coverage,correctness,accuracy,"
    "sensitivity,specificity,nodes_stage1,nodes_stage2,nodes_labeled,wall_ms";

std::string metrics_row(std::size_t run, std::uint64_t seed, double rho, std::size_t members,
                        const std::string& mapping, const std::string& voting,
                        std::size_t depth, const Metrics& m, const NodeCounts& nc,
                        double wall_ms) {
  std::ostringstream out;
  out << run << ',' << seed << ',' << fmt(rho, "%.6g") << ',' << members << ',' << mapping << ','
      << voting << ',' << (depth == 0 ? std::string("all") : std::to_string(depth)) << ','
      << fmt(m.coverage) << ',' << fmt(m.correctness) << ',' << fmt(m.accuracy) << ','
      << fmt_opt(m.sensitivity) << ',' << fmt_opt(m.specificity) << ',' << fmt(nc.stage1, "%.6g")
      << ',' << fmt(nc.stage2, "%.6g") << ',' << fmt(nc.labeled, "%.6g") << ','
      << fmt(wall_ms, "%.3f");
  return out.str();
}

class RowSink {
 public:
  explicit RowSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DataError("cannot open for writing: " + path);
    }
  }
  void line(const std::string& s) {
    (file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout) << s << "\n";
  }

 private:
  std::ofstream file_;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// Map a dataset's interned class ids onto the ids a saved model was trained
// with, matching by class name.
std::vector<LabeledSample> test_pool_for(const Dataset& ds,
                                         const std::vector<std::string>& model_names) {
  std::vector<LabeledSample> pool;
  pool.reserve(ds.size());
  std::vector<int> remap(ds.class_count());
  for (std::size_t c = 0; c < ds.class_count(); ++c) {
    if (model_names.empty()) {
      remap[c] = static_cast<int>(c);
      continue;
    }
    int id = -1;
    for (std::size_t m = 0; m < model_names.size(); ++m)
      if (model_names[m] == ds.class_names[c]) id = static_cast<int>(m);
    if (id < 0)
      throw DataError("class '" + ds.class_names[c] + "' is unknown to the loaded model");
    remap[c] = id;
  }
  for (std::size_t i = 0; i < ds.size(); ++i)
    pool.push_back({ds.features[i], remap[static_cast<std::size_t>(ds.labels[i])]});
  return pool;
}

const std::vector<std::string>& model_class_names(const AnyModel& m) {
  if (const auto* ssl = std::get_if<SslArtModel>(&m)) return ssl->class_names();
  if (const auto* am = std::get_if<ArtmapModel>(&m)) return am->class_names();
  return std::get<EnsembleModel>(m).class_names;
}

// "model.json" + rep 2 -> "model_r2.json"
std::string rep_path(const std::string& base, std::size_t rep) {
  auto dot = base.rfind('.');
  if (dot == std::string::npos || base.find('/', dot) != std::string::npos)
    return base + "_r" + std::to_string(rep);
  return base.substr(0, dot) + "_r" + std::to_string(rep) + base.substr(dot);
}

int cmd_train(const Options& o) {
  if (o.reps == 0) throw ConfigError("--reps must be at least 1");
  Dataset ds = load_data(o);
  std::string base_path = o.out.empty() ? "model.json" : o.out;

  for (std::size_t rep = 0; rep < o.reps; ++rep) {
    std::uint64_t run_seed = o.reps == 1 ? o.seed : derive_seed(o.seed, kRepStream + rep);
    Splits sp = make_splits(ds, o, run_seed);
    auto start = std::chrono::steady_clock::now();
    AnyModel model = train_model(ds, sp, o, run_seed);
    double wall = elapsed_ms(start);

    std::string out_path = o.reps == 1 ? base_path : rep_path(base_path, rep);
    save_model(model, out_path);

    NodeCounts nc = counts_of(model);
    std::cout << "trained " << model_kind(model) << " on " << ds.name << ": "
              << sp.unlabeled.size() << " unlabeled + " << sp.labeled.size()
              << " labeled samples, " << ds.class_count() << " classes\n"
              << "nodes: stage1=" << fmt(nc.stage1, "%.6g") << " stage2=" << fmt(nc.stage2, "%.6g")
              << " labeled=" << fmt(nc.labeled, "%.6g") << "\n"
              << "wall: " << fmt(wall, "%.3f") << " ms\n"
              << "model written to " << out_path << "\n";
  }
  return 0;
}

int cmd_eval(const Options& o, bool depth_given) {
  RowSink sink(o.out);

  if (!o.model_path.empty()) {
    // Evaluate a saved model on every row of a data file.
    AnyModel model = load_model(o.model_path);
    Dataset ds = load_data(o);
    auto pool = test_pool_for(ds, model_class_names(model));
    std::optional<std::size_t> T;
    if (depth_given) T = parse_search_depth(o.search_depth);
    auto start = std::chrono::steady_clock::now();
    Metrics m = eval_model(model, pool, T);
    double wall = elapsed_ms(start);

    double rho = std::visit(
        [](const auto& mm) -> double {
          using M = std::decay_t<decltype(mm)>;
          if constexpr (std::is_same_v<M, EnsembleModel>) {
            if (mm.members.empty()) return 0.0;
            return std::visit([](const auto& mem) { return mem.params().rho; }, mm.members[0]);
          } else {
            return mm.params().rho;
          }
        },
        model);
    std::size_t members = std::holds_alternative<EnsembleModel>(model)
                              ? std::get<EnsembleModel>(model).size()
                              : 1;
    std::string mapping = model_kind(model) == "artmap" ? "oto" : "otm";
    if (const auto* ens = std::get_if<EnsembleModel>(&model))
      mapping = !ens->members.empty() && std::holds_alternative<ArtmapModel>(ens->members[0])
                    ? "oto"
                    : "otm";
    std::string voting = std::holds_alternative<EnsembleModel>(model)
                             ? to_string(std::get<EnsembleModel>(model).voting)
                             : "single";
    std::size_t depth = T.value_or(std::visit(
        [](const auto& mm) -> std::size_t {
          using M = std::decay_t<decltype(mm)>;
          if constexpr (std::is_same_v<M, EnsembleModel>) return 0;
          else return mm.search_depth();
        },
        model));

    sink.line(kRowHeader);
    sink.line(metrics_row(0, o.seed, rho, members, mapping, voting, depth, m, counts_of(model),
                          wall));
    return 0;
  }

  // Protocol mode: split/train/evaluate, repeated.
  if (o.eval_on != "test" && o.eval_on != "labeled")
    throw ConfigError("--eval-on expects 'test' or 'labeled'");
  if (o.reps == 0) throw ConfigError("--reps must be at least 1");
  Dataset ds = load_data(o);

  sink.line(kRowHeader);
  std::vector<double> cov, corr, acc;
  for (std::size_t rep = 0; rep < o.reps; ++rep) {
    std::uint64_t run_seed = o.reps == 1 ? o.seed : derive_seed(o.seed, kRepStream + rep);
    Splits sp = make_splits(ds, o, run_seed);
    auto start = std::chrono::steady_clock::now();
    AnyModel model = train_model(ds, sp, o, run_seed);
    const auto& pool = o.eval_on == "test" ? sp.test : sp.labeled;
    Metrics m = eval_model(model, pool, {});
    double wall = elapsed_ms(start);
    sink.line(metrics_row(rep, run_seed, o.rho, is_single(o) ? 1 : o.members, o.mapping,
                          is_single(o) ? "single" : o.voting, parse_search_depth(o.search_depth),
                          m, counts_of(model), wall));
    cov.push_back(m.coverage);
    corr.push_back(m.correctness);
    acc.push_back(m.accuracy);
  }

  if (o.reps >= 2) {
    auto summary = [&](const char* name, const std::vector<double>& v) {
      BootstrapCi ci = bootstrap_ci(v, 0.95, 10000, derive_seed(o.seed, kBootstrapStream));
      std::cout << "# " << name << " mean=" << fmt(ci.mean) << " ci95=[" << fmt(ci.lo) << ","
                << fmt(ci.hi) << "]\n";
    };
    summary("coverage", cov);
    summary("correctness", corr);
    summary("accuracy", acc);
  }
  return 0;
}

int cmd_rules(const Options& o) {
  if (o.model_path.empty()) throw ConfigError("--model is required");
  AnyModel model = load_model(o.model_path);
  const auto* ssl = std::get_if<SslArtModel>(&model);
  if (!ssl)
    throw ConfigError("rule extraction needs a one-to-many single model (kind ssl_art), got " +
                      model_kind(model));

  std::vector<std::string> feature_names;
  if (!o.names_path.empty()) {
    std::ifstream in(o.names_path);
    if (!in) throw DataError("cannot open names file: " + o.names_path);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) feature_names.push_back(line);
    }
  }
  if (feature_names.empty()) feature_names = ssl->feature_names();
  if (feature_names.empty()) feature_names = default_feature_names(ssl->dim());
  if (feature_names.size() != ssl->dim())
    throw DataError("names file lists " + std::to_string(feature_names.size()) +
                    " features, model has " + std::to_string(ssl->dim()));

  std::vector<std::string> class_names = ssl->class_names();
  if (class_names.empty()) class_names = default_class_names(ssl->class_art().class_count());

  auto rules = extract_rules(*ssl, o.quantization);
  std::string text = o.format == "csv"
                         ? rules_to_csv(rules, feature_names, class_names)
                         : rules_to_text(rules, feature_names, class_names, o.quantization);
  if (o.format != "csv" && o.format != "text")
    throw ConfigError("--format expects 'text' or 'csv'");

  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.out);
    if (!out) throw DataError("cannot open for writing: " + o.out);
    out << text;
  }
  return 0;
}

struct BenchLists {
  std::vector<double> rho{0.9};
  std::vector<std::size_t> members{7};
  std::vector<std::string> mapping{"otm"};
  std::vector<double> labeled_frac{0.2};
  std::vector<double> label_noise{0.0};
  std::vector<double> feature_noise{0.0};
};

int cmd_bench(const Options& base, const BenchLists& lists) {
  if (base.reps == 0) throw ConfigError("--reps must be at least 1");
  Dataset ds = load_data(base);
  RowSink sink(base.out);
  sink.line(kRowHeader);

  std::size_t run = 0;
  for (double rho : lists.rho)
    for (std::size_t members : lists.members)
      for (const auto& mapping : lists.mapping)
        for (double lf : lists.labeled_frac)
          for (double ln : lists.label_noise)
            for (double fn : lists.feature_noise)
              for (std::size_t rep = 0; rep < base.reps; ++rep) {
                Options o = base;
                o.rho = rho;
                o.members = members;
                o.mapping = mapping;
                o.labeled_frac = lf;
                o.label_noise = ln;
                o.feature_noise = fn;
                mapping_from(o.mapping);  // validate early
                std::uint64_t run_seed = derive_seed(base.seed, kRepStream + rep);
                std::size_t run_id = run++;
                try {
                  Splits sp = make_splits(ds, o, run_seed);
                  auto start = std::chrono::steady_clock::now();
                  AnyModel model = train_model(ds, sp, o, run_seed);
                  Metrics m = eval_model(model, sp.test, {});
                  double wall = elapsed_ms(start);
                  sink.line(metrics_row(run_id, run_seed, rho, is_single(o) ? 1 : members,
                                        mapping, is_single(o) ? "single" : o.voting,
                                        parse_search_depth(o.search_depth), m, counts_of(model),
                                        wall));
                } catch (const InternalError&) {
                  throw;  // a broken invariant voids the whole sweep
                } catch (const std::exception& e) {
                  warn("run " + std::to_string(run_id) + " failed: " + e.what());
                }
              }
  return 0;
}

void add_data_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--data", o.data_path, "CSV data file");
  cmd->add_option("--schema", o.schema_path, "JSON schema for the data file");
  cmd->add_option("--synthetic", o.synthetic, "synthetic dataset: two-gaussians, rings, xor");
  cmd->add_option("--samples", o.samples, "synthetic sample count");
  cmd->add_option("--synthetic-noise", o.synth_noise, "synthetic Gaussian spread");
}

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--rho", o.rho, "vigilance in [0,1]");
  cmd->add_option("--alpha", o.alpha, "choice parameter");
  cmd->add_option("--beta", o.beta, "learning rate in (0,1]");
  cmd->add_option("--delta", o.delta, "match-tracking offset");
  cmd->add_option("--rho-ab", o.rho_ab, "map-field vigilance");
  cmd->add_option("--mapping", o.mapping, "otm or oto");
  cmd->add_option("--voting", o.voting, "weighted, majority, or single");
  cmd->add_option("--members", o.members, "ensemble size");
  cmd->add_option("--search-depth", o.search_depth, "prediction search depth: 'all' or N");
  cmd->add_option("--validation-frac", o.validation_frac,
                  "labeled share held out per member for vote weights");
}

void add_split_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--test-frac", o.test_frac, "test share of the dataset");
  cmd->add_option("--labeled-frac", o.labeled_frac, "labeled share of the training remainder");
  cmd->add_option("--label-noise", o.label_noise, "fraction of labeled samples with flipped class");
  cmd->add_option("--feature-noise", o.feature_noise,
                  "fraction of labeled samples with added Gaussian noise");
  cmd->add_option("--snr", o.snr, "signal-to-noise power ratio for feature noise");
  cmd->add_option("--seed", o.seed, "master random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incremental semi-supervised pattern classification"};
  app.require_subcommand(1);

  Options o;
  BenchLists lists;

  CLI::App* train = app.add_subcommand("train", "train a model and save it");
  add_data_flags(train, o);
  add_model_flags(train, o);
  add_split_flags(train, o);
  train->add_option("--reps", o.reps, "train this many models with derived seeds");
  train->add_option("--out", o.out, "output model file (default model.json)");
  train->add_option("--config", o.config_path, "TOML config file with long-option keys");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a saved model or run the split protocol");
  add_data_flags(eval, o);
  add_model_flags(eval, o);
  add_split_flags(eval, o);
  eval->add_option("--model", o.model_path, "saved model to evaluate");
  eval->add_option("--reps", o.reps, "protocol repetitions");
  eval->add_option("--eval-on", o.eval_on, "protocol evaluation pool: test or labeled");
  eval->add_option("--out", o.out, "write metric rows here instead of stdout");
  eval->add_option("--config", o.config_path, "TOML config file with long-option keys");

  CLI::App* rules = app.add_subcommand("rules", "extract If-Then rules from a saved model");
  rules->add_option("--model", o.model_path, "saved model (kind ssl_art)");
  rules->add_option("--quantization", o.quantization, "grid levels per feature");
  rules->add_option("--names", o.names_path, "file with one feature name per line");
  rules->add_option("--format", o.format, "text or csv");
  rules->add_option("--out", o.out, "write rules here instead of stdout");
  rules->add_option("--config", o.config_path, "TOML config file with long-option keys");

  CLI::App* bench = app.add_subcommand("bench", "sweep a parameter grid");
  add_data_flags(bench, o);
  add_model_flags(bench, o);
  bench->add_option("--test-frac", o.test_frac, "test share of the dataset");
  bench->add_option("--snr", o.snr, "signal-to-noise power ratio for feature noise");
  bench->add_option("--seed", o.seed, "master random seed");
  bench->add_option("--reps", o.reps, "repetitions per grid cell");
  bench->add_option("--out", o.out, "write metric rows here instead of stdout");
  bench->add_option("--rho-list", lists.rho, "vigilance values")->delimiter(',');
  bench->add_option("--members-list", lists.members, "ensemble sizes")->delimiter(',');
  bench->add_option("--mapping-list", lists.mapping, "mappings (otm, oto)")->delimiter(',');
  bench->add_option("--labeled-frac-list", lists.labeled_frac, "labeled shares")->delimiter(',');
  bench->add_option("--label-noise-list", lists.label_noise, "label-noise fractions")
      ->delimiter(',');
  bench->add_option("--feature-noise-list", lists.feature_noise, "feature-noise fractions")
      ->delimiter(',');
  bench->add_option("--config", o.config_path, "TOML config file with long-option keys");

  try {
    try {
      app.parse(argc, argv);
      // Config processing only runs on a root app, so feed the file to the
      // parsed subcommand by hand; command-line values keep precedence.
      if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw DataError("cannot open config file " + o.config_path);
        CLI::App* sub = app.get_subcommands().front();
        sub->allow_config_extras(CLI::config_extras_mode::error);
        sub->parse_from_stream(in);
      }
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e);
      return code == 0 ? 0 : 1;  // bad usage, not an internal failure
    }

    // Fail fast on out-of-range parameters shared by every command.
    ArtParams p = art_params(o);
    p.validate();
    MapFieldParams mp = map_params(o);
    mp.validate();
    mapping_from(o.mapping);
    voting_from(o.voting);
    if (o.members == 0) throw ConfigError("--members must be at least 1");
    parse_search_depth(o.search_depth);

    if (train->parsed()) return cmd_train(o);
    if (eval->parsed()) return cmd_eval(o, eval->count("--search-depth") > 0);
    if (rules->parsed()) return cmd_rules(o);
    if (bench->parsed()) return cmd_bench(o, lists);
    throw ConfigError("no subcommand given");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
