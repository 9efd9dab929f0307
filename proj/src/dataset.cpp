#include "artssl/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "artssl/rng.hpp"

namespace artssl {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e && !s.empty();
}

ColumnRef column_ref_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return ColumnRef{j.get<int>()};
  if (j.is_string()) return ColumnRef{j.get<std::string>()};
  throw DataError("schema: column reference must be an integer or a string");
}

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string>& header,
                           std::size_t ncols) {
  if (std::holds_alternative<int>(ref)) {
    long idx = std::get<int>(ref);
    if (idx < 0) idx += static_cast<long>(ncols);
    if (idx < 0 || idx >= static_cast<long>(ncols))
      throw DataError("schema: column index " + std::to_string(std::get<int>(ref)) +
                      " out of range for " + std::to_string(ncols) + " columns");
    return static_cast<std::size_t>(idx);
  }
  const std::string& name = std::get<std::string>(ref);
  if (header.empty())
    throw DataError("schema: column '" + name + "' referenced by name but the file has no header");
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw DataError("schema: column '" + name + "' not found in header");
}

}  // namespace

Schema Schema::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("schema " + path + ": " + e.what());
  }
  Schema s;
  if (j.contains("has_header")) {
    if (!j["has_header"].is_boolean()) throw DataError("schema: has_header must be a boolean");
    s.has_header = j["has_header"].get<bool>();
  }
  if (j.contains("class_column")) s.class_column = column_ref_from_json(j["class_column"]);
  if (j.contains("feature_columns")) {
    if (!j["feature_columns"].is_array())
      throw DataError("schema: feature_columns must be an array");
    for (const auto& c : j["feature_columns"]) s.feature_columns.push_back(column_ref_from_json(c));
  }
  return s;
}

Dataset load_and_normalize(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file: " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_fields(line));
  }
  if (rows.empty()) throw DataError(path + ": file contains no rows");

  std::size_t ncols = rows[0].size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != ncols)
      throw DataError(path + ": row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows[r].size()) + " fields, expected " +
                      std::to_string(ncols));
  if (ncols < 2) throw DataError(path + ": need at least one feature column and a class column");

  bool has_header;
  if (schema.has_header) {
    has_header = *schema.has_header;
  } else {
    // A data row always carries numeric feature cells; a header carries none.
    has_header = true;
    for (const auto& cell : rows[0]) {
      double v;
      if (parse_double(cell, v)) {
        has_header = false;
        break;
      }
    }
  }

  std::vector<std::string> header;
  if (has_header) {
    header = rows.front();
    rows.erase(rows.begin());
    if (rows.empty()) throw DataError(path + ": no data rows after the header");
  }

  std::size_t class_col =
      resolve_column(schema.class_column.value_or(ColumnRef{-1}), header, ncols);
  std::vector<std::size_t> feat_cols;
  if (schema.feature_columns.empty()) {
    for (std::size_t c = 0; c < ncols; ++c)
      if (c != class_col) feat_cols.push_back(c);
  } else {
    for (const auto& ref : schema.feature_columns) {
      std::size_t c = resolve_column(ref, header, ncols);
      if (c == class_col)
        throw DataError("schema: column " + std::to_string(c) + " is both feature and class");
      feat_cols.push_back(c);
    }
  }
  if (feat_cols.empty()) throw DataError(path + ": no feature columns selected");

  Dataset ds;
  ds.name = std::filesystem::path(path).stem().string();
  ds.dim = feat_cols.size();
  for (std::size_t c : feat_cols)
    ds.feature_names.push_back(has_header ? header[c] : "x" + std::to_string(c + 1));

  std::unordered_map<std::string, int> class_ids;
  std::size_t header_offset = has_header ? 1 : 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Vec x(ds.dim);
    for (std::size_t i = 0; i < feat_cols.size(); ++i) {
      const std::string& cell = rows[r][feat_cols[i]];
      if (!parse_double(cell, x[i]))
        throw DataError(path + ": row " + std::to_string(r + 1 + header_offset) + ", column " +
                        std::to_string(feat_cols[i] + 1) + ": cannot parse '" + cell +
                        "' as a number");
      if (!std::isfinite(x[i]))
        throw DataError(path + ": row " + std::to_string(r + 1 + header_offset) + ", column " +
                        std::to_string(feat_cols[i] + 1) + ": non-finite value");
    }
    const std::string& cls = rows[r][class_col];
    if (cls.empty())
      throw DataError(path + ": row " + std::to_string(r + 1 + header_offset) +
                      ": empty class label");
    auto [it, fresh] = class_ids.emplace(cls, static_cast<int>(ds.class_names.size()));
    if (fresh) ds.class_names.push_back(cls);
    ds.features.push_back(std::move(x));
    ds.labels.push_back(it->second);
  }

  // Min-max per feature over the full file; constant features map to 0.
  for (std::size_t i = 0; i < ds.dim; ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& x : ds.features) {
      lo = std::min(lo, x[i]);
      hi = std::max(hi, x[i]);
    }
    double range = hi - lo;
    for (auto& x : ds.features) x[i] = range > 0.0 ? (x[i] - lo) / range : 0.0;
  }
  return ds;
}

Splits split_dataset(const Dataset& ds, const SplitSpec& spec) {
  if (!(spec.test_frac >= 0.0 && spec.test_frac < 1.0))
    throw ConfigError("test fraction must lie in [0,1), got " + std::to_string(spec.test_frac));
  if (!(spec.labeled_frac >= 0.0 && spec.labeled_frac <= 1.0))
    throw ConfigError("labeled fraction must lie in [0,1], got " +
                      std::to_string(spec.labeled_frac));
  if (spec.unlabeled_frac) {
    if (!(*spec.unlabeled_frac >= 0.0 && *spec.unlabeled_frac <= 1.0))
      throw ConfigError("unlabeled fraction must lie in [0,1]");
    if (spec.labeled_frac + *spec.unlabeled_frac > 1.0 + 1e-12)
      throw ConfigError("labeled and unlabeled fractions exceed the training remainder");
  }
  if (ds.size() == 0) throw DataError("cannot split an empty dataset");

  auto idx = shuffled_indices(ds.size(), spec.seed);
  std::size_t n_test = static_cast<std::size_t>(spec.test_frac * static_cast<double>(ds.size()));
  std::size_t n_train = ds.size() - n_test;
  std::size_t n_labeled =
      static_cast<std::size_t>(spec.labeled_frac * static_cast<double>(n_train));
  std::size_t n_unlabeled = n_train - n_labeled;
  if (spec.unlabeled_frac) {
    n_unlabeled = static_cast<std::size_t>(*spec.unlabeled_frac * static_cast<double>(n_train));
    if (n_labeled + n_unlabeled > n_train)
      throw ConfigError("labeled and unlabeled splits exceed the training remainder");
    std::size_t dropped = n_train - n_labeled - n_unlabeled;
    if (dropped > 0) warn(std::to_string(dropped) + " training rows unused by the split");
  }

  Splits out;
  std::size_t p = 0;
  for (std::size_t i = 0; i < n_test; ++i, ++p)
    out.test.push_back({ds.features[idx[p]], ds.labels[idx[p]]});
  for (std::size_t i = 0; i < n_labeled; ++i, ++p)
    out.labeled.push_back({ds.features[idx[p]], ds.labels[idx[p]]});
  for (std::size_t i = 0; i < n_unlabeled; ++i, ++p) out.unlabeled.push_back(ds.features[idx[p]]);

  if (out.labeled.empty()) warn("split produced an empty labeled pool");
  if (out.unlabeled.empty()) warn("split produced an empty unlabeled pool");
  std::vector<bool> present(ds.class_count(), false);
  for (const auto& s : out.labeled) present[static_cast<std::size_t>(s.y)] = true;
  for (std::size_t c = 0; c < present.size(); ++c)
    if (!present[c])
      warn("class '" + ds.class_names[c] + "' has no labeled samples; it cannot be predicted");
  return out;
}

void inject_label_noise(std::vector<LabeledSample>& pool, double frac, std::size_t classes,
                        std::uint64_t seed) {
  if (!(frac >= 0.0 && frac <= 1.0))
    throw ConfigError("label-noise fraction must lie in [0,1], got " + std::to_string(frac));
  if (frac == 0.0 || pool.empty()) return;
  if (classes < 2) throw ConfigError("label noise needs at least two classes");

  std::size_t k = static_cast<std::size_t>(frac * static_cast<double>(pool.size()));
  auto idx = shuffled_indices(pool.size(), derive_seed(seed, 0xfeedU));
  auto rng = make_rng(derive_seed(seed, 0xf11bU));
  std::uniform_int_distribution<std::size_t> pick(0, classes - 2);
  for (std::size_t i = 0; i < k; ++i) {
    auto& s = pool[idx[i]];
    std::size_t draw = pick(rng);
    // Uniform over the classes other than the current one.
    auto cur = static_cast<std::size_t>(s.y);
    s.y = static_cast<int>(draw >= cur ? draw + 1 : draw);
  }
}

void inject_feature_noise(std::vector<LabeledSample>& pool, double frac, double snr,
                          std::uint64_t seed) {
  if (!(frac >= 0.0 && frac <= 1.0))
    throw ConfigError("feature-noise fraction must lie in [0,1], got " + std::to_string(frac));
  if (!(snr > 0.0)) throw ConfigError("snr must be positive, got " + std::to_string(snr));
  if (frac == 0.0 || pool.empty()) return;

  std::size_t dim = pool.front().x.size();
  Vec sigma(dim, 0.0);
  for (const auto& s : pool)
    for (std::size_t i = 0; i < dim; ++i) sigma[i] += s.x[i] * s.x[i];
  for (std::size_t i = 0; i < dim; ++i)
    sigma[i] = std::sqrt(sigma[i] / static_cast<double>(pool.size()) / snr);

  std::size_t k = static_cast<std::size_t>(frac * static_cast<double>(pool.size()));
  auto idx = shuffled_indices(pool.size(), derive_seed(seed, 0xabcdU));
  auto rng = make_rng(derive_seed(seed, 0xddddU));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < k; ++i) {
    auto& s = pool[idx[i]];
    for (std::size_t f = 0; f < dim; ++f)
      s.x[f] = std::clamp(s.x[f] + sigma[f] * gauss(rng), 0.0, 1.0);
  }
}

SyntheticKind synthetic_kind_from(const std::string& name) {
  if (name == "two-gaussians" || name == "two_gaussians" || name == "gaussians")
    return SyntheticKind::two_gaussians;
  if (name == "rings") return SyntheticKind::rings;
  if (name == "xor") return SyntheticKind::xor_blobs;
  throw ConfigError("unknown synthetic dataset '" + name +
                    "' (expected two-gaussians, rings, or xor)");
}

std::string to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::two_gaussians: return "two-gaussians";
    case SyntheticKind::rings: return "rings";
    case SyntheticKind::xor_blobs: return "xor";
  }
  throw InternalError("unhandled synthetic kind");
}

Dataset make_synthetic(SyntheticKind kind, std::size_t n, double noise, std::uint64_t seed) {
  if (n < 4) throw ConfigError("synthetic datasets need at least 4 samples");
  if (!(noise >= 0.0)) throw ConfigError("synthetic noise must be nonnegative");

  Dataset ds;
  ds.name = to_string(kind);
  ds.dim = 2;
  ds.feature_names = {"x1", "x2"};
  ds.class_names = {"class_0", "class_1"};

  auto rng = make_rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);

  auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
  for (std::size_t i = 0; i < n; ++i) {
    double x = 0, y = 0;
    int cls = 0;
    switch (kind) {
      case SyntheticKind::two_gaussians: {
        cls = static_cast<int>(i % 2);
        double cx = cls == 0 ? 0.3 : 0.7;
        double cy = cls == 0 ? 0.3 : 0.7;
        x = cx + noise * g(rng);
        y = cy + noise * g(rng);
        break;
      }
      case SyntheticKind::rings: {
        cls = static_cast<int>(i % 2);
        double r = (cls == 0 ? 0.15 : 0.38) + noise * g(rng);
        double a = angle(rng);
        x = 0.5 + r * std::cos(a);
        y = 0.5 + r * std::sin(a);
        break;
      }
      case SyntheticKind::xor_blobs: {
        std::size_t blob = i % 4;  // two blobs per class, opposite corners
        cls = static_cast<int>(blob % 2);
        double cx = (blob == 0 || blob == 3) ? 0.25 : 0.75;
        double cy = (blob == 0 || blob == 1) ? 0.25 : 0.75;
        x = cx + noise * g(rng);
        y = cy + noise * g(rng);
        break;
      }
    }
    ds.features.push_back({clamp01(x), clamp01(y)});
    ds.labels.push_back(cls);
  }

  // Same contract as file loading: min-max over the generated set.
  for (std::size_t i = 0; i < 2; ++i) {
    double lo = 1.0, hi = 0.0;
    for (const auto& v : ds.features) {
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
    }
    double range = hi - lo;
    for (auto& v : ds.features) v[i] = range > 0.0 ? (v[i] - lo) / range : 0.0;
  }
  return ds;
}

}  // namespace artssl
