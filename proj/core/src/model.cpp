// Copyright 2026 The ranpredict Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ranpredict/model.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "ranpredict/error.hpp"

namespace ranpredict {

using nlohmann::json;

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLinear: return "linear";
    case ModelKind::kTree: return "tree";
    case ModelKind::kForest: return "forest";
    case ModelKind::kXgbLike: return "xgb_like";
    case ModelKind::kLgbmLike: return "lgbm_like";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind k : kAllModelKinds) {
    if (model_kind_name(k) == name) return k;
  }
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected linear, tree, forest, xgb_like or lgbm_like)");
}

ModelKind kind_of(const Model& model) {
  struct Visitor {
    ModelKind operator()(const LinearModel&) const { return ModelKind::kLinear; }
    ModelKind operator()(const TreeModel&) const { return ModelKind::kTree; }
    ModelKind operator()(const ForestModel&) const { return ModelKind::kForest; }
    ModelKind operator()(const BoostedModel& m) const {
      return m.variant == BoostVariant::kSecondOrder ? ModelKind::kXgbLike : ModelKind::kLgbmLike;
    }
  };
  return std::visit(Visitor{}, model);
}

bool is_tree_based(const Model& model) { return !std::holds_alternative<LinearModel>(model); }

std::size_t n_features(const Model& model) {
  return std::visit([](const auto& m) { return m.n_features(); }, model);
}

const std::vector<std::string>& feature_names(const Model& model) {
  return std::visit([](const auto& m) -> const std::vector<std::string>& { return m.feature_names; },
                    model);
}

TargetVector predict(const Model& model, const FeatureMatrix& x) {
  return std::visit([&](const auto& m) { return predict(m, x); }, model);
}

namespace {

constexpr const char* kFormat = "ranpredict-model";
constexpr int kVersion = 1;

json tree_to_json(const Tree& tree) {
  json feature = json::array(), threshold = json::array(), left = json::array(),
       right = json::array(), value = json::array(), samples = json::array(), gain = json::array();
  for (const auto& n : tree.nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    value.push_back(n.value);
    samples.push_back(n.n_samples);
    gain.push_back(n.gain);
  }
  return json{{"feature_index", feature}, {"threshold", threshold}, {"left_child", left},
              {"right_child", right},     {"leaf_value", value},    {"n_samples", samples},
              {"gain", gain}};
}

Tree tree_from_json(const json& j, std::size_t n_features) {
  const auto feature = j.at("feature_index").get<std::vector<int>>();
  const auto threshold = j.at("threshold").get<std::vector<double>>();
  const auto left = j.at("left_child").get<std::vector<int>>();
  const auto right = j.at("right_child").get<std::vector<int>>();
  const auto value = j.at("leaf_value").get<std::vector<double>>();
  const auto samples = j.at("n_samples").get<std::vector<std::size_t>>();
  const auto gain = j.at("gain").get<std::vector<double>>();
  const std::size_t n = feature.size();
  if (n == 0) throw DecodeError("model: tree has no nodes");
  if (threshold.size() != n || left.size() != n || right.size() != n || value.size() != n ||
      samples.size() != n || gain.size() != n) {
    throw DecodeError("model: tree node arrays differ in length");
  }
  Tree tree;
  tree.nodes.resize(n);
  std::vector<int> parents(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& node = tree.nodes[i];
    node.feature = feature[i];
    node.threshold = threshold[i];
    node.left = left[i];
    node.right = right[i];
    node.value = value[i];
    node.n_samples = samples[i];
    node.gain = gain[i];
    if (!std::isfinite(node.threshold) || !std::isfinite(node.value) || !std::isfinite(node.gain)) {
      throw DecodeError("model: non-finite tree entry at node " + std::to_string(i));
    }
    if (node.feature < 0) {
      if (node.feature != -1 || node.left != -1 || node.right != -1) {
        throw DecodeError("model: malformed leaf at node " + std::to_string(i));
      }
      continue;
    }
    if (static_cast<std::size_t>(node.feature) >= n_features) {
      throw DecodeError("model: feature index out of range at node " + std::to_string(i));
    }
    // Children after the parent rules out cycles.
    const auto in_range = [&](int c) {
      return c > static_cast<int>(i) && static_cast<std::size_t>(c) < n;
    };
    if (!in_range(node.left) || !in_range(node.right) || node.left == node.right) {
      throw DecodeError("model: bad child index at node " + std::to_string(i));
    }
    ++parents[static_cast<std::size_t>(node.left)];
    ++parents[static_cast<std::size_t>(node.right)];
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (parents[i] != 1) throw DecodeError("model: node " + std::to_string(i) + " is not reachable exactly once");
  }
  return tree;
}

json tree_params_json(const TreeParams& p) {
  return {{"max_depth", p.max_depth}, {"min_samples_leaf", p.min_samples_leaf}};
}

json base_score_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> base_score_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

struct Encoder {
  json& out;

  void operator()(const LinearModel& m) const {
    out["weights"] = m.weights;
    out["intercept"] = m.intercept;
    out["params"] = json::object();
  }
  void operator()(const TreeModel& m) const {
    out["params"] = tree_params_json(m.params);
    out["tree"] = tree_to_json(m.tree);
  }
  void operator()(const ForestModel& m) const {
    const auto& p = m.params;
    out["params"] = {{"n_trees", p.n_trees},
                     {"max_depth", p.max_depth},
                     {"min_samples_leaf", p.min_samples_leaf},
                     {"feature_fraction", p.feature_fraction},
                     {"bootstrap", p.bootstrap},
                     {"seed", p.seed}};
    json trees = json::array();
    for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
    out["trees"] = std::move(trees);
  }
  void operator()(const BoostedModel& m) const {
    if (const auto* p = std::get_if<SecondOrderParams>(&m.params)) {
      out["params"] = {{"n_rounds", p->n_rounds},
                       {"learning_rate", p->learning_rate},
                       {"lambda", p->lambda},
                       {"max_depth", p->max_depth},
                       {"min_samples_leaf", p->min_samples_leaf},
                       {"base_score", base_score_json(p->base_score)}};
    } else {
      const auto& q = std::get<LeafwiseParams>(m.params);
      out["params"] = {{"n_rounds", q.n_rounds},
                       {"learning_rate", q.learning_rate},
                       {"lambda", q.lambda},
                       {"num_leaves", q.num_leaves},
                       {"n_bins", q.n_bins},
                       {"min_samples_leaf", q.min_samples_leaf},
                       {"max_depth", q.max_depth},
                       {"base_score", base_score_json(q.base_score)}};
    }
    out["base_score"] = m.base_score;
    out["learning_rate"] = m.learning_rate;
    json trees = json::array();
    for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
    out["trees"] = std::move(trees);
  }
};

Model decode(const json& j) {
  if (!j.is_object()) throw DecodeError("model: payload is not a JSON object");
  if (j.at("format").get<std::string>() != kFormat) throw DecodeError("model: unexpected format tag");
  const int version = j.at("version").get<int>();
  if (version != kVersion) throw DecodeError("model: unsupported version " + std::to_string(version));

  ModelKind kind{};
  try {
    kind = parse_model_kind(j.at("kind").get<std::string>());
  } catch (const ConfigError& e) {
    throw DecodeError(std::string("model: ") + e.what());
  }
  auto names = j.at("feature_names").get<std::vector<std::string>>();
  const std::size_t p = names.size();
  const json& params = j.at("params");

  switch (kind) {
    case ModelKind::kLinear: {
      LinearModel m;
      m.weights = j.at("weights").get<std::vector<double>>();
      m.intercept = j.at("intercept").get<double>();
      m.feature_names = std::move(names);
      if (m.weights.size() != p) throw DecodeError("model: weight count differs from feature count");
      return m;
    }
    case ModelKind::kTree: {
      TreeModel m;
      m.params.max_depth = params.at("max_depth").get<int>();
      m.params.min_samples_leaf = params.at("min_samples_leaf").get<std::size_t>();
      m.tree = tree_from_json(j.at("tree"), p);
      m.feature_names = std::move(names);
      return m;
    }
    case ModelKind::kForest: {
      ForestModel m;
      m.params.n_trees = params.at("n_trees").get<std::size_t>();
      m.params.max_depth = params.at("max_depth").get<int>();
      m.params.min_samples_leaf = params.at("min_samples_leaf").get<std::size_t>();
      m.params.feature_fraction = params.at("feature_fraction").get<double>();
      m.params.bootstrap = params.at("bootstrap").get<bool>();
      m.params.seed = params.at("seed").get<std::uint64_t>();
      for (const auto& t : j.at("trees")) m.trees.push_back(tree_from_json(t, p));
      if (m.trees.empty() || m.trees.size() != m.params.n_trees) {
        throw DecodeError("model: forest tree count differs from n_trees");
      }
      m.feature_names = std::move(names);
      return m;
    }
    case ModelKind::kXgbLike:
    case ModelKind::kLgbmLike: {
      BoostedModel m;
      std::size_t n_rounds = 0;
      if (kind == ModelKind::kXgbLike) {
        SecondOrderParams q;
        q.n_rounds = params.at("n_rounds").get<std::size_t>();
        q.learning_rate = params.at("learning_rate").get<double>();
        q.lambda = params.at("lambda").get<double>();
        q.max_depth = params.at("max_depth").get<int>();
        q.min_samples_leaf = params.at("min_samples_leaf").get<std::size_t>();
        q.base_score = base_score_from(params.at("base_score"));
        n_rounds = q.n_rounds;
        m.variant = BoostVariant::kSecondOrder;
        m.params = q;
      } else {
        LeafwiseParams q;
        q.n_rounds = params.at("n_rounds").get<std::size_t>();
        q.learning_rate = params.at("learning_rate").get<double>();
        q.lambda = params.at("lambda").get<double>();
        q.num_leaves = params.at("num_leaves").get<std::size_t>();
        q.n_bins = params.at("n_bins").get<std::size_t>();
        q.min_samples_leaf = params.at("min_samples_leaf").get<std::size_t>();
        q.max_depth = params.at("max_depth").get<int>();
        q.base_score = base_score_from(params.at("base_score"));
        n_rounds = q.n_rounds;
        m.variant = BoostVariant::kHistogramLeafwise;
        m.params = q;
      }
      m.base_score = j.at("base_score").get<double>();
      m.learning_rate = j.at("learning_rate").get<double>();
      if (!(m.learning_rate > 0.0 && m.learning_rate <= 1.0) || !std::isfinite(m.base_score)) {
        throw DecodeError("model: invalid boosting scalars");
      }
      for (const auto& t : j.at("trees")) m.trees.push_back(tree_from_json(t, p));
      if (m.trees.size() > n_rounds) throw DecodeError("model: more trees than n_rounds");
      m.feature_names = std::move(names);
      return m;
    }
  }
  throw DecodeError("model: unhandled kind");
}

}  // namespace

std::string serialize_model(const Model& model) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = std::string(model_kind_name(kind_of(model)));
  j["feature_names"] = feature_names(model);
  std::visit(Encoder{j}, model);
  return j.dump() + "\n";
}

Model deserialize_model(std::string_view payload) {
  try {
    return decode(json::parse(payload));
  } catch (const json::exception& e) {
    throw DecodeError(std::string("model: ") + e.what());
  }
}

}  // namespace ranpredict
