#include "queuerl/io/hyperparams.hpp"

#include <cmath>

#include "queuerl/errors.hpp"
#include "queuerl/io/yaml_util.hpp"

namespace queuerl {

namespace {

using yaml_util::as;
using yaml_util::where;

FieldSpec parse_field_spec(const YAML::Node& node, const std::string& name) {
  if (node.IsSequence()) {
    ChoiceSpec choices;
    for (const YAML::Node& c : node) choices.push_back(as<double>(c, name, "a number"));
    return choices;
  }
  if (node["choices"]) {
    if (node.size() != 1) throw ParseError(where(node, name) + ": a choice spec takes only 'choices'");
    return parse_field_spec(node["choices"], name);
  }
  RangeSpec range;
  for (const auto& kv : node) {
    const std::string key = kv.first.Scalar();
    if (key != "low" && key != "high" && key != "scale") {
      throw ParseError(where(kv.first, name + "." + key) + ": expected low, high, scale or choices");
    }
  }
  range.low = as<double>(node["low"], name + ".low", "a number");
  range.high = as<double>(node["high"], name + ".high", "a number");
  if (node["scale"]) {
    const std::string scale = as<std::string>(node["scale"], name + ".scale", "linear or log");
    if (scale == "log") {
      range.scale = RangeScale::kLog;
    } else if (scale != "linear") {
      throw ParseError(where(node["scale"], name + ".scale") + ": expected linear or log, got '" + scale + "'");
    }
  }
  return range;
}

}  // namespace

EnvOptions HyperparamFile::env_options() const {
  EnvOptions options;
  options.events_per_step = events_per_step;
  options.reward_skip = static_cast<std::size_t>(reward_skip);
  return options;
}

HyperparamFile parse_hyperparams_string(const std::string& text) {
  const YAML::Node root = yaml_util::load_mapping(text, "hyperparameter file");
  HyperparamFile out;
  SearchSpace space;
  bool has_trials = false;

  for (const auto& kv : root) {
    const std::string key = kv.first.Scalar();
    const YAML::Node& value = kv.second;
    if (key == "seed") {
      out.params.seed = as<unsigned long long>(value, key, "a non-negative integer");
    } else if (key == "hidden_layers") {
      if (!value.IsSequence()) throw ParseError(where(value, key) + ": expected a list of layer sizes");
      out.params.hidden_layers.clear();
      for (const YAML::Node& h : value) out.params.hidden_layers.push_back(as<int>(h, key, "an integer"));
    } else if (key == "state_transform") {
      out.params.state_transform = state_transform_from_string(as<std::string>(value, key, "identity or log1p"));
    } else if (key == "reward_transform") {
      out.params.reward_transform = reward_transform_from_string(as<std::string>(value, key, "identity or symlog"));
    } else if (key == "events_per_step") {
      out.events_per_step = as<long long>(value, key, "an integer");
    } else if (key == "reward_skip") {
      out.reward_skip = as<long long>(value, key, "an integer");
    } else if (key == "trials") {
      space.trials = as<int>(value, key, "an integer");
      has_trials = true;
    } else if (const NumericField* field = find_numeric_field(key)) {
      if (value.IsScalar()) {
        const double v = field->integer ? static_cast<double>(as<long long>(value, key, "an integer"))
                                        : as<double>(value, key, "a number");
        field->set(out.params, v);
      } else if (value.IsSequence() || value.IsMap()) {
        space.fields[key] = parse_field_spec(value, key);
      } else {
        throw ParseError(where(value, key) + ": missing value");
      }
    } else {
      throw ParseError(where(kv.first, key) + ": unknown hyperparameter");
    }
  }

  out.params.validate();
  if (out.events_per_step < 1) throw ConfigError("events_per_step must be >= 1");
  if (out.reward_skip < 0) throw ConfigError("reward_skip must be >= 0");
  if (!space.fields.empty()) {
    space.validate();
    out.search_space = std::move(space);
  } else if (has_trials && space.trials < 1) {
    throw ConfigError("search space trials must be >= 1");
  }
  return out;
}

HyperparamFile parse_hyperparams(const std::filesystem::path& path) {
  return parse_hyperparams_string(yaml_util::read_text(path, "hyperparameter file"));
}

}  // namespace queuerl
