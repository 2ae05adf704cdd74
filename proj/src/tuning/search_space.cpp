#include "queuerl/tuning/search_space.hpp"

#include <cmath>

#include "queuerl/errors.hpp"

namespace queuerl {

#define QUEUERL_FIELD(field, is_int)                                                             \
  NumericField {                                                                                 \
    #field, is_int, [](const AgentParams& p) { return static_cast<double>(p.field); },            \
        [](AgentParams& p, double v) { p.field = static_cast<decltype(p.field)>(v); }             \
  }

const std::vector<NumericField>& agent_numeric_fields() {
  static const std::vector<NumericField> fields{
      QUEUERL_FIELD(learning_rate, false),
      QUEUERL_FIELD(num_epochs, true),
      QUEUERL_FIELD(batch_size, true),
      QUEUERL_FIELD(planning_steps, true),
      QUEUERL_FIELD(num_samples, true),
      QUEUERL_FIELD(num_episodes, true),
      QUEUERL_FIELD(num_timesteps, true),
      QUEUERL_FIELD(target_update_frequency, true),
      QUEUERL_FIELD(tau, false),
      QUEUERL_FIELD(gamma, false),
      QUEUERL_FIELD(epsilon, false),
      QUEUERL_FIELD(action_logit_penalty, false),
      QUEUERL_FIELD(w1, false),
      QUEUERL_FIELD(w2, false),
      QUEUERL_FIELD(buffer_capacity, true),
  };
  return fields;
}

#undef QUEUERL_FIELD

const NumericField* find_numeric_field(const std::string& name) {
  for (const NumericField& f : agent_numeric_fields()) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

void SearchSpace::validate() const {
  if (trials < 1) throw ConfigError("search space trials must be >= 1");
  for (const auto& [name, spec] : fields) {
    if (!find_numeric_field(name)) throw ConfigError("search space names unknown hyperparameter '" + name + "'");
    if (const auto* choices = std::get_if<ChoiceSpec>(&spec)) {
      if (choices->empty()) throw ConfigError("choice list for '" + name + "' is empty");
      continue;
    }
    const auto& range = std::get<RangeSpec>(spec);
    if (!(range.low < range.high)) throw ConfigError("range for '" + name + "' needs low < high");
    if (range.scale == RangeScale::kLog && !(range.low > 0.0)) {
      throw ConfigError("log range for '" + name + "' needs low > 0");
    }
  }
}

double sample_field(const FieldSpec& spec, std::mt19937_64& rng) {
  if (const auto* choices = std::get_if<ChoiceSpec>(&spec)) {
    std::uniform_int_distribution<std::size_t> pick(0, choices->size() - 1);
    return (*choices)[pick(rng)];
  }
  const auto& range = std::get<RangeSpec>(spec);
  if (range.scale == RangeScale::kLog) {
    std::uniform_real_distribution<double> u(std::log(range.low), std::log(range.high));
    return std::exp(u(rng));
  }
  std::uniform_real_distribution<double> u(range.low, range.high);
  return u(rng);
}

AgentParams SearchSpace::sample(const AgentParams& base, std::mt19937_64& rng) const {
  AgentParams p = base;
  for (const auto& [name, spec] : fields) {
    const NumericField* field = find_numeric_field(name);
    double v = sample_field(spec, rng);
    if (field->integer) v = std::round(v);
    field->set(p, v);
  }
  return p;
}

std::string to_string(RangeScale s) { return s == RangeScale::kLog ? "log" : "linear"; }

}  // namespace queuerl
