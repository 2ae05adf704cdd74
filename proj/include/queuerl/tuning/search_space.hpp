#pragma once

#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "queuerl/agent/params.hpp"

namespace queuerl {

// A numeric AgentParams field addressable by name. Integer fields round
// sampled values to the nearest integer.
struct NumericField {
  const char* name;
  bool integer;
  double (*get)(const AgentParams&);
  void (*set)(AgentParams&, double);
};

const std::vector<NumericField>& agent_numeric_fields();
const NumericField* find_numeric_field(const std::string& name);

enum class RangeScale { kLinear, kLog };

struct RangeSpec {
  double low = 0.0;
  double high = 1.0;
  RangeScale scale = RangeScale::kLinear;
  friend bool operator==(const RangeSpec&, const RangeSpec&) = default;
};

using ChoiceSpec = std::vector<double>;
using FieldSpec = std::variant<ChoiceSpec, RangeSpec>;

struct SearchSpace {
  std::map<std::string, FieldSpec> fields;
  int trials = 10;

  // Throws ConfigError on unknown fields, empty choice lists, low >= high,
  // non-positive log bounds or trials < 1.
  void validate() const;

  // One draw per field, in field-name order, applied over `base`.
  AgentParams sample(const AgentParams& base, std::mt19937_64& rng) const;

  friend bool operator==(const SearchSpace&, const SearchSpace&) = default;
};

// Raw draw from a single field spec (before integer rounding).
double sample_field(const FieldSpec& spec, std::mt19937_64& rng);

std::string to_string(RangeScale s);

}  // namespace queuerl
