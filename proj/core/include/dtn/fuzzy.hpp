#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtn::fuzzy {

inline constexpr int kCogSamples = 201;

// Triangular membership function on the normalized [0,1] axis.
// Shoulders are expressed by a==b or b==c.
struct Triangle {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double membership(double x) const {
    if (x < a || x > c) return 0.0;
    if (x < b) return (x - a) / (b - a);
    if (x > b) return (c - x) / (c - b);
    return 1.0;
  }
};

struct FuzzyVariable {
  std::string name;
  std::vector<std::pair<std::string, Triangle>> terms;

  int term_index(const std::string& label) const;
};

// One rule: antecedent term index per input, consequent term index.
struct Rule {
  int in1_term;
  int in2_term;
  int out_term;
};

struct RuleBase {
  FuzzyVariable in1;
  FuzzyVariable in2;
  FuzzyVariable out;
  std::vector<Rule> rules;
};

// Aggregate output set sampled on kCogSamples evenly spaced points of [0,1].
struct FuzzyOutputSet {
  std::array<double, kCogSamples> mu{};
};

struct DegenerateSet : std::runtime_error {
  DegenerateSet() : std::runtime_error("fuzzy output set is all-zero") {}
};

std::vector<std::pair<std::string, double>> fuzzify(double x, const FuzzyVariable& var);

// Mamdani: min-implication, max-aggregation.
FuzzyOutputSet infer(const RuleBase& rb, double in1, double in2);

// Center of gravity over the sampled set. Throws DegenerateSet on an
// all-zero set.
double defuzzify_cog(const FuzzyOutputSet& set);

// The four controllers. Inputs must already be normalized to [0,1].
double eval_flc1(double buffer_free, double battery);
double eval_flc2(double popularity, double tie_strength);
double eval_flc3(double ttl_remaining, double hop_count);
double eval_flc4(double node_ability, double social_importance);

const RuleBase& flc1_rulebase();
const RuleBase& flc2_rulebase();
const RuleBase& flc3_rulebase();
const RuleBase& flc4_rulebase();

// Crisp evaluation memoized on the kCogSamples input grid; the engine
// quantizes its inputs through this to keep per-event cost flat.
class CachedFlc {
 public:
  explicit CachedFlc(const RuleBase& rb);
  double eval(double in1, double in2);

 private:
  const RuleBase* rb_;
  std::vector<double> grid_;  // NaN = not yet computed
};

}  // namespace dtn::fuzzy
