#include "dtn/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dtn::fuzzy {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Standard uniform partition for 3-term input variables.
FuzzyVariable input3(const std::string& name, const std::string& lo,
                     const std::string& mid, const std::string& hi) {
  return {name,
          {{lo, {0.0, 0.0, 0.5}}, {mid, {0.0, 0.5, 1.0}}, {hi, {0.5, 1.0, 1.0}}}};
}

// Output terms: symmetric triangles of half-width 0.25 around evenly
// spaced centers, breakpoints clipped to [0,1].
Triangle out_term(double center) {
  return {clamp01(center - 0.25), center, clamp01(center + 0.25)};
}

FuzzyVariable output3(const std::string& name, const std::string& t0,
                      const std::string& t1, const std::string& t2) {
  return {name,
          {{t0, out_term(1.0 / 6.0)}, {t1, out_term(0.5)}, {t2, out_term(5.0 / 6.0)}}};
}

FuzzyVariable output4(const std::string& name, const std::string& t0,
                      const std::string& t1, const std::string& t2,
                      const std::string& t3) {
  return {name,
          {{t0, out_term(0.125)},
           {t1, out_term(0.375)},
           {t2, out_term(0.625)},
           {t3, out_term(0.875)}}};
}

std::vector<Rule> make_rules(const RuleBase& rb,
                             const std::vector<std::array<const char*, 3>>& rows) {
  std::vector<Rule> rules;
  rules.reserve(rows.size());
  for (const auto& row : rows) {
    rules.push_back({rb.in1.term_index(row[0]), rb.in2.term_index(row[1]),
                     rb.out.term_index(row[2])});
  }
  return rules;
}

RuleBase build_flc1() {
  RuleBase rb;
  rb.in1 = input3("buffer_free", "Low", "Medium", "High");
  rb.in2 = input3("battery", "Low", "Medium", "High");
  rb.out = output4("node_ability", "VeryBad", "Bad", "Good", "Perfect");
  rb.rules = make_rules(rb, {
                                {"High", "High", "Perfect"},
                                {"High", "Medium", "Perfect"},
                                {"High", "Low", "Bad"},
                                {"Medium", "High", "Perfect"},
                                {"Medium", "Medium", "Good"},
                                {"Medium", "Low", "Bad"},
                                {"Low", "High", "Good"},
                                {"Low", "Medium", "Bad"},
                                {"Low", "Low", "VeryBad"},
                            });
  return rb;
}

RuleBase build_flc2() {
  RuleBase rb;
  rb.in1 = input3("popularity", "Slow", "Medium", "Fast");
  rb.in2 = input3("tie_strength", "Poor", "Fair", "Good");
  rb.out = output3("social_importance", "Bad", "Good", "Perfect");
  rb.rules = make_rules(rb, {
                                {"Fast", "Good", "Perfect"},
                                {"Fast", "Fair", "Good"},
                                {"Fast", "Poor", "Good"},
                                {"Medium", "Good", "Good"},
                                {"Medium", "Fair", "Good"},
                                {"Medium", "Poor", "Bad"},
                                {"Slow", "Good", "Good"},
                                {"Slow", "Fair", "Bad"},
                                {"Slow", "Poor", "Bad"},
                            });
  return rb;
}

RuleBase build_flc3() {
  RuleBase rb;
  rb.in1 = input3("ttl_remaining", "Small", "Medium", "Large");
  rb.in2 = input3("hop_count", "Small", "Medium", "Large");
  rb.out = output4("message_priority", "Low", "Normal", "High", "Urgent");
  rb.rules = make_rules(rb, {
                                {"Large", "Large", "Normal"},
                                {"Large", "Medium", "Normal"},
                                {"Large", "Small", "Low"},
                                {"Medium", "Large", "Normal"},
                                {"Medium", "Medium", "Normal"},
                                {"Medium", "Small", "Low"},
                                {"Small", "Large", "Urgent"},
                                {"Small", "Medium", "Urgent"},
                                {"Small", "Small", "High"},
                            });
  return rb;
}

RuleBase build_flc4() {
  RuleBase rb;
  rb.in1 = input3("node_ability", "Bad", "Good", "Perfect");
  rb.in2 = input3("social_importance", "Bad", "Good", "Perfect");
  rb.out = output4("transfer_opportunity", "Low", "Medium", "High", "VeryHigh");
  rb.rules = make_rules(rb, {
                                {"Perfect", "Perfect", "VeryHigh"},
                                {"Perfect", "Good", "VeryHigh"},
                                {"Perfect", "Bad", "Medium"},
                                {"Good", "Perfect", "High"},
                                {"Good", "Good", "High"},
                                {"Good", "Bad", "Low"},
                                {"Bad", "Perfect", "Medium"},
                                {"Bad", "Good", "Low"},
                                {"Bad", "Bad", "Low"},
                            });
  return rb;
}

}  // namespace

int FuzzyVariable::term_index(const std::string& label) const {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].first == label) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown term label: " + label);
}

std::vector<std::pair<std::string, double>> fuzzify(double x, const FuzzyVariable& var) {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(var.terms.size());
  for (const auto& [label, mf] : var.terms) {
    out.emplace_back(label, mf.membership(x));
  }
  return out;
}

FuzzyOutputSet infer(const RuleBase& rb, double in1, double in2) {
  // Per-consequent clip level: max rule strength over rules sharing the term.
  std::vector<double> level(rb.out.terms.size(), 0.0);
  for (const Rule& r : rb.rules) {
    const double strength = std::min(rb.in1.terms[r.in1_term].second.membership(in1),
                                     rb.in2.terms[r.in2_term].second.membership(in2));
    level[r.out_term] = std::max(level[r.out_term], strength);
  }

  FuzzyOutputSet set;
  for (int i = 0; i < kCogSamples; ++i) {
    const double x = static_cast<double>(i) / (kCogSamples - 1);
    double mu = 0.0;
    for (std::size_t t = 0; t < level.size(); ++t) {
      mu = std::max(mu, std::min(level[t], rb.out.terms[t].second.membership(x)));
    }
    set.mu[i] = mu;
  }
  return set;
}

double defuzzify_cog(const FuzzyOutputSet& set) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < kCogSamples; ++i) {
    const double x = static_cast<double>(i) / (kCogSamples - 1);
    num += x * set.mu[i];
    den += set.mu[i];
  }
  if (den == 0.0) throw DegenerateSet{};
  return num / den;
}

const RuleBase& flc1_rulebase() {
  static const RuleBase rb = build_flc1();
  return rb;
}
const RuleBase& flc2_rulebase() {
  static const RuleBase rb = build_flc2();
  return rb;
}
const RuleBase& flc3_rulebase() {
  static const RuleBase rb = build_flc3();
  return rb;
}
const RuleBase& flc4_rulebase() {
  static const RuleBase rb = build_flc4();
  return rb;
}

double eval_flc1(double buffer_free, double battery) {
  return defuzzify_cog(infer(flc1_rulebase(), clamp01(buffer_free), clamp01(battery)));
}
double eval_flc2(double popularity, double tie_strength) {
  return defuzzify_cog(infer(flc2_rulebase(), clamp01(popularity), clamp01(tie_strength)));
}
double eval_flc3(double ttl_remaining, double hop_count) {
  return defuzzify_cog(infer(flc3_rulebase(), clamp01(ttl_remaining), clamp01(hop_count)));
}
double eval_flc4(double node_ability, double social_importance) {
  return defuzzify_cog(
      infer(flc4_rulebase(), clamp01(node_ability), clamp01(social_importance)));
}

CachedFlc::CachedFlc(const RuleBase& rb)
    : rb_(&rb),
      grid_(static_cast<std::size_t>(kCogSamples) * kCogSamples,
            std::numeric_limits<double>::quiet_NaN()) {}

double CachedFlc::eval(double in1, double in2) {
  const int i = static_cast<int>(std::lround(clamp01(in1) * (kCogSamples - 1)));
  const int j = static_cast<int>(std::lround(clamp01(in2) * (kCogSamples - 1)));
  double& cell = grid_[static_cast<std::size_t>(i) * kCogSamples + j];
  if (std::isnan(cell)) {
    const double x = static_cast<double>(i) / (kCogSamples - 1);
    const double y = static_cast<double>(j) / (kCogSamples - 1);
    cell = defuzzify_cog(infer(*rb_, x, y));
  }
  return cell;
}

}  // namespace dtn::fuzzy
