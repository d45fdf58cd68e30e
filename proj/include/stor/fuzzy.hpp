#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stor/social_graph.hpp"

namespace stor {

// Input-independent fuzzy model: a quantitative aggregate E in [0,1] takes a
// membership grade in the input set chosen by each qualitative attribute, the
// grade truncates that attribute's output set, and the union of truncated
// sets is defuzzified by density-weighted centre of mass.
//
// Input classes p: 1 POSITIVE, 2 NEUTRAL, 3 NEGATIVE.
// Output classes q: 1 LARGEST, 2 LARGE, 3 NORMAL, 4 SMALL, 5 SMALLEST.

inline constexpr int kInputClasses = 3;
inline constexpr int kOutputClasses = 5;

/// One of the five admissible (input class -> output class) rule families.
enum class Rule {
    PositiveToLargest,   // token 1i
    PositiveToLarge,     // token 1ii
    NeutralToNormal,     // token 2
    NegativeToSmall,     // token 3i
    NegativeToSmallest,  // token 3ii
};

inline constexpr Rule kAllRules[] = {Rule::PositiveToLargest, Rule::PositiveToLarge, Rule::NeutralToNormal,
                                     Rule::NegativeToSmall, Rule::NegativeToSmallest};

/// Short tags used in rule-set files: 1i, 1ii, 2, 3i, 3ii.
std::string_view rule_tag(Rule rule);
Rule parse_rule_tag(std::string_view tag);
int input_class(Rule rule);
int output_class(Rule rule);

/// Continuous piecewise-linear function given by its knots, zero outside them.
class MembershipFunction {
public:
    struct Knot {
        double x;
        double y;
    };

    explicit MembershipFunction(std::vector<Knot> knots);

    double operator()(double x) const;
    /// Exact integral over the support (trapezoids between knots).
    double area() const;
    double support_min() const { return knots_.front().x; }
    double support_max() const { return knots_.back().x; }
    std::span<const Knot> knots() const { return knots_; }

private:
    std::vector<Knot> knots_;
};

const MembershipFunction& input_membership(int p);
const MembershipFunction& output_membership(int q);

/// Density constant rho_q balancing the output sets' masses.
double output_density(int q);

double eval_input_membership(int p, double e);
double eval_output_membership(int q, double tv);

/// Integral of rho_q * mu_O_q over [0,1]; 1/4 for every q.
double output_mass(int q);

/// Density-weighted first moment (MP) and mass (M) of a truncated output set.
struct TruncatedMass {
    double moment{};
    double mass{};
};

/// Closed-form (MP, M) of `rule`'s output set truncated at its input grade for E.
TruncatedMass truncated_mass(Rule rule, double e);

/// Centre of mass of the union of the rules' truncated outputs at E.
/// When every mass vanishes, returns the limit of the ratio at that endpoint.
double defuzzify(std::span<const Rule> rules, double e);

struct QualitativeAssignment {
    std::string attribute;
    QualitativeClass value;
};

struct QuantitativeAttribute {
    std::string name;
    double raw{};
    double weight{};
};

using QuantitativeInput = std::vector<QuantitativeAttribute>;

/// Per-attribute fuzzy rule choice: which strength POSITIVE and NEGATIVE map to.
struct AttributeRules {
    Rule positive{Rule::PositiveToLarge};
    Rule negative{Rule::NegativeToSmall};
    std::vector<std::string> labels;  // optional human-readable POSITIVE/NEUTRAL/NEGATIVE names

    Rule rule_for(QualitativeClass c) const;
};

/// Declarative rule table plus the quantitative attribute weights.
class FuzzyRuleSet {
public:
    void set_attribute(const std::string& name, AttributeRules rules);
    void set_weight(const std::string& name, double weight);

    const AttributeRules& attribute(const std::string& name) const;
    bool has_attribute(const std::string& name) const { return attributes_.contains(name); }
    const std::map<std::string, AttributeRules>& attributes() const noexcept { return attributes_; }
    const std::map<std::string, double>& weights() const noexcept { return weights_; }

    /// Throws WeightSumViolation unless the weights sum to 1 within 1e-12.
    void validate() const;

    /// Major (1ii/3i) and Relationship (1i/3ii) with freq/time weighted 0.5 each.
    static FuzzyRuleSet worked_example();

private:
    std::map<std::string, AttributeRules> attributes_;
    std::map<std::string, double> weights_;
};

/// Weighted sum of normalized quantitative values.
double aggregate_quantitative(const QuantitativeInput& input, const std::map<std::string, double>& normalizers);

double defuzzify(std::span<const QualitativeAssignment> assignments, const FuzzyRuleSet& rules, double e);

/// Trust value of one link; normalizers are the per-attribute maxima over the
/// source's direct friends in the link's network.
double link_trust(const FriendLink& link, const std::map<std::string, double>& normalizers, const FuzzyRuleSet& rules);

/// Per-(source, network) quantitative maxima, then link_trust on every link.
void assign_trust_values(SocialGraph& graph, const FuzzyRuleSet& rules);

}  // namespace stor
