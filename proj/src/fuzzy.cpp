#include "stor/fuzzy.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "stor/errors.hpp"

namespace stor {

namespace {

constexpr double kSumTolerance = 1e-12;

void require_unit(double x, const char* what)
{
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::DomainViolation, std::string(what) + " outside [0,1]");
}

void require_class(int c, int count, const char* what)
{
    if (c < 1 || c > count) throw Error(ErrorCode::DomainViolation, std::string(what) + " class out of range");
}

// Slopes of (MP, M) as the input grade leaves zero, used for the 0/0 limit.
struct EndpointSlope {
    double moment;
    double mass;
};

EndpointSlope vanishing_slope(Rule rule)
{
    switch (rule) {
    case Rule::PositiveToLargest: return {21.0 / 48.0, 0.5};
    case Rule::PositiveToLarge: return {3.0 / 8.0, 0.5};
    case Rule::NeutralToNormal: return {0.25, 0.5};
    case Rule::NegativeToSmall: return {1.0 / 8.0, 0.5};
    case Rule::NegativeToSmallest: return {1.0 / 16.0, 0.5};
    }
    return {0.0, 0.0};
}

}  // namespace

std::string_view rule_tag(Rule rule)
{
    switch (rule) {
    case Rule::PositiveToLargest: return "1i";
    case Rule::PositiveToLarge: return "1ii";
    case Rule::NeutralToNormal: return "2";
    case Rule::NegativeToSmall: return "3i";
    case Rule::NegativeToSmallest: return "3ii";
    }
    return "?";
}

Rule parse_rule_tag(std::string_view tag)
{
    for (Rule r : kAllRules)
        if (rule_tag(r) == tag) return r;
    throw Error(ErrorCode::UnknownRule, "unknown rule '" + std::string(tag) + "'");
}

int input_class(Rule rule)
{
    switch (rule) {
    case Rule::PositiveToLargest:
    case Rule::PositiveToLarge: return 1;
    case Rule::NeutralToNormal: return 2;
    case Rule::NegativeToSmall:
    case Rule::NegativeToSmallest: return 3;
    }
    return 0;
}

int output_class(Rule rule)
{
    switch (rule) {
    case Rule::PositiveToLargest: return 1;
    case Rule::PositiveToLarge: return 2;
    case Rule::NeutralToNormal: return 3;
    case Rule::NegativeToSmall: return 4;
    case Rule::NegativeToSmallest: return 5;
    }
    return 0;
}

MembershipFunction::MembershipFunction(std::vector<Knot> knots) : knots_(std::move(knots))
{
    if (knots_.size() < 2) throw Error(ErrorCode::DomainViolation, "membership function needs two knots");
    for (std::size_t i = 1; i < knots_.size(); ++i)
        if (!(knots_[i].x > knots_[i - 1].x)) throw Error(ErrorCode::DomainViolation, "knots must increase");
}

double MembershipFunction::operator()(double x) const
{
    if (x < knots_.front().x || x > knots_.back().x) return 0.0;
    auto hi = std::upper_bound(knots_.begin(), knots_.end(), x, [](double v, const Knot& k) { return v < k.x; });
    if (hi == knots_.end()) return knots_.back().y;
    auto lo = hi - 1;
    const double t = (x - lo->x) / (hi->x - lo->x);
    return lo->y + t * (hi->y - lo->y);
}

double MembershipFunction::area() const
{
    double sum = 0.0;
    for (std::size_t i = 1; i < knots_.size(); ++i)
        sum += 0.5 * (knots_[i].y + knots_[i - 1].y) * (knots_[i].x - knots_[i - 1].x);
    return sum;
}

const MembershipFunction& input_membership(int p)
{
    require_class(p, kInputClasses, "input");
    static const std::array<MembershipFunction, kInputClasses> sets{
        MembershipFunction({{0.0, 0.0}, {1.0, 1.0}}),
        MembershipFunction({{0.0, 0.0}, {0.5, 0.5}, {1.0, 0.0}}),
        MembershipFunction({{0.0, 1.0}, {1.0, 0.0}}),
    };
    return sets[static_cast<std::size_t>(p - 1)];
}

const MembershipFunction& output_membership(int q)
{
    require_class(q, kOutputClasses, "output");
    static const std::array<MembershipFunction, kOutputClasses> sets{
        MembershipFunction({{0.75, 0.0}, {1.0, 1.0}}),
        MembershipFunction({{0.5, 0.0}, {0.75, 1.0}, {1.0, 0.0}}),
        MembershipFunction({{0.25, 0.0}, {0.5, 1.0}, {0.75, 0.0}}),
        MembershipFunction({{0.0, 0.0}, {0.25, 1.0}, {0.5, 0.0}}),
        MembershipFunction({{0.0, 1.0}, {0.25, 0.0}}),
    };
    return sets[static_cast<std::size_t>(q - 1)];
}

double output_density(int q)
{
    require_class(q, kOutputClasses, "output");
    return (q == 1 || q == 5) ? 2.0 : 1.0;
}

double eval_input_membership(int p, double e)
{
    require_unit(e, "E");
    return input_membership(p)(e);
}

double eval_output_membership(int q, double tv)
{
    require_unit(tv, "tv");
    return output_membership(q)(tv);
}

double output_mass(int q)
{
    return output_density(q) * output_membership(q).area();
}

TruncatedMass truncated_mass(Rule rule, double e)
{
    require_unit(e, "E");
    const double rise = 2.0 * e - e * e;  // -(E^2 - 2E)
    const double fall = 1.0 - e * e;      // -(E^2 - 1)
    switch (rule) {
    case Rule::PositiveToLargest: return {(21.0 * e - 9.0 * e * e - e * e * e) / 48.0, rise / 4.0};
    case Rule::PositiveToLarge: return {3.0 * rise / 16.0, rise / 4.0};
    case Rule::NeutralToNormal:
        if (e <= 0.5) return {rise / 8.0, rise / 4.0};
        return {fall / 8.0, fall / 4.0};
    case Rule::NegativeToSmall: return {fall / 16.0, fall / 4.0};
    case Rule::NegativeToSmallest: return {(1.0 - e * e * e) / 48.0, fall / 4.0};
    }
    throw Error(ErrorCode::UnknownRule, "unhandled rule");
}

double defuzzify(std::span<const Rule> rules, double e)
{
    if (rules.empty()) throw Error(ErrorCode::EmptyAssignment, "no rules matched");
    require_unit(e, "E");
    double moment = 0.0;
    double mass = 0.0;
    for (Rule r : rules) {
        const TruncatedMass m = truncated_mass(r, e);
        moment += m.moment;
        mass += m.mass;
    }
    if (mass > 0.0) return moment / mass;

    // Every grade is zero (E = 0 with only rising rules, or E = 1 with only
    // falling ones): each (MP, M) vanishes linearly, so the ratio tends to the
    // ratio of slopes.
    double slope_moment = 0.0;
    double slope_mass = 0.0;
    for (Rule r : rules) {
        const EndpointSlope s = vanishing_slope(r);
        slope_moment += s.moment;
        slope_mass += s.mass;
    }
    return slope_moment / slope_mass;
}

Rule AttributeRules::rule_for(QualitativeClass c) const
{
    switch (c) {
    case QualitativeClass::Positive: return positive;
    case QualitativeClass::Neutral: return Rule::NeutralToNormal;
    case QualitativeClass::Negative: return negative;
    }
    throw Error(ErrorCode::UnknownRule, "unhandled qualitative class");
}

void FuzzyRuleSet::set_attribute(const std::string& name, AttributeRules rules)
{
    if (input_class(rules.positive) != 1) throw Error(ErrorCode::UnknownRule, name + ": positive rule must be 1i or 1ii");
    if (input_class(rules.negative) != 3) throw Error(ErrorCode::UnknownRule, name + ": negative rule must be 3i or 3ii");
    attributes_.insert_or_assign(name, std::move(rules));
}

void FuzzyRuleSet::set_weight(const std::string& name, double weight)
{
    if (!(weight >= 0.0 && weight <= 1.0)) throw Error(ErrorCode::WeightSumViolation, name + ": weight outside [0,1]");
    weights_.insert_or_assign(name, weight);
}

const AttributeRules& FuzzyRuleSet::attribute(const std::string& name) const
{
    auto it = attributes_.find(name);
    if (it == attributes_.end()) throw Error(ErrorCode::UnknownRule, "no rules for attribute '" + name + "'");
    return it->second;
}

void FuzzyRuleSet::validate() const
{
    if (attributes_.empty()) throw Error(ErrorCode::EmptyAssignment, "rule set has no qualitative attributes");
    double sum = 0.0;
    for (const auto& [name, w] : weights_) sum += w;
    if (weights_.empty() || std::abs(sum - 1.0) > kSumTolerance)
        throw Error(ErrorCode::WeightSumViolation, "quantitative weights must sum to 1");
}

FuzzyRuleSet FuzzyRuleSet::worked_example()
{
    FuzzyRuleSet rules;
    rules.set_attribute("Major", {Rule::PositiveToLarge, Rule::NegativeToSmall,
                                  {"SECURITY-RELATED", "COMPUTER-RELATED", "OTHERS"}});
    rules.set_attribute("Relationship", {Rule::PositiveToLargest, Rule::NegativeToSmallest,
                                         {"RELATIVE", "SCHOOLMATE", "STRANGER"}});
    rules.set_weight("freq", 0.5);
    rules.set_weight("time", 0.5);
    return rules;
}

double aggregate_quantitative(const QuantitativeInput& input, const std::map<std::string, double>& normalizers)
{
    if (input.empty()) throw Error(ErrorCode::WeightSumViolation, "no quantitative attributes");
    double weight_sum = 0.0;
    double e = 0.0;
    for (const auto& attr : input) {
        auto it = normalizers.find(attr.name);
        if (it == normalizers.end() || !(it->second > 0.0))
            throw Error(ErrorCode::ZeroNormalizer, "attribute '" + attr.name + "' has no positive normalizer");
        if (!(attr.raw >= 0.0)) throw Error(ErrorCode::DomainViolation, "attribute '" + attr.name + "' is negative");
        weight_sum += attr.weight;
        e += attr.weight * (attr.raw / it->second);
    }
    if (std::abs(weight_sum - 1.0) > kSumTolerance)
        throw Error(ErrorCode::WeightSumViolation, "weights sum to " + std::to_string(weight_sum));
    if (e > 1.0) {
        if (e - 1.0 < kSumTolerance) return 1.0;
        throw Error(ErrorCode::DomainViolation, "raw value exceeds its normalizer");
    }
    return e;
}

double defuzzify(std::span<const QualitativeAssignment> assignments, const FuzzyRuleSet& rules, double e)
{
    if (assignments.empty()) throw Error(ErrorCode::EmptyAssignment, "no qualitative attributes");
    std::vector<Rule> matched;
    matched.reserve(assignments.size());
    for (const auto& a : assignments) matched.push_back(rules.attribute(a.attribute).rule_for(a.value));
    return defuzzify(matched, e);
}

namespace {

std::string link_name(const FriendLink& link)
{
    return "link " + std::to_string(link.from.value) + "->" + std::to_string(link.to.value) + " (network " +
           std::to_string(link.network.value) + ")";
}

}  // namespace

double link_trust(const FriendLink& link, const std::map<std::string, double>& normalizers, const FuzzyRuleSet& rules)
{
    QuantitativeInput input;
    for (const auto& [name, weight] : rules.weights()) {
        auto it = link.attributes.quantitative.find(name);
        if (it == link.attributes.quantitative.end())
            throw Error(ErrorCode::MissingAttribute, link_name(link) + " lacks quantitative attribute '" + name + "'");
        input.push_back({name, it->second, weight});
    }
    std::vector<QualitativeAssignment> assignments;
    for (const auto& [name, _] : rules.attributes()) {
        auto it = link.attributes.qualitative.find(name);
        if (it == link.attributes.qualitative.end())
            throw Error(ErrorCode::MissingAttribute, link_name(link) + " lacks qualitative attribute '" + name + "'");
        assignments.push_back({name, it->second});
    }
    for (const auto& [name, _] : link.attributes.qualitative)
        if (!rules.has_attribute(name))
            throw Error(ErrorCode::UnknownRule, link_name(link) + " uses attribute '" + name + "' with no rules");
    return defuzzify(assignments, rules, aggregate_quantitative(input, normalizers));
}

void assign_trust_values(SocialGraph& graph, const FuzzyRuleSet& rules)
{
    rules.validate();
    std::map<std::pair<EntityId, NetworkId>, std::map<std::string, double>> maxima;
    for (const auto& [key, link] : graph.links()) {
        auto& slot = maxima[{key.from, key.network}];
        for (const auto& [name, _] : rules.weights()) {
            auto it = link.attributes.quantitative.find(name);
            if (it == link.attributes.quantitative.end()) continue;
            auto [pos, inserted] = slot.try_emplace(name, it->second);
            if (!inserted) pos->second = std::max(pos->second, it->second);
        }
    }
    std::vector<std::pair<LinkKey, double>> computed;
    computed.reserve(graph.links().size());
    for (const auto& [key, link] : graph.links())
        computed.emplace_back(key, link_trust(link, maxima[{key.from, key.network}], rules));
    for (const auto& [key, tv] : computed) graph.set_trust_value(key, tv);
}

}  // namespace stor
