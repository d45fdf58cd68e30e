#pragma once

#include <filesystem>
#include <iosfwd>

#include "stor/fuzzy.hpp"

namespace stor {

// Rule-set text format ('#' comments):
//
//   attribute <name> positive_rule=<1i|1ii> negative_rule=<3i|3ii> [labels=<POS>,<NEU>,<NEG>]
//   quantitative <name> weight=<float>
//
// Omitted rules default to 1ii / 3i. The weights must sum to 1.

FuzzyRuleSet read_rule_set(std::istream& in);
FuzzyRuleSet read_rule_set_file(const std::filesystem::path& path);
void write_rule_set(std::ostream& out, const FuzzyRuleSet& rules);

}  // namespace stor
