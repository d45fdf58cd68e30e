#include "stor/rule_set_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "stor/csv.hpp"
#include "stor/errors.hpp"

namespace stor {

FuzzyRuleSet read_rule_set(std::istream& in)
{
    FuzzyRuleSet rules;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view view = raw;
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        auto tokens = split_whitespace(view);
        if (tokens.empty()) continue;
        if (tokens.size() < 2) throw ParseError(line_no, "expected '<record> <name> key=value...'");
        const std::string& name = tokens[1];
        try {
            if (tokens[0] == "attribute") {
                AttributeRules attr;
                for (std::size_t t = 2; t < tokens.size(); ++t) {
                    auto eq = tokens[t].find('=');
                    if (eq == std::string::npos) throw ParseError(line_no, "expected key=value, got '" + tokens[t] + "'");
                    const std::string key = tokens[t].substr(0, eq);
                    const std::string value = tokens[t].substr(eq + 1);
                    if (key == "positive_rule") {
                        attr.positive = parse_rule_tag(value);
                    } else if (key == "negative_rule") {
                        attr.negative = parse_rule_tag(value);
                    } else if (key == "labels") {
                        attr.labels = split(value, ',');
                        if (attr.labels.size() != 3) throw ParseError(line_no, "labels needs three comma-separated names");
                    } else {
                        throw ParseError(line_no, "unknown attribute key '" + key + "'");
                    }
                }
                rules.set_attribute(name, std::move(attr));
            } else if (tokens[0] == "quantitative") {
                if (tokens.size() != 3 || !tokens[2].starts_with("weight="))
                    throw ParseError(line_no, "expected 'quantitative <name> weight=<float>'");
                double w = 0;
                if (!parse_double(std::string_view(tokens[2]).substr(7), w)) throw ParseError(line_no, "bad weight");
                rules.set_weight(name, w);
            } else {
                throw ParseError(line_no, "unknown record '" + tokens[0] + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
    }
    rules.validate();
    return rules;
}

FuzzyRuleSet read_rule_set_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return read_rule_set(in);
}

void write_rule_set(std::ostream& out, const FuzzyRuleSet& rules)
{
    for (const auto& [name, attr] : rules.attributes()) {
        out << "attribute " << name << " positive_rule=" << rule_tag(attr.positive)
            << " negative_rule=" << rule_tag(attr.negative);
        if (attr.labels.size() == 3) out << " labels=" << attr.labels[0] << ',' << attr.labels[1] << ',' << attr.labels[2];
        out << '\n';
    }
    for (const auto& [name, w] : rules.weights()) out << "quantitative " << name << " weight=" << format_double(w) << '\n';
}

}  // namespace stor
