#include "stor/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "stor/csv.hpp"
#include "stor/errors.hpp"

namespace stor {

namespace {

std::uint32_t parse_id(const std::string& text, std::size_t line, const char* what)
{
    std::uint64_t v = 0;
    if (!parse_uint(text, v) || v < 1 || v > UINT32_MAX)
        throw ParseError(line, std::string("bad ") + what + " '" + text + "'");
    return static_cast<std::uint32_t>(v);
}

std::pair<std::string, std::string> key_value(const std::string& token, std::size_t line)
{
    auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(line, "expected key=value, got '" + token + "'");
    return {token.substr(0, eq), token.substr(eq + 1)};
}

double parse_number(const std::string& text, std::size_t line, const std::string& key)
{
    double v = 0;
    if (!parse_double(text, v)) throw ParseError(line, "bad number for " + key + ": '" + text + "'");
    return v;
}

}  // namespace

SocialGraph read_graph(std::istream& in)
{
    SocialGraph graph;
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::uint64_t> declared;
    std::size_t seen_entities = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view view = raw;
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        auto tokens = split_whitespace(view);
        if (tokens.empty()) continue;
        const std::string& kind = tokens[0];

        if (kind == "entities") {
            if (declared) throw ParseError(line_no, "duplicate 'entities' header");
            std::uint64_t n = 0;
            if (tokens.size() != 2 || !parse_uint(tokens[1], n)) throw ParseError(line_no, "expected 'entities <n>'");
            declared = n;
            continue;
        }
        if (!declared) throw ParseError(line_no, "missing 'entities <n>' header");

        try {
            if (kind == "entity") {
                if (tokens.size() < 2) throw ParseError(line_no, "entity line needs an id");
                EntityId id{parse_id(tokens[1], line_no, "entity id")};
                std::optional<double> bandwidth;
                bool malicious = false;
                for (std::size_t t = 2; t < tokens.size(); ++t) {
                    auto [key, value] = key_value(tokens[t], line_no);
                    if (key == "bandwidth") {
                        bandwidth = parse_number(value, line_no, key);
                    } else if (key == "malicious") {
                        if (value != "0" && value != "1") throw ParseError(line_no, "malicious must be 0 or 1");
                        malicious = value == "1";
                    } else {
                        throw ParseError(line_no, "unknown entity key '" + key + "'");
                    }
                }
                if (!bandwidth) throw ParseError(line_no, "entity without bandwidth");
                graph.add_entity(id, *bandwidth, malicious);
                ++seen_entities;
            } else if (kind == "network") {
                if (tokens.size() != 2) throw ParseError(line_no, "expected 'network <id>'");
                graph.add_network(NetworkId{parse_id(tokens[1], line_no, "network id")});
            } else if (kind == "link") {
                if (tokens.size() < 4) throw ParseError(line_no, "expected 'link <from> <to> network=<id> ...'");
                FriendLink link;
                link.from = EntityId{parse_id(tokens[1], line_no, "entity id")};
                link.to = EntityId{parse_id(tokens[2], line_no, "entity id")};
                bool have_network = false;
                for (std::size_t t = 3; t < tokens.size(); ++t) {
                    auto [key, value] = key_value(tokens[t], line_no);
                    if (key == "network") {
                        link.network = NetworkId{parse_id(value, line_no, "network id")};
                        have_network = true;
                    } else if (key == "tv") {
                        link.trust_value = parse_number(value, line_no, key);
                    } else if (key.starts_with("q:") && key.size() > 2) {
                        link.attributes.quantitative[key.substr(2)] = parse_number(value, line_no, key);
                    } else if (key.starts_with("c:") && key.size() > 2) {
                        link.attributes.qualitative[key.substr(2)] = parse_qualitative_class(value);
                    } else {
                        throw ParseError(line_no, "unknown link key '" + key + "'");
                    }
                }
                if (!have_network) throw ParseError(line_no, "link without network=<id>");
                graph.add_network(link.network);
                graph.add_link(std::move(link));
            } else {
                throw ParseError(line_no, "unknown record '" + kind + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!declared) throw ParseError(line_no, "empty graph file: missing 'entities <n>' header");
    if (seen_entities != *declared)
        throw ParseError(line_no, "header declares " + std::to_string(*declared) + " entities, found " +
                                      std::to_string(seen_entities));
    return graph;
}

SocialGraph read_graph_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return read_graph(in);
}

void write_graph(std::ostream& out, const SocialGraph& graph)
{
    out << "entities " << graph.entity_count() << '\n';
    for (const Entity& e : graph.entities())
        out << "entity " << e.id.value << " bandwidth=" << format_double(e.bandwidth)
            << " malicious=" << (e.malicious ? 1 : 0) << '\n';
    for (NetworkId n : graph.networks()) out << "network " << n.value << '\n';
    for (const auto& [key, link] : graph.links()) {
        out << "link " << key.from.value << ' ' << key.to.value << " network=" << key.network.value;
        if (link.trust_value) out << " tv=" << format_double(*link.trust_value);
        for (const auto& [name, value] : link.attributes.quantitative) out << " q:" << name << '=' << format_double(value);
        for (const auto& [name, value] : link.attributes.qualitative) out << " c:" << name << '=' << to_string(value);
        out << '\n';
    }
}

void write_graph_file(const std::filesystem::path& path, const SocialGraph& graph)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
    write_graph(out, graph);
}

std::string serialize_graph(const SocialGraph& graph)
{
    std::ostringstream out;
    write_graph(out, graph);
    return out.str();
}

}  // namespace stor
