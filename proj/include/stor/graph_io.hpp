#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "stor/social_graph.hpp"

namespace stor {

// Line-oriented graph text format:
//
//   entities <n>
//   entity <id> bandwidth=<float> malicious=<0|1>
//   network <id>                               (optional; links register their network)
//   link <from> <to> network=<id> [tv=<float>] q:<name>=<float>... c:<name>=<CLASS>...
//
// '#' starts a comment. Floats are written in shortest round-trip form.

SocialGraph read_graph(std::istream& in);
SocialGraph read_graph_file(const std::filesystem::path& path);

void write_graph(std::ostream& out, const SocialGraph& graph);
void write_graph_file(const std::filesystem::path& path, const SocialGraph& graph);
std::string serialize_graph(const SocialGraph& graph);

}  // namespace stor
