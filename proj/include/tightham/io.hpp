#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tightham/hypergraph.hpp"

namespace tightham {

// H3v1: "n m" on the first line, then m lines "i j k" with i < j < k, sorted.
std::string format_h3v1(const Hypergraph3& h);
Hypergraph3 parse_h3v1(std::string_view text);

std::string format_hypergraph_json(const Hypergraph3& h);
Hypergraph3 parse_hypergraph_json(std::string_view text);

// Format chosen by extension: ".json" is JSON, anything else H3v1.
Hypergraph3 read_hypergraph(const std::filesystem::path& path);
void write_hypergraph(const Hypergraph3& h, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace tightham
