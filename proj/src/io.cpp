#include "tightham/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tightham/error.hpp"

namespace tightham {
namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + what);
}

// Splits a line into integers; any non-integer token is a parse error.
std::vector<long long> integers(std::string_view line, std::size_t line_no) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    long long v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
    if (ec != std::errc() || ptr != line.data() + j) {
      parse_fail(line_no, "expected an integer, found '" + std::string(line.substr(i, j - i)) + "'");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

}  // namespace

std::string format_h3v1(const Hypergraph3& h) {
  std::string out = std::to_string(h.n()) + " " + std::to_string(h.edge_count()) + "\n";
  for (const Triple& t : h.edges()) {
    out += std::to_string(t.a);
    out += ' ';
    out += std::to_string(t.b);
    out += ' ';
    out += std::to_string(t.c);
    out += '\n';
  }
  return out;
}

Hypergraph3 parse_h3v1(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  // Trailing blank lines are tolerated; blank lines elsewhere are not.
  while (!lines.empty() && integers(lines.back(), lines.size()).empty()) lines.pop_back();
  if (lines.empty()) parse_fail(1, "missing header 'n m'");
  auto header = integers(lines[0], 1);
  if (header.size() != 2) parse_fail(1, "header must be 'n m'");
  long long n = header[0], m = header[1];
  if (n < 3) parse_fail(1, "n must be at least 3");
  if (m < 0) parse_fail(1, "negative edge count");
  if (static_cast<long long>(lines.size()) - 1 != m) {
    parse_fail(lines.size(), "header announces " + std::to_string(m) + " edges, file has " +
                                 std::to_string(lines.size() - 1));
  }
  std::vector<Triple> triples;
  triples.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto v = integers(lines[i], i + 1);
    if (v.size() != 3) parse_fail(i + 1, "expected 3 vertices, found " + std::to_string(v.size()));
    for (long long x : v) {
      if (x < 1 || x > n) {
        fail(ErrorKind::out_of_range, "line " + std::to_string(i + 1) + ": vertex " +
                                          std::to_string(x) + " outside [1, " + std::to_string(n) + "]");
      }
    }
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) {
      fail(ErrorKind::degenerate_triple, "line " + std::to_string(i + 1) + ": repeated vertex in triple");
    }
    triples.push_back({static_cast<Vertex>(v[0]), static_cast<Vertex>(v[1]), static_cast<Vertex>(v[2])});
  }
  return Hypergraph3(static_cast<int>(n), triples);
}

std::string format_hypergraph_json(const Hypergraph3& h) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Triple& t : h.edges()) edges.push_back({t.a, t.b, t.c});
  nlohmann::json j{{"n", h.n()}, {"edges", std::move(edges)}};
  return j.dump() + "\n";
}

Hypergraph3 parse_hypergraph_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::parse_error, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges") || !j["n"].is_number_integer() ||
      !j["edges"].is_array()) {
    fail(ErrorKind::parse_error, "expected {\"n\": int, \"edges\": [[i,j,k], ...]}");
  }
  int n = j["n"].get<int>();
  std::vector<Triple> triples;
  std::size_t index = 0;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_number_integer()) {
      fail(ErrorKind::parse_error, "edge #" + std::to_string(index) + " is not a triple of integers");
    }
    triples.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    ++index;
  }
  return Hypergraph3(n, triples);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::invalid_argument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::invalid_argument, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  require(static_cast<bool>(out), ErrorKind::invalid_argument, "write failed for " + path.string());
}

Hypergraph3 read_hypergraph(const std::filesystem::path& path) {
  std::string text = read_file(path);
  if (path.extension() == ".json") return parse_hypergraph_json(text);
  return parse_h3v1(text);
}

void write_hypergraph(const Hypergraph3& h, const std::filesystem::path& path) {
  write_file(path, path.extension() == ".json" ? format_hypergraph_json(h) : format_h3v1(h));
}

}  // namespace tightham
