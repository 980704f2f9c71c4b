#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tightham/rational.hpp"
#include "tightham/vertex_set.hpp"

namespace tightham {

// Unordered triple stored sorted: a < b < c.
struct Triple {
  Vertex a = 0, b = 0, c = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Sorts the three labels; does not check distinctness.
Triple make_triple(Vertex x, Vertex y, Vertex z);
std::string to_string(const Triple& t);

struct OrderedPair {
  Vertex first = 0, second = 0;
  friend auto operator<=>(const OrderedPair&, const OrderedPair&) = default;
  OrderedPair reversed() const { return {second, first}; }
};

struct TightPath {
  std::vector<Vertex> vertices;
  std::size_t length() const { return vertices.size() < 2 ? 0 : vertices.size() - 2; }
  OrderedPair start() const { return {vertices[0], vertices[1]}; }
  OrderedPair end() const { return {vertices[vertices.size() - 2], vertices.back()}; }
  friend bool operator==(const TightPath&, const TightPath&) = default;
};

struct TightWalk {
  std::vector<Vertex> vertices;
};

struct TightCycle {
  std::vector<Vertex> vertices;
  // Rotation puts the minimum first; direction makes the second entry the
  // smaller of the minimum's two neighbours.
  TightCycle canonical() const;
  friend bool operator==(const TightCycle&, const TightCycle&) = default;
};

namespace detail {
struct HypergraphData;
}

// Immutable 3-graph on vertices 1..n. Copies share storage.
class Hypergraph3 {
 public:
  // Validates every triple and collapses duplicates.
  Hypergraph3(int n, std::span<const Triple> triples);
  Hypergraph3(int n, std::span<const std::array<Vertex, 3>> triples);

  int n() const;
  std::size_t edge_count() const;
  // Sorted ascending.
  const std::vector<Triple>& edges() const;

  bool has_edge(Vertex x, Vertex y, Vertex z) const;
  bool has_edge(const Triple& t) const { return has_edge(t.a, t.b, t.c); }
  // Unchecked pair degree for hot loops; i != j assumed.
  int codegree(Vertex i, Vertex j) const;
  // Degree of a single vertex (number of edges containing it).
  int degree(Vertex v) const;
  // Bitset of {x : ijx in E}; built lazily on first use, thread-safe.
  BitRow neighbors(Vertex i, Vertex j) const;

  friend bool operator==(const Hypergraph3& a, const Hypergraph3& b);

 private:
  std::shared_ptr<const detail::HypergraphData> data_;
};

Hypergraph3 build_hypergraph(int n, std::span<const std::array<Vertex, 3>> triples);

void check_vertex(const Hypergraph3& h, Vertex v);
int pair_degree(const Hypergraph3& h, Vertex i, Vertex j);

struct LinkGraph {
  Vertex center = 0;
  std::vector<std::pair<Vertex, Vertex>> pairs;  // each pair sorted, list sorted
};

LinkGraph link_graph(const Hypergraph3& h, Vertex v);

struct DegreeMatrix {
  int n = 0;
  std::vector<int> entries;  // (n+1)^2, symmetric, diagonal ignored

  explicit DegreeMatrix(int size = 0);
  int at(Vertex i, Vertex j) const { return entries[static_cast<std::size_t>(i) * (n + 1) + j]; }
  void set(Vertex i, Vertex j, int value);
};

DegreeMatrix degree_matrix(const Hypergraph3& h);
// True iff d(i,j) >= d_ij for every pair.
bool dominates(const Hypergraph3& h, const DegreeMatrix& d);

struct PosaViolation {
  Vertex i = 0, j = 0;
  int degree = 0;
  int required = 0;
  int deficit() const { return required - degree; }
};

struct PosaReport {
  bool satisfied = true;
  std::vector<PosaViolation> violations;
};

// Lower bound min(i, j, floor(n/2)) + floor(alpha n) of the Posa-type condition.
int posa_bound(int n, Vertex i, Vertex j, const Rational& alpha);
PosaReport check_posa_condition(const Hypergraph3& h, const Rational& alpha);
void check_alpha(const Rational& alpha);

struct Verdict {
  bool valid = true;
  std::optional<Triple> missing_edge;
  std::optional<Vertex> repeated_vertex;
  std::string reason;
  explicit operator bool() const { return valid; }
};

Verdict validate_tight_path(const Hypergraph3& h, const TightPath& p);
Verdict validate_tight_cycle(const Hypergraph3& h, const TightCycle& c);
Verdict validate_tight_walk(const Hypergraph3& h, const TightWalk& w);

struct InducedSubgraph {
  Hypergraph3 graph;
  std::vector<Vertex> new_label;  // indexed by old label, 0 when dropped
  std::vector<Vertex> old_label;  // indexed by new label
};

InducedSubgraph induced_subhypergraph(const Hypergraph3& h, std::span<const Vertex> keep);

}  // namespace tightham
