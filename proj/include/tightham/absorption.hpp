#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tightham/budget.hpp"
#include "tightham/connector.hpp"
#include "tightham/error.hpp"
#include "tightham/hypergraph.hpp"

namespace tightham {

// Tuple layout (v1,w1,y1,z1, ..., vs,ws,ys,zs); indices below are 1-based.
struct Absorber {
  Vertex x = 0;
  int s = 0;
  std::vector<Vertex> tuple;

  Vertex v(int i) const { return tuple[static_cast<std::size_t>(4 * (i - 1))]; }
  Vertex w(int i) const { return tuple[static_cast<std::size_t>(4 * (i - 1) + 1)]; }
  Vertex y(int i) const { return tuple[static_cast<std::size_t>(4 * (i - 1) + 2)]; }
  Vertex z(int i) const { return tuple[static_cast<std::size_t>(4 * (i - 1) + 3)]; }
};

struct AbsorberCheck {
  bool valid = true;
  std::vector<Triple> missing;  // sorted, distinct
  explicit operator bool() const { return valid; }
};

// Checks v1 w1 x y1 z1, the cross paths v_i w_i y_{i+1} z_{i+1} and
// v_{i+1} w_{i+1} y_i z_i for i < s, and v_s w_s y_s z_s.
AbsorberCheck is_absorber(const Hypergraph3& h, Vertex x, const Absorber& a);

// Segment slots: slot j-1 is S_j with outward pair (w_j, v_j); slot s+j-1 is
// E_j with outward pair (y_j, z_j). A segment is listed from its S side.
struct Segment {
  std::vector<Vertex> vertices;
  int s_slot = 0;
  int e_slot = 0;
};

OrderedPair outward_pair(const Absorber& a, int slot);
std::vector<Segment> before_segments(const Absorber& a);
// After the swap; the first segment carries `x` between w1 and y1.
std::vector<Segment> after_segments(const Absorber& a, Vertex x);

// Which slots are joined by connectors and which two stay exposed.
struct WiringTopology {
  int entry = 0;
  int exit = 0;
  std::vector<std::pair<int, int>> links;
};

// All topologies under which both configurations form one path from entry
// to exit. The alternating wiring (entry S1, exit Ss, links E1E2, S2S3, E3E4,
// ...) comes first; the full list is enumerated for s <= 6.
const std::vector<WiringTopology>& wiring_topologies(int s);

struct Traversal {
  std::vector<int> order;     // segment indices in path order
  std::vector<bool> reversed; // segment entered from its E side
};

// nullopt unless the configuration forms a single path through every segment.
std::optional<Traversal> traverse(int s, const WiringTopology& topology, bool after);

struct Wiring {
  WiringTopology topology;
  std::vector<TightPath> connectors;  // connectors[k] runs from links[k].first to links[k].second
  Traversal before, after;
};

// Vertex sequence of one absorber block in the chosen configuration.
std::vector<Vertex> block_sequence(const Absorber& a, const Wiring& wiring, bool after, Vertex x = 0);

class AbsorberStuck : public Error {
 public:
  AbsorberStuck(int stage, int attempts);
  int stage() const { return stage_; }  // furthest stage reached
  int attempts() const { return attempts_; }

 private:
  int stage_;
  int attempts_;
};

struct AbsorberParams {
  Rational alpha{1, 5};
  std::uint64_t seed = 0;
  int max_attempts = 300;
};

// Greedy stage-by-stage construction; every vertex chosen in stage j is at
// least min(x + floor(j alpha n / 2), floor(n/2)).
Absorber find_absorber(const Hypergraph3& h, Vertex x, int s, const VertexSet& forbidden,
                       const AbsorberParams& params);

enum class AbsorberSelection { greedy, sampled };

struct AbsorbingParams {
  Rational theta{3, 10};
  Rational alpha{1, 5};
  int s = 4;
  int L = 5;
  int target_capacity = 2;
  // Vertices that must end with the target capacity; default: everything
  // outside the reservoir that the path itself does not use.
  std::optional<std::vector<Vertex>> targets;
  std::uint64_t seed = 0;
  SearchBudget budget{200000, std::nullopt};  // per connector
  AbsorberSelection selection = AbsorberSelection::greedy;
  int sample_count = 2000;  // sampled selection only
};

struct RegistryEntry {
  Absorber absorber;
  Wiring wiring;
  std::size_t position = 0;  // index of the block's first vertex in the path
  std::size_t length = 0;    // block vertex count before absorption
};

struct AbsorbingPath {
  TightPath path;
  std::vector<RegistryEntry> registry;
  std::vector<TightPath> links;  // connectors between consecutive blocks
  std::vector<int> capacity;     // indexed by vertex; 0 on the path
  int s = 0;
  int L = 0;
};

// Connects the segments of one absorber avoiding `forbidden`, x and the tuple.
Wiring wire_absorber(const Hypergraph3& h, const Absorber& a, const VertexSet& forbidden,
                     const AbsorbingParams& params);

AbsorbingPath build_absorbing_path(const Hypergraph3& h, const Reservoir& r, const AbsorbingParams& params);

// Absorbs X using distinct registered absorbers (bipartite assignment).
TightPath absorb_set(const AbsorbingPath& pa, const std::vector<Vertex>& X, const Hypergraph3& h);

// Vertex count of a path with `blocks` absorbers of size s and connectors of length L.
std::size_t absorbing_path_size(int blocks, int s, int L);

}  // namespace tightham
