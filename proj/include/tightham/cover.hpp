#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightham/absorption.hpp"
#include "tightham/budget.hpp"
#include "tightham/connector.hpp"
#include "tightham/error.hpp"
#include "tightham/hypergraph.hpp"

namespace tightham {

struct TripartiteView {
  Hypergraph3 host;
  std::vector<Vertex> U, V, W;
};

TripartiteView make_view(const Hypergraph3& host, std::vector<Vertex> U, std::vector<Vertex> V,
                         std::vector<Vertex> W);

// Edges meeting each of U1, U2, U3 once (the subsets must lie in the parts).
std::int64_t crossing_edges(const TripartiteView& view, const std::vector<Vertex>& U1,
                            const std::vector<Vertex>& U2, const std::vector<Vertex>& U3);
std::int64_t crossing_edges(const TripartiteView& view);

enum class DefectMode { exact, sampled };

struct DefectOptions {
  DefectMode mode = DefectMode::sampled;
  int samples = 512;
  std::uint64_t seed = 0;
};

// max |e(U1,U2,U3) - d|U1||U2||U3|| / (|V1||V2||V3|) over subset triples: the
// true maximum in exact mode (parts of size <= 8), a lower bound when sampled.
double quasirandomness_defect(const TripartiteView& view, double d, const DefectOptions& options = {});

struct CoverParams {
  double xi = 0.9;
  double delta = 0.05;
  double d = 1.0;             // density used by the triplet cover
  int t = 6;                  // number of parts in the reduction
  double alpha_prime = 0.1;   // dense threshold factor
  int samples = 512;          // subset triples per irregularity test
  std::uint64_t seed = 0;
};

struct CoverResult {
  std::vector<TightPath> paths;
  std::vector<Vertex> uncovered;  // sorted
  int c = 0;
};

// Vertex-disjoint paths cycling U -> V -> W, each with exactly 3c vertices.
CoverResult cover_triplet_with_paths(const TripartiteView& view, const CoverParams& params);
int cover_round_count(const CoverParams& params, int part_size);

struct Matching {
  std::vector<Triple> edges;
  std::size_t vertex_count() const { return 3 * edges.size(); }
};

bool is_matching(const Matching& m);

struct MatchingReport {
  Matching matching;
  int max_excluded_degree = 0;
  bool excluded_degree_ok = true;  // max degree of the excluded-pair graph <= beta n
  int moves = 0;
};

// Local search: grow |M|, then push the uncovered set up in lexicographic
// order (a set is larger when the smallest element of the symmetric
// difference belongs to the other set). Moves: add a free edge; replace abc
// by a v w for an uncovered pair vw with v < min(b, c); replace abc by
// a v w and b v' w' for two disjoint uncovered pairs; replace one edge by
// any two disjoint edges on its vertices and the uncovered ones.
MatchingReport find_large_matching(const Hypergraph3& h, const std::vector<std::pair<Vertex, Vertex>>& excluded_pairs,
                                   double alpha, double beta);

// Whether any improving move applies to m (used by tests and diagnostics).
bool matching_move_available(const Hypergraph3& h, const Matching& m);

struct ReducedHypergraph {
  int t = 0;
  int m = 0;  // part size
  std::vector<std::vector<Vertex>> parts;
  std::vector<Vertex> v0;
  std::map<Triple, std::int64_t> crossing;  // crossing edge count per part triple
  std::map<Triple, double> defects;         // sampled defect, dense triples only
  std::vector<Triple> dense, irregular, K;  // triples over part indices 1..t
  std::vector<std::pair<int, int>> malicious_pairs;
  std::vector<int> malicious_vertices;
  std::vector<std::string> warnings;
};

ReducedHypergraph reduce(const Hypergraph3& h, const CoverParams& params);

class StageFailure : public Error {
 public:
  StageFailure(std::string stage, ErrorKind cause, const std::string& message);
  const std::string& stage() const { return stage_; }
  ErrorKind cause() const { return cause_; }

 private:
  std::string stage_;
  ErrorKind cause_;
};

struct LongPathParams {
  CoverParams cover;
  Rational alpha{1, 5};
  double beta = 0.1;
  int L = 5;
  std::uint64_t seed = 0;
  SearchBudget budget{200000, std::nullopt};
  std::vector<Vertex> keep_free;  // reservoir vertices the path must not touch
  bool saturate = true;
};

struct LongPathResult {
  TightPath path;
  std::size_t eligible = 0;        // |[n] \ (R ∪ V(P_A))|
  std::size_t covered = 0;         // eligible vertices on the path
  std::size_t reservoir_used = 0;  // reservoir vertices on the path
  std::size_t matched_triplets = 0;
  std::size_t cover_paths = 0;
  std::vector<std::string> notes;
  double coverage() const { return eligible ? static_cast<double>(covered) / static_cast<double>(eligible) : 0.0; }
};

LongPathResult build_long_path(const Hypergraph3& h, const Reservoir& r, const AbsorbingPath& pa,
                               const LongPathParams& params);

}  // namespace tightham
