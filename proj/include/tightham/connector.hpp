#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tightham/budget.hpp"
#include "tightham/error.hpp"
#include "tightham/hypergraph.hpp"
#include "tightham/rational.hpp"

namespace tightham {

enum class ConnectMode { plain, structured };

struct ConnectorParams {
  Rational alpha{1, 5};
  int L = 5;
  int m = 0;  // middle-walk parameter; 0 derives it from alpha
  SearchBudget budget{200000, std::nullopt};
  std::uint64_t seed = 0;
  ConnectMode mode = ConnectMode::plain;
};

// Shape of the two-step connection for a given alpha.
struct StructuredLayout {
  int climb_steps = 0;  // ceil(2/alpha)
  int m = 0;            // smallest even integer >= 1/alpha + 1
  int L = 0;            // 2*climb_steps + 3m + 6
  bool integral = true; // false when 1/alpha is not an integer and ceilings were taken
};

StructuredLayout structured_layout(const Rational& alpha);

// ceil(min(alpha n (i-2)/4, n/2) + alpha n/4): the least label a climbing
// vertex x_i (i >= 3) may take.
int climb_bound(int n, const Rational& alpha, int i);

class ClimbStuck : public Error {
 public:
  ClimbStuck(TightWalk partial, int index);
  const TightWalk& partial() const { return partial_; }
  int index() const { return index_; }

 private:
  TightWalk partial_;
  int index_;
};

// Extends `start` by `steps` vertices, each taken from the pair neighbourhood
// of the previous two and above climb_bound. Choice among admissible vertices
// is random but fixed by params.seed.
TightWalk climb_up_walk(const Hypergraph3& h, OrderedPair start, const ConnectorParams& params, int steps);

class ConnectFailure : public Error {
 public:
  ConnectFailure(bool exhaustive, const std::string& message);
  // True when the search space was fully explored (the path does not exist).
  bool exhaustive() const { return exhaustive_; }

 private:
  bool exhaustive_;
};

TightPath connect_pairs(const Hypergraph3& h, OrderedPair from, OrderedPair to, int L, const VertexSet& allowed,
                        const ConnectorParams& params);

struct ReservoirProbe {
  OrderedPair from, to;
  bool connected = false;
};

struct Reservoir {
  std::vector<Vertex> members;  // sorted
  Rational theta;
  int L = 0;
  bool verified = false;
  int attempts = 0;
  std::vector<ReservoirProbe> failing_probes;

  VertexSet as_set(int n) const { return VertexSet::of(n, members); }
};

struct ReservoirOptions {
  int probes = 20;
  int max_attempts = 100;
};

// Samples each vertex with probability (1 - 1/(10L)) theta^2, resampling until
// the size lies in [theta^2 n/2, theta^2 n], then probes the connect-through
// property. A failed probe suite is reported through `verified`, not thrown.
Reservoir sample_reservoir(const Hypergraph3& h, const Rational& theta, int L, const ConnectorParams& params,
                           const ReservoirOptions& options = {});

TightPath connect_through_reservoir(const Hypergraph3& h, OrderedPair from, OrderedPair to, const Reservoir& r,
                                    const VertexSet& excluded, const ConnectorParams& params);

// Random disjoint ordered pairs drawn from `pool` (needs 4 members).
std::pair<OrderedPair, OrderedPair> random_pair_pair(const std::vector<Vertex>& pool, std::uint64_t seed);

}  // namespace tightham
