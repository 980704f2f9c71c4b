#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "tightham/connector.hpp"
#include "tightham/constructions.hpp"
#include "tightham/oracle.hpp"
#include "tightham/rng.hpp"

using namespace tightham;

namespace {

// Smallest integer x with x >= min(alpha n (i-2)/4, n/2) + alpha n/4, over
// the common denominator 4 den.
int bound_by_hand(int n, std::int64_t num, std::int64_t den, int i) {
  std::int64_t climb = num * n * (i - 2), half = 2 * den * n;
  std::int64_t total = std::min(climb, half) + num * n;
  return static_cast<int>((total + 4 * den - 1) / (4 * den));
}

bool contains(const std::vector<TightPath>& list, const TightPath& p) {
  return std::find(list.begin(), list.end(), p) != list.end();
}

}  // namespace

TEST_CASE("structured layout arithmetic") {
  auto a = structured_layout(Rational::parse("0.2"));
  CHECK(a.climb_steps == 10);
  CHECK(a.m == 6);
  CHECK(a.L == 44);
  CHECK(a.integral);
  auto b = structured_layout(Rational::parse("0.15"));
  CHECK(b.climb_steps == 14);
  CHECK(b.m == 8);
  CHECK(b.L == 58);
  CHECK_FALSE(b.integral);
  CHECK(structured_layout(Rational::parse("0.25")).m == 6);
}

TEST_CASE("climb bound") {
  for (int n : {20, 40, 41, 97}) {
    for (auto [num, den] : {std::pair{1, 10}, {3, 20}, {1, 5}, {1, 3}}) {
      for (int i = 3; i < 40; ++i) CHECK(climb_bound(n, Rational(num, den), i) == bound_by_hand(n, num, den, i));
    }
  }
}

TEST_CASE("climb-up walk on the complete graph") {
  ConnectorParams p;
  p.alpha = Rational::parse("0.2");
  auto w = climb_up_walk(complete(20), {1, 2}, p, 10);
  REQUIRE(w.vertices.size() == 12);
  CHECK(validate_tight_walk(complete(20), w).valid);
  for (int i = 3; i <= 12; ++i) CHECK(w.vertices[i - 1] >= bound_by_hand(20, 1, 5, i));
  CHECK(w.vertices[10] >= 10);
  CHECK(w.vertices[11] >= 10);
  CHECK(climb_up_walk(complete(20), {1, 2}, p, 10).vertices == w.vertices);
  CHECK_THROWS_AS(climb_up_walk(complete(20), {1, 2}, p, 0), Error);
}

TEST_CASE("climb-up walk reports where it got stuck") {
  ConnectorParams p;
  p.alpha = Rational::parse("0.2");
  try {
    climb_up_walk(random_uniform(20, 0.0, 0), {1, 2}, p, 3);
    FAIL("expected a stuck walk");
  } catch (const ClimbStuck& e) {
    CHECK(e.index() == 3);
    CHECK(e.partial().vertices == std::vector<Vertex>{1, 2});
    CHECK(e.kind() == ErrorKind::stuck);
  }
}

TEST_CASE("plain connection is one of the enumerated paths") {
  auto k8 = complete(8);
  std::vector<Vertex> mid{3, 4, 5, 6};
  auto allowed = VertexSet::of(8, mid);
  auto all = enumerate_connecting_paths(k8, {1, 2}, {7, 8}, 4, allowed);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ConnectorParams p;
    p.seed = seed;
    CHECK(contains(all, connect_pairs(k8, {1, 2}, {7, 8}, 4, allowed, p)));
  }
  CHECK_THROWS_AS(connect_pairs(k8, {1, 2}, {1, 3}, 4, allowed, ConnectorParams{}), Error);
}

TEST_CASE("plain connection agrees with enumeration on small graphs") {
  int discrepancies = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto h = random_uniform(7, 0.5, seed);
    Rng rng(seed);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Vertex> all{1, 2, 3, 4, 5, 6, 7};
      rng.shuffle(std::span<Vertex>(all));
      OrderedPair from{all[0], all[1]}, to{all[2], all[3]};
      VertexSet allowed = VertexSet::of(7, std::vector<Vertex>(all.begin() + 4, all.end()));
      int L = 2 + trial % 4;
      auto list = enumerate_connecting_paths(h, from, to, L, allowed);
      try {
        auto p = connect_pairs(h, from, to, L, allowed, ConnectorParams{});
        if (!contains(list, p)) ++discrepancies;
      } catch (const ConnectFailure& e) {
        if (!list.empty() || !e.exhaustive()) ++discrepancies;
      }
    }
  }
  CHECK(discrepancies == 0);
}

TEST_CASE("plain connection on a Posa-type graph") {
  auto alpha = Rational::parse("0.15");
  auto h = random_posa_hypergraph(40, alpha, 3);
  std::vector<Vertex> all(40);
  std::iota(all.begin(), all.end(), 1);
  int ok = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto [from, to] = random_pair_pair(all, k);
    VertexSet allowed = VertexSet::full(40);
    for (Vertex v : {from.first, from.second, to.first, to.second}) allowed.erase(v);
    ConnectorParams p;
    p.seed = k;
    try {
      auto path = connect_pairs(h, from, to, 6, allowed, p);
      CHECK(validate_tight_path(h, path).valid);
      CHECK(path.start() == from);
      CHECK(path.end() == to);
      CHECK(path.length() == 6);
      ++ok;
    } catch (const ConnectFailure&) {
    }
  }
  MESSAGE("plain L=6 success rate on random_posa(40, 0.15): " << ok << "/100");
  CHECK(ok == 100);
}

TEST_CASE("structured connection") {
  ConnectorParams p;
  p.alpha = Rational::parse("0.2");
  p.mode = ConnectMode::structured;
  p.budget.max_nodes = 2'000'000;
  auto k100 = complete(100);
  VertexSet allowed = VertexSet::full(100);
  for (Vertex v : {1, 2, 3, 4}) allowed.erase(v);
  auto path = connect_pairs(k100, {1, 2}, {3, 4}, 44, allowed, p);
  CHECK(validate_tight_path(k100, path).valid);
  CHECK(path.vertices.size() == 46);
  for (int i = 3; i <= 12; ++i) CHECK(path.vertices[i - 1] >= bound_by_hand(100, 1, 5, i));
  CHECK_THROWS_AS(connect_pairs(k100, {1, 2}, {3, 4}, 10, allowed, p), Error);

  auto alpha = Rational::parse("0.25");
  auto h = random_posa_hypergraph(150, alpha, 1);
  p.alpha = alpha;
  VertexSet rest = VertexSet::full(150);
  for (Vertex v : {5, 9, 140, 150}) rest.erase(v);
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    p.seed = seed;
    try {
      auto q = connect_pairs(h, {5, 9}, {140, 150}, structured_layout(alpha).L, rest, p);
      CHECK(validate_tight_path(h, q).valid);
      ++ok;
    } catch (const ConnectFailure&) {
    }
  }
  MESSAGE("structured successes on random_posa(150, 0.25): " << ok << "/5");
  CHECK(ok >= 1);
}

TEST_CASE("reservoir sampling") {
  ConnectorParams p;
  auto theta = Rational::parse("0.3");
  auto r = sample_reservoir(complete(200), theta, 5, p);
  CHECK(r.members.size() >= 9);
  CHECK(r.members.size() <= 18);
  CHECK(r.verified);
  CHECK(std::is_sorted(r.members.begin(), r.members.end()));

  CHECK_THROWS_AS(sample_reservoir(complete(50), theta, 5, p), Error);  // 0.09 * 50 < 8

  auto empty = sample_reservoir(random_uniform(100, 0.0, 0), theta, 5, p);
  CHECK_FALSE(empty.verified);
  CHECK(empty.failing_probes.size() == 20);
}

TEST_CASE("connection through a reservoir") {
  ConnectorParams p;
  auto theta = Rational::parse("0.3");
  auto k100 = complete(100);
  auto r = sample_reservoir(k100, theta, 5, p);
  REQUIRE(r.verified);
  std::vector<Vertex> outside;
  for (Vertex v = 1; v <= 100; ++v) {
    if (!std::binary_search(r.members.begin(), r.members.end(), v)) outside.push_back(v);
  }
  auto [from, to] = random_pair_pair(outside, 4);
  auto path = connect_through_reservoir(k100, from, to, r, VertexSet(100), p);
  CHECK(validate_tight_path(k100, path).valid);
  for (std::size_t i = 2; i + 2 < path.vertices.size(); ++i) {
    CHECK(std::binary_search(r.members.begin(), r.members.end(), path.vertices[i]));
  }
  try {
    connect_through_reservoir(k100, from, to, r, r.as_set(100), p);
    FAIL("expected not_found");
  } catch (const ConnectFailure& e) {
    CHECK(e.exhaustive());
  }
}
