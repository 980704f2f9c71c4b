#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "brute.hpp"
#include "tightham/constructions.hpp"
#include "tightham/cover.hpp"
#include "tightham/rng.hpp"

using namespace tightham;

namespace {

std::vector<Vertex> range(Vertex lo, Vertex hi) {
  std::vector<Vertex> out;
  for (Vertex v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

std::vector<Vertex> subset(const std::vector<Vertex>& part, unsigned mask) {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (mask >> i & 1u) out.push_back(part[i]);
  }
  return out;
}

// Every subset triple, counted from the raw edge list.
double brute_defect(const std::vector<Triple>& edges, const std::vector<Vertex>& U, const std::vector<Vertex>& V,
                    const std::vector<Vertex>& W, double d) {
  double best = 0;
  for (unsigned a = 0; a < (1u << U.size()); ++a) {
    for (unsigned b = 0; b < (1u << V.size()); ++b) {
      for (unsigned c = 0; c < (1u << W.size()); ++c) {
        auto u1 = subset(U, a), u2 = subset(V, b), u3 = subset(W, c);
        int e = 0;
        for (Vertex x : u1)
          for (Vertex y : u2)
            for (Vertex z : u3) e += brute::in(edges, x, y, z);
        best = std::max(best, std::abs(e - d * u1.size() * u2.size() * u3.size()));
      }
    }
  }
  return best / static_cast<double>(U.size() * V.size() * W.size());
}

int brute_max_matching(const std::vector<Triple>& edges, std::size_t from, std::set<Vertex>& used) {
  int best = 0;
  for (std::size_t i = from; i < edges.size(); ++i) {
    const Triple& t = edges[i];
    if (used.count(t.a) || used.count(t.b) || used.count(t.c)) continue;
    used.insert({t.a, t.b, t.c});
    best = std::max(best, 1 + brute_max_matching(edges, i + 1, used));
    used.erase(t.a), used.erase(t.b), used.erase(t.c);
  }
  return best;
}

Reservoir reservoir_of(std::vector<Vertex> members) {
  Reservoir r;
  r.members = std::move(members);
  r.theta = Rational(1, 2);
  r.L = 5;
  r.verified = true;
  return r;
}

}  // namespace

TEST_CASE("crossing edges and views") {
  auto k12 = complete(12);
  auto view = make_view(k12, range(1, 4), range(5, 8), range(9, 12));
  CHECK(crossing_edges(view) == 64);
  CHECK(crossing_edges(view, {1, 2}, {5}, {9, 10, 11}) == 6);
  CHECK_THROWS_AS(make_view(k12, {1, 2}, {2, 3}, {4}), Error);
  CHECK_THROWS_AS(make_view(k12, {1}, {2}, {13}), Error);
}

TEST_CASE("exact defect matches subset enumeration") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto h = random_uniform(12, 0.5, seed);
    const std::size_t sz = 2 + seed % 3;
    std::vector<Vertex> U = range(1, static_cast<Vertex>(sz)), V = range(5, static_cast<Vertex>(4 + sz)),
                        W = range(9, static_cast<Vertex>(8 + std::min<std::size_t>(sz, 3)));
    auto view = make_view(h, U, V, W);
    const double d = 0.1 * static_cast<double>(seed % 7);
    double exact = quasirandomness_defect(view, d, {DefectMode::exact, 0, 0});
    CHECK(exact == doctest::Approx(brute_defect(h.edges(), U, V, W, d)).epsilon(1e-12));
    double sampled = quasirandomness_defect(view, d, {DefectMode::sampled, 200, seed});
    CHECK(sampled <= exact + 1e-12);
  }
  auto k9 = complete(9);
  auto view = make_view(k9, range(1, 3), range(4, 6), range(7, 9));
  CHECK(quasirandomness_defect(view, 1.0, {DefectMode::exact, 0, 0}) == 0.0);
  CHECK(quasirandomness_defect(view, 0.0, {DefectMode::exact, 0, 0}) == 1.0);
}

TEST_CASE("triplet cover on dense tripartite parts") {
  CoverParams p;
  auto k90 = complete(90);
  auto view = make_view(k90, range(1, 30), range(31, 60), range(61, 90));
  auto res = cover_triplet_with_paths(view, p);
  CHECK(res.c == cover_round_count(p, 30));
  CHECK(res.c == 3);
  CHECK(res.uncovered.empty());
  std::set<Vertex> seen;
  for (const auto& path : res.paths) {
    CHECK(path.vertices.size() == static_cast<std::size_t>(3 * res.c));
    CHECK(validate_tight_path(k90, path).valid);
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
      Vertex v = path.vertices[i];
      CHECK(seen.insert(v).second);
      CHECK((v - 1) / 30 == static_cast<int>(i % 3));
    }
  }

  auto h = random_uniform(90, 0.9, 4);
  auto dense = make_view(h, range(1, 30), range(31, 60), range(61, 90));
  p.d = static_cast<double>(crossing_edges(dense)) / 27000.0;
  auto r2 = cover_triplet_with_paths(dense, p);
  std::size_t covered = 0;
  for (const auto& path : r2.paths) {
    CHECK(validate_tight_path(h, path).valid);
    covered += path.vertices.size();
  }
  CHECK(covered + r2.uncovered.size() == 90);
  MESSAGE("random_uniform(90, 0.9) triplet cover leaves " << r2.uncovered.size() << " of 90");
  CHECK(r2.uncovered.size() <= 18);

  auto tiny = make_view(k90, range(1, 2), range(3, 4), range(5, 6));
  CHECK_THROWS_AS(cover_triplet_with_paths(tiny, p), Error);
}

TEST_CASE("matching local search") {
  int optimal = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 6 + static_cast<int>(seed % 2);
    auto h = random_uniform(n, 0.3, seed);
    auto report = find_large_matching(h, {}, 0.2, 0.1);
    CHECK(is_matching(report.matching));
    for (const Triple& t : report.matching.edges) CHECK(h.has_edge(t.a, t.b, t.c));
    CHECK_FALSE(matching_move_available(h, report.matching));
    std::set<Vertex> used;
    int best = brute_max_matching(h.edges(), 0, used);
    CHECK(static_cast<int>(report.matching.edges.size()) * 3 >= best);
    optimal += static_cast<int>(report.matching.edges.size()) == best;
    ++total;
  }
  MESSAGE("local search optimal on " << optimal << "/" << total << " small graphs");
  CHECK(optimal == total);

  auto k12 = complete(12);
  auto full = find_large_matching(k12, {{1, 2}, {1, 3}}, 0.2, 0.1);
  CHECK(full.matching.edges.size() == 4);
  CHECK(full.max_excluded_degree == 2);
  CHECK_FALSE(full.excluded_degree_ok);

  // one edge abc and a free pair adjacent to a with v < min(b, c): swap applies
  Matching m{{make_triple(1, 5, 6)}};
  Hypergraph3 h(6, std::vector<Triple>{make_triple(1, 5, 6), make_triple(1, 2, 3)});
  CHECK(matching_move_available(h, m));
  Matching done{{make_triple(1, 2, 3)}};
  CHECK_FALSE(matching_move_available(h, done));
}

TEST_CASE("reduction of a complete graph") {
  CoverParams p;
  p.t = 6;
  auto rh = reduce(complete(62), p);
  CHECK(rh.m == 10);
  CHECK(rh.v0 == std::vector<Vertex>{61, 62});
  CHECK(rh.dense.size() == 20);
  CHECK(rh.irregular.empty());
  CHECK(rh.K.size() == 20);
  CHECK(rh.crossing.at(Triple{1, 2, 3}) == 1000);

  auto empty = reduce(random_uniform(60, 0.0, 0), p);
  CHECK(empty.dense.empty());
  CHECK(empty.K.empty());

  p.t = 30;
  CHECK_THROWS_AS(reduce(complete(60), p), Error);
  p.t = 2;
  CHECK_THROWS_AS(reduce(complete(60), p), Error);
}

TEST_CASE("long path avoids the absorbing path and kept vertices") {
  auto h = complete(150);
  auto r = reservoir_of(range(131, 150));
  AbsorbingParams ap;
  ap.theta = Rational(1, 2);
  auto pa = build_absorbing_path(h, r, ap);
  LongPathParams lp;
  lp.keep_free = {131, 132, 133, 134, 135, 136};
  auto res = build_long_path(h, r, pa, lp);
  CHECK(validate_tight_path(h, res.path).valid);
  std::set<Vertex> on_pa(pa.path.vertices.begin(), pa.path.vertices.end());
  for (Vertex v : res.path.vertices) {
    CHECK_FALSE(on_pa.count(v));
    CHECK((v < 131 || v > 136));
  }
  CHECK(res.eligible == 150 - 20 - pa.path.vertices.size());
  CHECK(res.coverage() == 1.0);
  CHECK(res.matched_triplets >= 1);
}
