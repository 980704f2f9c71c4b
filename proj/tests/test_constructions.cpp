#include <doctest.h>

#include "brute.hpp"
#include "tightham/constructions.hpp"
#include "tightham/error.hpp"
#include "tightham/oracle.hpp"

using namespace tightham;

namespace {

// Membership straight from the definitions, independent of the generators.
bool one_third_edge(int n, Vertex a, Vertex b, Vertex c) {
  int x = (n + 3) / 3;  // ceil((n+1)/3)
  return (a <= x) + (b <= x) + (c <= x) != 2;
}

bool half_edge(int n, Vertex a, Vertex b, Vertex c) {
  int x = n / 2;
  return (a > x) + (b > x) + (c > x) != 2;
}

}  // namespace

TEST_CASE("constructions match their definitions") {
  for (int n = 6; n <= 12; ++n) {
    auto one = example_one_third(n);
    auto half = example_half(n);
    for (Vertex a = 1; a <= n; ++a) {
      for (Vertex b = a + 1; b <= n; ++b) {
        for (Vertex c = b + 1; c <= n; ++c) {
          CHECK(one.has_edge(a, b, c) == one_third_edge(n, a, b, c));
          CHECK(half.has_edge(a, b, c) == half_edge(n, a, b, c));
        }
      }
    }
  }
  CHECK(example_one_third_x_size(10) == 4);
  CHECK(example_half_x_size(10) == 5);
  CHECK_THROWS_AS(example_one_third(5), Error);
  CHECK_THROWS_AS(example_half(5), Error);
}

TEST_CASE("one-third construction: degree floor and the X-pair obstruction") {
  auto h = example_one_third(10);
  const int x = example_one_third_x_size(10);
  for (const Triple& t : h.edges()) {
    int in_x = (t.a <= x) + (t.b <= x) + (t.c <= x);
    CHECK(in_x != 2);
    if (t.a <= x && t.b <= x) CHECK(t.c <= x);
  }
  for (int n = 7; n <= 12; ++n) {
    auto g = example_one_third(n);
    for (Vertex i = 1; i <= n; ++i) {
      for (Vertex j = i + 1; j <= n; ++j) CHECK(g.codegree(i, j) >= std::min({i, j, n / 2}) - 1);
    }
  }
}

TEST_CASE("half construction: pair degrees") {
  auto h = example_half(10);
  int mn = 100;
  for (Vertex i = 1; i <= 10; ++i) {
    for (Vertex j = i + 1; j <= 10; ++j) {
      int expected = (j <= 5) ? 8 : (i > 5 ? 3 : 4);
      CHECK(h.codegree(i, j) == expected);
      CHECK(h.codegree(i, j) == brute::codegree(h.edges(), i, j));
      mn = std::min(mn, h.codegree(i, j));
    }
  }
  CHECK(mn == 3);
  for (int n = 7; n <= 12; ++n) {
    auto g = example_half(n);
    int m = n;
    for (Vertex i = 1; i <= n; ++i) {
      for (Vertex j = i + 1; j <= n; ++j) m = std::min(m, g.codegree(i, j));
    }
    CHECK(m == (n + 1) / 2 - 2);
  }
}

TEST_CASE("the constructions are not Hamiltonian") {
  CHECK(find_tight_hamiltonian_cycle(example_one_third(9)).status == SearchStatus::none);
  CHECK(find_tight_hamiltonian_cycle(example_half(10)).status == SearchStatus::none);
}

TEST_CASE("complete and uniform generators") {
  CHECK(complete(6).edge_count() == 20);
  CHECK(random_uniform(6, 0.0, 4).edge_count() == 0);
  CHECK(random_uniform(6, 0.5, 9) == random_uniform(6, 0.5, 9));
  CHECK(random_uniform(12, 1.0, 3) == complete(12));
  CHECK_THROWS_AS(random_uniform(6, 1.5, 0), Error);
}

TEST_CASE("random Posa generator") {
  auto alpha = Rational::parse("0.1");
  auto h = random_posa_hypergraph(20, alpha, 1);
  CHECK(check_posa_condition(h, alpha).satisfied);
  CHECK(h == random_posa_hypergraph(20, alpha, 1));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto a = Rational::parse("0.2");
    CHECK(check_posa_condition(random_posa_hypergraph(30, a, seed), a).satisfied);
  }
  try {
    random_posa_hypergraph(10, Rational::parse("0.45"), 0);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::infeasible);
  }
}

TEST_CASE("generator specs") {
  GeneratorSpec spec{GeneratorKind::random_uniform, 7, std::nullopt, 0.5, 3};
  CHECK(generate(spec) == random_uniform(7, 0.5, 3));
  CHECK(parse_generator_kind("example_one_third") == GeneratorKind::example_one_third);
  CHECK(parse_generator_kind("random-posa") == GeneratorKind::random_posa);
  CHECK_THROWS_AS(parse_generator_kind("petersen"), Error);
}
