#include "tightham/constructions.hpp"

#include <algorithm>

#include "tightham/error.hpp"
#include "tightham/rng.hpp"

namespace tightham {

std::string_view to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::example_one_third: return "example-one-third";
    case GeneratorKind::example_half: return "example-half";
    case GeneratorKind::complete: return "complete";
    case GeneratorKind::random_uniform: return "random-uniform";
    case GeneratorKind::random_posa: return "random-posa";
  }
  return "unknown";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '_', '-');
  for (auto k : {GeneratorKind::example_one_third, GeneratorKind::example_half, GeneratorKind::complete,
                 GeneratorKind::random_uniform, GeneratorKind::random_posa}) {
    if (s == to_string(k)) return k;
  }
  fail(ErrorKind::invalid_argument, "unknown generator kind '" + std::string(text) + "'");
}

namespace {

template <class Keep>
Hypergraph3 from_predicate(int n, Keep keep) {
  std::vector<Triple> edges;
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      for (Vertex c = b + 1; c <= n; ++c) {
        if (keep(a, b, c)) edges.push_back({a, b, c});
      }
    }
  }
  return Hypergraph3(n, edges);
}

void self_check(bool ok, const std::string& what) {
  require(ok, ErrorKind::verification_failed, "construction self-check failed: " + what);
}

}  // namespace

int example_one_third_x_size(int n) { return (n + 1 + 2) / 3; }
int example_half_x_size(int n) { return n / 2; }

Hypergraph3 example_one_third(int n) {
  require(n >= 6, ErrorKind::invalid_argument, "example_one_third needs n >= 6");
  const int x = example_one_third_x_size(n);
  Hypergraph3 h = from_predicate(n, [x](Vertex a, Vertex b, Vertex c) {
    return (a <= x) + (b <= x) + (c <= x) != 2;
  });
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      self_check(h.codegree(i, j) >= std::min({i, j, n / 2}) - 1,
                 "pair degree below min(i,j,n/2)-1 at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  return h;
}

Hypergraph3 example_half(int n) {
  require(n >= 6, ErrorKind::invalid_argument, "example_half needs n >= 6");
  const int x = example_half_x_size(n);
  Hypergraph3 h = from_predicate(n, [x](Vertex a, Vertex b, Vertex c) {
    return (a > x) + (b > x) + (c > x) != 2;
  });
  const int floor_bound = (n + 1) / 2 - 2;
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      self_check(h.codegree(i, j) >= floor_bound, "pair degree below ceil(n/2)-2");
    }
  }
  return h;
}

Hypergraph3 complete(int n) {
  require(n >= 4, ErrorKind::invalid_argument, "complete graph generator needs n >= 4");
  return from_predicate(n, [](Vertex, Vertex, Vertex) { return true; });
}

Hypergraph3 random_uniform(int n, double p, std::uint64_t seed) {
  require(n >= 4, ErrorKind::invalid_argument, "random_uniform needs n >= 4");
  require(p >= 0.0 && p <= 1.0, ErrorKind::invalid_argument, "probability must lie in [0, 1]");
  Rng rng(seed);
  // One draw per triple in lexicographic order, so p=1 gives the complete graph.
  return from_predicate(n, [&](Vertex, Vertex, Vertex) { return rng.uniform01() < p; });
}

Hypergraph3 random_posa_hypergraph(int n, const Rational& alpha, std::uint64_t seed) {
  require(n >= 4, ErrorKind::invalid_argument, "random_posa needs n >= 4");
  check_alpha(alpha);
  const int an = static_cast<int>(alpha.floor_times(n));
  require(n / 2 + an <= n - 2, ErrorKind::infeasible,
          "Posa condition infeasible: floor(n/2) + floor(alpha n) = " + std::to_string(n / 2 + an) +
              " exceeds n - 2 = " + std::to_string(n - 2));

  Rng rng(seed);
  const auto m = static_cast<std::size_t>(n + 1);
  std::vector<char> present(m * m * m, 0);
  auto idx = [m](Vertex a, Vertex b, Vertex c) {
    Triple t = make_triple(a, b, c);
    return (static_cast<std::size_t>(t.a) * m + static_cast<std::size_t>(t.b)) * m + static_cast<std::size_t>(t.c);
  };
  std::vector<int> deg(m * m, 0);
  auto add = [&](Vertex a, Vertex b, Vertex c) {
    present[idx(a, b, c)] = 1;
    ++deg[static_cast<std::size_t>(a) * m + b], ++deg[static_cast<std::size_t>(b) * m + a];
    ++deg[static_cast<std::size_t>(a) * m + c], ++deg[static_cast<std::size_t>(c) * m + a];
    ++deg[static_cast<std::size_t>(b) * m + c], ++deg[static_cast<std::size_t>(c) * m + b];
  };
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      for (Vertex c = b + 1; c <= n; ++c) {
        if (rng.uniform01() < 0.8) add(a, b, c);
      }
    }
  }

  const std::uint64_t cap = 10ULL * static_cast<std::uint64_t>(n) * n * n;
  std::uint64_t steps = 0;
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      const int need = std::min({i, j, n / 2}) + an;
      while (deg[static_cast<std::size_t>(i) * m + j] < need) {
        require(++steps <= cap, ErrorKind::infeasible, "random_posa repair exceeded its step cap");
        std::vector<Vertex> missing;
        for (Vertex k = 1; k <= n; ++k) {
          if (k != i && k != j && !present[idx(i, j, k)]) missing.push_back(k);
        }
        Vertex k = missing[rng.below(missing.size())];
        add(i, j, k);
      }
    }
  }

  std::vector<Triple> edges;
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      for (Vertex c = b + 1; c <= n; ++c) {
        if (present[idx(a, b, c)]) edges.push_back({a, b, c});
      }
    }
  }
  Hypergraph3 h(n, edges);
  self_check(check_posa_condition(h, alpha).satisfied, "random_posa output violates the condition");
  return h;
}

Hypergraph3 generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::example_one_third: return example_one_third(spec.n);
    case GeneratorKind::example_half: return example_half(spec.n);
    case GeneratorKind::complete: return complete(spec.n);
    case GeneratorKind::random_uniform:
      require(spec.p.has_value(), ErrorKind::invalid_argument, "random-uniform needs p");
      return random_uniform(spec.n, *spec.p, spec.seed);
    case GeneratorKind::random_posa:
      require(spec.alpha.has_value(), ErrorKind::invalid_argument, "random-posa needs alpha");
      return random_posa_hypergraph(spec.n, *spec.alpha, spec.seed);
  }
  fail(ErrorKind::invalid_argument, "unknown generator kind");
}

}  // namespace tightham
