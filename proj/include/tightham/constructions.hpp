#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tightham/hypergraph.hpp"
#include "tightham/rational.hpp"

namespace tightham {

enum class GeneratorKind { example_one_third, example_half, complete, random_uniform, random_posa };
std::string_view to_string(GeneratorKind k);
GeneratorKind parse_generator_kind(std::string_view text);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::complete;
  int n = 0;
  std::optional<Rational> alpha;  // random_posa
  std::optional<double> p;        // random_uniform
  std::uint64_t seed = 0;
};

Hypergraph3 generate(const GeneratorSpec& spec);

// X = [ceil((n+1)/3)]; edges are the triples meeting X in other than 2 vertices.
Hypergraph3 example_one_third(int n);
// X = [floor(n/2)], Y the rest; edges are the triples meeting Y in other than 2 vertices.
Hypergraph3 example_half(int n);
int example_one_third_x_size(int n);
int example_half_x_size(int n);

Hypergraph3 complete(int n);
Hypergraph3 random_uniform(int n, double p, std::uint64_t seed);
Hypergraph3 random_posa_hypergraph(int n, const Rational& alpha, std::uint64_t seed);

}  // namespace tightham
