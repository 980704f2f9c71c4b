#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tightham/budget.hpp"
#include "tightham/hypergraph.hpp"

namespace tightham {

enum class SearchStatus { cycle, none, budget_exhausted };
std::string_view to_string(SearchStatus s);

struct HamiltonianSearch {
  SearchStatus status = SearchStatus::none;
  std::optional<TightCycle> cycle;  // canonical form
  std::uint64_t nodes = 0;
};

// Exhaustive search; `none` is only reported after the whole tree was explored.
HamiltonianSearch find_tight_hamiltonian_cycle(const Hypergraph3& h, const SearchBudget& budget = {});

struct CycleCount {
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
};

// Counts cycles up to rotation and reflection. Throws budget_exhausted.
CycleCount count_tight_hamiltonian_cycles(const Hypergraph3& h, const SearchBudget& budget = {});

// Every tight path from `from` to `to` with exactly L-2 internal vertices
// taken from `allowed`, in lexicographic order of the internal sequence.
std::vector<TightPath> enumerate_connecting_paths(const Hypergraph3& h, OrderedPair from, OrderedPair to,
                                                  int L, const VertexSet& allowed);

// Shared precondition check for connection problems.
void check_connection_request(const Hypergraph3& h, OrderedPair from, OrderedPair to, int L,
                              const VertexSet& allowed);

}  // namespace tightham
