#include "tightham/oracle.hpp"

#include "tightham/error.hpp"

namespace tightham {

BudgetMeter::BudgetMeter(const SearchBudget& budget)
    : budget_(budget), start_(std::chrono::steady_clock::now()) {
  require(budget.max_nodes >= 1, ErrorKind::invalid_argument, "budget needs max_nodes >= 1");
}

void BudgetMeter::check_clock() {
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
  if (elapsed.count() > *budget_.time_limit) exhausted_ = true;
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::cycle: return "cycle";
    case SearchStatus::none: return "none";
    case SearchStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

namespace {

// Depth-first extension of a tight path anchored at vertex 1. The second
// vertex is kept smaller than the last so each cycle is met exactly once.
class CycleSearch {
 public:
  CycleSearch(const Hypergraph3& h, const SearchBudget& budget, bool counting)
      : h_(h), n_(h.n()), meter_(budget), counting_(counting), unvisited_(VertexSet::full(h.n())),
        path_(static_cast<std::size_t>(h.n()), 0), scratch_(h.n()) {}

  void run() {
    path_[0] = 1;
    unvisited_.erase(1);
    for (Vertex second = 2; second <= n_ && !done(); ++second) {
      if (!meter_.tick()) return;
      if (h_.codegree(1, second) == 0) continue;
      path_[1] = second;
      unvisited_.erase(second);
      extend(2);
      unvisited_.insert(second);
    }
  }

  bool exhausted() const { return meter_.exhausted(); }
  std::uint64_t nodes() const { return meter_.nodes(); }
  std::uint64_t count() const { return count_; }
  const std::optional<TightCycle>& cycle() const { return cycle_; }

 private:
  bool done() const { return meter_.exhausted() || (!counting_ && cycle_.has_value()); }

  void extend(int depth) {
    if (done()) return;
    const Vertex first = path_[0], second = path_[1];
    const Vertex a = path_[static_cast<std::size_t>(depth) - 2];
    const Vertex b = path_[static_cast<std::size_t>(depth) - 1];
    VertexSet cands = unvisited_;
    cands.intersect(h_.neighbors(a, b));
    if (depth == n_ - 1) {
      cands.intersect(h_.neighbors(b, first));
      cands.intersect(h_.neighbors(first, second));
      cands.for_each([&](Vertex v) {
        if (v <= second || done()) return;
        if (!meter_.tick()) return;
        path_[static_cast<std::size_t>(depth)] = v;
        ++count_;
        if (!counting_) cycle_ = TightCycle{path_}.canonical();
      });
      return;
    }
    if (!viable(b)) return;
    cands.for_each([&](Vertex v) {
      if (done() || !meter_.tick()) return;
      path_[static_cast<std::size_t>(depth)] = v;
      unvisited_.erase(v);
      extend(depth + 1);
      unvisited_.insert(v);
    });
  }

  // Necessary conditions for completing the current prefix ending in `last`:
  // a closing vertex above the second one must still be free, and every free
  // vertex v needs an edge (p, v, s) with p free or `last`, s free or vertex 1.
  bool viable(Vertex last) {
    const Vertex first = path_[0], second = path_[1];
    scratch_ = unvisited_;
    scratch_.intersect(h_.neighbors(first, second));
    bool closer = false;
    scratch_.for_each([&](Vertex v) { closer = closer || v > second; });
    if (!closer) return false;

    bool ok = true;
    unvisited_.for_each([&](Vertex v) {
      if (!ok) return;
      bool found = false;
      auto try_pred = [&](Vertex p) {
        if (found || p == v) return;
        BitRow row = h_.neighbors(p, v);
        // successor: free vertex other than p, or vertex 1
        if (row_contains(row, first)) {
          found = true;
          return;
        }
        std::size_t common = unvisited_.count_common(row);
        if (common > 0) found = true;
      };
      try_pred(last);
      unvisited_.for_each([&](Vertex p) { try_pred(p); });
      ok = found;
    });
    return ok;
  }

  const Hypergraph3& h_;
  int n_;
  BudgetMeter meter_;
  bool counting_;
  VertexSet unvisited_;
  std::vector<Vertex> path_;
  VertexSet scratch_;
  std::uint64_t count_ = 0;
  std::optional<TightCycle> cycle_;
};

}  // namespace

HamiltonianSearch find_tight_hamiltonian_cycle(const Hypergraph3& h, const SearchBudget& budget) {
  require(h.n() >= 4, ErrorKind::invalid_argument, "Hamiltonian search needs n >= 4");
  CycleSearch search(h, budget, false);
  search.run();
  HamiltonianSearch result;
  result.nodes = search.nodes();
  if (search.cycle()) {
    result.status = SearchStatus::cycle;
    result.cycle = search.cycle();
  } else if (search.exhausted()) {
    result.status = SearchStatus::budget_exhausted;
  } else {
    result.status = SearchStatus::none;
  }
  return result;
}

CycleCount count_tight_hamiltonian_cycles(const Hypergraph3& h, const SearchBudget& budget) {
  require(h.n() >= 4, ErrorKind::invalid_argument, "Hamiltonian counting needs n >= 4");
  CycleSearch search(h, budget, true);
  search.run();
  if (search.exhausted()) {
    fail(ErrorKind::budget_exhausted,
         "cycle count incomplete after " + std::to_string(search.nodes()) + " nodes");
  }
  return {search.count(), search.nodes()};
}

void check_connection_request(const Hypergraph3& h, OrderedPair from, OrderedPair to, int L,
                              const VertexSet& allowed) {
  for (Vertex v : {from.first, from.second, to.first, to.second}) check_vertex(h, v);
  VertexSet ends(h.n());
  for (Vertex v : {from.first, from.second, to.first, to.second}) {
    require(!ends.contains(v), ErrorKind::invalid_argument,
            "pairs not disjoint: (" + std::to_string(from.first) + "," + std::to_string(from.second) +
                ") and (" + std::to_string(to.first) + "," + std::to_string(to.second) + ")");
    ends.insert(v);
  }
  require(L >= 2, ErrorKind::invalid_argument, "connection length must be >= 2");
  require(allowed.universe() == h.n(), ErrorKind::invalid_argument, "allowed set has the wrong universe");
  require(!allowed.intersects(ends.words()), ErrorKind::invalid_argument,
          "allowed internal vertices must avoid the endpoints");
}

std::vector<TightPath> enumerate_connecting_paths(const Hypergraph3& h, OrderedPair from, OrderedPair to,
                                                  int L, const VertexSet& allowed) {
  check_connection_request(h, from, to, L, allowed);
  const std::vector<Vertex> pool = allowed.to_vector();
  const std::size_t internal = static_cast<std::size_t>(L - 2);
  std::vector<TightPath> out;
  std::vector<Vertex> seq{from.first, from.second};
  std::vector<char> used(static_cast<std::size_t>(h.n()) + 1, 0);

  // Plain recursion over ordered sequences; only has_edge is consulted so the
  // result does not share logic with the connector's bitset search.
  auto rec = [&](auto&& self) -> void {
    std::size_t k = seq.size();
    if (k == internal + 2) {
      Vertex a = seq[k - 2], b = seq[k - 1];
      if (h.has_edge(a, b, to.first) && h.has_edge(b, to.first, to.second)) {
        TightPath p{seq};
        p.vertices.push_back(to.first);
        p.vertices.push_back(to.second);
        out.push_back(std::move(p));
      }
      return;
    }
    for (Vertex v : pool) {
      if (used[static_cast<std::size_t>(v)]) continue;
      if (!h.has_edge(seq[k - 2], seq[k - 1], v)) continue;
      used[static_cast<std::size_t>(v)] = 1;
      seq.push_back(v);
      self(self);
      seq.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  rec(rec);
  return out;
}

}  // namespace tightham
