#include "tightham/hypergraph.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_set>

#include "tightham/error.hpp"

namespace tightham {
namespace detail {

// Graphs up to this size keep a dense membership bitmap over ordered label
// triples; larger ones fall back to a hash set of packed keys.
constexpr int kDenseMembershipLimit = 320;

struct HypergraphData {
  int n = 0;
  std::vector<Triple> edges;
  std::vector<std::uint64_t> dense;           // bit (a*(n+1)+b)*(n+1)+c for a<b<c
  std::unordered_set<std::uint64_t> sparse;  // same key, used above the limit
  std::vector<int> codegree;                  // (n+1)^2
  std::vector<int> degree;                    // n+1

  mutable std::once_flag rows_once;
  mutable std::vector<std::uint64_t> rows;  // (n+1)^2 rows of `stride` words
  mutable std::size_t stride = 0;

  std::uint64_t key(const Triple& t) const {
    auto m = static_cast<std::uint64_t>(n + 1);
    return (static_cast<std::uint64_t>(t.a) * m + static_cast<std::uint64_t>(t.b)) * m +
           static_cast<std::uint64_t>(t.c);
  }

  void build_rows() const {
    stride = VertexSet::words_for(n);
    auto m = static_cast<std::size_t>(n + 1);
    rows.assign(m * m * stride, 0);
    auto set = [&](Vertex i, Vertex j, Vertex x) {
      rows[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * stride +
           (static_cast<std::size_t>(x) >> 6)] |= std::uint64_t{1} << (x & 63);
    };
    for (const Triple& t : edges) {
      set(t.a, t.b, t.c);
      set(t.b, t.a, t.c);
      set(t.a, t.c, t.b);
      set(t.c, t.a, t.b);
      set(t.b, t.c, t.a);
      set(t.c, t.b, t.a);
    }
  }
};

}  // namespace detail

Triple make_triple(Vertex x, Vertex y, Vertex z) {
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);
  return {x, y, z};
}

std::string to_string(const Triple& t) {
  return "{" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + "}";
}

TightCycle TightCycle::canonical() const {
  const auto& v = vertices;
  if (v.empty()) return *this;
  std::size_t k = v.size();
  std::size_t pos = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
  Vertex next = v[(pos + 1) % k];
  Vertex prev = v[(pos + k - 1) % k];
  TightCycle out;
  out.vertices.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.vertices.push_back(next <= prev ? v[(pos + i) % k] : v[(pos + k - i) % k]);
  }
  return out;
}

namespace {

std::shared_ptr<detail::HypergraphData> make_data(int n, std::vector<Triple> edges) {
  require(n >= 3, ErrorKind::invalid_argument, "hypergraph needs n >= 3, got " + std::to_string(n));
  for (Triple& t : edges) {
    for (Vertex v : {t.a, t.b, t.c}) {
      require(v >= 1 && v <= n, ErrorKind::out_of_range,
              "vertex " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
    }
    t = make_triple(t.a, t.b, t.c);
    require(t.a != t.b && t.b != t.c, ErrorKind::degenerate_triple,
            "degenerate triple " + to_string(t));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto d = std::make_shared<detail::HypergraphData>();
  d->n = n;
  d->edges = std::move(edges);
  auto m = static_cast<std::size_t>(n + 1);
  d->codegree.assign(m * m, 0);
  d->degree.assign(m, 0);
  if (n <= detail::kDenseMembershipLimit) d->dense.assign((m * m * m + 63) / 64, 0);
  for (const Triple& t : d->edges) {
    auto bump = [&](Vertex i, Vertex j) {
      ++d->codegree[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)];
      ++d->codegree[static_cast<std::size_t>(j) * m + static_cast<std::size_t>(i)];
    };
    bump(t.a, t.b);
    bump(t.a, t.c);
    bump(t.b, t.c);
    ++d->degree[static_cast<std::size_t>(t.a)];
    ++d->degree[static_cast<std::size_t>(t.b)];
    ++d->degree[static_cast<std::size_t>(t.c)];
    std::uint64_t k = d->key(t);
    if (!d->dense.empty()) {
      d->dense[k >> 6] |= std::uint64_t{1} << (k & 63);
    } else {
      d->sparse.insert(k);
    }
  }
  return d;
}

std::vector<Triple> to_triples(std::span<const std::array<Vertex, 3>> triples) {
  std::vector<Triple> out;
  out.reserve(triples.size());
  for (const auto& t : triples) out.push_back({t[0], t[1], t[2]});
  return out;
}

}  // namespace

Hypergraph3::Hypergraph3(int n, std::span<const Triple> triples)
    : data_(make_data(n, std::vector<Triple>(triples.begin(), triples.end()))) {}

Hypergraph3::Hypergraph3(int n, std::span<const std::array<Vertex, 3>> triples)
    : data_(make_data(n, to_triples(triples))) {}

int Hypergraph3::n() const { return data_->n; }
std::size_t Hypergraph3::edge_count() const { return data_->edges.size(); }
const std::vector<Triple>& Hypergraph3::edges() const { return data_->edges; }

bool Hypergraph3::has_edge(Vertex x, Vertex y, Vertex z) const {
  const auto& d = *data_;
  if (x < 1 || y < 1 || z < 1 || x > d.n || y > d.n || z > d.n) return false;
  Triple t = make_triple(x, y, z);
  if (t.a == t.b || t.b == t.c) return false;
  std::uint64_t k = d.key(t);
  if (!d.dense.empty()) return (d.dense[k >> 6] >> (k & 63)) & 1u;
  return d.sparse.count(k) != 0;
}

int Hypergraph3::codegree(Vertex i, Vertex j) const {
  return data_->codegree[static_cast<std::size_t>(i) * static_cast<std::size_t>(data_->n + 1) +
                         static_cast<std::size_t>(j)];
}

int Hypergraph3::degree(Vertex v) const { return data_->degree[static_cast<std::size_t>(v)]; }

BitRow Hypergraph3::neighbors(Vertex i, Vertex j) const {
  const auto& d = *data_;
  std::call_once(d.rows_once, [&] { d.build_rows(); });
  std::size_t row = static_cast<std::size_t>(i) * static_cast<std::size_t>(d.n + 1) +
                    static_cast<std::size_t>(j);
  return BitRow(d.rows.data() + row * d.stride, d.stride);
}

bool operator==(const Hypergraph3& a, const Hypergraph3& b) {
  return a.n() == b.n() && a.edges() == b.edges();
}

Hypergraph3 build_hypergraph(int n, std::span<const std::array<Vertex, 3>> triples) {
  return Hypergraph3(n, triples);
}

void check_vertex(const Hypergraph3& h, Vertex v) {
  require(v >= 1 && v <= h.n(), ErrorKind::out_of_range,
          "vertex " + std::to_string(v) + " outside [1, " + std::to_string(h.n()) + "]");
}

int pair_degree(const Hypergraph3& h, Vertex i, Vertex j) {
  check_vertex(h, i);
  check_vertex(h, j);
  require(i != j, ErrorKind::invalid_argument, "pair_degree needs two distinct vertices");
  return h.codegree(i, j);
}

LinkGraph link_graph(const Hypergraph3& h, Vertex v) {
  check_vertex(h, v);
  LinkGraph g;
  g.center = v;
  for (const Triple& t : h.edges()) {
    if (t.a == v) {
      g.pairs.emplace_back(t.b, t.c);
    } else if (t.b == v) {
      g.pairs.emplace_back(t.a, t.c);
    } else if (t.c == v) {
      g.pairs.emplace_back(t.a, t.b);
    }
  }
  std::sort(g.pairs.begin(), g.pairs.end());
  return g;
}

DegreeMatrix::DegreeMatrix(int size)
    : n(size), entries(static_cast<std::size_t>(size + 1) * static_cast<std::size_t>(size + 1), 0) {}

void DegreeMatrix::set(Vertex i, Vertex j, int value) {
  entries[static_cast<std::size_t>(i) * (n + 1) + j] = value;
  entries[static_cast<std::size_t>(j) * (n + 1) + i] = value;
}

DegreeMatrix degree_matrix(const Hypergraph3& h) {
  DegreeMatrix d(h.n());
  for (Vertex i = 1; i <= h.n(); ++i) {
    for (Vertex j = i + 1; j <= h.n(); ++j) d.set(i, j, h.codegree(i, j));
  }
  return d;
}

bool dominates(const Hypergraph3& h, const DegreeMatrix& d) {
  require(d.n == h.n(), ErrorKind::invalid_argument, "degree matrix size differs from graph");
  for (Vertex i = 1; i <= h.n(); ++i) {
    for (Vertex j = i + 1; j <= h.n(); ++j) {
      if (h.codegree(i, j) < d.at(i, j)) return false;
    }
  }
  return true;
}

void check_alpha(const Rational& alpha) {
  require(alpha > Rational(0, 1) && alpha < Rational(1, 2), ErrorKind::invalid_argument,
          "alpha must lie in (0, 1/2), got " + alpha.str());
}

int posa_bound(int n, Vertex i, Vertex j, const Rational& alpha) {
  return std::min({i, j, n / 2}) + static_cast<int>(alpha.floor_times(n));
}

PosaReport check_posa_condition(const Hypergraph3& h, const Rational& alpha) {
  check_alpha(alpha);
  PosaReport report;
  for (Vertex i = 1; i <= h.n(); ++i) {
    for (Vertex j = i + 1; j <= h.n(); ++j) {
      int need = posa_bound(h.n(), i, j, alpha);
      int have = h.codegree(i, j);
      if (have < need) report.violations.push_back({i, j, have, need});
    }
  }
  report.satisfied = report.violations.empty();
  return report;
}

namespace {

Verdict check_sequence(const Hypergraph3& h, const std::vector<Vertex>& seq, bool distinct) {
  for (Vertex v : seq) check_vertex(h, v);
  Verdict verdict;
  if (distinct) {
    VertexSet seen(h.n());
    for (Vertex v : seq) {
      if (seen.contains(v)) {
        verdict.valid = false;
        verdict.repeated_vertex = v;
        verdict.reason = "repeated vertex " + std::to_string(v);
        return verdict;
      }
      seen.insert(v);
    }
  }
  return verdict;
}

Verdict missing(Vertex x, Vertex y, Vertex z) {
  Verdict v;
  v.valid = false;
  v.missing_edge = make_triple(x, y, z);
  v.reason = (x == y || y == z || x == z) ? "consecutive triple " + to_string(make_triple(x, y, z)) +
                                                " is not a set of three vertices"
                                          : "missing edge " + to_string(make_triple(x, y, z));
  return v;
}

}  // namespace

Verdict validate_tight_path(const Hypergraph3& h, const TightPath& p) {
  const auto& v = p.vertices;
  Verdict verdict = check_sequence(h, v, true);
  if (!verdict) return verdict;
  for (std::size_t i = 0; i + 2 < v.size(); ++i) {
    if (!h.has_edge(v[i], v[i + 1], v[i + 2])) return missing(v[i], v[i + 1], v[i + 2]);
  }
  return verdict;
}

Verdict validate_tight_walk(const Hypergraph3& h, const TightWalk& w) {
  const auto& v = w.vertices;
  Verdict verdict = check_sequence(h, v, false);
  for (std::size_t i = 0; i + 2 < v.size(); ++i) {
    if (!h.has_edge(v[i], v[i + 1], v[i + 2])) return missing(v[i], v[i + 1], v[i + 2]);
  }
  return verdict;
}

Verdict validate_tight_cycle(const Hypergraph3& h, const TightCycle& c) {
  const auto& v = c.vertices;
  require(v.size() >= 4, ErrorKind::invalid_argument, "a tight cycle needs at least 4 vertices");
  Verdict verdict = check_sequence(h, v, true);
  if (!verdict) return verdict;
  std::size_t k = v.size();
  for (std::size_t i = 0; i < k; ++i) {
    Vertex x = v[i], y = v[(i + 1) % k], z = v[(i + 2) % k];
    if (!h.has_edge(x, y, z)) return missing(x, y, z);
  }
  return verdict;
}

InducedSubgraph induced_subhypergraph(const Hypergraph3& h, std::span<const Vertex> keep) {
  VertexSet kept(h.n());
  for (Vertex v : keep) {
    check_vertex(h, v);
    kept.insert(v);
  }
  require(kept.size() >= 3, ErrorKind::invalid_argument, "induced subgraph needs at least 3 vertices");
  std::vector<Vertex> new_label(static_cast<std::size_t>(h.n()) + 1, 0);
  std::vector<Vertex> old_label{0};
  kept.for_each([&](Vertex v) {
    old_label.push_back(v);
    new_label[static_cast<std::size_t>(v)] = static_cast<Vertex>(old_label.size() - 1);
  });
  std::vector<Triple> edges;
  for (const Triple& t : h.edges()) {
    if (kept.contains(t.a) && kept.contains(t.b) && kept.contains(t.c)) {
      edges.push_back({new_label[t.a], new_label[t.b], new_label[t.c]});
    }
  }
  int m = static_cast<int>(old_label.size() - 1);
  return {Hypergraph3(m, edges), std::move(new_label), std::move(old_label)};
}

}  // namespace tightham
