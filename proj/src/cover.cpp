#include "tightham/cover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "tightham/rng.hpp"

namespace tightham {

TripartiteView make_view(const Hypergraph3& host, std::vector<Vertex> U, std::vector<Vertex> V,
                         std::vector<Vertex> W) {
  VertexSet seen(host.n());
  for (const auto* part : {&U, &V, &W}) {
    for (Vertex v : *part) {
      check_vertex(host, v);
      require(!seen.contains(v), ErrorKind::invalid_argument, "tripartite parts must be disjoint");
      seen.insert(v);
    }
  }
  return {host, std::move(U), std::move(V), std::move(W)};
}

std::int64_t crossing_edges(const TripartiteView& view, const std::vector<Vertex>& U1,
                            const std::vector<Vertex>& U2, const std::vector<Vertex>& U3) {
  VertexSet third = VertexSet::of(view.host.n(), U3);
  std::int64_t count = 0;
  for (Vertex a : U1) {
    for (Vertex b : U2) count += static_cast<std::int64_t>(third.count_common(view.host.neighbors(a, b)));
  }
  return count;
}

std::int64_t crossing_edges(const TripartiteView& view) { return crossing_edges(view, view.U, view.V, view.W); }

double quasirandomness_defect(const TripartiteView& view, double d, const DefectOptions& options) {
  const auto a = view.U.size(), b = view.V.size(), c = view.W.size();
  if (a == 0 || b == 0 || c == 0) return 0.0;
  const double scale = static_cast<double>(a * b * c);
  const Hypergraph3& h = view.host;

  if (options.mode == DefectMode::exact) {
    require(a <= 8 && b <= 8 && c <= 8, ErrorKind::invalid_argument, "exact defect needs parts of size <= 8");
    // adj[k][i]: bitmask over V of the j with (U_i, V_j, W_k) an edge.
    std::vector<std::vector<unsigned>> adj(c, std::vector<unsigned>(a, 0));
    for (std::size_t k = 0; k < c; ++k) {
      for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
          if (h.has_edge(view.U[i], view.V[j], view.W[k])) adj[k][i] |= 1u << j;
        }
      }
    }
    // For fixed U1, U2 the best U3 takes all w of one sign of c_w - d|U1||U2|.
    double best = 0.0;
    for (unsigned s1 = 0; s1 < (1u << a); ++s1) {
      const int n1 = std::popcount(s1);
      for (unsigned s2 = 0; s2 < (1u << b); ++s2) {
        const double expect = d * n1 * std::popcount(s2);
        double pos = 0.0, neg = 0.0;
        for (std::size_t k = 0; k < c; ++k) {
          int cw = 0;
          for (std::size_t i = 0; i < a; ++i) {
            if (s1 >> i & 1u) cw += std::popcount(adj[k][i] & s2);
          }
          double diff = cw - expect;
          (diff > 0 ? pos : neg) += diff;
        }
        best = std::max({best, pos, -neg});
      }
    }
    return best / scale;
  }

  Rng rng(options.seed);
  double best = 0.0;
  std::vector<Vertex> u1, u2, u3;
  for (int k = 0; k < options.samples; ++k) {
    auto pick = [&](const std::vector<Vertex>& part, std::vector<Vertex>& out) {
      out.clear();
      for (Vertex v : part) {
        if (rng.next() & 1u) out.push_back(v);
      }
    };
    pick(view.U, u1);
    pick(view.V, u2);
    pick(view.W, u3);
    double e = static_cast<double>(crossing_edges(view, u1, u2, u3));
    double expect = d * static_cast<double>(u1.size() * u2.size() * u3.size());
    best = std::max(best, std::abs(e - expect));
  }
  return best / scale;
}

int cover_round_count(const CoverParams& params, int part_size) {
  double slack = params.d * params.xi * params.xi * params.xi - params.delta;
  require(slack * part_size / 2.0 >= 1.0 - 1e-12, ErrorKind::hypothesis_violated,
          "cover hypothesis (d xi^3 - delta) n / 2 >= 1 fails");
  return std::max(1, static_cast<int>(std::floor(slack * part_size / 6.0 + 1e-9)));
}

CoverResult cover_triplet_with_paths(const TripartiteView& view, const CoverParams& params) {
  const std::size_t np = view.U.size();
  require(view.V.size() == np && view.W.size() == np, ErrorKind::invalid_argument,
          "triplet cover needs parts of equal size");
  CoverResult result;
  result.c = cover_round_count(params, static_cast<int>(np));
  const int c = result.c;

  // Local labels: U -> [0, np), V -> [np, 2np), W -> [2np, 3np).
  std::vector<Vertex> label;
  label.insert(label.end(), view.U.begin(), view.U.end());
  label.insert(label.end(), view.V.begin(), view.V.end());
  label.insert(label.end(), view.W.begin(), view.W.end());
  const std::size_t total = label.size();
  std::vector<char> covered(total, 0);
  std::vector<std::array<int, 3>> all_edges;
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      for (std::size_t k = 0; k < np; ++k) {
        if (view.host.has_edge(view.U[i], view.V[j], view.W[k])) {
          all_edges.push_back({static_cast<int>(i), static_cast<int>(np + j), static_cast<int>(2 * np + k)});
        }
      }
    }
  }

  while (true) {
    // F: crossing edges on uncovered vertices, then delete every edge with a
    // pair of crossing degree below c until none is left.
    std::vector<std::array<int, 3>> F;
    for (const auto& e : all_edges) {
      if (!covered[e[0]] && !covered[e[1]] && !covered[e[2]]) F.push_back(e);
    }
    std::vector<int> deg(total * total, 0);
    auto pd = [&](int x, int y) -> int& { return deg[static_cast<std::size_t>(x) * total + y]; };
    for (const auto& e : F) ++pd(e[0], e[1]), ++pd(e[0], e[2]), ++pd(e[1], e[2]);
    std::vector<char> alive(F.size(), 1);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = 0; k < F.size(); ++k) {
        const auto& e = F[k];
        if (!alive[k]) continue;
        if (pd(e[0], e[1]) < c || pd(e[0], e[2]) < c || pd(e[1], e[2]) < c) {
          alive[k] = 0;
          --pd(e[0], e[1]), --pd(e[0], e[2]), --pd(e[1], e[2]);
          changed = true;
        }
      }
    }
    // thirds[x*total+y]: third vertices of live edges through the pair
    std::vector<std::vector<int>> thirds(total * total);
    bool any = false;
    for (std::size_t k = 0; k < F.size(); ++k) {
      if (!alive[k]) continue;
      any = true;
      const auto& e = F[k];
      auto add = [&](int x, int y, int z) {
        thirds[static_cast<std::size_t>(x) * total + y].push_back(z);
        thirds[static_cast<std::size_t>(y) * total + x].push_back(z);
      };
      add(e[0], e[1], e[2]);
      add(e[0], e[2], e[1]);
      add(e[1], e[2], e[0]);
    }
    if (!any) break;

    // Greedy extension from each live edge until 3c vertices.
    std::vector<int> path;
    for (std::size_t k = 0; k < F.size() && path.empty(); ++k) {
      if (!alive[k]) continue;
      std::vector<int> p{F[k][0], F[k][1], F[k][2]};
      std::vector<char> on(total, 0);
      for (int v : p) on[static_cast<std::size_t>(v)] = 1;
      while (p.size() < static_cast<std::size_t>(3 * c)) {
        const auto& cand = thirds[static_cast<std::size_t>(p[p.size() - 2]) * total + p.back()];
        int next = -1;
        for (int z : cand) {
          if (!on[static_cast<std::size_t>(z)] && (next < 0 || z < next)) next = z;
        }
        if (next < 0) break;
        on[static_cast<std::size_t>(next)] = 1;
        p.push_back(next);
      }
      if (p.size() >= static_cast<std::size_t>(3 * c)) path = p;
    }
    if (path.empty()) break;
    TightPath tp;
    for (int v : path) {
      covered[static_cast<std::size_t>(v)] = 1;
      tp.vertices.push_back(label[static_cast<std::size_t>(v)]);
    }
    auto verdict = validate_tight_path(view.host, tp);
    require(verdict.valid, ErrorKind::verification_failed, "triplet cover produced an invalid path");
    result.paths.push_back(std::move(tp));
  }
  for (std::size_t v = 0; v < total; ++v) {
    if (!covered[v]) result.uncovered.push_back(label[v]);
  }
  std::sort(result.uncovered.begin(), result.uncovered.end());
  return result;
}

bool is_matching(const Matching& m) {
  std::set<Vertex> seen;
  for (const Triple& t : m.edges) {
    for (Vertex v : {t.a, t.b, t.c}) {
      if (!seen.insert(v).second) return false;
    }
  }
  return true;
}

namespace {

struct MatchingState {
  const Hypergraph3& h;
  std::vector<Triple> edges;
  VertexSet covered;

  std::vector<Vertex> uncovered() const {
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= h.n(); ++v) {
      if (!covered.contains(v)) out.push_back(v);
    }
    return out;
  }

  void remove(std::size_t k) {
    for (Vertex v : {edges[k].a, edges[k].b, edges[k].c}) covered.erase(v);
    edges.erase(edges.begin() + static_cast<long>(k));
  }
  void add(Vertex a, Vertex b, Vertex c) {
    edges.push_back(make_triple(a, b, c));
    for (Vertex v : {a, b, c}) covered.insert(v);
  }

  bool try_add(bool apply) {
    for (const Triple& t : h.edges()) {
      if (!covered.contains(t.a) && !covered.contains(t.b) && !covered.contains(t.c)) {
        if (apply) add(t.a, t.b, t.c);
        return true;
      }
    }
    return false;
  }

  bool try_swap(bool apply) {
    const auto free = uncovered();
    for (std::size_t i = 0; i < free.size(); ++i) {
      for (std::size_t j = i + 1; j < free.size(); ++j) {
        Vertex v = free[i], w = free[j];
        BitRow nb = h.neighbors(v, w);
        for (std::size_t k = 0; k < edges.size(); ++k) {
          const Triple e = edges[k];
          const Vertex m[3] = {e.a, e.b, e.c};
          for (int keep = 0; keep < 3; ++keep) {
            Vertex a = m[keep];
            Vertex b = m[(keep + 1) % 3], c = m[(keep + 2) % 3];
            if (row_contains(nb, a) && v < std::min(b, c)) {
              if (apply) {
                remove(k);
                add(a, v, w);
              }
              return true;
            }
          }
        }
      }
    }
    return false;
  }

  bool try_augment(bool apply) {
    const auto free = uncovered();
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t i = 0; i < free.size(); ++i) {
      for (std::size_t j = i + 1; j < free.size(); ++j) pairs.emplace_back(free[i], free[j]);
    }
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const Triple e = edges[k];
      const Vertex m[3] = {e.a, e.b, e.c};
      // mask of matching-edge vertices adjacent to each uncovered pair
      std::vector<unsigned> mask(pairs.size(), 0);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        BitRow nb = h.neighbors(pairs[p].first, pairs[p].second);
        for (int q = 0; q < 3; ++q) {
          if (row_contains(nb, m[q])) mask[p] |= 1u << q;
        }
      }
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (!mask[p]) continue;
        for (std::size_t r = p + 1; r < pairs.size(); ++r) {
          if (!mask[r]) continue;
          auto [v, w] = pairs[p];
          auto [v2, w2] = pairs[r];
          if (v == v2 || v == w2 || w == v2 || w == w2) continue;
          for (int q1 = 0; q1 < 3; ++q1) {
            if (!(mask[p] >> q1 & 1u)) continue;
            for (int q2 = 0; q2 < 3; ++q2) {
              if (q2 == q1 || !(mask[r] >> q2 & 1u)) continue;
              if (apply) {
                remove(k);
                add(m[q1], v, w);
                add(m[q2], v2, w2);
              }
              return true;
            }
          }
        }
      }
    }
    return false;
  }

  // Drop one matching edge and place two disjoint edges inside the freed and
  // uncovered vertices. Generalizes try_augment.
  bool try_exchange(bool apply) {
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const Triple e = edges[k];
      auto ok = [&](Vertex v) { return !covered.contains(v) || v == e.a || v == e.b || v == e.c; };
      std::vector<Triple> inside;
      for (const Triple& t : h.edges()) {
        if (ok(t.a) && ok(t.b) && ok(t.c)) inside.push_back(t);
      }
      for (std::size_t i = 0; i < inside.size(); ++i) {
        const Triple& f = inside[i];
        for (std::size_t j = i + 1; j < inside.size(); ++j) {
          const Triple& g = inside[j];
          bool disjoint = true;
          for (Vertex v : {g.a, g.b, g.c}) disjoint = disjoint && v != f.a && v != f.b && v != f.c;
          if (!disjoint) continue;
          if (apply) {
            remove(k);
            add(f.a, f.b, f.c);
            add(g.a, g.b, g.c);
          }
          return true;
        }
      }
    }
    return false;
  }
};

}  // namespace

MatchingReport find_large_matching(const Hypergraph3& h, const std::vector<std::pair<Vertex, Vertex>>& excluded_pairs,
                                   double alpha, double beta) {
  (void)alpha;
  MatchingReport report;
  std::vector<int> deg(static_cast<std::size_t>(h.n()) + 1, 0);
  for (auto [a, b] : excluded_pairs) {
    check_vertex(h, a);
    check_vertex(h, b);
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
  }
  report.max_excluded_degree = *std::max_element(deg.begin(), deg.end());
  report.excluded_degree_ok = report.max_excluded_degree <= beta * h.n();

  MatchingState st{h, {}, VertexSet(h.n())};
  while (true) {
    if (st.try_add(true) || st.try_augment(true) || st.try_exchange(true) || st.try_swap(true)) {
      ++report.moves;
      continue;
    }
    break;
  }
  std::sort(st.edges.begin(), st.edges.end());
  report.matching.edges = std::move(st.edges);
  return report;
}

bool matching_move_available(const Hypergraph3& h, const Matching& m) {
  MatchingState st{h, m.edges, VertexSet(h.n())};
  for (const Triple& t : m.edges) {
    for (Vertex v : {t.a, t.b, t.c}) st.covered.insert(v);
  }
  return st.try_add(false) || st.try_augment(false) || st.try_exchange(false) || st.try_swap(false);
}

ReducedHypergraph reduce(const Hypergraph3& h, const CoverParams& params) {
  const int n = h.n();
  const int t = params.t;
  require(t >= 3, ErrorKind::invalid_argument, "reduction needs t >= 3");
  require(t <= n / 3, ErrorKind::invalid_argument,
          "reduction needs t <= n/3 (t=" + std::to_string(t) + ", n=" + std::to_string(n) + ")");
  ReducedHypergraph rh;
  rh.t = t;
  rh.m = n / t;
  std::vector<int> part_of(static_cast<std::size_t>(n) + 1, 0);
  rh.parts.resize(static_cast<std::size_t>(t));
  for (Vertex v = 1; v <= n; ++v) {
    int p = (v - 1) / rh.m + 1;
    if (p <= t) {
      part_of[static_cast<std::size_t>(v)] = p;
      rh.parts[static_cast<std::size_t>(p - 1)].push_back(v);
    } else {
      rh.v0.push_back(v);
    }
  }
  if (static_cast<double>(rh.v0.size()) > params.delta * n) {
    rh.warnings.push_back("|V0| = " + std::to_string(rh.v0.size()) + " exceeds delta n");
  }

  for (const Triple& e : h.edges()) {
    int a = part_of[e.a], b = part_of[e.b], c = part_of[e.c];
    if (a && b && c && a != b && b != c && a != c) ++rh.crossing[make_triple(a, b, c)];
  }
  const double m3 = static_cast<double>(rh.m) * rh.m * rh.m;
  std::uint64_t tag = 0;
  for (int i = 1; i <= t; ++i) {
    for (int j = i + 1; j <= t; ++j) {
      for (int k = j + 1; k <= t; ++k) {
        Triple key{i, j, k};
        std::int64_t ex = rh.crossing.count(key) ? rh.crossing[key] : 0;
        rh.crossing[key] = ex;
        ++tag;
        if (2.0 * static_cast<double>(ex) < params.alpha_prime * m3) continue;
        rh.dense.push_back(key);
        TripartiteView view{h, rh.parts[i - 1], rh.parts[j - 1], rh.parts[k - 1]};
        DefectOptions opt{DefectMode::sampled, params.samples, Rng::derive(params.seed, tag)};
        double defect = quasirandomness_defect(view, static_cast<double>(ex) / m3, opt);
        rh.defects[key] = defect;
        if (defect > params.delta) rh.irregular.push_back(key);
      }
    }
  }

  std::map<std::pair<int, int>, int> ir_pairs;
  for (const Triple& e : rh.irregular) {
    ++ir_pairs[{e.a, e.b}];
    ++ir_pairs[{e.a, e.c}];
    ++ir_pairs[{e.b, e.c}];
  }
  std::vector<int> b_deg(static_cast<std::size_t>(t) + 1, 0);
  for (auto [pair, count] : ir_pairs) {
    if (count > std::sqrt(params.delta) * t) {
      rh.malicious_pairs.push_back(pair);
      ++b_deg[static_cast<std::size_t>(pair.first)];
      ++b_deg[static_cast<std::size_t>(pair.second)];
    }
  }
  for (int i = 1; i <= t; ++i) {
    if (b_deg[static_cast<std::size_t>(i)] > std::pow(params.delta, 0.25) * t) rh.malicious_vertices.push_back(i);
  }
  auto malicious = [&](int i) {
    return std::find(rh.malicious_vertices.begin(), rh.malicious_vertices.end(), i) != rh.malicious_vertices.end();
  };
  for (const Triple& e : rh.dense) {
    if (std::binary_search(rh.irregular.begin(), rh.irregular.end(), e)) continue;
    if (malicious(e.a) || malicious(e.b) || malicious(e.c)) continue;
    rh.K.push_back(e);
  }
  return rh;
}

StageFailure::StageFailure(std::string stage, ErrorKind cause, const std::string& message)
    : Error(ErrorKind::stage_failure, "stage " + stage + ": " + message), stage_(std::move(stage)), cause_(cause) {}

namespace {

// Joins paths end to end and inserts loose vertices; all state in host labels.
class PathJoiner {
 public:
  PathJoiner(const Hypergraph3& h, const LongPathParams& params, VertexSet spare, VertexSet reservoir_pool)
      : h_(h), params_(params), spare_(std::move(spare)), reservoir_(std::move(reservoir_pool)) {}

  bool append(std::vector<Vertex>& q, const std::vector<Vertex>& p, std::vector<std::string>& notes) {
    if (q.empty()) {
      q = p;
      return true;
    }
    const std::vector<Vertex> rev(p.rbegin(), p.rend());
    for (const auto* cand : {&p, &rev}) {
      if (join_direct(q, *cand)) return true;
    }
    for (const auto* pool : {&spare_, &reservoir_}) {
      for (const auto* cand : {&p, &rev}) {
        if (join_through(q, *cand, *pool)) return true;
      }
    }
    notes.push_back("dropped a cover path of " + std::to_string(p.size()) + " vertices: no join found");
    return false;
  }

  // Inserts spare and reservoir vertices wherever the three triples allow.
  void saturate(std::vector<Vertex>& q) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const VertexSet* pool : {&spare_, &reservoir_}) {
        for (Vertex v : pool->to_vector()) {
          if (insert(q, v)) {
            release(v);
            changed = true;
          }
        }
      }
    }
  }

  void release(Vertex v) {
    spare_.erase(v);
    reservoir_.erase(v);
  }

 private:
  bool join_direct(std::vector<Vertex>& q, const std::vector<Vertex>& p) {
    std::size_t k = q.size();
    if (!h_.has_edge(q[k - 2], q[k - 1], p[0]) || !h_.has_edge(q[k - 1], p[0], p[1])) return false;
    q.insert(q.end(), p.begin(), p.end());
    return true;
  }

  bool join_through(std::vector<Vertex>& q, const std::vector<Vertex>& p, const VertexSet& pool) {
    OrderedPair from{q[q.size() - 2], q.back()}, to{p[0], p[1]};
    VertexSet allowed = pool;
    for (Vertex v : {from.first, from.second, to.first, to.second}) allowed.erase(v);
    for (int L = 3; L <= std::max(3, params_.L); ++L) {
      if (allowed.size() < static_cast<std::size_t>(L - 2)) break;
      ConnectorParams cp;
      cp.alpha = params_.alpha;
      cp.L = L;
      cp.budget = SearchBudget{std::min<std::uint64_t>(params_.budget.max_nodes, 20000), std::nullopt};
      cp.seed = Rng::derive(params_.seed, seed_tag_++);
      try {
        TightPath link = connect_pairs(h_, from, to, L, allowed, cp);
        for (std::size_t i = 2; i + 2 < link.vertices.size(); ++i) {
          q.push_back(link.vertices[i]);
          release(link.vertices[i]);
        }
        q.insert(q.end(), p.begin(), p.end());
        return true;
      } catch (const ConnectFailure&) {
      }
    }
    return false;
  }

  bool insert(std::vector<Vertex>& q, Vertex v) {
    const std::size_t k = q.size();
    if (k >= 2 && h_.has_edge(q[k - 2], q[k - 1], v)) {
      q.push_back(v);
      return true;
    }
    if (k >= 2 && h_.has_edge(v, q[0], q[1])) {
      q.insert(q.begin(), v);
      return true;
    }
    // between q[i] and q[i+1]
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (i >= 1 && !h_.has_edge(q[i - 1], q[i], v)) continue;
      if (!h_.has_edge(q[i], v, q[i + 1])) continue;
      if (i + 2 < k && !h_.has_edge(v, q[i + 1], q[i + 2])) continue;
      q.insert(q.begin() + static_cast<long>(i) + 1, v);
      return true;
    }
    return false;
  }

  const Hypergraph3& h_;
  const LongPathParams& params_;
  VertexSet spare_;
  VertexSet reservoir_;
  std::uint64_t seed_tag_ = 0;
};

}  // namespace

LongPathResult build_long_path(const Hypergraph3& h, const Reservoir& r, const AbsorbingPath& pa,
                               const LongPathParams& params) {
  const int n = h.n();
  LongPathResult out;
  const VertexSet reservoir = r.as_set(n);
  const VertexSet on_pa = VertexSet::of(n, pa.path.vertices);
  const VertexSet keep = VertexSet::of(n, params.keep_free);
  std::vector<Vertex> eligible;
  for (Vertex v = 1; v <= n; ++v) {
    if (!reservoir.contains(v) && !on_pa.contains(v)) eligible.push_back(v);
  }
  out.eligible = eligible.size();
  if (eligible.size() < 9) throw StageFailure("reduce", ErrorKind::infeasible, "fewer than 9 eligible vertices");

  InducedSubgraph sub = induced_subhypergraph(h, eligible);
  CoverParams cp = params.cover;
  cp.t = std::min(cp.t, sub.graph.n() / 3);
  ReducedHypergraph rh;
  try {
    rh = reduce(sub.graph, cp);
  } catch (const Error& e) {
    throw StageFailure("reduce", e.kind(), e.what());
  }
  for (const auto& w : rh.warnings) out.notes.push_back(w);

  std::vector<Triple> k_edges = rh.K;
  MatchingReport mr;
  if (!k_edges.empty()) {
    Hypergraph3 K(rh.t, k_edges);
    mr = find_large_matching(K, rh.malicious_pairs, params.alpha.value(), params.beta);
    if (!mr.excluded_degree_ok) out.notes.push_back("malicious-pair graph exceeds the beta n degree bound");
  }
  out.matched_triplets = mr.matching.edges.size();

  std::vector<std::vector<Vertex>> pieces;
  const double m3 = static_cast<double>(rh.m) * rh.m * rh.m;
  for (const Triple& e : mr.matching.edges) {
    TripartiteView view{sub.graph, rh.parts[e.a - 1], rh.parts[e.b - 1], rh.parts[e.c - 1]};
    CoverParams local = cp;
    local.d = static_cast<double>(rh.crossing[e]) / m3;
    try {
      for (const TightPath& p : cover_triplet_with_paths(view, local).paths) {
        std::vector<Vertex> mapped;
        for (Vertex v : p.vertices) mapped.push_back(sub.old_label[static_cast<std::size_t>(v)]);
        pieces.push_back(std::move(mapped));
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::hypothesis_violated) throw StageFailure("cover", err.kind(), err.what());
      out.notes.push_back("triplet " + to_string(e) + " skipped: " + err.what());
    }
  }
  out.cover_paths = pieces.size();
  if (pieces.empty()) throw StageFailure("cover", ErrorKind::not_found, "no triplet produced a cover path");

  VertexSet spare = VertexSet::of(n, eligible);
  for (const auto& p : pieces) {
    for (Vertex v : p) spare.erase(v);
  }
  VertexSet pool = reservoir;
  pool.subtract(keep.words());
  PathJoiner joiner(h, params, spare, pool);
  std::vector<Vertex> q;
  for (const auto& p : pieces) {
    if (!joiner.append(q, p, out.notes)) {
      for (Vertex v : p) spare.insert(v);
    }
  }
  if (params.saturate) joiner.saturate(q);

  out.path.vertices = std::move(q);
  auto verdict = validate_tight_path(h, out.path);
  if (!verdict.valid) throw StageFailure("connect", ErrorKind::verification_failed, verdict.reason);
  for (Vertex v : out.path.vertices) {
    if (reservoir.contains(v)) ++out.reservoir_used;
    else ++out.covered;
    if (on_pa.contains(v) || keep.contains(v)) {
      throw StageFailure("connect", ErrorKind::verification_failed, "long path touches a protected vertex");
    }
  }
  return out;
}

}  // namespace tightham
