#include "tightham/absorption.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

#include "tightham/rng.hpp"

namespace tightham {
namespace {

void check_tuple(const Hypergraph3& h, Vertex x, const Absorber& a) {
  require(a.s >= 1 && a.tuple.size() == static_cast<std::size_t>(4 * a.s), ErrorKind::invalid_argument,
          "malformed absorber: tuple must hold 4s vertices");
  check_vertex(h, x);
  VertexSet seen(h.n());
  for (Vertex v : a.tuple) {
    check_vertex(h, v);
    require(v != x, ErrorKind::invalid_argument, "malformed absorber: tuple contains x");
    require(!seen.contains(v), ErrorKind::invalid_argument,
            "malformed absorber: repeated vertex " + std::to_string(v));
    seen.insert(v);
  }
}

// Appends the missing triples of the tight path `seq`.
void missing_triples(const Hypergraph3& h, std::initializer_list<Vertex> seq, std::vector<Triple>& out) {
  std::vector<Vertex> v(seq);
  for (std::size_t i = 0; i + 2 < v.size(); ++i) {
    if (!h.has_edge(v[i], v[i + 1], v[i + 2])) out.push_back(make_triple(v[i], v[i + 1], v[i + 2]));
  }
}

}  // namespace

AbsorberCheck is_absorber(const Hypergraph3& h, Vertex x, const Absorber& a) {
  check_tuple(h, x, a);
  std::vector<Triple> miss;
  const int s = a.s;
  missing_triples(h, {a.v(1), a.w(1), x, a.y(1), a.z(1)}, miss);
  for (int i = 1; i < s; ++i) {
    missing_triples(h, {a.v(i), a.w(i), a.y(i + 1), a.z(i + 1)}, miss);
    missing_triples(h, {a.v(i + 1), a.w(i + 1), a.y(i), a.z(i)}, miss);
  }
  missing_triples(h, {a.v(s), a.w(s), a.y(s), a.z(s)}, miss);
  std::sort(miss.begin(), miss.end());
  miss.erase(std::unique(miss.begin(), miss.end()), miss.end());
  return {miss.empty(), std::move(miss)};
}

OrderedPair outward_pair(const Absorber& a, int slot) {
  if (slot < a.s) return {a.w(slot + 1), a.v(slot + 1)};
  int j = slot - a.s + 1;
  return {a.y(j), a.z(j)};
}

std::vector<Segment> before_segments(const Absorber& a) {
  std::vector<Segment> out;
  for (int i = 1; i < a.s; i += 2) {
    out.push_back({{a.v(i), a.w(i), a.y(i + 1), a.z(i + 1)}, i - 1, a.s + i});
    out.push_back({{a.v(i + 1), a.w(i + 1), a.y(i), a.z(i)}, i, a.s + i - 1});
  }
  return out;
}

std::vector<Segment> after_segments(const Absorber& a, Vertex x) {
  std::vector<Segment> out;
  out.push_back({{a.v(1), a.w(1), x, a.y(1), a.z(1)}, 0, a.s});
  for (int i = 2; i + 1 <= a.s - 1; i += 2) {
    out.push_back({{a.v(i), a.w(i), a.y(i + 1), a.z(i + 1)}, i - 1, a.s + i});
    out.push_back({{a.v(i + 1), a.w(i + 1), a.y(i), a.z(i)}, i, a.s + i - 1});
  }
  out.push_back({{a.v(a.s), a.w(a.s), a.y(a.s), a.z(a.s)}, a.s - 1, 2 * a.s - 1});
  return out;
}

namespace {

// Slot pairs of the segments in each configuration, without vertices.
std::vector<std::pair<int, int>> segment_slots(int s, bool after) {
  Absorber shape{0, s, std::vector<Vertex>(static_cast<std::size_t>(4 * s), 0)};
  std::vector<std::pair<int, int>> out;
  for (const Segment& seg : after ? after_segments(shape, 0) : before_segments(shape)) {
    out.emplace_back(seg.s_slot, seg.e_slot);
  }
  return out;
}

WiringTopology alternating_topology(int s) {
  WiringTopology t;
  t.entry = 0;
  t.exit = s - 1;
  for (int j = 1; j < s; ++j) {
    if (j % 2) {
      t.links.emplace_back(s + j - 1, s + j);  // E_j - E_{j+1}
    } else {
      t.links.emplace_back(j - 1, j);  // S_j - S_{j+1}
    }
  }
  return t;
}

void enumerate_matchings(std::vector<int>& free, std::vector<std::pair<int, int>>& cur,
                         std::vector<std::vector<std::pair<int, int>>>& out) {
  if (free.empty()) {
    out.push_back(cur);
    return;
  }
  int a = free.front();
  for (std::size_t k = 1; k < free.size(); ++k) {
    int b = free[k];
    std::vector<int> rest;
    for (std::size_t i = 1; i < free.size(); ++i) {
      if (i != k) rest.push_back(free[i]);
    }
    cur.emplace_back(a, b);
    enumerate_matchings(rest, cur, out);
    cur.pop_back();
  }
}

std::vector<WiringTopology> compute_topologies(int s) {
  std::vector<WiringTopology> out{alternating_topology(s)};
  if (s > 6) return out;
  const int slots = 2 * s;
  for (int entry = 0; entry < slots; ++entry) {
    for (int exit = 0; exit < slots; ++exit) {
      if (exit == entry) continue;
      std::vector<int> free;
      for (int k = 0; k < slots; ++k) {
        if (k != entry && k != exit) free.push_back(k);
      }
      std::vector<std::pair<int, int>> cur;
      std::vector<std::vector<std::pair<int, int>>> matchings;
      enumerate_matchings(free, cur, matchings);
      for (auto& links : matchings) {
        WiringTopology t{entry, exit, std::move(links)};
        if (t.entry == out[0].entry && t.exit == out[0].exit) {
          auto a = t.links, b = out[0].links;
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          if (a == b) continue;
        }
        if (traverse(s, t, false) && traverse(s, t, true)) out.push_back(std::move(t));
      }
    }
  }
  return out;
}

}  // namespace

const std::vector<WiringTopology>& wiring_topologies(int s) {
  require(s >= 2 && s % 2 == 0, ErrorKind::invalid_argument, "absorber size s must be even");
  static std::mutex mu;
  static std::map<int, std::vector<WiringTopology>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, compute_topologies(s)).first;
  return it->second;
}

std::optional<Traversal> traverse(int s, const WiringTopology& topology, bool after) {
  const auto segs = segment_slots(s, after);
  const int slots = 2 * s;
  std::vector<int> seg_of(static_cast<std::size_t>(slots), -1), partner(static_cast<std::size_t>(slots), -1);
  for (std::size_t k = 0; k < segs.size(); ++k) {
    seg_of[static_cast<std::size_t>(segs[k].first)] = static_cast<int>(k);
    seg_of[static_cast<std::size_t>(segs[k].second)] = static_cast<int>(k);
  }
  for (auto [a, b] : topology.links) {
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
  }
  Traversal t;
  std::vector<char> seen(segs.size(), 0);
  int cur = topology.entry;
  while (true) {
    int k = seg_of[static_cast<std::size_t>(cur)];
    if (seen[static_cast<std::size_t>(k)]) return std::nullopt;
    seen[static_cast<std::size_t>(k)] = 1;
    bool reversed = segs[static_cast<std::size_t>(k)].second == cur;
    int other = reversed ? segs[static_cast<std::size_t>(k)].first : segs[static_cast<std::size_t>(k)].second;
    t.order.push_back(k);
    t.reversed.push_back(reversed);
    if (other == topology.exit) break;
    cur = partner[static_cast<std::size_t>(other)];
    if (cur < 0) return std::nullopt;
  }
  if (t.order.size() != segs.size()) return std::nullopt;
  return t;
}

std::vector<Vertex> block_sequence(const Absorber& a, const Wiring& wiring, bool after, Vertex x) {
  const auto segs = after ? after_segments(a, x ? x : a.x) : before_segments(a);
  const Traversal& t = after ? wiring.after : wiring.before;
  // connector lookup by the slot it leaves from
  std::map<int, std::pair<const TightPath*, bool>> leaving;
  for (std::size_t k = 0; k < wiring.topology.links.size(); ++k) {
    auto [p, q] = wiring.topology.links[k];
    leaving[p] = {&wiring.connectors[k], false};
    leaving[q] = {&wiring.connectors[k], true};
  }
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    const Segment& seg = segs[static_cast<std::size_t>(t.order[i])];
    if (t.reversed[i]) {
      out.insert(out.end(), seg.vertices.rbegin(), seg.vertices.rend());
    } else {
      out.insert(out.end(), seg.vertices.begin(), seg.vertices.end());
    }
    if (i + 1 == t.order.size()) break;
    int exit_slot = t.reversed[i] ? seg.s_slot : seg.e_slot;
    auto [path, backwards] = leaving.at(exit_slot);
    const auto& v = path->vertices;
    if (backwards) {
      out.insert(out.end(), v.rbegin() + 2, v.rend() - 2);
    } else {
      out.insert(out.end(), v.begin() + 2, v.end() - 2);
    }
  }
  return out;
}

AbsorberStuck::AbsorberStuck(int stage, int attempts)
    : Error(ErrorKind::stuck, "absorber search stuck: furthest stage " + std::to_string(stage) + " after " +
                                  std::to_string(attempts) + " attempts"),
      stage_(stage),
      attempts_(attempts) {}

Absorber find_absorber(const Hypergraph3& h, Vertex x, int s, const VertexSet& forbidden,
                       const AbsorberParams& params) {
  check_vertex(h, x);
  check_alpha(params.alpha);
  require(s >= 2 && s % 2 == 0, ErrorKind::invalid_argument, "absorber size s must be even");
  const int n = h.n();
  Rng rng(params.seed);
  int furthest = 0;

  for (int attempt = 1; attempt <= params.max_attempts; ++attempt) {
    VertexSet taken = forbidden;
    taken.insert(x);
    std::vector<Vertex> t(static_cast<std::size_t>(4 * s), 0);
    auto at = [&](int i, int k) -> Vertex& { return t[static_cast<std::size_t>(4 * (i - 1) + k)]; };
    int stage = 1;
    VertexSet pool(n);

    // Picks a random member of pool ∩ rows, marks it taken; 0 if none.
    auto pick = [&](std::initializer_list<BitRow> rows) -> Vertex {
      VertexSet c = pool;
      c.subtract(taken.words());
      for (BitRow r : rows) c.intersect(r);
      std::size_t k = c.size();
      if (k == 0) return 0;
      Vertex v = c.nth(rng.below(k));
      taken.insert(v);
      return v;
    };
    auto set_pool = [&](int j) {
      pool.clear();
      std::int64_t lo = std::min<std::int64_t>(x + params.alpha.floor_times(static_cast<std::int64_t>(j) * n) / 2, n / 2);
      for (Vertex v = static_cast<Vertex>(std::max<std::int64_t>(lo, 1)); v <= n; ++v) pool.insert(v);
    };

    bool ok = true;
    set_pool(1);
    VertexSet any = VertexSet::full(n);
    Vertex w1 = pick({any.words()});
    Vertex v1 = w1 ? pick({h.neighbors(w1, x)}) : 0;
    Vertex y1 = v1 ? pick({h.neighbors(w1, x)}) : 0;
    Vertex z1 = y1 ? pick({h.neighbors(x, y1)}) : 0;
    ok = z1 != 0;
    if (ok) at(1, 0) = v1, at(1, 1) = w1, at(1, 2) = y1, at(1, 3) = z1;

    for (int i = 1; ok && i + 1 < s; ++i) {
      stage = i + 1;
      set_pool(i + 1);
      Vertex w = pick({h.neighbors(at(i, 2), at(i, 3))});
      Vertex v = w ? pick({h.neighbors(w, at(i, 2))}) : 0;
      Vertex y = v ? pick({h.neighbors(at(i, 0), at(i, 1))}) : 0;
      Vertex z = y ? pick({h.neighbors(at(i, 1), y)}) : 0;
      ok = z != 0;
      if (ok) at(i + 1, 0) = v, at(i + 1, 1) = w, at(i + 1, 2) = y, at(i + 1, 3) = z;
    }
    if (ok) {
      stage = s;
      set_pool(s);
      const int p = s - 1;
      Vertex w = pick({h.neighbors(at(p, 2), at(p, 3))});
      Vertex y = w ? pick({h.neighbors(at(p, 0), at(p, 1))}) : 0;
      Vertex v = y ? pick({h.neighbors(w, at(p, 2)), h.neighbors(w, y)}) : 0;
      Vertex z = v ? pick({h.neighbors(at(p, 1), y), h.neighbors(w, y)}) : 0;
      ok = z != 0;
      if (ok) at(s, 0) = v, at(s, 1) = w, at(s, 2) = y, at(s, 3) = z;
    }
    if (!ok) {
      furthest = std::max(furthest, stage);
      continue;
    }
    Absorber a{x, s, std::move(t)};
    auto check = is_absorber(h, x, a);
    require(check.valid, ErrorKind::verification_failed, "greedy absorber failed certification");
    return a;
  }
  throw AbsorberStuck(furthest, params.max_attempts);
}

std::size_t absorbing_path_size(int blocks, int s, int L) {
  if (blocks == 0) return 4;
  return static_cast<std::size_t>(L + 2) * static_cast<std::size_t>(blocks * s - 1) + 4;
}

namespace {

struct Builder {
  const Hypergraph3& h;
  const AbsorbingParams& params;
  VertexSet reservoir;
  VertexSet on_path;  // absorber tuples and connector internals
  VertexSet protect;  // explicit targets kept off the path
  std::uint64_t connector_seed;

  TightPath connect(OrderedPair from, OrderedPair to) {
    VertexSet allowed = VertexSet::full(h.n());
    allowed.subtract(reservoir.words());
    allowed.subtract(on_path.words());
    allowed.subtract(protect.words());
    for (Vertex v : {from.first, from.second, to.first, to.second}) allowed.erase(v);
    ConnectorParams cp;
    cp.alpha = params.alpha;
    cp.L = params.L;
    cp.budget = params.budget;
    cp.seed = Rng::derive(params.seed, connector_seed++);
    TightPath p = connect_pairs(h, from, to, params.L, allowed, cp);
    for (std::size_t i = 2; i + 2 < p.vertices.size(); ++i) on_path.insert(p.vertices[i]);
    return p;
  }

  // Tries the topologies in order; connectors of a failed topology are released.
  // x stays off the connectors so the after configuration cannot repeat it.
  Wiring wire(const Absorber& a) {
    const bool had_x = protect.contains(a.x);
    protect.insert(a.x);
    try {
      Wiring w = wire_topologies(a);
      if (!had_x) protect.erase(a.x);
      return w;
    } catch (...) {
      if (!had_x) protect.erase(a.x);
      throw;
    }
  }

  Wiring wire_topologies(const Absorber& a) {
    for (const WiringTopology& topo : wiring_topologies(a.s)) {
      VertexSet saved = on_path;
      Wiring w;
      w.topology = topo;
      bool ok = true;
      for (auto [p, q] : topo.links) {
        try {
          w.connectors.push_back(connect(outward_pair(a, p), outward_pair(a, q).reversed()));
        } catch (const ConnectFailure&) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        on_path = saved;
        continue;
      }
      w.before = *traverse(a.s, topo, false);
      w.after = *traverse(a.s, topo, true);
      auto before = validate_tight_path(h, {block_sequence(a, w, false)});
      auto after = validate_tight_path(h, {block_sequence(a, w, true)});
      require(before.valid && after.valid, ErrorKind::verification_failed,
              "wiring produced an invalid configuration: " + before.reason + after.reason);
      return w;
    }
    fail(ErrorKind::wiring_not_found, "no wiring connects the absorber for vertex " + std::to_string(a.x));
  }
};

TightPath trivial_path(const Hypergraph3& h, const VertexSet& avoid) {
  for (const Triple& t : h.edges()) {
    if (avoid.contains(t.a) || avoid.contains(t.b) || avoid.contains(t.c)) continue;
    // any ordering of the edge plus one vertex extending it
    const Vertex order[3][3] = {{t.a, t.b, t.c}, {t.b, t.a, t.c}, {t.a, t.c, t.b}};
    for (const auto& o : order) {
      VertexSet c(h.n());
      c.unite(h.neighbors(o[1], o[2]));
      c.subtract(avoid.words());
      c.erase(o[0]);
      if (Vertex d = c.first()) return {{o[0], o[1], o[2], d}};
    }
  }
  fail(ErrorKind::wiring_not_found, "no tight path of length 2 avoids the reservoir");
}

std::vector<int> compute_capacity(const Hypergraph3& h, const TightPath& path,
                                  const std::vector<RegistryEntry>& registry) {
  VertexSet on_path = VertexSet::of(h.n(), path.vertices);
  std::vector<int> cap(static_cast<std::size_t>(h.n()) + 1, 0);
  for (Vertex v = 1; v <= h.n(); ++v) {
    if (on_path.contains(v)) continue;
    for (const auto& e : registry) {
      if (is_absorber(h, v, e.absorber).valid) ++cap[static_cast<std::size_t>(v)];
    }
  }
  return cap;
}

}  // namespace

Wiring wire_absorber(const Hypergraph3& h, const Absorber& a, const VertexSet& forbidden,
                     const AbsorbingParams& params) {
  Builder b{h, params, forbidden, VertexSet::of(h.n(), a.tuple), VertexSet(h.n()), 0};
  b.protect.insert(a.x);
  return b.wire(a);
}

AbsorbingPath build_absorbing_path(const Hypergraph3& h, const Reservoir& r, const AbsorbingParams& params) {
  const int n = h.n();
  require(params.s >= 4 && params.s % 2 == 0, ErrorKind::invalid_argument, "absorbers need s even and >= 4");
  require(params.L >= 2, ErrorKind::invalid_argument, "connector length must be >= 2");
  require(params.target_capacity >= 0, ErrorKind::invalid_argument, "target capacity must be >= 0");
  check_alpha(params.alpha);
  const VertexSet reservoir = r.as_set(n);
  const auto limit = static_cast<std::size_t>(params.theta.floor_times(n));

  AbsorbingPath pa;
  pa.s = params.s;
  pa.L = params.L;
  if (params.target_capacity == 0) {
    pa.path = trivial_path(h, reservoir);
    pa.capacity.assign(static_cast<std::size_t>(n) + 1, 0);
    return pa;
  }

  Builder b{h, params, reservoir, VertexSet(n), VertexSet(n), 0};
  std::vector<Vertex> targets;
  if (params.targets) {
    targets = *params.targets;
    for (Vertex v : targets) {
      check_vertex(h, v);
      b.protect.insert(v);
    }
  } else {
    for (Vertex v = 1; v <= n; ++v) {
      if (!reservoir.contains(v)) targets.push_back(v);
    }
  }

  std::vector<Absorber> absorbers;
  std::vector<int> credit(static_cast<std::size_t>(n) + 1, 0);
  auto credit_absorber = [&](const Absorber& a) {
    for (Vertex v : targets) {
      if (!b.on_path.contains(v) && is_absorber(h, v, a).valid) ++credit[static_cast<std::size_t>(v)];
    }
  };
  auto neediest = [&]() -> Vertex {
    Vertex best = 0;
    for (Vertex v : targets) {
      if (b.on_path.contains(v) || credit[static_cast<std::size_t>(v)] >= params.target_capacity) continue;
      if (!best || credit[static_cast<std::size_t>(v)] < credit[static_cast<std::size_t>(best)]) best = v;
    }
    return best;
  };
  auto over_limit = [&](std::size_t blocks) {
    return absorbing_path_size(static_cast<int>(blocks), params.s, params.L) > limit;
  };

  if (params.selection == AbsorberSelection::sampled) {
    // Random tuples outside the reservoir; kept when certified for some
    // target and disjoint from the tuples kept so far.
    Rng rng(Rng::derive(params.seed, 77));
    std::vector<Vertex> pool;
    for (Vertex v = 1; v <= n; ++v) {
      if (!reservoir.contains(v) && !b.protect.contains(v)) pool.push_back(v);
    }
    const auto k = static_cast<std::size_t>(4 * params.s);
    for (int trial = 0; trial < params.sample_count && pool.size() >= k && !over_limit(absorbers.size() + 1); ++trial) {
      std::vector<Vertex> p = pool;
      for (std::size_t i = 0; i < k; ++i) std::swap(p[i], p[i + rng.below(p.size() - i)]);
      Absorber a{0, params.s, std::vector<Vertex>(p.begin(), p.begin() + static_cast<long>(k))};
      if (std::any_of(a.tuple.begin(), a.tuple.end(), [&](Vertex v) { return b.on_path.contains(v); })) continue;
      for (Vertex v : targets) {
        if (std::find(a.tuple.begin(), a.tuple.end(), v) == a.tuple.end() && !b.on_path.contains(v) &&
            is_absorber(h, v, a).valid) {
          a.x = v;
          break;
        }
      }
      if (!a.x) continue;
      for (Vertex v : a.tuple) b.on_path.insert(v);
      credit_absorber(a);
      absorbers.push_back(std::move(a));
    }
  } else {
    AbsorberParams ap{params.alpha, params.seed, 300};
    std::uint64_t tag = 0;
    for (Vertex x = neediest(); x; x = neediest()) {
      require(!over_limit(absorbers.size() + 1), ErrorKind::capacity_unreachable,
              "target capacity " + std::to_string(params.target_capacity) + " needs more than floor(theta n) = " +
                  std::to_string(limit) + " path vertices");
      VertexSet forbidden = b.reservoir;
      forbidden.unite(b.on_path.words());
      forbidden.unite(b.protect.words());
      // Among a few candidates keep the one serving the most needy targets.
      std::optional<Absorber> best;
      int best_score = -1, needy = 0;
      for (Vertex v : targets) {
        needy += !b.on_path.contains(v) && credit[static_cast<std::size_t>(v)] < params.target_capacity;
      }
      for (int cand = 0; cand < 8 && best_score < needy; ++cand) {
        ap.seed = Rng::derive(params.seed, 100000 + tag++);
        Absorber c;
        try {
          c = find_absorber(h, x, params.s, forbidden, ap);
        } catch (const AbsorberStuck&) {
          if (cand == 7 && !best) throw;
          continue;
        }
        int score = 0;
        for (Vertex v : targets) {
          if (b.on_path.contains(v) || credit[static_cast<std::size_t>(v)] >= params.target_capacity) continue;
          if (std::find(c.tuple.begin(), c.tuple.end(), v) == c.tuple.end() && is_absorber(h, v, c).valid) ++score;
        }
        if (score > best_score) {
          best_score = score;
          best = std::move(c);
        }
      }
      Absorber a = std::move(*best);
      for (Vertex v : a.tuple) b.on_path.insert(v);
      credit_absorber(a);
      absorbers.push_back(std::move(a));
    }
  }
  if (absorbers.empty()) {
    fail(ErrorKind::capacity_unreachable, "no absorber could be registered");
  }

  for (Absorber& a : absorbers) {
    RegistryEntry e;
    e.wiring = b.wire(a);
    e.absorber = std::move(a);
    pa.registry.push_back(std::move(e));
  }
  for (std::size_t k = 0; k + 1 < pa.registry.size(); ++k) {
    const auto& cur = pa.registry[k];
    const auto& next = pa.registry[k + 1];
    try {
      pa.links.push_back(b.connect(outward_pair(cur.absorber, cur.wiring.topology.exit),
                                   outward_pair(next.absorber, next.wiring.topology.entry).reversed()));
    } catch (const ConnectFailure& e) {
      fail(ErrorKind::wiring_not_found, std::string("cannot link consecutive absorbers: ") + e.what());
    }
  }

  for (std::size_t k = 0; k < pa.registry.size(); ++k) {
    auto& e = pa.registry[k];
    auto block = block_sequence(e.absorber, e.wiring, false);
    e.position = pa.path.vertices.size();
    e.length = block.size();
    pa.path.vertices.insert(pa.path.vertices.end(), block.begin(), block.end());
    if (k < pa.links.size()) {
      const auto& l = pa.links[k].vertices;
      pa.path.vertices.insert(pa.path.vertices.end(), l.begin() + 2, l.end() - 2);
    }
  }
  auto verdict = validate_tight_path(h, pa.path);
  require(verdict.valid, ErrorKind::verification_failed, "assembled absorbing path is invalid: " + verdict.reason);
  require(pa.path.vertices.size() == absorbing_path_size(static_cast<int>(pa.registry.size()), params.s, params.L),
          ErrorKind::verification_failed, "absorbing path size differs from the block arithmetic");
  require(pa.path.vertices.size() <= limit, ErrorKind::capacity_unreachable, "absorbing path exceeds theta n");

  pa.capacity = compute_capacity(h, pa.path, pa.registry);
  const VertexSet final_path = VertexSet::of(n, pa.path.vertices);
  for (Vertex v : targets) {
    if (!final_path.contains(v)) {
      require(pa.capacity[static_cast<std::size_t>(v)] >= params.target_capacity, ErrorKind::capacity_unreachable,
              "vertex " + std::to_string(v) + " ends with capacity " +
                  std::to_string(pa.capacity[static_cast<std::size_t>(v)]));
    }
  }
  return pa;
}

TightPath absorb_set(const AbsorbingPath& pa, const std::vector<Vertex>& X, const Hypergraph3& h) {
  if (X.empty()) return pa.path;
  const int n = h.n();
  const VertexSet on_path = VertexSet::of(n, pa.path.vertices);
  VertexSet xs(n);
  for (Vertex x : X) {
    check_vertex(h, x);
    require(!on_path.contains(x), ErrorKind::invalid_argument,
            "vertex " + std::to_string(x) + " already lies on the absorbing path");
    require(!xs.contains(x), ErrorKind::invalid_argument, "repeated vertex in X");
    xs.insert(x);
  }

  // Kuhn's augmenting paths: each x gets a distinct registry entry.
  std::vector<std::vector<std::size_t>> options(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (std::size_t k = 0; k < pa.registry.size(); ++k) {
      if (is_absorber(h, X[i], pa.registry[k].absorber).valid) options[i].push_back(k);
    }
    if (options[i].empty()) fail(ErrorKind::no_absorber, "no registered absorber for vertex " + std::to_string(X[i]));
  }
  std::vector<long> owner(pa.registry.size(), -1);
  for (std::size_t i = 0; i < X.size(); ++i) {
    std::vector<char> seen(pa.registry.size(), 0);
    auto augment = [&](auto&& self, std::size_t u) -> bool {
      for (std::size_t k : options[u]) {
        if (seen[k]) continue;
        seen[k] = 1;
        if (owner[k] < 0 || self(self, static_cast<std::size_t>(owner[k]))) {
          owner[k] = static_cast<long>(u);
          return true;
        }
      }
      return false;
    };
    if (!augment(augment, i)) {
      fail(ErrorKind::no_absorber, "not enough distinct absorbers; vertex " + std::to_string(X[i]) + " left over");
    }
  }

  TightPath out;
  for (std::size_t k = 0; k < pa.registry.size(); ++k) {
    const auto& e = pa.registry[k];
    auto block = owner[k] >= 0 ? block_sequence(e.absorber, e.wiring, true, X[static_cast<std::size_t>(owner[k])])
                               : block_sequence(e.absorber, e.wiring, false);
    out.vertices.insert(out.vertices.end(), block.begin(), block.end());
    if (k < pa.links.size()) {
      const auto& l = pa.links[k].vertices;
      out.vertices.insert(out.vertices.end(), l.begin() + 2, l.end() - 2);
    }
  }
  auto verdict = validate_tight_path(h, out);
  require(verdict.valid, ErrorKind::verification_failed, "absorption broke the path: " + verdict.reason);
  require(out.start() == pa.path.start() && out.end() == pa.path.end(), ErrorKind::verification_failed,
          "absorption changed the end pairs");
  require(out.vertices.size() == pa.path.vertices.size() + X.size(), ErrorKind::verification_failed,
          "absorption changed the vertex count unexpectedly");
  return out;
}

}  // namespace tightham
