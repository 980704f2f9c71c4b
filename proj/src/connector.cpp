#include "tightham/connector.hpp"

#include <algorithm>

#include "tightham/oracle.hpp"
#include "tightham/rng.hpp"

namespace tightham {

ClimbStuck::ClimbStuck(TightWalk partial, int index)
    : Error(ErrorKind::stuck, "climb-up walk stuck at index " + std::to_string(index)),
      partial_(std::move(partial)),
      index_(index) {}

ConnectFailure::ConnectFailure(bool exhaustive, const std::string& message)
    : Error(exhaustive ? ErrorKind::not_found : ErrorKind::not_found_within_budget, message),
      exhaustive_(exhaustive) {}

StructuredLayout structured_layout(const Rational& alpha) {
  check_alpha(alpha);
  StructuredLayout s;
  s.climb_steps = static_cast<int>(alpha.ceil_divide(2));
  // smallest even integer >= 1/alpha + 1
  int m = static_cast<int>(alpha.ceil_divide(1)) + 1;
  if (m % 2) ++m;
  s.m = m;
  s.L = 2 * s.climb_steps + 3 * s.m + 6;
  s.integral = alpha.den() % alpha.num() == 0;
  return s;
}

int climb_bound(int n, const Rational& alpha, int i) {
  Rational climb = alpha * Rational(static_cast<std::int64_t>(n) * (i - 2), 4);
  Rational half(n, 2);
  Rational bound = std::min(climb, half) + alpha * Rational(n, 4);
  return static_cast<int>(bound.ceil_times(1));
}

namespace {

// Fills `filters.size()` slots between a fixed head pair and a fixed tail pair
// so that every consecutive triple is an edge. Slot i draws from filters[i]
// minus `used`. Randomised depth-first search with last-slot lookahead.
class SlotFiller {
 public:
  SlotFiller(const Hypergraph3& h, Rng& rng, BudgetMeter& meter) : h_(h), rng_(rng), meter_(meter) {}

  // Returns true and appends to `out` on success. `complete` is cleared when
  // the budget interrupted the search.
  bool fill(OrderedPair head, OrderedPair tail, const std::vector<const VertexSet*>& filters, VertexSet& used,
            std::vector<Vertex>& out, std::uint64_t node_cap) {
    head_ = head;
    tail_ = tail;
    filters_ = &filters;
    used_ = &used;
    seq_.assign({head.first, head.second});
    cap_ = meter_.nodes() + node_cap;
    if (!rec()) return false;
    out.insert(out.end(), seq_.begin() + 2, seq_.end());
    return true;
  }

  bool complete() const { return complete_; }

 private:
  bool rec() {
    const auto& filters = *filters_;
    const std::size_t slot = seq_.size() - 2;
    const Vertex p2 = seq_[seq_.size() - 2], p1 = seq_.back();
    if (slot == filters.size()) return h_.has_edge(p2, p1, tail_.first) && h_.has_edge(p1, tail_.first, tail_.second);

    VertexSet cands = *filters[slot];
    cands.subtract(used_->words());
    cands.intersect(h_.neighbors(p2, p1));
    const bool last = slot + 1 == filters.size();
    if (last) {
      cands.intersect(h_.neighbors(p1, tail_.first));
      cands.intersect(h_.neighbors(tail_.first, tail_.second));
    }
    std::vector<Vertex> order = cands.to_vector();
    rng_.shuffle(std::span<Vertex>(order));
    for (Vertex v : order) {
      if (!meter_.tick() || meter_.nodes() > cap_) {
        complete_ = false;
        return false;
      }
      if (slot + 2 == filters.size() && !has_closing_vertex(p1, v)) continue;
      used_->insert(v);
      seq_.push_back(v);
      if (rec()) return true;
      seq_.pop_back();
      used_->erase(v);
    }
    return false;
  }

  // Lookahead for the second-to-last slot.
  bool has_closing_vertex(Vertex p1, Vertex v) {
    VertexSet c = *filters_->back();
    c.subtract(used_->words());
    c.erase(v);
    c.intersect(h_.neighbors(p1, v));
    c.intersect(h_.neighbors(v, tail_.first));
    c.intersect(h_.neighbors(tail_.first, tail_.second));
    return !c.empty();
  }

  const Hypergraph3& h_;
  Rng& rng_;
  BudgetMeter& meter_;
  OrderedPair head_, tail_;
  const std::vector<const VertexSet*>* filters_ = nullptr;
  VertexSet* used_ = nullptr;
  std::vector<Vertex> seq_;
  std::uint64_t cap_ = 0;
  bool complete_ = true;
};

VertexSet endpoints(int n, OrderedPair from, OrderedPair to) {
  VertexSet s(n);
  for (Vertex v : {from.first, from.second, to.first, to.second}) s.insert(v);
  return s;
}

TightPath assemble(OrderedPair from, const std::vector<Vertex>& internal, OrderedPair to) {
  TightPath p;
  p.vertices.reserve(internal.size() + 4);
  p.vertices.push_back(from.first);
  p.vertices.push_back(from.second);
  p.vertices.insert(p.vertices.end(), internal.begin(), internal.end());
  p.vertices.push_back(to.first);
  p.vertices.push_back(to.second);
  return p;
}

void certify(const Hypergraph3& h, const TightPath& p) {
  auto v = validate_tight_path(h, p);
  require(v.valid, ErrorKind::verification_failed, "connector produced an invalid path: " + v.reason);
}

TightPath connect_plain(const Hypergraph3& h, OrderedPair from, OrderedPair to, int L, const VertexSet& allowed,
                        const ConnectorParams& params) {
  Rng rng(params.seed);
  BudgetMeter meter(params.budget);
  SlotFiller filler(h, rng, meter);
  std::vector<const VertexSet*> filters(static_cast<std::size_t>(L - 2), &allowed);
  VertexSet used = endpoints(h.n(), from, to);
  std::vector<Vertex> internal;
  if (filler.fill(from, to, filters, used, internal, params.budget.max_nodes + 1)) {
    TightPath p = assemble(from, internal, to);
    certify(h, p);
    return p;
  }
  if (filler.complete()) throw ConnectFailure(true, "no connecting path exists");
  throw ConnectFailure(false, "no connecting path found within " + std::to_string(meter.nodes()) + " nodes");
}

// One random climb avoiding `used`; returns false when no admissible vertex.
bool climb_avoiding(const Hypergraph3& h, const Rational& alpha, OrderedPair start, int steps,
                    const VertexSet& allowed, VertexSet& used, Rng& rng, std::vector<Vertex>& out) {
  std::vector<Vertex> seq{start.first, start.second};
  for (int i = 3; i < steps + 3; ++i) {
    VertexSet c = allowed;
    c.subtract(used.words());
    c.intersect(h.neighbors(seq[seq.size() - 2], seq.back()));
    const int bound = climb_bound(h.n(), alpha, i);
    std::vector<Vertex> ok;
    c.for_each([&](Vertex v) {
      if (v >= bound) ok.push_back(v);
    });
    if (ok.empty()) return false;
    Vertex v = ok[rng.below(ok.size())];
    used.insert(v);
    seq.push_back(v);
  }
  out.assign(seq.begin() + 2, seq.end());
  return true;
}

// The two-step procedure: climb from both ends, pick a middle pair (a,b) with
// many common neighbours of both climbed pairs, and bridge each side by a walk
// alternating through those neighbours' link graphs.
TightPath connect_structured(const Hypergraph3& h, OrderedPair from, OrderedPair to, int L, const VertexSet& allowed,
                             const ConnectorParams& params) {
  StructuredLayout layout = structured_layout(params.alpha);
  int m = params.m ? params.m : layout.m;
  int min_m = static_cast<int>(params.alpha.ceil_divide(1)) + 1;
  require(m % 2 == 0 && m >= min_m, ErrorKind::invalid_argument,
          "structured mode needs m even and >= " + std::to_string(min_m));
  const int c = layout.climb_steps;
  const int expected = 2 * c + 3 * m + 6;
  require(L == expected, ErrorKind::invalid_argument,
          "structured mode needs L = " + std::to_string(expected) + ", got " + std::to_string(L));

  Rng rng(params.seed);
  BudgetMeter meter(params.budget);
  SlotFiller filler(h, rng, meter);
  const VertexSet ends = endpoints(h.n(), from, to);
  const int sample_pairs = 64;

  while (!meter.exhausted()) {
    if (!meter.tick()) break;
    VertexSet used = ends;
    std::vector<Vertex> left, right;
    if (!climb_avoiding(h, params.alpha, from, c, allowed, used, rng, left)) continue;
    if (!climb_avoiding(h, params.alpha, to.reversed(), c, allowed, used, rng, right)) continue;
    OrderedPair lp{left.size() >= 2 ? left[left.size() - 2] : from.second, left.back()};
    std::reverse(right.begin(), right.end());
    OrderedPair rp{right.front(), right.size() >= 2 ? right[1] : to.first};

    VertexSet free = allowed;
    free.subtract(used.words());
    VertexSet u = free, w = free;
    u.intersect(h.neighbors(lp.first, lp.second));
    w.intersect(h.neighbors(rp.first, rp.second));

    // Middle pair: best of a few random candidates by the smaller side count.
    std::vector<Vertex> pool = free.to_vector();
    if (pool.size() < 2) continue;
    std::size_t best_score = 0;
    OrderedPair mid{};
    for (int k = 0; k < sample_pairs; ++k) {
      Vertex a = pool[rng.below(pool.size())], b = pool[rng.below(pool.size())];
      if (a == b) continue;
      BitRow ab = h.neighbors(a, b);
      std::size_t score = std::min(u.count_common(ab), w.count_common(ab));
      if (score > best_score) best_score = score, mid = {a, b};
    }
    if (best_score < static_cast<std::size_t>(m / 2 + 1)) continue;
    used.insert(mid.first);
    used.insert(mid.second);
    VertexSet uab = u, wab = w;
    uab.intersect(h.neighbors(mid.first, mid.second));
    wab.intersect(h.neighbors(mid.first, mid.second));
    free.erase(mid.first);
    free.erase(mid.second);

    auto pattern = [&](const VertexSet* hub) {
      std::vector<const VertexSet*> f{hub};
      for (int k = 0; k < m / 2; ++k) {
        f.push_back(&free);
        f.push_back(&free);
        f.push_back(hub);
      }
      return f;
    };
    std::vector<Vertex> internal = left;
    const std::uint64_t cap = 20000;
    if (!filler.fill(lp, mid, pattern(&uab), used, internal, cap)) continue;
    internal.push_back(mid.first);
    internal.push_back(mid.second);
    if (!filler.fill(mid, rp, pattern(&wab), used, internal, cap)) continue;
    internal.insert(internal.end(), right.begin(), right.end());
    TightPath p = assemble(from, internal, to);
    certify(h, p);
    return p;
  }
  throw ConnectFailure(false, "structured connection not found within " + std::to_string(meter.nodes()) + " nodes");
}

}  // namespace

TightWalk climb_up_walk(const Hypergraph3& h, OrderedPair start, const ConnectorParams& params, int steps) {
  require(steps >= 1, ErrorKind::invalid_argument, "climb_up_walk needs steps >= 1");
  check_vertex(h, start.first);
  check_vertex(h, start.second);
  require(start.first != start.second, ErrorKind::invalid_argument, "start pair must be two distinct vertices");
  check_alpha(params.alpha);
  Rng rng(params.seed);
  TightWalk walk{{start.first, start.second}};
  for (int i = 3; i < steps + 3; ++i) {
    const auto& v = walk.vertices;
    const int bound = climb_bound(h.n(), params.alpha, i);
    std::vector<Vertex> ok;
    VertexSet c(h.n());
    c.unite(h.neighbors(v[v.size() - 2], v.back()));
    c.for_each([&](Vertex x) {
      if (x >= bound) ok.push_back(x);
    });
    if (ok.empty()) throw ClimbStuck(walk, i);
    walk.vertices.push_back(ok[rng.below(ok.size())]);
  }
  return walk;
}

TightPath connect_pairs(const Hypergraph3& h, OrderedPair from, OrderedPair to, int L, const VertexSet& allowed,
                        const ConnectorParams& params) {
  check_connection_request(h, from, to, L, allowed);
  if (params.mode == ConnectMode::structured) return connect_structured(h, from, to, L, allowed, params);
  return connect_plain(h, from, to, L, allowed, params);
}

std::pair<OrderedPair, OrderedPair> random_pair_pair(const std::vector<Vertex>& pool, std::uint64_t seed) {
  require(pool.size() >= 4, ErrorKind::invalid_argument, "need four vertices for a pair of pairs");
  Rng rng(seed);
  std::vector<Vertex> p = pool;
  for (std::size_t i = 0; i < 4; ++i) std::swap(p[i], p[i + rng.below(p.size() - i)]);
  return {{p[0], p[1]}, {p[2], p[3]}};
}

Reservoir sample_reservoir(const Hypergraph3& h, const Rational& theta, int L, const ConnectorParams& params,
                           const ReservoirOptions& options) {
  const int n = h.n();
  const Rational t2 = theta * theta;
  require(theta > Rational(0, 1) && theta < Rational(1, 1), ErrorKind::invalid_argument, "theta must lie in (0, 1)");
  require(t2 * Rational(n, 1) >= Rational(8, 1), ErrorKind::invalid_argument,
          "reservoir needs theta^2 n >= 8, got " + (t2 * Rational(n, 1)).str());
  require(L >= 3, ErrorKind::invalid_argument, "reservoir needs L >= 3");

  const double p = (1.0 - 1.0 / (10.0 * L)) * t2.value();
  Rng rng(params.seed);
  Reservoir r;
  r.theta = theta;
  r.L = L;
  bool sized = false;
  for (int attempt = 1; attempt <= options.max_attempts && !sized; ++attempt) {
    r.attempts = attempt;
    r.members.clear();
    for (Vertex v = 1; v <= n; ++v) {
      if (rng.uniform01() < p) r.members.push_back(v);
    }
    auto size = static_cast<std::int64_t>(r.members.size());
    // theta^2 n / 2 <= |R| <= theta^2 n, compared exactly.
    sized = Rational(2 * size, 1) >= t2 * Rational(n, 1) && Rational(size, 1) <= t2 * Rational(n, 1);
  }
  require(sized, ErrorKind::infeasible, "reservoir size out of range after " + std::to_string(options.max_attempts) +
                                            " samples");

  const VertexSet inside = r.as_set(n);
  std::vector<Vertex> outside;
  for (Vertex v = 1; v <= n; ++v) {
    if (!inside.contains(v)) outside.push_back(v);
  }
  r.verified = true;
  for (int k = 0; k < options.probes; ++k) {
    auto [from, to] = random_pair_pair(outside, Rng::derive(params.seed, 1000 + static_cast<std::uint64_t>(k)));
    ConnectorParams probe = params;
    probe.mode = ConnectMode::plain;
    probe.seed = Rng::derive(params.seed, 2000 + static_cast<std::uint64_t>(k));
    bool ok = true;
    try {
      connect_pairs(h, from, to, L, inside, probe);
    } catch (const ConnectFailure&) {
      ok = false;
    }
    if (!ok) {
      r.verified = false;
      r.failing_probes.push_back({from, to, false});
    }
  }
  return r;
}

TightPath connect_through_reservoir(const Hypergraph3& h, OrderedPair from, OrderedPair to, const Reservoir& r,
                                    const VertexSet& excluded, const ConnectorParams& params) {
  VertexSet allowed = r.as_set(h.n());
  allowed.subtract(excluded.words());
  for (Vertex v : {from.first, from.second, to.first, to.second}) {
    check_vertex(h, v);
    allowed.erase(v);
  }
  return connect_pairs(h, from, to, r.L, allowed, params);
}

}  // namespace tightham
