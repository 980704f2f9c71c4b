#include "tightham/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "tightham/rng.hpp"

namespace tightham {

void check_pipeline_params(const PipelineParams& p, int n) {
  check_alpha(p.alpha);
  require(p.s >= 4 && p.s % 2 == 0, ErrorKind::invalid_argument, "s must be even and at least 4");
  require(p.L >= 3, ErrorKind::invalid_argument, "L must be at least 3");
  require(p.theta > Rational(0, 1) && p.theta <= Rational(1, 1), ErrorKind::invalid_argument,
          "theta must lie in (0, 1]");
  require(p.target_capacity >= 0, ErrorKind::invalid_argument, "target capacity must be nonnegative");
  require((p.theta * p.theta).floor_times(n) >= 8, ErrorKind::invalid_argument,
          "theta^2 n must be at least 8 (theta=" + p.theta.str() + ", n=" + std::to_string(n) + ")");
}

namespace {

enum Tag : std::uint64_t { reservoir_tag = 1, split_tag, absorbing_tag, long_path_tag, p1_tag, p2_tag };

std::vector<Vertex> inner(const TightPath& p) {
  if (p.vertices.size() <= 4) return {};
  return {p.vertices.begin() + 2, p.vertices.end() - 2};
}

class Run {
 public:
  Run(const Hypergraph3& h, const PipelineParams& params) : h_(h), p_(params) {
    report_.n = h.n();
    report_.params = params;
  }

  RunReport execute() {
    const int n = h_.n();
    bool ok = stage("parameters", [&] {
      check_pipeline_params(p_, n);
      if (!check_posa_condition(h_, p_.alpha).satisfied) {
        report_.warnings.push_back("degree condition fails for alpha=" + p_.alpha.str());
      }
      return std::string("ok");
    });
    ok = ok && stage("reservoir", [&] { return make_reservoir(); });
    ok = ok && stage("absorbing_path", [&] { return make_absorbing_path(); });
    ok = ok && stage("long_path", [&] { return make_long_path(); });
    ok = ok && stage("connect", [&] { return connect(); });
    ok = ok && stage("absorb", [&] { return absorb(); });
    ok = ok && stage("certify", [&] { return certify(); });
    report_.success = ok;
    if (!ok && p_.fallback_to_oracle && n <= p_.oracle_max_n) {
      auto search = find_tight_hamiltonian_cycle(h_, p_.oracle_budget);
      report_.oracle_status = search.status;
      report_.oracle_nodes = search.nodes;
    }
    return std::move(report_);
  }

 private:
  bool stage(const std::string& name, const std::function<std::string()>& body) {
    StageOutcome out;
    out.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      out.detail = body();
      out.ok = true;
    } catch (const StageFailure& e) {
      out.detail = e.what();
      record_failure(name, e.cause(), e.what());
    } catch (const Error& e) {
      out.detail = e.what();
      record_failure(name, e.kind(), e.what());
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report_.stages.push_back(std::move(out));
    return report_.stages.back().ok;
  }

  void record_failure(const std::string& name, ErrorKind kind, const std::string& message) {
    report_.failed_stage = name;
    report_.failure_kind = kind;
    report_.failure_message = message;
  }

  ConnectorParams connector(std::uint64_t tag) const {
    ConnectorParams cp;
    cp.alpha = p_.alpha;
    cp.L = p_.L;
    cp.budget = p_.connector_budget;
    cp.seed = Rng::derive(p_.seed, tag);
    return cp;
  }

  std::string make_reservoir() {
    r_ = sample_reservoir(h_, p_.theta, p_.L, connector(reservoir_tag), p_.reservoir);
    report_.reservoir = r_.members;
    require(r_.verified, ErrorKind::verification_failed,
            std::to_string(r_.failing_probes.size()) + " connection probes failed after " +
                std::to_string(r_.attempts) + " attempts");
    const std::size_t need = static_cast<std::size_t>(p_.target_capacity + 2 * (p_.L - 2));
    require(r_.members.size() >= need, ErrorKind::infeasible,
            "reservoir of " + std::to_string(r_.members.size()) + " cannot hold " + std::to_string(need) +
                " planned leftover and connection vertices");
    // D first, then the pool kept free for P1 and P2.
    std::vector<Vertex> order = r_.members;
    Rng rng(Rng::derive(p_.seed, split_tag));
    rng.shuffle(std::span<Vertex>(order));
    const auto cap = static_cast<std::size_t>(p_.target_capacity);
    planned_.assign(order.begin(), order.begin() + static_cast<long>(cap));
    pool_.assign(order.begin() + static_cast<long>(cap), order.begin() + static_cast<long>(need));
    std::sort(planned_.begin(), planned_.end());
    report_.planned_leftover = planned_;
    return "|R|=" + std::to_string(r_.members.size()) + " after " + std::to_string(r_.attempts) + " attempts";
  }

  std::string make_absorbing_path() {
    AbsorbingParams ap;
    ap.theta = p_.theta;
    ap.alpha = p_.alpha;
    ap.s = p_.s;
    ap.L = p_.L;
    ap.target_capacity = p_.target_capacity;
    ap.targets = planned_;
    ap.seed = Rng::derive(p_.seed, absorbing_tag);
    ap.budget = p_.connector_budget;
    ap.selection = p_.selection;
    pa_ = build_absorbing_path(h_, r_, ap);
    report_.absorbing_path_vertices = pa_.path.vertices.size();
    report_.absorbers = pa_.registry.size();
    return std::to_string(pa_.registry.size()) + " absorbers on " + std::to_string(pa_.path.vertices.size()) +
           " vertices";
  }

  std::string make_long_path() {
    LongPathParams lp;
    lp.cover = p_.cover;
    lp.cover.seed = Rng::derive(p_.seed, long_path_tag);
    lp.alpha = p_.alpha;
    lp.beta = p_.beta;
    lp.L = p_.L;
    lp.seed = Rng::derive(p_.seed, long_path_tag + 100);
    lp.budget = p_.connector_budget;
    lp.keep_free = planned_;
    lp.keep_free.insert(lp.keep_free.end(), pool_.begin(), pool_.end());
    auto res = build_long_path(h_, r_, pa_, lp);
    for (const auto& note : res.notes) report_.warnings.push_back("long path: " + note);
    require(res.path.vertices.size() >= 4, ErrorKind::not_found, "long path has fewer than 4 vertices");
    q_ = std::move(res.path);
    report_.long_path_vertices = q_.vertices.size();
    report_.long_path_coverage = res.coverage();
    report_.reservoir_used = res.reservoir_used;
    return std::to_string(q_.vertices.size()) + " vertices, " + std::to_string(res.covered) + "/" +
           std::to_string(res.eligible) + " eligible covered";
  }

  // P1: (t,u) -> (a,b) and P2: (c,d) -> (r,s) inside the unused reservoir.
  // Small pools are searched exhaustively over P1; Q is tried in both
  // directions. The planned leftover is released only when that fails.
  std::string connect() {
    const int n = h_.n();
    VertexSet used = VertexSet::of(n, q_.vertices);
    used.unite(VertexSet::of(n, pa_.path.vertices).words());
    const VertexSet reservoir = r_.as_set(n);
    const std::size_t m = pa_.path.vertices.size();
    const OrderedPair a_start{pa_.path.vertices[0], pa_.path.vertices[1]};
    const OrderedPair a_end{pa_.path.vertices[m - 2], pa_.path.vertices[m - 1]};

    std::string last_error = "no candidate";
    for (int attempt = 0; attempt < 2; ++attempt) {
      VertexSet excluded = used;
      if (attempt == 0) excluded.unite(VertexSet::of(n, planned_).words());
      for (int direction = 0; direction < 2; ++direction) {
        std::vector<Vertex> q = q_.vertices;
        if (direction) std::reverse(q.begin(), q.end());
        const std::size_t k = q.size();
        const OrderedPair q_start{q[0], q[1]}, q_end{q[k - 2], q[k - 1]};
        const std::uint64_t tag = 10 * (2 * attempt + direction);

        VertexSet allowed = reservoir;
        allowed.subtract(excluded.words());
        for (Vertex v : {q_start.first, q_start.second, a_start.first, a_start.second}) allowed.erase(v);
        std::vector<TightPath> firsts;
        if (std::pow(static_cast<double>(allowed.size()), p_.L - 2) <= 2e5) {
          firsts = enumerate_connecting_paths(h_, q_end, a_start, p_.L, allowed);
        } else {
          try {
            firsts.push_back(connect_through_reservoir(h_, q_end, a_start, r_, excluded, connector(p1_tag + tag)));
          } catch (const ConnectFailure& e) {
            last_error = e.what();
          }
        }
        for (std::size_t i = 0; i < firsts.size() && i < 2000; ++i) {
          VertexSet ex2 = excluded;
          for (Vertex v : inner(firsts[i])) ex2.insert(v);
          try {
            TightPath p2 = connect_through_reservoir(h_, a_end, q_start, r_, ex2, connector(p2_tag + tag));
            if (attempt == 1) report_.warnings.push_back("connections needed the planned leftover vertices");
            if (direction) q_.vertices = std::move(q);
            std::size_t through = 0;
            for (const auto* p : {&firsts[i], &p2}) {
              for (Vertex v : inner(*p)) through += reservoir.contains(v);
            }
            report_.reservoir_used += through;
            report_.p1 = std::move(firsts[i]);
            report_.p2 = std::move(p2);
            return "P1 and P2 use " + std::to_string(through) + " reservoir vertices";
          } catch (const ConnectFailure& e) {
            last_error = e.what();
          }
        }
      }
    }
    tightham::fail(ErrorKind::not_found, "no connection through the unused reservoir: " + last_error);
  }

  std::string absorb() {
    const int n = h_.n();
    VertexSet on_cycle = VertexSet::of(n, q_.vertices);
    on_cycle.unite(VertexSet::of(n, pa_.path.vertices).words());
    for (const auto* p : {&*report_.p1, &*report_.p2}) {
      for (Vertex v : inner(*p)) on_cycle.insert(v);
    }
    for (Vertex v = 1; v <= n; ++v) {
      if (!on_cycle.contains(v)) report_.leftover.push_back(v);
    }
    try {
      absorbed_ = absorb_set(pa_, report_.leftover, h_);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::no_absorber) throw;
      tightham::fail(ErrorKind::capacity_unreachable, std::string("leftover exceeds the absorbing capacity: ") + e.what());
    }
    return "absorbed " + std::to_string(report_.leftover.size()) + " vertices";
  }

  std::string certify() {
    TightCycle c;
    c.vertices = q_.vertices;
    auto append = [&](const std::vector<Vertex>& vs) { c.vertices.insert(c.vertices.end(), vs.begin(), vs.end()); };
    append(inner(*report_.p1));
    append(absorbed_.vertices);
    append(inner(*report_.p2));
    auto verdict = validate_tight_cycle(h_, c);
    require(verdict.valid, ErrorKind::verification_failed, "assembled cycle is not tight: " + verdict.reason);
    require(static_cast<int>(c.vertices.size()) == h_.n(), ErrorKind::verification_failed,
            "assembled cycle has " + std::to_string(c.vertices.size()) + " of " + std::to_string(h_.n()) +
                " vertices");
    report_.certificate = c.canonical();
    return "tight Hamiltonian cycle on " + std::to_string(h_.n()) + " vertices";
  }

  const Hypergraph3& h_;
  const PipelineParams& p_;
  RunReport report_;
  Reservoir r_;
  std::vector<Vertex> planned_, pool_;
  AbsorbingPath pa_;
  TightPath q_;
  TightPath absorbed_;
};

}  // namespace

RunReport run_absorption_pipeline(const Hypergraph3& h, const PipelineParams& params) {
  return Run(h, params).execute();
}

bool verify_certificate(const Hypergraph3& h, const RunReport& report) {
  require(report.certificate.has_value(), ErrorKind::invalid_argument, "report carries no certificate");
  const TightCycle& c = *report.certificate;
  if (static_cast<int>(c.vertices.size()) != h.n()) return false;
  std::vector<Vertex> sorted = c.vertices;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < h.n(); ++i) {
    if (sorted[static_cast<std::size_t>(i)] != i + 1) return false;
  }
  return validate_tight_cycle(h, c).valid;
}

}  // namespace tightham
