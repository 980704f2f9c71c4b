// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "tightham/absorption.hpp"
#include "tightham/connector.hpp"
#include "tightham/constructions.hpp"
#include "tightham/cover.hpp"
#include "tightham/io.hpp"
#include "tightham/oracle.hpp"
#include "tightham/pipeline.hpp"
#include "tightham/rng.hpp"
#include "tightham/scan.hpp"
#include "tightham/serialize.hpp"

using namespace tightham;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and sample sizes.
constexpr double kExamplesMaxSeconds = 60.0;
constexpr double kCountMaxSeconds = 10.0;
constexpr int kConnectorInstances = 200;
constexpr int kClimbRuns = 100;
constexpr int kReservoirSeeds = 20;
constexpr int kReservoirProbes = 20;
constexpr double kPreservationMinRate = 0.95;
constexpr int kAbsorbers = 200;
constexpr int kAbsorptionSeeds = 20;
constexpr int kMatchingPosaInstances = 20;
constexpr int kMatchingSmallInstances = 100;
constexpr int kMatchingSmallMinOptimal = 95;
constexpr int kPipelineSeeds = 10;
constexpr int kPipelineRandomMinSuccess = 8;
constexpr double kPipelineMaxSeconds = 600.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<fs::path> corpus() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(TIGHTHAM_TEST_DATA)) {
    if (e.path().extension() == ".h3") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome extremal_constructions() {
  auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  for (int n = 7; n <= 12; ++n) {
    auto one = example_one_third(n);
    auto dm = degree_matrix(one);
    for (Vertex i = 1; i <= n; ++i) {
      for (Vertex j = i + 1; j <= n; ++j) bad += dm.at(i, j) < std::min({i, j, n / 2}) - 1;
    }
    bad += find_tight_hamiltonian_cycle(one).status != SearchStatus::none;
    auto half = example_half(n);
    auto hm = degree_matrix(half);
    int lo = n;
    for (Vertex i = 1; i <= n; ++i) {
      for (Vertex j = i + 1; j <= n; ++j) lo = std::min(lo, hm.at(i, j));
    }
    bad += lo != (n + 1) / 2 - 2;
    bad += find_tight_hamiltonian_cycle(half).status != SearchStatus::none;
  }
  double sec = since(t0);
  return {bad == 0 && sec < kExamplesMaxSeconds,
          std::to_string(bad) + " violations for n = 7..12, " + fmt("%.2f s", sec)};
}

Outcome counting_law() {
  const std::uint64_t expect[] = {12, 60, 360};
  bool ok = true;
  std::string detail;
  for (int n = 5; n <= 7; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    auto c = count_tight_hamiltonian_cycles(complete(n));
    double sec = since(t0);
    ok = ok && c.count == expect[n - 5] && sec < kCountMaxSeconds;
    detail += "K" + std::to_string(n) + "=" + std::to_string(c.count) + fmt(" (%.3f s) ", sec);
  }
  return {ok, detail};
}

Outcome connector_equivalence() {
  int discrepancies = 0, checks = 0, found = 0;
  for (int k = 0; k < kConnectorInstances; ++k) {
    Rng rng(Rng::derive(2024, static_cast<std::uint64_t>(k)));
    auto h = random_uniform(6, 0.2 + 0.7 * rng.uniform01(), static_cast<std::uint64_t>(k));
    for (Vertex a = 1; a <= 6; ++a)
      for (Vertex b = 1; b <= 6; ++b)
        for (Vertex c = 1; c <= 6; ++c)
          for (Vertex d = 1; d <= 6; ++d) {
            std::set<Vertex> four{a, b, c, d};
            if (four.size() != 4) continue;
            VertexSet allowed = VertexSet::full(6);
            for (Vertex v : four) allowed.erase(v);
            for (int L = 2; L <= 4; ++L) {
              ++checks;
              auto list = enumerate_connecting_paths(h, {a, b}, {c, d}, L, allowed);
              ConnectorParams p;
              p.L = L;
              p.seed = static_cast<std::uint64_t>(checks);
              try {
                auto path = connect_pairs(h, {a, b}, {c, d}, L, allowed, p);
                ++found;
                discrepancies += std::find(list.begin(), list.end(), path) == list.end();
              } catch (const ConnectFailure& e) {
                discrepancies += !list.empty() || !e.exhaustive();
              }
            }
          }
  }
  return {discrepancies == 0, std::to_string(discrepancies) + " discrepancies over " + std::to_string(checks) +
                                  " requests (" + std::to_string(found) + " connected)"};
}

Outcome climb_soundness() {
  const int n = 40;
  int violations = 0, stuck = 0, runs = 0;
  std::string rates;
  for (auto text : {"0.1", "0.15", "0.2"}) {
    const Rational alpha = Rational::parse(text);
    const int steps = structured_layout(alpha).climb_steps;
    int stuck_here = 0;
    for (int k = 0; k < kClimbRuns; ++k) {
      ++runs;
      auto h = random_posa_hypergraph(n, alpha, static_cast<std::uint64_t>(k));
      Rng rng(Rng::derive(7, static_cast<std::uint64_t>(k)));
      Vertex x = static_cast<Vertex>(1 + rng.below(n));
      Vertex y = static_cast<Vertex>(1 + rng.below(n - 1));
      if (y >= x) ++y;
      ConnectorParams p;
      p.alpha = alpha;
      p.seed = static_cast<std::uint64_t>(k);
      TightWalk w;
      try {
        w = climb_up_walk(h, {x, y}, p, steps);
      } catch (const ClimbStuck& e) {
        ++stuck_here;
        w = e.partial();
      }
      violations += !validate_tight_walk(h, w).valid;
      for (std::size_t i = 3; i <= w.vertices.size(); ++i) {
        // exact: x_i >= min(alpha n (i-2)/4, n/2) + alpha n/4
        Rational climb = alpha * Rational(static_cast<std::int64_t>(n) * static_cast<std::int64_t>(i - 2), 4);
        Rational bound = std::min(climb, Rational(n, 2)) + alpha * Rational(n, 4);
        violations += Rational(w.vertices[i - 1], 1) < bound;
      }
    }
    stuck += stuck_here;
    rates += std::string(text) + ": " + std::to_string(stuck_here) + "/" + std::to_string(kClimbRuns) + " stuck; ";
  }
  return {violations == 0, std::to_string(violations) + " bound violations in " + std::to_string(runs) +
                               " runs; " + rates};
}

Outcome reservoir_contract() {
  const int n = 200;
  const Rational theta(3, 10);
  auto h = complete(n);
  const Rational t2 = theta * theta;
  const int deletions = static_cast<int>((Rational(2, 1) * t2 * t2).floor_times(n));
  int bad = 0, probes = 0, connected = 0;
  for (int seed = 0; seed < kReservoirSeeds; ++seed) {
    ConnectorParams p;
    p.seed = static_cast<std::uint64_t>(seed);
    auto r = sample_reservoir(h, theta, 5, p);
    const auto size = static_cast<std::int64_t>(r.members.size());
    bad += !r.verified || !r.failing_probes.empty();
    bad += Rational(2 * size, 1) < t2 * Rational(n, 1) || Rational(size, 1) > t2 * Rational(n, 1);
    std::vector<Vertex> members = r.members;
    Rng rng(Rng::derive(99, static_cast<std::uint64_t>(seed)));
    rng.shuffle(std::span<Vertex>(members));
    VertexSet excluded = VertexSet::of(n, std::vector<Vertex>(members.begin(), members.begin() + deletions));
    std::vector<Vertex> outside;
    const VertexSet rs = r.as_set(n);
    for (Vertex v = 1; v <= n; ++v) {
      if (!rs.contains(v)) outside.push_back(v);
    }
    for (int k = 0; k < kReservoirProbes; ++k) {
      auto [from, to] = random_pair_pair(outside, Rng::derive(static_cast<std::uint64_t>(seed), 500 + k));
      ++probes;
      try {
        p.seed = Rng::derive(static_cast<std::uint64_t>(seed), 900 + k);
        auto path = connect_through_reservoir(h, from, to, r, excluded, p);
        connected += validate_tight_path(h, path).valid;
      } catch (const ConnectFailure&) {
      }
    }
  }
  double rate = static_cast<double>(connected) / probes;
  return {bad == 0 && rate >= kPreservationMinRate,
          std::to_string(bad) + " contract failures; after deleting " + std::to_string(deletions) +
              " vertices " + std::to_string(connected) + "/" + std::to_string(probes) + " probes connect"};
}

Outcome absorber_invariants() {
  const int n = 60;
  const Rational alpha(3, 20);
  int certified = 0, failures = 0, stuck = 0, unwired = 0;
  for (std::uint64_t seed = 0; certified < kAbsorbers && seed < 10 * kAbsorbers; ++seed) {
    auto h = random_posa_hypergraph(n, alpha, seed);
    Rng rng(Rng::derive(5, seed));
    const Vertex x = static_cast<Vertex>(1 + rng.below(n));
    AbsorberParams ap{alpha, seed, 300};
    Absorber a;
    try {
      a = find_absorber(h, x, 4, VertexSet(n), ap);
    } catch (const AbsorberStuck&) {
      ++stuck;
      continue;
    }
    ++certified;
    failures += !is_absorber(h, x, a).valid;

    auto before = before_segments(a), after = after_segments(a, x);
    auto ends = [](const std::vector<Segment>& segs) {
      std::multiset<std::pair<Vertex, Vertex>> out;
      for (const auto& s : segs) {
        out.insert({s.vertices[0], s.vertices[1]});
        out.insert({s.vertices[s.vertices.size() - 2], s.vertices.back()});
      }
      return out;
    };
    failures += ends(before) != ends(after);

    AbsorbingParams wp;
    wp.alpha = alpha;
    wp.seed = seed;
    Wiring w;
    try {
      w = wire_absorber(h, a, VertexSet(n), wp);
    } catch (const Error&) {
      ++unwired;
      continue;
    }
    auto b = block_sequence(a, w, false), c = block_sequence(a, w, true, x);
    failures += !validate_tight_path(h, {b}).valid || !validate_tight_path(h, {c}).valid;
    std::set<Vertex> sb(b.begin(), b.end()), sc(c.begin(), c.end());
    failures += sb.size() != b.size() || sc.size() != c.size() || sb.count(x);
    sb.insert(x);
    failures += sb != sc;
    failures += b[0] != c[0] || b[1] != c[1] || b[b.size() - 2] != c[c.size() - 2] || b.back() != c.back();
  }
  return {certified == kAbsorbers && failures == 0,
          std::to_string(certified) + " certified (" + std::to_string(stuck) + " stuck searches), " +
              std::to_string(certified - unwired) + " wired, " + std::to_string(failures) + " failures"};
}

Outcome absorption_end_to_end() {
  const int n = 200;
  auto h = complete(n);
  int ok = 0;
  for (int seed = 0; seed < kAbsorptionSeeds; ++seed) {
    try {
      ConnectorParams cp;
      cp.seed = static_cast<std::uint64_t>(seed);
      auto r = sample_reservoir(h, Rational(3, 10), 5, cp);
      AbsorbingParams ap;
      ap.seed = static_cast<std::uint64_t>(seed);
      auto pa = build_absorbing_path(h, r, ap);
      const VertexSet on = VertexSet::of(n, pa.path.vertices), rs = r.as_set(n);
      std::vector<Vertex> free;
      for (Vertex v = 1; v <= n; ++v) {
        if (!on.contains(v) && !rs.contains(v)) free.push_back(v);
      }
      Rng rng(Rng::derive(11, static_cast<std::uint64_t>(seed)));
      rng.shuffle(std::span<Vertex>(free));
      std::vector<Vertex> X(free.begin(), free.begin() + 2);
      auto q = absorb_set(pa, X, h);
      std::set<Vertex> expect(pa.path.vertices.begin(), pa.path.vertices.end());
      expect.insert(X.begin(), X.end());
      std::set<Vertex> got(q.vertices.begin(), q.vertices.end());
      ok += validate_tight_path(h, q).valid && q.vertices.size() == pa.path.vertices.size() + 2 && got == expect &&
            q.start() == pa.path.start() && q.end() == pa.path.end();
    } catch (const Error&) {
    }
  }
  return {ok == kAbsorptionSeeds, std::to_string(ok) + "/" + std::to_string(kAbsorptionSeeds) + " seeds"};
}

int max_matching(const std::vector<Triple>& edges, std::size_t from, std::set<Vertex>& used) {
  int best = 0;
  for (std::size_t i = from; i < edges.size(); ++i) {
    const Triple& t = edges[i];
    if (used.count(t.a) || used.count(t.b) || used.count(t.c)) continue;
    used.insert({t.a, t.b, t.c});
    best = std::max(best, 1 + max_matching(edges, i + 1, used));
    used.erase(t.a), used.erase(t.b), used.erase(t.c);
  }
  return best;
}

Outcome matching_procedure() {
  int bad = 0;
  std::size_t smallest = 1000;
  for (int seed = 0; seed < kMatchingPosaInstances; ++seed) {
    auto h = random_posa_hypergraph(30, Rational(3, 20), static_cast<std::uint64_t>(seed));
    auto m = find_large_matching(h, {}, 0.15, 0.1).matching;
    std::set<Vertex> covered;
    for (const Triple& t : m.edges) {
      bad += !h.has_edge(t.a, t.b, t.c);
      covered.insert({t.a, t.b, t.c});
    }
    bad += !is_matching(m) || covered.size() != 3 * m.edges.size();
    for (const Triple& t : h.edges()) bad += !covered.count(t.a) && !covered.count(t.b) && !covered.count(t.c);
    bad += matching_move_available(h, m);
    bad += m.vertex_count() < 21;
    smallest = std::min(smallest, m.vertex_count());
  }
  int optimal = 0;
  for (int k = 0; k < kMatchingSmallInstances; ++k) {
    Rng rng(Rng::derive(31, static_cast<std::uint64_t>(k)));
    const int n = 4 + static_cast<int>(rng.below(4));
    auto h = random_uniform(n, 0.1 + 0.8 * rng.uniform01(), static_cast<std::uint64_t>(k));
    std::set<Vertex> used;
    optimal += static_cast<int>(find_large_matching(h, {}, 0.15, 0.1).matching.edges.size()) ==
               max_matching(h.edges(), 0, used);
  }
  return {bad == 0 && optimal >= kMatchingSmallMinOptimal,
          std::to_string(bad) + " violations, smallest v(M) = " + std::to_string(smallest) + "; optimal on " +
              std::to_string(optimal) + "/" + std::to_string(kMatchingSmallInstances) + " small graphs"};
}

Outcome triplet_cover() {
  auto host = complete(18);
  std::vector<Vertex> U{1, 2, 3, 4, 5, 6}, V{7, 8, 9, 10, 11, 12}, W{13, 14, 15, 16, 17, 18};
  auto view = make_view(host, U, V, W);
  CoverParams p;
  p.d = 1.0;
  p.xi = 0.9;
  p.delta = 0.01;
  auto res = cover_triplet_with_paths(view, p);
  int bad = 0;
  std::set<Vertex> seen;
  for (const auto& path : res.paths) {
    bad += !validate_tight_path(host, path).valid;
    bad += static_cast<int>(path.vertices.size()) < 3 * res.c - 2;
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
      Vertex v = path.vertices[i];
      bad += !seen.insert(v).second;
      bad += (v - 1) / 6 != static_cast<int>(i % 3);
    }
  }
  const int limit = static_cast<int>(3 * 0.9 * 6);
  double defect = quasirandomness_defect(view, 1.0, {DefectMode::exact, 0, 0});
  return {bad == 0 && static_cast<int>(res.uncovered.size()) <= limit && defect == 0.0,
          std::to_string(res.paths.size()) + " paths with c = " + std::to_string(res.c) + ", " +
              std::to_string(res.uncovered.size()) + " uncovered (limit " + std::to_string(limit) +
              "), exact defect " + fmt("%g", defect) + ", " + std::to_string(bad) + " violations"};
}

Outcome full_pipeline() {
  auto t0 = std::chrono::steady_clock::now();
  int complete_ok = 0, random_ok = 0, uncertified = 0, unsound = 0;
  auto k200 = complete(200);
  for (int seed = 0; seed < kPipelineSeeds; ++seed) {
    PipelineParams p;
    p.seed = static_cast<std::uint64_t>(seed);
    auto r = run_absorption_pipeline(k200, p);
    if (r.success) {
      complete_ok += verify_certificate(k200, r);
      uncertified += !verify_certificate(k200, r);
    }
  }
  for (int seed = 0; seed < kPipelineSeeds; ++seed) {
    auto h = random_uniform(120, 0.9, static_cast<std::uint64_t>(seed));
    PipelineParams p;
    p.theta = Rational(9, 20);  // floor(theta n) must hold two absorber blocks at n = 120
    p.seed = static_cast<std::uint64_t>(seed);
    auto r = run_absorption_pipeline(h, p);
    if (r.success) {
      random_ok += verify_certificate(h, r);
      uncertified += !verify_certificate(h, r);
    }
  }
  int small = 0;
  for (const auto& file : corpus()) {
    auto h = read_hypergraph(file);
    if (h.n() > 8) continue;
    ++small;
    PipelineParams p;
    p.theta = Rational(1, 1);
    p.target_capacity = 0;
    p.L = 3;
    auto r = run_absorption_pipeline(h, p);
    auto oracle = find_tight_hamiltonian_cycle(h);
    if (r.certificate) unsound += !verify_certificate(h, r) || oracle.status == SearchStatus::none;
  }
  double sec = since(t0);
  return {complete_ok == kPipelineSeeds && random_ok >= kPipelineRandomMinSuccess && uncertified == 0 &&
              unsound == 0 && sec < kPipelineMaxSeconds,
          "K200 " + std::to_string(complete_ok) + "/" + std::to_string(kPipelineSeeds) + ", random_uniform(120, 0.9) " +
              std::to_string(random_ok) + "/" + std::to_string(kPipelineSeeds) + ", " + std::to_string(uncertified) +
              " uncertified successes, " + std::to_string(unsound) + " unsound on " + std::to_string(small) +
              " small corpus graphs, " + fmt("%.1f s", sec)};
}

Outcome matrix_scan() {
  auto matrices = family_matrices(6, MatrixFamily::sanity);
  auto rows = hamiltonian_matrix_scan(6, matrices, ScanOptions{});
  int bad = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].witness) continue;
    bad += !dominates(*rows[i].witness, matrices[i].d);
    bad += find_tight_hamiltonian_cycle(*rows[i].witness).status != SearchStatus::none;
  }
  bool ok = rows.size() == 3 && rows[0].classification == ScanClass::counterexample_found &&
            rows[0].witness && rows[0].witness->edge_count() == 0 &&
            rows[1].classification == ScanClass::no_counterexample_within_budget &&
            rows[2].classification == ScanClass::counterexample_found && rows[2].witness_source == "example-one-third";
  std::string detail;
  for (const auto& r : rows) detail += r.matrix_id + "=" + std::string(to_string(r.classification)) + " ";
  return {ok && bad == 0, detail + "(" + std::to_string(bad) + " witness re-check failures)"};
}

Outcome io_and_reproducibility() {
  int files = 0, mismatched = 0;
  for (const auto& file : corpus()) {
    ++files;
    std::string text = read_file(file);
    mismatched += format_h3v1(parse_h3v1(text)) != text;
  }
  int differing = 0;
  PipelineParams p;
  p.seed = 5;
  auto k200 = complete(200);
  differing += to_json(run_absorption_pipeline(k200, p), false).dump() !=
               to_json(run_absorption_pipeline(k200, p), false).dump();
  auto h = random_uniform(120, 0.9, 3);
  p.theta = Rational(9, 20);
  differing += to_json(run_absorption_pipeline(h, p), false).dump() !=
               to_json(run_absorption_pipeline(h, p), false).dump();
  ScanOptions one, two;
  two.threads = 2;
  auto m = family_matrices(7, MatrixFamily::min_shift);
  differing += format_scan_csv(hamiltonian_matrix_scan(7, m, one), false) !=
               format_scan_csv(hamiltonian_matrix_scan(7, m, two), false);
  return {files >= 10 && mismatched == 0 && differing == 0,
          std::to_string(files) + " corpus files, " + std::to_string(mismatched) + " round-trip mismatches, " +
              std::to_string(differing) + " differing repeated reports"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"extremal constructions", extremal_constructions},
      {"oracle counting law", counting_law},
      {"connector/oracle equivalence", connector_equivalence},
      {"climb-up soundness", climb_soundness},
      {"reservoir contract", reservoir_contract},
      {"absorber invariants", absorber_invariants},
      {"absorption end to end", absorption_end_to_end},
      {"matching procedure", matching_procedure},
      {"good-triplet cover", triplet_cover},
      {"full pipeline", full_pipeline},
      {"matrix scan sanity", matrix_scan},
      {"I/O and reproducibility", io_and_reproducibility},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s | %s\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
