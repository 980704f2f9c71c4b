#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

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

namespace tightham::cli {

namespace {

struct DomainFailure {
  Json result;
};

struct Common {
  bool json = false;
  std::string seed = "0";
  int threads = 0;
  std::uint64_t resolved_seed = 0;
};

std::uint64_t resolve_seed(const std::string& text) {
  if (text == "random") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::uint64_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == text.size() && !text.empty() && text[0] != '-', ErrorKind::invalid_argument,
          "--seed takes a nonnegative integer or 'random'");
  return value;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("TIGHTHAM_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

std::vector<Vertex> parse_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      require(used == item.size(), ErrorKind::invalid_argument, "");
    } catch (const std::exception&) {
      fail(ErrorKind::invalid_argument, "expected a comma separated vertex list, got '" + text + "'");
    }
  }
  return out;
}

OrderedPair parse_pair(const std::string& text) {
  auto v = parse_list(text);
  require(v.size() == 2, ErrorKind::invalid_argument, "expected an ordered pair 'a,b', got '" + text + "'");
  return {v[0], v[1]};
}

Json pair_json(OrderedPair p) { return Json::array({p.first, p.second}); }

SearchBudget make_budget(std::uint64_t nodes, double seconds) {
  SearchBudget b;
  b.max_nodes = nodes;
  if (seconds > 0) b.time_limit = seconds;
  return b;
}

void emit(std::ostream& out, const Json& result, bool json) {
  if (json) {
    out << result.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : result.items()) {
    if (key == "params" || key == "timing") continue;
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tight Hamiltonian cycles in 3-graphs: generators, exact search and the absorption pipeline",
               "tightham"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "Emit JSON");
    sub->add_option("--seed", common.seed, "Seed, or 'random'")->capture_default_str();
    sub->add_option("--threads", common.threads, "Worker threads (falls back to TIGHTHAM_THREADS)");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a hypergraph");
  std::string kind, alpha_text, theta_text = "0.3", out_path, in_path;
  int n = 0;
  double p = -1;
  gen->add_option("--kind", kind, "example-one-third | example-half | complete | random-uniform | random-posa")
      ->required();
  gen->add_option("--n", n, "Number of vertices")->required();
  gen->add_option("--alpha", alpha_text, "random-posa slack");
  gen->add_option("--p", p, "random-uniform edge probability");
  gen->add_option("--out", out_path, "Output file (.json or H3v1); stdout when omitted");
  add_common(gen);

  // check
  auto* check = app.add_subcommand("check", "Report degrees, the Posa-type condition and optional cycle validity");
  std::string cycle_text;
  check->add_option("--in", in_path, "Input hypergraph")->required();
  check->add_option("--alpha", alpha_text, "Check d(i,j) >= min(i,j,n/2) + floor(alpha n)");
  check->add_option("--cycle", cycle_text, "Comma separated cycle to validate");
  add_common(check);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact tight Hamiltonian cycle search");
  bool count = false, expect_cycle = false;
  std::uint64_t max_nodes = std::uint64_t{1} << 40;
  double time_limit = 0;
  oracle->add_option("--in", in_path, "Input hypergraph")->required();
  oracle->add_flag("--count", count, "Count cycles up to rotation and reflection");
  oracle->add_flag("--expect-cycle", expect_cycle, "Exit 1 unless a cycle is found");
  oracle->add_option("--max-nodes", max_nodes, "Node budget");
  oracle->add_option("--time-limit", time_limit, "Seconds, 0 for none");
  add_common(oracle);

  // connect
  auto* conn = app.add_subcommand("connect", "Connect two ordered pairs by a tight path");
  std::string from_text, to_text, allowed_text, mode_text = "plain";
  int L = 5;
  conn->add_option("--in", in_path, "Input hypergraph")->required();
  conn->add_option("--from", from_text, "Start pair a,b")->required();
  conn->add_option("--to", to_text, "End pair c,d")->required();
  auto* conn_L = conn->add_option("--L", L, "Path length (edges)");
  conn->add_option("--allowed", allowed_text, "Internal vertex pool (default: all other vertices)");
  conn->add_option("--mode", mode_text, "plain | structured")->check(CLI::IsMember({"plain", "structured"}));
  conn->add_option("--alpha", alpha_text, "Slack used by the structured mode");
  conn->add_option("--max-nodes", max_nodes, "Node budget");
  add_common(conn);

  // absorb
  auto* absorb = app.add_subcommand("absorb", "Build an absorbing path and optionally absorb vertices");
  int s = 4, capacity = 2;
  std::string targets_text, absorb_text, reservoir_path, selection = "greedy";
  absorb->add_option("--in", in_path, "Input hypergraph")->required();
  absorb->add_option("--theta", theta_text, "Reservoir and path size parameter");
  absorb->add_option("--alpha", alpha_text, "Degree slack");
  absorb->add_option("--s", s, "Absorber size parameter (even, >= 4)");
  absorb->add_option("--L", L, "Connector length");
  absorb->add_option("--capacity", capacity, "Target capacity");
  absorb->add_option("--targets", targets_text, "Vertices that need the capacity");
  absorb->add_option("--reservoir", reservoir_path, "Reservoir JSON (sampled when omitted)");
  absorb->add_option("--absorb", absorb_text, "Vertices to absorb after building");
  absorb->add_option("--selection", selection, "greedy | sampled")->check(CLI::IsMember({"greedy", "sampled"}));
  absorb->add_option("--out", out_path, "Write the absorbing path JSON here");
  add_common(absorb);

  // cover
  auto* cover = app.add_subcommand("cover", "Reduce, match dense triplets and cover them with paths");
  CoverParams cp;
  double beta = 0.1;
  cover->add_option("--in", in_path, "Input hypergraph")->required();
  cover->add_option("--t", cp.t, "Number of parts");
  cover->add_option("--xi", cp.xi, "Cover parameter xi");
  cover->add_option("--delta", cp.delta, "Irregularity threshold");
  cover->add_option("--alpha-prime", cp.alpha_prime, "Dense threshold factor");
  cover->add_option("--samples", cp.samples, "Subset triples per irregularity test");
  cover->add_option("--beta", beta, "Matching excluded-degree bound");
  add_common(cover);

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Run the absorption pipeline and certify the cycle");
  bool no_fallback = false;
  std::uint64_t connector_nodes = 200000;
  pipe->add_option("--in", in_path, "Input hypergraph")->required();
  pipe->add_option("--alpha", alpha_text, "Degree slack");
  pipe->add_option("--theta", theta_text, "Reservoir and path size parameter");
  pipe->add_option("--L", L, "Connector length");
  pipe->add_option("--s", s, "Absorber size parameter");
  pipe->add_option("--capacity", capacity, "Planned leftover size and target capacity");
  pipe->add_option("--max-nodes", connector_nodes, "Node budget per connection");
  pipe->add_flag("--no-fallback", no_fallback, "Skip the oracle on failure");
  pipe->add_option("--out", out_path, "Write the report JSON here");
  add_common(pipe);

  // scan
  auto* scan = app.add_subcommand("scan", "Search counterexamples to candidate Hamiltonian matrices");
  std::string family = "sanity", witness_dir;
  int trials = 40;
  scan->add_option("--n", n, "Number of vertices (4..10)")->required();
  scan->add_option("--family", family, "zero | full | min-shift | step | sanity");
  scan->add_option("--trials", trials, "Random minimal dominating graphs per matrix");
  scan->add_option("--witness-dir", witness_dir, "Write witnesses here");
  scan->add_option("--max-nodes", max_nodes, "Oracle node budget per graph");
  scan->add_option("--out", out_path, "Write the CSV here");
  add_common(scan);

  std::vector<std::string> argv_store{"tightham"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](Json result, Json params) {
    params["seed"] = common.resolved_seed;
    result["params"] = std::move(params);
    result["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    return result;
  };

  try {
    common.resolved_seed = resolve_seed(common.seed);
    const std::uint64_t seed = common.resolved_seed;
    const Rational alpha = alpha_text.empty() ? Rational(1, 5) : Rational::parse(alpha_text);
    const Rational theta = Rational::parse(theta_text);
    Json result;

    if (gen->parsed()) {
      GeneratorSpec spec;
      spec.kind = parse_generator_kind(kind);
      spec.n = n;
      spec.seed = seed;
      if (!alpha_text.empty() || spec.kind == GeneratorKind::random_posa) spec.alpha = alpha;
      if (p >= 0) spec.p = p;
      auto h = generate(spec);
      if (out_path.empty() && !common.json) {
        out << format_h3v1(h);
        return 0;
      }
      if (!out_path.empty()) write_hypergraph(h, out_path);
      result = {{"n", h.n()}, {"edges", h.edge_count()}, {"out", out_path}};
      emit(out, finish(result, to_json(spec)), common.json);
      return 0;
    }

    if (scan->parsed()) {
      ScanOptions opt;
      opt.random_trials = trials;
      opt.seed = seed;
      opt.oracle_budget = make_budget(std::min<std::uint64_t>(max_nodes, std::uint64_t{1} << 28), 0);
      opt.threads = resolve_threads(common.threads);
      if (!witness_dir.empty()) opt.witness_dir = witness_dir;
      auto rows = hamiltonian_matrix_scan(n, family_matrices(n, parse_matrix_family(family)), opt);
      const std::string csv = format_scan_csv(rows);
      if (!out_path.empty()) write_file(out_path, csv);
      Json params{{"n", n}, {"family", family}, {"trials", trials}, {"max_nodes", opt.oracle_budget.max_nodes},
                  {"threads", opt.threads}};
      if (!common.json) {
        out << csv;
        return 0;
      }
      Json list = Json::array();
      Json seconds = Json::object();
      for (const auto& r : rows) {
        list.push_back(to_json(r));
        seconds[r.matrix_id] = r.seconds;
      }
      Json j = finish({{"rows", list}}, params);
      j["timing"]["matrices"] = seconds;
      emit(out, j, true);
      return 0;
    }

    auto h = read_hypergraph(in_path);
    Json params{{"in", in_path}};

    if (check->parsed()) {
      auto dm = degree_matrix(h);
      int lo = h.n(), hi = 0;
      for (Vertex i = 1; i <= h.n(); ++i) {
        for (Vertex j = i + 1; j <= h.n(); ++j) lo = std::min(lo, dm.at(i, j)), hi = std::max(hi, dm.at(i, j));
      }
      result = {{"n", h.n()}, {"edges", h.edge_count()}, {"min_pair_degree", lo}, {"max_pair_degree", hi}};
      bool ok = true;
      if (!alpha_text.empty()) {
        auto report = check_posa_condition(h, alpha);
        Json worst = Json::array();
        for (std::size_t k = 0; k < report.violations.size() && k < 10; ++k) {
          const auto& v = report.violations[k];
          worst.push_back({{"i", v.i}, {"j", v.j}, {"degree", v.degree}, {"required", v.required}});
        }
        result["posa"] = {{"satisfied", report.satisfied}, {"violations", report.violations.size()}, {"first", worst}};
        params["alpha"] = alpha.str();
        ok = report.satisfied;
      }
      if (!cycle_text.empty()) {
        TightCycle c{parse_list(cycle_text)};
        auto verdict = validate_tight_cycle(h, c);
        result["cycle"] = {{"valid", verdict.valid},
                           {"hamiltonian", verdict.valid && static_cast<int>(c.vertices.size()) == h.n()},
                           {"reason", verdict.reason}};
        ok = ok && verdict.valid;
      }
      emit(out, finish(result, params), common.json);
      return ok ? 0 : 1;
    }

    if (oracle->parsed()) {
      auto budget = make_budget(max_nodes, time_limit);
      params["max_nodes"] = max_nodes;
      params["time_limit"] = time_limit;
      if (count) {
        auto c = count_tight_hamiltonian_cycles(h, budget);
        result = {{"count", c.count}, {"nodes", c.nodes}};
        emit(out, finish(result, params), common.json);
        return expect_cycle && c.count == 0 ? 1 : 0;
      }
      auto search = find_tight_hamiltonian_cycle(h, budget);
      result = {{"status", std::string(to_string(search.status))}, {"nodes", search.nodes}};
      result["cycle"] = search.cycle ? Json(search.cycle->vertices) : Json(nullptr);
      emit(out, finish(result, params), common.json);
      return expect_cycle && search.status != SearchStatus::cycle ? 1 : 0;
    }

    if (conn->parsed()) {
      ConnectorParams cparams;
      cparams.alpha = alpha;
      cparams.seed = seed;
      cparams.budget = make_budget(max_nodes, 0);
      cparams.mode = mode_text == "structured" ? ConnectMode::structured : ConnectMode::plain;
      if (cparams.mode == ConnectMode::structured && conn_L->count() == 0) L = structured_layout(alpha).L;
      cparams.L = L;
      const OrderedPair from = parse_pair(from_text), to = parse_pair(to_text);
      VertexSet allowed = VertexSet::full(h.n());
      if (!allowed_text.empty()) allowed = VertexSet::of(h.n(), parse_list(allowed_text));
      for (Vertex v : {from.first, from.second, to.first, to.second}) {
        check_vertex(h, v);
        if (allowed_text.empty()) allowed.erase(v);
      }
      params.update({{"from", pair_json(from)}, {"to", pair_json(to)}, {"L", L}, {"mode", mode_text},
                     {"alpha", alpha.str()}, {"max_nodes", max_nodes}});
      if (cparams.mode == ConnectMode::structured) {
        auto layout = structured_layout(alpha);
        params["structured_layout"] = {{"climb_steps", layout.climb_steps}, {"m", layout.m}, {"L", layout.L},
                                       {"integral", layout.integral}};
      }
      try {
        auto path = connect_pairs(h, from, to, L, allowed, cparams);
        result = {{"found", true}, {"path", path.vertices}};
        emit(out, finish(result, params), common.json);
        return 0;
      } catch (const ConnectFailure& e) {
        result = {{"found", false}, {"exhaustive", e.exhaustive()}, {"reason", e.what()}};
        emit(out, finish(result, params), common.json);
        return 1;
      }
    }

    if (absorb->parsed()) {
      AbsorbingParams ap;
      ap.theta = theta;
      ap.alpha = alpha;
      ap.s = s;
      ap.L = L;
      ap.target_capacity = capacity;
      ap.seed = seed;
      ap.selection = selection == "sampled" ? AbsorberSelection::sampled : AbsorberSelection::greedy;
      if (!targets_text.empty()) ap.targets = parse_list(targets_text);
      Reservoir r;
      if (!reservoir_path.empty()) {
        r = reservoir_from_json(Json::parse(read_file(reservoir_path)));
      } else {
        ConnectorParams rc;
        rc.alpha = alpha;
        rc.seed = Rng::derive(seed, 1);
        r = sample_reservoir(h, theta, L, rc);
      }
      params.update({{"theta", theta.str()}, {"alpha", alpha.str()}, {"s", s}, {"L", L}, {"capacity", capacity},
                     {"selection", selection}});
      auto pa = build_absorbing_path(h, r, ap);
      if (!out_path.empty()) write_file(out_path, to_json(pa).dump(2) + "\n");
      result = {{"reservoir", to_json(r)}, {"absorbing_path", to_json(pa)}};
      if (!absorb_text.empty()) result["absorbed"] = absorb_set(pa, parse_list(absorb_text), h).vertices;
      emit(out, finish(result, params), common.json);
      return 0;
    }

    if (cover->parsed()) {
      cp.seed = seed;
      auto rh = reduce(h, cp);
      Json paths = Json::array();
      std::size_t matched = 0;
      if (!rh.K.empty()) {
        auto mr = find_large_matching(Hypergraph3(rh.t, rh.K), rh.malicious_pairs, alpha.value(), beta);
        matched = mr.matching.edges.size();
        const double m3 = static_cast<double>(rh.m) * rh.m * rh.m;
        for (const Triple& e : mr.matching.edges) {
          TripartiteView view{h, rh.parts[e.a - 1], rh.parts[e.b - 1], rh.parts[e.c - 1]};
          CoverParams local = cp;
          local.d = static_cast<double>(rh.crossing[e]) / m3;
          try {
            for (const auto& path : cover_triplet_with_paths(view, local).paths) paths.push_back(path.vertices);
          } catch (const Error& e2) {
            if (e2.kind() != ErrorKind::hypothesis_violated) throw;
          }
        }
      }
      params.update({{"t", cp.t}, {"xi", cp.xi}, {"delta", cp.delta}, {"alpha_prime", cp.alpha_prime},
                     {"samples", cp.samples}, {"beta", beta}});
      result = {{"reduced", to_json(rh)}, {"matched_triplets", matched}, {"paths", paths}};
      emit(out, finish(result, params), common.json);
      return 0;
    }

    if (pipe->parsed()) {
      PipelineParams pp;
      pp.alpha = alpha;
      pp.theta = theta;
      pp.L = L;
      pp.s = s;
      pp.target_capacity = capacity;
      pp.seed = seed;
      pp.connector_budget = make_budget(connector_nodes, 0);
      pp.fallback_to_oracle = !no_fallback;
      auto report = run_absorption_pipeline(h, pp);
      Json j = to_json(report, true);
      if (report.success) j["verified"] = verify_certificate(h, report);
      Json timing = j["timing"];
      j.erase("timing");
      j = finish(j, params);
      j["timing"]["stages"] = timing;
      if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
      emit(out, j, common.json);
      return report.success ? 0 : 1;
    }
    fail(ErrorKind::invalid_argument, "unknown subcommand");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::invalid_argument:
      case ErrorKind::parse_error:
      case ErrorKind::out_of_range:
      case ErrorKind::degenerate_triple: return 2;
      default: return 1;
    }
  }
}

}  // namespace tightham::cli
