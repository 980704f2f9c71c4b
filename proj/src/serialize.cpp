#include "tightham/serialize.hpp"

namespace tightham {

namespace {

Json triple(const Triple& t) { return Json::array({t.a, t.b, t.c}); }

Json triples(const std::vector<Triple>& ts) {
  Json out = Json::array();
  for (const auto& t : ts) out.push_back(triple(t));
  return out;
}

Json pair(OrderedPair p) { return Json::array({p.first, p.second}); }

Json budget(const SearchBudget& b) {
  Json j{{"max_nodes", b.max_nodes}};
  if (b.time_limit) j["time_limit_seconds"] = *b.time_limit;
  return j;
}

// Parsing wrapper: nlohmann errors become parse_error.
template <class F>
auto parsing(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(ErrorKind::parse_error, std::string("malformed JSON document: ") + e.what());
  }
}

}  // namespace

Json to_json(const GeneratorSpec& spec) {
  Json j{{"kind", std::string(to_string(spec.kind))}, {"n", spec.n}, {"seed", spec.seed}};
  if (spec.alpha) j["alpha"] = spec.alpha->str();
  if (spec.p) j["p"] = *spec.p;
  return j;
}

Json to_json(const TightPath& p) { return p.vertices; }

Json to_json(const Reservoir& r) {
  Json probes = Json::array();
  for (const auto& p : r.failing_probes) probes.push_back({{"from", pair(p.from)}, {"to", pair(p.to)}});
  return {{"members", r.members}, {"theta", r.theta.str()},  {"L", r.L},
          {"verified", r.verified}, {"attempts", r.attempts}, {"failing_probes", probes}};
}

Reservoir reservoir_from_json(const Json& j) {
  return parsing([&] {
    Reservoir r;
    r.members = j.at("members").get<std::vector<Vertex>>();
    r.theta = Rational::parse(j.at("theta").get<std::string>());
    r.L = j.at("L").get<int>();
    r.verified = j.at("verified").get<bool>();
    r.attempts = j.value("attempts", 0);
    for (const auto& p : j.value("failing_probes", Json::array())) {
      auto f = p.at("from").get<std::vector<Vertex>>(), t = p.at("to").get<std::vector<Vertex>>();
      r.failing_probes.push_back({{f.at(0), f.at(1)}, {t.at(0), t.at(1)}, false});
    }
    return r;
  });
}

Json to_json(const AbsorbingPath& pa) {
  Json registry = Json::array();
  for (const auto& e : pa.registry) {
    Json links = Json::array();
    for (auto [a, b] : e.wiring.topology.links) links.push_back({a, b});
    Json connectors = Json::array();
    for (const auto& c : e.wiring.connectors) connectors.push_back(c.vertices);
    registry.push_back({{"x", e.absorber.x},
                        {"s", e.absorber.s},
                        {"tuple", e.absorber.tuple},
                        {"position", e.position},
                        {"length", e.length},
                        {"wiring",
                         {{"entry", e.wiring.topology.entry},
                          {"exit", e.wiring.topology.exit},
                          {"links", links},
                          {"connectors", connectors}}}});
  }
  Json links = Json::array();
  for (const auto& l : pa.links) links.push_back(l.vertices);
  return {{"path", pa.path.vertices}, {"registry", registry}, {"links", links},
          {"capacity", pa.capacity},  {"s", pa.s},            {"L", pa.L}};
}

AbsorbingPath absorbing_path_from_json(const Json& j) {
  return parsing([&] {
    AbsorbingPath pa;
    pa.path.vertices = j.at("path").get<std::vector<Vertex>>();
    pa.capacity = j.at("capacity").get<std::vector<int>>();
    pa.s = j.at("s").get<int>();
    pa.L = j.at("L").get<int>();
    for (const auto& l : j.at("links")) pa.links.push_back({l.get<std::vector<Vertex>>()});
    for (const auto& r : j.at("registry")) {
      RegistryEntry e;
      e.absorber = {r.at("x").get<Vertex>(), r.at("s").get<int>(), r.at("tuple").get<std::vector<Vertex>>()};
      e.position = r.at("position").get<std::size_t>();
      e.length = r.at("length").get<std::size_t>();
      const auto& w = r.at("wiring");
      e.wiring.topology.entry = w.at("entry").get<int>();
      e.wiring.topology.exit = w.at("exit").get<int>();
      for (const auto& l : w.at("links")) e.wiring.topology.links.emplace_back(l.at(0).get<int>(), l.at(1).get<int>());
      for (const auto& c : w.at("connectors")) e.wiring.connectors.push_back({c.get<std::vector<Vertex>>()});
      const int s = e.absorber.s;
      auto before = traverse(s, e.wiring.topology, false), after = traverse(s, e.wiring.topology, true);
      require(before && after, ErrorKind::parse_error, "registry entry carries a topology that does not traverse");
      e.wiring.before = *before;
      e.wiring.after = *after;
      pa.registry.push_back(std::move(e));
    }
    return pa;
  });
}

Json to_json(const ReducedHypergraph& rh) {
  Json crossing = Json::array();
  for (const auto& [t, count] : rh.crossing) {
    if (count) crossing.push_back({triple(t), count});
  }
  Json defects = Json::array();
  for (const auto& [t, d] : rh.defects) defects.push_back({triple(t), d});
  Json pairs = Json::array();
  for (auto [a, b] : rh.malicious_pairs) pairs.push_back({a, b});
  return {{"t", rh.t},
          {"m", rh.m},
          {"parts", rh.parts},
          {"v0", rh.v0},
          {"crossing", crossing},
          {"defects", defects},
          {"dense", triples(rh.dense)},
          {"irregular", triples(rh.irregular)},
          {"K", triples(rh.K)},
          {"malicious_pairs", pairs},
          {"malicious_vertices", rh.malicious_vertices},
          {"warnings", rh.warnings}};
}

Json to_json(const LongPathResult& lp) {
  return {{"path", lp.path.vertices},       {"eligible", lp.eligible},
          {"covered", lp.covered},          {"coverage", lp.coverage()},
          {"reservoir_used", lp.reservoir_used}, {"matched_triplets", lp.matched_triplets},
          {"cover_paths", lp.cover_paths},  {"notes", lp.notes}};
}

Json to_json(const PipelineParams& p) {
  return {{"alpha", p.alpha.str()},
          {"theta", p.theta.str()},
          {"L", p.L},
          {"s", p.s},
          {"target_capacity", p.target_capacity},
          {"seed", p.seed},
          {"connector_budget", budget(p.connector_budget)},
          {"reservoir", {{"probes", p.reservoir.probes}, {"max_attempts", p.reservoir.max_attempts}}},
          {"cover",
           {{"xi", p.cover.xi},
            {"delta", p.cover.delta},
            {"t", p.cover.t},
            {"alpha_prime", p.cover.alpha_prime},
            {"samples", p.cover.samples}}},
          {"beta", p.beta},
          {"selection", p.selection == AbsorberSelection::greedy ? "greedy" : "sampled"},
          {"fallback_to_oracle", p.fallback_to_oracle},
          {"oracle_max_n", p.oracle_max_n},
          {"oracle_budget", budget(p.oracle_budget)}};
}

Json to_json(const RunReport& r, bool with_timing) {
  Json stages = Json::array();
  Json timing = Json::object();
  for (const auto& s : r.stages) {
    stages.push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    timing[s.name] = s.seconds;
  }
  Json j{{"n", r.n},
         {"params", to_json(r.params)},
         {"success", r.success},
         {"warnings", r.warnings},
         {"stages", stages},
         {"reservoir", r.reservoir},
         {"planned_leftover", r.planned_leftover},
         {"absorbing_path_vertices", r.absorbing_path_vertices},
         {"absorbers", r.absorbers},
         {"long_path_vertices", r.long_path_vertices},
         {"long_path_coverage", r.long_path_coverage},
         {"reservoir_used", r.reservoir_used},
         {"leftover", r.leftover}};
  if (r.failed_stage) {
    j["failure"] = {{"stage", *r.failed_stage},
                    {"kind", std::string(to_string(*r.failure_kind))},
                    {"message", r.failure_message}};
  }
  if (r.p1) j["p1"] = r.p1->vertices;
  if (r.p2) j["p2"] = r.p2->vertices;
  j["certificate"] = r.certificate ? Json(r.certificate->vertices) : Json(nullptr);
  if (r.oracle_status) j["oracle"] = {{"status", std::string(to_string(*r.oracle_status))}, {"nodes", r.oracle_nodes}};
  if (with_timing) j["timing"] = timing;
  return j;
}

Json to_json(const ScanRow& row) {
  Json j{{"matrix_id", row.matrix_id},
         {"classification", std::string(to_string(row.classification))},
         {"witness_source", row.witness_source},
         {"witness_file", row.witness_file},
         {"oracle_nodes", row.oracle_nodes},
         {"budget_exhausted", row.budget_exhausted}};
  if (row.witness) j["witness_edges"] = triples(row.witness->edges());
  return j;
}

}  // namespace tightham
