#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tightham/absorption.hpp"
#include "tightham/budget.hpp"
#include "tightham/connector.hpp"
#include "tightham/cover.hpp"
#include "tightham/hypergraph.hpp"
#include "tightham/oracle.hpp"
#include "tightham/rational.hpp"

namespace tightham {

struct PipelineParams {
  Rational alpha{1, 5};
  Rational theta{3, 10};
  int L = 5;
  int s = 4;
  int target_capacity = 2;
  std::uint64_t seed = 0;
  SearchBudget connector_budget{200000, std::nullopt};
  ReservoirOptions reservoir;
  CoverParams cover;
  double beta = 0.1;
  AbsorberSelection selection = AbsorberSelection::greedy;
  bool fallback_to_oracle = true;
  int oracle_max_n = 12;
  SearchBudget oracle_budget{std::uint64_t{1} << 32, std::nullopt};
};

// Throws invalid_argument unless s is even and >= 4, L >= 3 and theta^2 n >= 8.
void check_pipeline_params(const PipelineParams& p, int n);

struct StageOutcome {
  std::string name;
  bool ok = false;
  std::string detail;
  double seconds = 0;  // reported under the timing key only
};

struct RunReport {
  int n = 0;
  PipelineParams params;
  bool success = false;
  std::optional<std::string> failed_stage;
  std::optional<ErrorKind> failure_kind;
  std::string failure_message;
  std::vector<std::string> warnings;
  std::vector<StageOutcome> stages;

  std::vector<Vertex> reservoir;
  std::vector<Vertex> planned_leftover;  // D, the reservoir vertices P_A is built to absorb
  std::size_t absorbing_path_vertices = 0;
  std::size_t absorbers = 0;
  std::size_t long_path_vertices = 0;
  double long_path_coverage = 0;
  std::size_t reservoir_used = 0;  // reservoir vertices on Q, P1 and P2
  std::vector<Vertex> leftover;    // X, absorbed at the end
  std::optional<TightPath> p1, p2;
  std::optional<TightCycle> certificate;

  std::optional<SearchStatus> oracle_status;
  std::uint64_t oracle_nodes = 0;
};

// Stage failures are recorded in the report; only invalid parameters throw.
RunReport run_absorption_pipeline(const Hypergraph3& h, const PipelineParams& params);

// Throws invalid_argument when the report carries no certificate.
bool verify_certificate(const Hypergraph3& h, const RunReport& report);

}  // namespace tightham
