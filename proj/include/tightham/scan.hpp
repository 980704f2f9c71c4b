#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tightham/budget.hpp"
#include "tightham/error.hpp"
#include "tightham/hypergraph.hpp"

namespace tightham {

// zero: d = 0. full: d = n-2. min-shift: clamp(min(i, j, cap) + shift, 0, n-2)
// over cap in {floor(n/2)-1, floor(n/2)} and shift in {-1, 0, 1}. step: lo when
// min(i, j) <= k, hi otherwise. sanity: zero, full and min(i, j, floor(n/2)) - 1.
enum class MatrixFamily { zero, full, min_shift, step, sanity };
std::string_view to_string(MatrixFamily f);
MatrixFamily parse_matrix_family(std::string_view text);

struct MatrixCandidate {
  std::string id;
  DegreeMatrix d;
};

std::vector<MatrixCandidate> family_matrices(int n, MatrixFamily family);

enum class ScanClass { counterexample_found, no_counterexample_within_budget };
std::string_view to_string(ScanClass c);

struct ScanOptions {
  int random_trials = 40;  // random minimal dominating graphs per matrix
  std::uint64_t seed = 0;
  SearchBudget oracle_budget{std::uint64_t{1} << 28, std::nullopt};
  int threads = 1;
  std::optional<std::filesystem::path> witness_dir;
};

struct ScanRow {
  std::string matrix_id;
  ScanClass classification = ScanClass::no_counterexample_within_budget;
  std::optional<Hypergraph3> witness;
  std::string witness_source;  // template name or "random-minimal"
  std::string witness_file;
  std::uint64_t oracle_nodes = 0;
  int budget_exhausted = 0;  // candidate graphs the oracle could not decide
  double seconds = 0;
};

// Looks for a graph dominating each matrix with no tight Hamiltonian cycle:
// templates first, then random minimal dominating graphs. Every witness is
// re-checked (dominance and a fresh oracle run) before it is reported.
std::vector<ScanRow> hamiltonian_matrix_scan(int n, const std::vector<MatrixCandidate>& matrices,
                                             const ScanOptions& options);

// Columns matrix_id, classification, witness_file, oracle_nodes, seconds.
std::string format_scan_csv(const std::vector<ScanRow>& rows, bool with_seconds = true);

}  // namespace tightham
