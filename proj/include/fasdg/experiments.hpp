#ifndef FASDG_EXPERIMENTS_HPP
#define FASDG_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fasdg/bounds.hpp"

namespace fas {

enum class SolverKind { none, exact_dp, local_search };

std::string_view solver_name(SolverKind k);
SolverKind solver_from_name(std::string_view name);

// One Monte Carlo run: `trials` independent digraphs from D(n, p), each
// checked for x >= (1+epsilon) y under the identity ordering and, when a
// solver is set, under the solved ordering too. Trial k draws its digraph
// from derive_seed(seed, 2k) and hands derive_seed(seed, 2k+1) to the solver,
// so prefixes agree across runs that share a seed.
struct ExperimentConfig {
  int n = 2;
  double p = 0.5;
  double epsilon = 0.0;
  long long trials = 1;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::none;
  int restarts = 10;  // local search only

  double r() const { return 1.0 + epsilon; }
  void validate() const;
};

struct ExperimentSummary {
  ExperimentConfig config;
  long long hits_raw = 0;
  long long excluded_raw = 0;  // trials with y = 0: counted as hits, excluded from the mean
  double mean_ratio_raw = std::numeric_limits<double>::quiet_NaN();
  bool has_opt = false;
  long long hits_opt = 0;
  long long excluded_opt = 0;
  double mean_ratio_opt = std::numeric_limits<double>::quiet_NaN();
  bool heuristic = false;  // set when the solver was local search

  double freq_raw() const { return static_cast<double>(hits_raw) / static_cast<double>(config.trials); }
  double freq_opt() const { return static_cast<double>(hits_opt) / static_cast<double>(config.trials); }
  double stderr_raw() const {
    const double f = freq_raw();
    return std::sqrt(f * (1.0 - f) / static_cast<double>(config.trials));
  }
  double stderr_opt() const {
    const double f = freq_opt();
    return std::sqrt(f * (1.0 - f) / static_cast<double>(config.trials));
  }
};

// Identity ordering only; config.solver must be none.
ExperimentSummary run_ratio_trials(const ExperimentConfig& cfg);
ExperimentSummary run_ratio_trials_serial(const ExperimentConfig& cfg);

// Solves each trial digraph with the configured solver (exact-dp or
// local-search) and tracks both raw and solved splits.
ExperimentSummary run_fas_trials(const ExperimentConfig& cfg);
ExperimentSummary run_fas_trials_serial(const ExperimentConfig& cfg);

nlohmann::ordered_json summary_to_json(const ExperimentSummary& summary);

// A summary laid next to every bound at the same parameter point. Flags
// record anything needing a second look: a vacuous bound, an exact value
// above a proven bound (must never fire), the raw frequency more than four
// standard errors from the exact tail, or a heuristic solver.
struct BoundComparison {
  ExperimentSummary summary;
  bool has_bounds = false;  // false when p is 0 or 1 and no bound applies
  BoundSet bounds;
  std::vector<std::string> flags;
};

BoundComparison compare_to_bounds(const ExperimentSummary& summary, const BoundParams& params);
BoundComparison comparison_without_bounds(const ExperimentSummary& summary);

void write_comparison_csv_header(std::ostream& os);
void write_comparison_csv_row(std::ostream& os, const BoundComparison& cmp);

}  // namespace fas

#endif
