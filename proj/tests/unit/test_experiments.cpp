#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"

#include "fasdg/digraph.hpp"
#include "fasdg/errors.hpp"
#include "fasdg/experiments.hpp"
#include "fasdg/rng.hpp"

using fas::ExperimentConfig;
using fas::ExperimentSummary;
using fas::SolverKind;

TEST_CASE("solver kind names round-trip") {
  for (auto k : {SolverKind::none, SolverKind::exact_dp, SolverKind::local_search})
    CHECK(fas::solver_from_name(fas::solver_name(k)) == k);
  CHECK_THROWS_AS(fas::solver_from_name("dp"), std::invalid_argument);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.trials = 10;
  cfg.p = 1.2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.p = 0.5;
  cfg.solver = SolverKind::exact_dp;
  cfg.n = 30;
  CHECK_THROWS_AS(cfg.validate(), fas::CapacityError);
  cfg.n = 20;
  CHECK_NOTHROW(cfg.validate());
  cfg.solver = SolverKind::local_search;
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("degenerate probabilities behave exactly") {
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.epsilon = 0.0;
  cfg.trials = 50;
  cfg.seed = 9;

  cfg.p = 1.0;  // complete digraph: x = y = K every trial
  const ExperimentSummary full = fas::run_ratio_trials(cfg);
  CHECK(full.hits_raw == 50);
  CHECK(full.excluded_raw == 0);
  CHECK(full.mean_ratio_raw == 1.0);

  cfg.p = 0.0;  // empty digraph: y = 0, hit by convention, excluded from mean
  const ExperimentSummary empty = fas::run_ratio_trials(cfg);
  CHECK(empty.hits_raw == 50);
  CHECK(empty.excluded_raw == 50);
  CHECK(std::isnan(empty.mean_ratio_raw));
}

TEST_CASE("ratio trials are reproducible and thread-count independent") {
  ExperimentConfig cfg;
  cfg.n = 8;
  cfg.p = 0.4;
  cfg.epsilon = 0.25;
  cfg.trials = 400;
  cfg.seed = 31337;
  const auto a = fas::run_ratio_trials(cfg);
  const auto b = fas::run_ratio_trials(cfg);
  const auto c = fas::run_ratio_trials_serial(cfg);
  CHECK(fas::summary_to_json(a) == fas::summary_to_json(b));
  CHECK(fas::summary_to_json(a) == fas::summary_to_json(c));
}

TEST_CASE("trial layout follows the documented substream rule") {
  ExperimentConfig cfg;
  cfg.n = 6;
  cfg.p = 0.4;
  cfg.epsilon = 0.3;
  cfg.trials = 10;
  cfg.seed = 555;
  const ExperimentSummary got = fas::run_ratio_trials(cfg);

  long long hits = 0, excluded = 0;
  double sum = 0.0;
  long long included = 0;
  const auto id = fas::VertexOrdering::identity(6);
  for (long long k = 0; k < 10; ++k) {
    const fas::Digraph d =
        fas::Digraph::sample(6, 0.4, fas::derive_seed(555, 2 * static_cast<std::uint64_t>(k)));
    const fas::ArcSplit sp = fas::arc_split(d, id);
    if (fas::ratio_event(sp, 1.3)) ++hits;
    if (sp.y == 0) ++excluded;
    else {
      ++included;
      sum += static_cast<double>(sp.x) / static_cast<double>(sp.y);
    }
  }
  CHECK(got.hits_raw == hits);
  CHECK(got.excluded_raw == excluded);
  CHECK(got.mean_ratio_raw == sum / static_cast<double>(included));
}

TEST_CASE("raw hit frequency tracks the exact tail") {
  ExperimentConfig cfg;
  cfg.n = 3;
  cfg.p = 0.5;
  cfg.epsilon = 0.0;
  cfg.trials = 20000;
  cfg.seed = 2718281828;
  const double freq = fas::run_ratio_trials(cfg).freq_raw();
  // 4 sigma at 2e4 trials
  CHECK(std::abs(freq - 0.65625) < 0.0134);
}

TEST_CASE("solved trials dominate raw trials") {
  ExperimentConfig cfg;
  cfg.n = 7;
  cfg.p = 0.5;
  cfg.epsilon = 0.6;
  cfg.trials = 120;
  cfg.seed = 404;
  cfg.solver = SolverKind::exact_dp;
  const ExperimentSummary s = fas::run_fas_trials(cfg);
  CHECK(s.has_opt);
  CHECK_FALSE(s.heuristic);
  // the optimum can only shrink y, so every raw hit stays a hit
  CHECK(s.hits_opt >= s.hits_raw);
  CHECK(s.excluded_opt >= s.excluded_raw);
}

TEST_CASE("fas trials with local search are labeled heuristic and deterministic") {
  ExperimentConfig cfg;
  cfg.n = 10;
  cfg.p = 0.5;
  cfg.epsilon = 0.4;
  cfg.trials = 40;
  cfg.seed = 11;
  cfg.solver = SolverKind::local_search;
  cfg.restarts = 6;
  const ExperimentSummary a = fas::run_fas_trials(cfg);
  const ExperimentSummary b = fas::run_fas_trials_serial(cfg);
  CHECK(a.heuristic);
  CHECK(fas::summary_to_json(a) == fas::summary_to_json(b));
}

TEST_CASE("solver requirements are enforced") {
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.p = 0.5;
  cfg.trials = 5;
  CHECK_THROWS_AS(fas::run_fas_trials(cfg), std::invalid_argument);  // needs a solver
  cfg.solver = SolverKind::exact_dp;
  CHECK_THROWS_AS(fas::run_ratio_trials(cfg), std::invalid_argument);  // takes none
}

TEST_CASE("summary JSON carries config echo and null-safe means") {
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.p = 0.0;
  cfg.epsilon = 0.0;
  cfg.trials = 3;
  cfg.seed = 1;
  const auto j = fas::summary_to_json(fas::run_ratio_trials(cfg));
  CHECK(j["n"] == 4);
  CHECK(j["trials"] == 3);
  CHECK(j["solver"] == "none");
  CHECK(j["mean_ratio_raw"].is_null());
  CHECK_FALSE(j.contains("restarts"));
  CHECK_FALSE(j.contains("hits_opt"));
}

TEST_CASE("bound comparison flags are computed from matching parameters") {
  ExperimentConfig cfg;
  cfg.n = 3;
  cfg.p = 0.5;
  cfg.epsilon = 0.0;
  cfg.trials = 5000;
  cfg.seed = 77;
  const ExperimentSummary s = fas::run_ratio_trials(cfg);

  CHECK_THROWS_AS(fas::compare_to_bounds(s, fas::BoundParams(3, 0.5, 0.1)),
                  std::invalid_argument);

  const fas::BoundComparison cmp = fas::compare_to_bounds(s, fas::BoundParams(3, 0.5, 0.0));
  CHECK(cmp.has_bounds);
  REQUIRE(cmp.bounds.exact_tail.has_value());
  CHECK(*cmp.bounds.exact_tail == doctest::Approx(0.65625).epsilon(1e-13));
  // at eps = 0 only the hoeffding route is vacuous; nothing may be violated
  CHECK(cmp.flags == std::vector<std::string>{"eq3:vacuous"});
}

TEST_CASE("comparison CSV schema and degenerate-p rows") {
  std::ostringstream os;
  fas::write_comparison_csv_header(os);
  CHECK(os.str() ==
        "n,p,epsilon,r,K,trials,seed,solver,restarts,hits_raw,freq_raw,stderr_raw,"
        "excluded_raw,mean_ratio_raw,hits_opt,freq_opt,stderr_opt,excluded_opt,"
        "mean_ratio_opt,exact_tail,eq3,eq4,eq5,eq6,eq6_amplified,flags\n");

  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.p = 1.0;
  cfg.epsilon = 0.0;
  cfg.trials = 10;
  cfg.seed = 3;
  std::ostringstream row;
  fas::write_comparison_csv_row(row, fas::comparison_without_bounds(fas::run_ratio_trials(cfg)));
  CHECK(row.str().find("n/a (params)") != std::string::npos);
  CHECK(row.str().substr(0, 8) == "4,1,0,1,");

  cfg.p = 0.5;
  cfg.solver = SolverKind::local_search;
  cfg.restarts = 4;
  std::ostringstream row2;
  fas::write_comparison_csv_row(
      row2, fas::compare_to_bounds(fas::run_fas_trials(cfg), fas::BoundParams(4, 0.5, 0.0)));
  CHECK(row2.str().find(",local-search,4,") != std::string::npos);
  CHECK(row2.str().find("heuristic") != std::string::npos);
}
