#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fasdg/bounds.hpp"
#include "fasdg/csv.hpp"
#include "fasdg/digraph.hpp"
#include "fasdg/errors.hpp"
#include "fasdg/experiments.hpp"
#include "fasdg/rng.hpp"
#include "fasdg/solver.hpp"
#include "fasdg/surface.hpp"

namespace {

// Exit codes, also listed in the README: 0 success, 2 flag/usage error,
// 3 input parse error, 4 precondition or hypothesis violation, 5 capacity
// cap exceeded, 1 anything else (including a FAIL surface verdict).
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitCapacity = 5;

// Data goes to the selected target only; diagnostics go to stderr.
struct OutputTarget {
  std::ofstream file;
  std::ostream* os = nullptr;
  explicit OutputTarget(const std::string& path) {
    if (path == "-") {
      os = &std::cout;
    } else {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output \"" + path + "\"");
      os = &file;
    }
  }
  std::ostream& stream() { return *os; }
  void finish() {
    os->flush();
    if (!*os) throw std::runtime_error("write failed");
  }
};

fas::Digraph read_input_digraph(const std::string& path) {
  if (path == "-") return fas::read_edge_list(std::cin);
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input \"" + path + "\"");
  return fas::read_edge_list(f);
}

struct Sweep {
  int lo = 0, hi = 0, step = 1;
};

// "a", "a..b", or "a..b:step", all positive, b >= a.
Sweep parse_sweep(const std::string& spec) {
  const auto parse_int = [](const std::string& tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("sweep: \"" + tok + "\" is not an integer");
    }
    if (used != tok.size()) throw std::invalid_argument("sweep: \"" + tok + "\" is not an integer");
    return v;
  };
  Sweep s;
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    s.lo = s.hi = parse_int(spec);
  } else {
    s.lo = parse_int(spec.substr(0, dots));
    std::string rest = spec.substr(dots + 2);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      s.hi = parse_int(rest);
    } else {
      s.hi = parse_int(rest.substr(0, colon));
      s.step = parse_int(rest.substr(colon + 1));
    }
  }
  if (s.lo < 1) throw std::invalid_argument("sweep: n must be >= 1");
  if (s.hi < s.lo) throw std::invalid_argument("sweep: upper end below lower end");
  if (s.step < 1) throw std::invalid_argument("sweep: step must be >= 1");
  return s;
}

struct GenArgs {
  int n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string output = "-";
};

struct SolveArgs {
  std::string input;
  std::string method;
  int restarts = 10;
  std::uint64_t seed = 0;
  std::string output = "-";
};

struct ParamArgs {
  int n = 0;
  double p = 0.0;
  double epsilon = 0.0;
  std::string output = "-";
};

struct SurfaceArgs {
  double spacing = 0.01;
  std::string output = "-";
};

struct ExperimentArgs {
  std::string n_spec;
  double p = 0.0;
  double epsilon = 0.0;
  long long trials = 0;
  std::uint64_t seed = 0;
  std::string solver = "none";
  int restarts = 10;
  std::string output = "-";
  std::string json_path;
};

int run_gen(const GenArgs& a) {
  const fas::Digraph d = fas::Digraph::sample(a.n, a.p, a.seed);
  OutputTarget out(a.output);
  fas::write_edge_list(out.stream(), d);
  out.finish();
  std::cerr << "m=" << d.arc_count() << "\n";
  return 0;
}

int run_solve(const SolveArgs& a) {
  const fas::Digraph d = read_input_digraph(a.input);
  fas::FasSolution sol = [&] {
    if (a.method == "brute-force") return fas::solve_bruteforce(d);
    if (a.method == "subset-dp") return fas::solve_exact_dp(d);
    return fas::solve_local_search(d, a.restarts, a.seed);
  }();

  nlohmann::ordered_json j;
  j["method"] = std::string(fas::method_name(sol.method));
  j["y_star"] = sol.y_star;
  j["x_star"] = sol.x_star;
  j["m"] = d.arc_count();
  j["ordering"] = sol.ordering.ranks();
  j["optimal"] = sol.optimal;

  OutputTarget out(a.output);
  out.stream() << j.dump(2) << "\n";
  out.finish();
  std::cerr << "n=" << d.n() << " m=" << d.arc_count() << " y_star=" << sol.y_star << "\n";
  return 0;
}

int run_bounds(const ParamArgs& a) {
  const fas::BoundParams bp(a.n, a.p, a.epsilon);
  const fas::BoundSet bs = fas::evaluate_bounds(bp);
  OutputTarget out(a.output);
  fas::write_bounds_csv_header(out.stream());
  fas::write_bounds_csv_row(out.stream(), bp, bs);
  out.finish();
  std::cerr << "K=" << bp.big_k() << "\n";
  return 0;
}

int run_tail(const ParamArgs& a) {
  const fas::BoundParams bp(a.n, a.p, a.epsilon);
  const double tail = fas::exact_ratio_tail(bp);
  OutputTarget out(a.output);
  out.stream() << "n,p,epsilon,K,exact_tail\n"
               << bp.n() << "," << fas::format_double(bp.p()) << ","
               << fas::format_double(bp.epsilon()) << "," << bp.big_k() << ","
               << fas::format_double(tail) << "\n";
  out.finish();
  std::cerr << "K=" << bp.big_k() << "\n";
  return 0;
}

int run_surface(const SurfaceArgs& a) {
  const fas::SurfaceGrid grid = fas::scan_surface(a.spacing);
  OutputTarget out(a.output);
  fas::emit_surface_csv(grid, out.stream());
  out.finish();
  const fas::SurfacePoint& mn = grid.min_point();
  std::cerr << "points=" << grid.points.size() << " min=" << fas::format_double(mn.value)
            << " at p=" << fas::format_double(mn.p) << " s=" << fas::format_double(mn.s)
            << " verdict=" << (grid.all_positive ? "PASS" : "FAIL") << "\n";
  return grid.all_positive ? 0 : 1;
}

int run_experiment(const ExperimentArgs& a) {
  const Sweep sweep = parse_sweep(a.n_spec);
  const fas::SolverKind solver = fas::solver_from_name(a.solver);

  OutputTarget out(a.output);
  fas::write_comparison_csv_header(out.stream());
  nlohmann::ordered_json summaries = nlohmann::ordered_json::array();

  for (int n = sweep.lo; n <= sweep.hi; n += sweep.step) {
    fas::ExperimentConfig cfg;
    cfg.n = n;
    cfg.p = a.p;
    cfg.epsilon = a.epsilon;
    cfg.trials = a.trials;
    // sweep elements get independent substreams keyed by n, so widening the
    // sweep never changes an existing row
    cfg.seed = fas::derive_seed(a.seed, static_cast<std::uint64_t>(n));
    cfg.solver = solver;
    cfg.restarts = a.restarts;

    const fas::ExperimentSummary summary = (solver == fas::SolverKind::none)
                                               ? fas::run_ratio_trials(cfg)
                                               : fas::run_fas_trials(cfg);
    const fas::BoundComparison cmp =
        (a.p > 0.0 && a.p < 1.0)
            ? fas::compare_to_bounds(summary, fas::BoundParams(n, a.p, a.epsilon))
            : fas::comparison_without_bounds(summary);
    fas::write_comparison_csv_row(out.stream(), cmp);
    summaries.push_back(fas::summary_to_json(summary));
    std::cerr << "n=" << n << " freq_raw=" << fas::format_double(summary.freq_raw());
    if (summary.has_opt) std::cerr << " freq_opt=" << fas::format_double(summary.freq_opt());
    std::cerr << "\n";
  }
  out.finish();

  if (!a.json_path.empty()) {
    OutputTarget jout(a.json_path);
    jout.stream() << summaries.dump(2) << "\n";
    jout.finish();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum feedback arc set on random digraphs: solvers, tail bounds, experiments"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "sample a digraph and write its edge list");
  gen->add_option("--n", gen_args.n, "vertex count")->required();
  gen->add_option("--p", gen_args.p, "arc probability in [0,1]")->required();
  gen->add_option("--seed", gen_args.seed, "RNG seed");
  gen->add_option("-o,--output", gen_args.output, "output path or - for stdout");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "read an edge list and solve for a minimum FAS");
  solve->add_option("-i,--input", solve_args.input, "edge-list path or - for stdin")->required();
  solve->add_option("--method", solve_args.method, "brute-force, subset-dp, or local-search")
      ->required()
      ->check(CLI::IsMember({"brute-force", "subset-dp", "local-search"}));
  solve->add_option("--restarts", solve_args.restarts, "local-search restarts");
  solve->add_option("--seed", solve_args.seed, "local-search RNG seed");
  solve->add_option("-o,--output", solve_args.output, "output path or - for stdout");

  ParamArgs bounds_args;
  CLI::App* bounds = app.add_subcommand("bounds", "evaluate every tail bound at one parameter point");
  bounds->add_option("--n", bounds_args.n, "vertex count")->required();
  bounds->add_option("--p", bounds_args.p, "arc probability in (0,1)")->required();
  bounds->add_option("--epsilon", bounds_args.epsilon, "ratio margin, r = 1 + epsilon")->required();
  bounds->add_option("-o,--output", bounds_args.output, "output path or - for stdout");

  ParamArgs tail_args;
  CLI::App* tail = app.add_subcommand("tail", "exact Pr(X >= rY) by the binomial double sum");
  tail->add_option("--n", tail_args.n, "vertex count")->required();
  tail->add_option("--p", tail_args.p, "arc probability in (0,1)")->required();
  tail->add_option("--epsilon", tail_args.epsilon, "ratio margin, r = 1 + epsilon")->required();
  tail->add_option("-o,--output", tail_args.output, "output path or - for stdout");

  SurfaceArgs surface_args;
  CLI::App* surface = app.add_subcommand("surface", "grid-scan the scaled difference surface");
  surface->add_option("--spacing", surface_args.spacing, "grid spacing; must divide 0.5 and 1.0");
  surface->add_option("-o,--output", surface_args.output, "output path or - for stdout");

  ExperimentArgs exp_args;
  CLI::App* experiment = app.add_subcommand("experiment", "Monte Carlo trials with bound comparison");
  experiment->add_option("--n", exp_args.n_spec, "vertex count or sweep a..b[:step]")
      ->required()
      ->check([](const std::string& spec) -> std::string {
        try {
          parse_sweep(spec);
        } catch (const std::invalid_argument& e) {
          return e.what();
        }
        return {};
      });
  experiment->add_option("--p", exp_args.p, "arc probability in [0,1]")->required();
  experiment->add_option("--epsilon", exp_args.epsilon, "ratio margin, r = 1 + epsilon")->required();
  experiment->add_option("--trials", exp_args.trials, "trials per sweep element")->required();
  experiment->add_option("--seed", exp_args.seed, "master seed; element n uses substream n");
  experiment->add_option("--solver", exp_args.solver, "none, exact-dp, or local-search")
      ->check(CLI::IsMember({"none", "exact-dp", "local-search"}));
  experiment->add_option("--restarts", exp_args.restarts, "local-search restarts");
  experiment->add_option("-o,--output", exp_args.output, "comparison CSV path or - for stdout");
  experiment->add_option("--json", exp_args.json_path, "also write summaries as JSON to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (bounds->parsed()) return run_bounds(bounds_args);
    if (tail->parsed()) return run_tail(tail_args);
    if (surface->parsed()) return run_surface(surface_args);
    if (experiment->parsed()) return run_experiment(exp_args);
  } catch (const fas::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const fas::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const fas::HypothesisError& e) {
    std::cerr << "hypothesis error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
