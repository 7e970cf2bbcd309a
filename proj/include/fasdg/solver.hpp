#ifndef FASDG_SOLVER_HPP
#define FASDG_SOLVER_HPP

#include <cstdint>
#include <string_view>

#include "fasdg/digraph.hpp"

namespace fas {

enum class SolveMethod { brute_force, subset_dp, local_search };

std::string_view method_name(SolveMethod m);

struct FasSolution {
  VertexOrdering ordering;
  long long y_star = 0;  // backward arcs under ordering (the feedback set size)
  long long x_star = 0;
  bool optimal = false;
  SolveMethod method = SolveMethod::brute_force;
};

// Exhaustive search over all n! orderings; ties go to the lexicographically
// smallest rank vector. n <= 8, else CapacityError.
FasSolution solve_bruteforce(const Digraph& d);

// Held-Karp style subset DP, one table entry per vertex subset. Exact, ties
// broken toward the lowest vertex index during backtracking. n <= 24, else
// CapacityError.
FasSolution solve_exact_dp(const Digraph& d);

// Repeated single-vertex reinsertion from random starts: each pass moves the
// vertex/position pair with the best strict improvement until none exists.
// Restart j uses the substream derive_seed(seed, j); the best restart wins,
// ties to the lower restart index. Not exact; `optimal` is false.
FasSolution solve_local_search(const Digraph& d, int restarts, std::uint64_t seed);
FasSolution solve_local_search_serial(const Digraph& d, int restarts, std::uint64_t seed);

}  // namespace fas

#endif
