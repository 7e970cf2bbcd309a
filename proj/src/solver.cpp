#include "fasdg/solver.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fasdg/errors.hpp"
#include "fasdg/rng.hpp"

namespace fas {

std::string_view method_name(SolveMethod m) {
  switch (m) {
    case SolveMethod::brute_force: return "brute-force";
    case SolveMethod::subset_dp: return "subset-dp";
    case SolveMethod::local_search: return "local-search";
  }
  throw std::invalid_argument("unknown solve method");
}

FasSolution solve_bruteforce(const Digraph& d) {
  const int n = d.n();
  if (n > 8) throw CapacityError("brute force capped at 8 vertices");
  std::vector<int> ranks(static_cast<std::size_t>(n));
  std::iota(ranks.begin(), ranks.end(), 0);

  std::vector<int> best = ranks;
  long long best_y = arc_split(d, VertexOrdering(ranks)).y;
  // next_permutation walks rank vectors in lexicographic order, so keeping
  // only strict improvements leaves the lexicographically smallest optimum.
  while (std::next_permutation(ranks.begin(), ranks.end())) {
    const long long y = arc_split(d, VertexOrdering(ranks)).y;
    if (y < best_y) {
      best_y = y;
      best = ranks;
    }
  }
  return FasSolution{VertexOrdering(best), best_y, d.arc_count() - best_y, true,
                     SolveMethod::brute_force};
}

FasSolution solve_exact_dp(const Digraph& d) {
  const int n = d.n();
  if (n > 24) throw CapacityError("subset DP capped at 24 vertices");
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);

  std::vector<std::uint32_t> out(static_cast<std::size_t>(n), 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && d.has_arc(u, v)) out[static_cast<std::size_t>(u)] |= 1u << v;

  // f[S] = min backward arcs over orderings of S; choosing v last costs the
  // arcs from v into the rest of S. Costs stay below K(24) = 276, so one
  // 16-bit entry per subset.
  constexpr std::uint16_t kInf = std::numeric_limits<std::uint16_t>::max();
  std::vector<std::uint16_t> f(static_cast<std::size_t>(full) + 1, 0);
  for (std::uint32_t S = 1; S <= full; ++S) {
    std::uint16_t best = kInf;
    for (std::uint32_t rest = S; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t without = S & ~(1u << v);
      const std::uint16_t c = static_cast<std::uint16_t>(
          f[without] + std::popcount(out[static_cast<std::size_t>(v)] & without));
      if (c < best) best = c;
    }
    f[S] = best;
  }

  // Backtrack from the full set, filling ranks from the last position down.
  // countr_zero visits candidates in ascending vertex order, so ties land on
  // the lowest index.
  std::vector<int> ranks(static_cast<std::size_t>(n), 0);
  std::uint32_t S = full;
  for (int t = n - 1; t >= 0; --t) {
    for (std::uint32_t rest = S; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t without = S & ~(1u << v);
      if (f[without] + std::popcount(out[static_cast<std::size_t>(v)] & without) == f[S]) {
        ranks[static_cast<std::size_t>(v)] = t;
        S = without;
        break;
      }
    }
  }

  const long long y = f[full];
  return FasSolution{VertexOrdering(std::move(ranks)), y, d.arc_count() - y, true,
                     SolveMethod::subset_dp};
}

namespace {

struct LocalResult {
  long long y = 0;
  std::vector<int> order;  // order[pos] = vertex
};

LocalResult local_search_one(const Digraph& d, std::uint64_t seed) {
  const int n = d.n();
  SplitMix64 rng(seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Fisher-Yates with a modulo draw; the bias is negligible at these sizes
  // and the variate layout stays fixed.
  for (int i = n - 1; i >= 1; --i) {
    const int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }

  long long y = 0;
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a)
      if (d.has_arc(order[static_cast<std::size_t>(b)], order[static_cast<std::size_t>(a)])) ++y;

  // Each candidate move removes one vertex and reinserts it elsewhere. The
  // cost change accumulates pair by pair along the walk: moving v left past w
  // flips the pair's orientation, contributing A[w][v] - A[v][w], and
  // symmetrically for right moves. Best strict improvement wins; ties go to
  // the first candidate in scan order (vertex position ascending, left walk
  // before right walk).
  for (;;) {
    long long best_delta = 0;
    int best_from = -1, best_to = -1;
    for (int i = 0; i < n; ++i) {
      const int v = order[static_cast<std::size_t>(i)];
      long long delta = 0;
      for (int t = i - 1; t >= 0; --t) {
        const int w = order[static_cast<std::size_t>(t)];
        delta += (d.has_arc(w, v) ? 1 : 0) - (d.has_arc(v, w) ? 1 : 0);
        if (delta < best_delta) {
          best_delta = delta;
          best_from = i;
          best_to = t;
        }
      }
      delta = 0;
      for (int t = i + 1; t < n; ++t) {
        const int w = order[static_cast<std::size_t>(t)];
        delta += (d.has_arc(v, w) ? 1 : 0) - (d.has_arc(w, v) ? 1 : 0);
        if (delta < best_delta) {
          best_delta = delta;
          best_from = i;
          best_to = t;
        }
      }
    }
    if (best_delta >= 0) break;
    const int v = order[static_cast<std::size_t>(best_from)];
    order.erase(order.begin() + best_from);
    order.insert(order.begin() + best_to, v);
    y += best_delta;
  }
  return LocalResult{y, std::move(order)};
}

FasSolution pick_best(const Digraph& d, const std::vector<LocalResult>& results) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < results.size(); ++j)
    if (results[j].y < results[best].y) best = j;
  const LocalResult& r = results[best];
  std::vector<int> ranks(r.order.size());
  for (std::size_t pos = 0; pos < r.order.size(); ++pos)
    ranks[static_cast<std::size_t>(r.order[pos])] = static_cast<int>(pos);
  return FasSolution{VertexOrdering(std::move(ranks)), r.y, d.arc_count() - r.y, false,
                     SolveMethod::local_search};
}

}  // namespace

FasSolution solve_local_search_serial(const Digraph& d, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("local search: need at least one restart");
  std::vector<LocalResult> results(static_cast<std::size_t>(restarts));
  for (int j = 0; j < restarts; ++j)
    results[static_cast<std::size_t>(j)] = local_search_one(d, derive_seed(seed, static_cast<std::uint64_t>(j)));
  return pick_best(d, results);
}

FasSolution solve_local_search(const Digraph& d, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("local search: need at least one restart");
  std::vector<LocalResult> results(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < restarts; ++j)
    results[static_cast<std::size_t>(j)] = local_search_one(d, derive_seed(seed, static_cast<std::uint64_t>(j)));
  return pick_best(d, results);
}

}  // namespace fas
