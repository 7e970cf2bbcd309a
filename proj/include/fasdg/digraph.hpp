#ifndef FASDG_DIGRAPH_HPP
#define FASDG_DIGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace fas {

// Permutation of {0..n-1} stored as ranks: ranks()[v] is the position of
// vertex v in the ordering (0 = first).
class VertexOrdering {
 public:
  explicit VertexOrdering(std::vector<int> ranks);
  static VertexOrdering identity(int n);

  int n() const { return static_cast<int>(ranks_.size()); }
  int rank_of(int v) const { return ranks_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& ranks() const { return ranks_; }

  VertexOrdering reversed() const;
  VertexOrdering inverse() const;

  bool operator==(const VertexOrdering&) const = default;

 private:
  std::vector<int> ranks_;
};

// Simple digraph on {0..n-1}, no self-loops, adjacency stored as one bitset
// row per source vertex.
class Digraph {
 public:
  explicit Digraph(int n);

  // Erdos-Renyi draw: each ordered pair (u, v), u != v, gets an arc
  // independently with probability p. Pairs are visited row-major and consume
  // exactly one variate each, so (n, p, seed) pins the graph bit for bit.
  static Digraph sample(int n, double p, std::uint64_t seed);

  int n() const { return n_; }
  long long arc_count() const { return m_; }
  int words_per_row() const { return words_; }

  bool has_arc(int u, int v) const {
    return (row(u)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }
  void add_arc(int u, int v);

  const std::uint64_t* row(int u) const { return bits_.data() + static_cast<std::size_t>(u) * words_; }

  bool operator==(const Digraph&) const = default;

 private:
  int n_;
  int words_;
  long long m_;
  std::vector<std::uint64_t> bits_;
};

// Arc counts relative to an ordering: x arcs go forward (lower rank to
// higher), y arcs go backward. x + y always equals the arc count.
struct ArcSplit {
  long long x = 0;
  long long y = 0;
  bool operator==(const ArcSplit&) const = default;
};

ArcSplit arc_split(const Digraph& d, const VertexOrdering& order);

// True when x >= r*y, with y = 0 counting as a hit for any r. Requires r >= 1.
bool ratio_event(const ArcSplit& split, double r);

// Digraph with each vertex v renamed to order.rank_of(v).
Digraph relabel(const Digraph& d, const VertexOrdering& order);

// Text formats. Edge list: header line "n <count>", then one "u v" line per
// arc, 0-based. Ordering: a single line of space-separated ranks. Readers
// throw ParseError (with a line number) on malformed input, self-loops,
// duplicate arcs, or out-of-range endpoints.
void write_edge_list(std::ostream& os, const Digraph& d);
Digraph read_edge_list(std::istream& is);
void write_ordering(std::ostream& os, const VertexOrdering& order);
VertexOrdering read_ordering(std::istream& is);

}  // namespace fas

#endif
