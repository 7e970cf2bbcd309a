#include "fasdg/digraph.hpp"

#include <bit>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fasdg/errors.hpp"
#include "fasdg/rng.hpp"

namespace fas {

VertexOrdering::VertexOrdering(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  const int n = static_cast<int>(ranks_.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int r : ranks_) {
    if (r < 0 || r >= n) throw std::invalid_argument("ordering: rank out of range");
    if (seen[static_cast<std::size_t>(r)]) throw std::invalid_argument("ordering: duplicate rank");
    seen[static_cast<std::size_t>(r)] = 1;
  }
}

VertexOrdering VertexOrdering::identity(int n) {
  if (n < 0) throw std::invalid_argument("ordering: negative size");
  std::vector<int> r(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) r[static_cast<std::size_t>(v)] = v;
  return VertexOrdering(std::move(r));
}

VertexOrdering VertexOrdering::reversed() const {
  std::vector<int> r(ranks_.size());
  const int n = this->n();
  for (int v = 0; v < n; ++v) r[static_cast<std::size_t>(v)] = n - 1 - ranks_[static_cast<std::size_t>(v)];
  return VertexOrdering(std::move(r));
}

VertexOrdering VertexOrdering::inverse() const {
  std::vector<int> r(ranks_.size());
  const int n = this->n();
  for (int v = 0; v < n; ++v) r[static_cast<std::size_t>(ranks_[static_cast<std::size_t>(v)])] = v;
  return VertexOrdering(std::move(r));
}

Digraph::Digraph(int n) : n_(n), words_((n + 63) / 64), m_(0) {
  if (n < 1) throw std::invalid_argument("digraph: need at least one vertex");
  bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

void Digraph::add_arc(int u, int v) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::invalid_argument("digraph: endpoint out of range");
  if (u == v) throw std::invalid_argument("digraph: self-loop");
  std::uint64_t& w = bits_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)];
  const std::uint64_t bit = 1ull << (v & 63);
  if (!(w & bit)) {
    w |= bit;
    ++m_;
  }
}

Digraph Digraph::sample(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample: p must lie in [0, 1]");
  Digraph d(n);
  SplitMix64 rng(seed);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      // p = 0 never fires and p = 1 always does: next_double() is in [0, 1).
      if (rng.next_double() < p) d.add_arc(u, v);
    }
  }
  return d;
}

ArcSplit arc_split(const Digraph& d, const VertexOrdering& order) {
  if (order.n() != d.n()) throw std::invalid_argument("arc_split: ordering size mismatch");
  const int n = d.n();
  const int words = d.words_per_row();
  std::vector<int> at(static_cast<std::size_t>(n));  // at[rank] = vertex
  for (int v = 0; v < n; ++v) at[static_cast<std::size_t>(order.rank_of(v))] = v;

  // Walk vertices in rank order; an arc out of v into the already-placed set
  // points backward. Word-parallel via the placed bitmask.
  std::vector<std::uint64_t> placed(static_cast<std::size_t>(words), 0);
  long long y = 0;
  for (int t = 0; t < n; ++t) {
    const int v = at[static_cast<std::size_t>(t)];
    const std::uint64_t* row = d.row(v);
    for (int w = 0; w < words; ++w) y += std::popcount(row[w] & placed[static_cast<std::size_t>(w)]);
    placed[static_cast<std::size_t>(v) >> 6] |= 1ull << (v & 63);
  }
  return ArcSplit{d.arc_count() - y, y};
}

bool ratio_event(const ArcSplit& split, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("ratio_event: r must be >= 1");
  if (split.y == 0) return true;
  return static_cast<double>(split.x) >= r * static_cast<double>(split.y);
}

Digraph relabel(const Digraph& d, const VertexOrdering& order) {
  if (order.n() != d.n()) throw std::invalid_argument("relabel: ordering size mismatch");
  const int n = d.n();
  Digraph out(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && d.has_arc(u, v)) out.add_arc(order.rank_of(u), order.rank_of(v));
  return out;
}

void write_edge_list(std::ostream& os, const Digraph& d) {
  os << "n " << d.n() << "\n";
  for (int u = 0; u < d.n(); ++u)
    for (int v = 0; v < d.n(); ++v)
      if (u != v && d.has_arc(u, v)) os << u << " " << v << "\n";
  if (!os) throw std::runtime_error("edge list: write failed");
}

namespace {

bool parse_int(const std::string& tok, int& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

}  // namespace

Digraph read_edge_list(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(is, line)) throw ParseError(1, "missing header");
  ++lineno;
  std::istringstream header(line);
  std::string tag, ntok, extra;
  header >> tag >> ntok;
  int n = 0;
  if (tag != "n" || !parse_int(ntok, n) || (header >> extra))
    throw ParseError(lineno, "expected header \"n <count>\"");
  if (n < 1) throw ParseError(lineno, "vertex count must be positive");

  Digraph d(n);
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string utok, vtok;
    int u = 0, v = 0;
    ls >> utok >> vtok;
    if (!parse_int(utok, u) || !parse_int(vtok, v) || (ls >> extra))
      throw ParseError(lineno, "expected \"u v\"");
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(lineno, "endpoint out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    if (d.has_arc(u, v)) throw ParseError(lineno, "duplicate arc");
    d.add_arc(u, v);
  }
  return d;
}

void write_ordering(std::ostream& os, const VertexOrdering& order) {
  const auto& r = order.ranks();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) os << " ";
    os << r[i];
  }
  os << "\n";
  if (!os) throw std::runtime_error("ordering: write failed");
}

VertexOrdering read_ordering(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(1, "missing ordering line");
  std::istringstream ls(line);
  std::vector<int> ranks;
  std::string tok;
  while (ls >> tok) {
    int r = 0;
    if (!parse_int(tok, r)) throw ParseError(1, "expected integer rank, got \"" + tok + "\"");
    ranks.push_back(r);
  }
  if (ranks.empty()) throw ParseError(1, "empty ordering");
  try {
    return VertexOrdering(std::move(ranks));
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

}  // namespace fas
