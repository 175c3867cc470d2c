#include "hyperlab/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hyperlab/errors.hpp"
#include "hyperlab/rng.hpp"

namespace hyperlab {

Hypergraph::Hypergraph(std::uint32_t n, std::uint32_t k) : n_(n), k_(k) {
  if (k < 1) throw ValidationError("hypergraph: k must be positive");
  if (n < k) throw ValidationError("hypergraph: n must be at least k");
}

Hypergraph Hypergraph::from_edges(std::uint32_t n, std::uint32_t k, std::vector<VertexSet> edges) {
  Hypergraph h(n, k);
  std::vector<std::pair<Rank, std::size_t>> order;
  order.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].size() != k) {
      throw ValidationError("hypergraph: edge " + format_set(edges[i]) + " does not have " +
                            std::to_string(k) + " vertices");
    }
    order.emplace_back(rank_subset(edges[i], n), i);
  }
  std::sort(order.begin(), order.end());
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i].first == order[i - 1].first) {
      throw ValidationError("hypergraph: duplicate edge " + format_set(edges[order[i].second]));
    }
  }
  h.ranks_.reserve(order.size());
  h.vertices_.reserve(order.size() * k);
  for (const auto& [r, i] : order) {
    h.ranks_.push_back(r);
    h.vertices_.insert(h.vertices_.end(), edges[i].begin(), edges[i].end());
  }
  return h;
}

Hypergraph Hypergraph::from_ranks(std::uint32_t n, std::uint32_t k, std::vector<Rank> ranks) {
  Hypergraph h(n, k);
  const std::uint64_t total = binomial_u64(n, k);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] >= total) throw std::out_of_range("hypergraph: edge rank out of range");
    if (i > 0 && ranks[i] <= ranks[i - 1]) {
      throw ValidationError("hypergraph: edge ranks must be strictly increasing");
    }
  }
  h.vertices_.resize(ranks.size() * k);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    unrank_into(ranks[i], std::span<Vertex>(h.vertices_.data() + i * k, k));
  }
  h.ranks_ = std::move(ranks);
  return h;
}

bool Hypergraph::contains_rank(Rank r) const noexcept {
  return std::binary_search(ranks_.begin(), ranks_.end(), r);
}

bool Hypergraph::contains(std::span<const Vertex> edge) const noexcept {
  return edge.size() == k_ && contains_rank(rank_sorted(edge));
}

Hypergraph sample_hypergraph(std::uint32_t n, std::uint32_t k, double p, std::uint64_t seed) {
  if (k < 1 || n < k) throw ValidationError("sample_hypergraph: need n >= k >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("sample_hypergraph: p must lie in [0, 1]");
  const std::uint64_t total = binomial_u64(n, k);
  std::vector<Rank> ranks;
  if (p > 0.0) {
    CounterRng rng(seed);
    ranks.reserve(static_cast<std::size_t>(std::min(static_cast<double>(total), total * p * 1.1 + 16)));
    std::uint64_t next = 0;  // first rank not yet decided
    while (true) {
      const std::uint64_t skip = rng.geometric(p) - 1;
      if (skip >= total - next) break;
      const Rank r = next + skip;
      ranks.push_back(r);
      next = r + 1;
      if (next == total) break;
    }
  }
  return Hypergraph::from_ranks(n, k, std::move(ranks));
}

Hypergraph sample_hypergraph(const TheoryParams& params, std::uint64_t seed) {
  return sample_hypergraph(params.n, params.k, params.p, seed);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.n() << ' ' << h.k() << ' ' << h.edge_count() << '\n';
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto e = h.edge(i);
    for (std::size_t t = 0; t < e.size(); ++t) {
      if (t) out << ' ';
      out << e[t];
    }
    out << '\n';
  }
}

Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return;
    }
    throw ValidationError(std::string("hypergraph file: missing ") + what);
  };

  next_line("header");
  long long n = -1, k = -1, m = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> k >> m) || (hs >> extra) || n < 1 || k < 1 || m < 0 || n > 0xFFFFFFFFLL) {
      throw ValidationError("hypergraph file: bad header '" + line + "'");
    }
  }
  Hypergraph h(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k));
  std::vector<Rank> ranks;
  ranks.reserve(static_cast<std::size_t>(m));
  VertexSet edge;
  for (long long i = 0; i < m; ++i) {
    next_line("edge line");
    std::istringstream ls(line);
    edge.clear();
    long long v = 0;
    while (ls >> v) {
      if (v < 1 || v > n) throw ValidationError("hypergraph file: vertex out of range in '" + line + "'");
      edge.push_back(static_cast<Vertex>(v));
    }
    if (!ls.eof() || edge.size() != static_cast<std::size_t>(k)) {
      throw ValidationError("hypergraph file: malformed edge line '" + line + "'");
    }
    validate_subset(edge, static_cast<std::uint32_t>(n), "hypergraph file");
    const Rank r = rank_sorted(edge);
    if (!ranks.empty() && r <= ranks.back()) {
      throw ValidationError("hypergraph file: edges not in strictly increasing colex order at '" +
                            line + "'");
    }
    ranks.push_back(r);
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ValidationError("hypergraph file: trailing content '" + line + "'");
    }
  }
  return Hypergraph::from_ranks(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k),
                                std::move(ranks));
}

}  // namespace hyperlab
