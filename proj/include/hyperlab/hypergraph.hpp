#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hyperlab/combinatorics.hpp"

namespace hyperlab {

/// A k-uniform hypergraph on [n]. Edges are kept sorted by colex rank, which
/// is also the order the sampler produces them in.
class Hypergraph {
 public:
  Hypergraph(std::uint32_t n, std::uint32_t k);

  /// Validates every edge, sorts by rank, rejects duplicates.
  static Hypergraph from_edges(std::uint32_t n, std::uint32_t k, std::vector<VertexSet> edges);

  /// Ranks must be strictly increasing and below C(n, k).
  static Hypergraph from_ranks(std::uint32_t n, std::uint32_t k, std::vector<Rank> ranks);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t k() const noexcept { return k_; }
  std::size_t edge_count() const noexcept { return ranks_.size(); }
  bool empty() const noexcept { return ranks_.empty(); }

  std::span<const Vertex> edge(std::size_t i) const noexcept {
    return {vertices_.data() + i * k_, k_};
  }
  Rank edge_rank(std::size_t i) const noexcept { return ranks_[i]; }
  std::span<const Rank> ranks() const noexcept { return ranks_; }

  bool contains_rank(Rank r) const noexcept;
  bool contains(std::span<const Vertex> edge) const noexcept;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::uint32_t n_;
  std::uint32_t k_;
  std::vector<Rank> ranks_;
  std::vector<Vertex> vertices_;  // edge i occupies [i*k, (i+1)*k)
};

/// Samples H^k(n, p): each of the C(n, k) potential edges independently with
/// probability p. Walks the rank space with geometric gaps, so the cost is
/// proportional to the number of edges drawn, not to C(n, k).
Hypergraph sample_hypergraph(std::uint32_t n, std::uint32_t k, double p, std::uint64_t seed);
Hypergraph sample_hypergraph(const TheoryParams& params, std::uint64_t seed);

/// Text format: a header line `n k m`, then m lines of k ascending vertex ids,
/// lines in colex order.
void write_hypergraph(std::ostream& out, const Hypergraph& h);
Hypergraph read_hypergraph(std::istream& in);

}  // namespace hyperlab
