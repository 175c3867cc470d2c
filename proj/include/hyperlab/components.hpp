#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hyperlab/combinatorics.hpp"
#include "hyperlab/hypergraph.hpp"

namespace hyperlab {

/// A cyclic pair of sequences: distinct edges K_1..K_l and distinct j-sets,
/// stored so that jsets[i] is contained in edges[i] and edges[(i + 1) % l].
struct Wheel {
  std::vector<VertexSet> edges;
  std::vector<VertexSet> jsets;

  std::size_t length() const noexcept { return edges.size(); }

  /// Checks length >= 2, distinctness and the containment condition.
  bool is_valid() const;

  /// The least representation (by colex ranks) over all rotations and
  /// reversals. Two wheels are the same wheel iff their canonical forms match.
  Wheel canonical() const;

  friend bool operator==(const Wheel&, const Wheel&) = default;
};

bool same_wheel(const Wheel& a, const Wheel& b);

struct ComponentSummary {
  std::uint32_t id = 0;
  std::uint64_t size = 0;   ///< hyperedges
  std::uint64_t order = 0;  ///< j-sets
  bool is_hypertree = true;
  std::optional<Wheel> wheel_witness;
};

/// All j-components of a hypergraph that contain at least one edge.
/// Component ids follow the storage order of each component's first edge.
struct Decomposition {
  std::uint32_t j = 0;
  std::vector<ComponentSummary> components;
  std::vector<Rank> jset_ranks;               ///< touched j-sets, ascending
  std::vector<std::uint32_t> jset_component;  ///< parallel to jset_ranks
  std::vector<std::uint32_t> edge_component;  ///< per edge, storage order
  std::uint64_t isolated_jsets = 0;           ///< j-sets in no edge

  std::optional<std::uint32_t> component_of(Rank jset) const;
  std::vector<VertexSet> edges_of(const Hypergraph& h, std::uint32_t id) const;
};

/// Union-find over the j-subsets of every edge. `find_wheels` controls
/// whether non-hypertree components get a wheel witness.
Decomposition j_components(const Hypergraph& h, std::uint32_t j, bool find_wheels = true);

/// A wheel inside the given component edges, or nothing if the j-set/edge
/// incidence graph is acyclic (i.e. the component is a hypertree).
std::optional<Wheel> find_wheel(std::uint32_t j, std::span<const VertexSet> component_edges);

/// Number of distinct wheels of length `ell` on [n], counted up to rotation and
/// reversal by exhaustive generation. Guarded to n <= 10, ell <= 4.
std::uint64_t brute_force_wheel_census(std::uint32_t n, std::uint32_t k, std::uint32_t j,
                                       std::uint32_t ell);

namespace detail {

/// Ranks of the C(k, j) j-subsets of every edge, edge-major. The parallel
/// path splits edges across OpenMP threads; the serial path is the reference.
std::vector<Rank> collect_jset_ranks(const Hypergraph& h, std::uint32_t j, bool parallel);

/// Ordered (non-canonicalized) wheel sequences; equals 2 * ell * census.
std::uint64_t ordered_wheel_count(std::uint32_t n, std::uint32_t k, std::uint32_t j,
                                  std::uint32_t ell);

}  // namespace detail

}  // namespace hyperlab
