#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hyperlab/combinatorics.hpp"
#include "hyperlab/hypergraph.hpp"

namespace hyperlab {

enum class NodeType : std::uint8_t { jset, kset };

// ---------------------------------------------------------------------------
// Component search process

struct SearchEvent {
  NodeType type;
  VertexSet label;
};

/// Record of one breadth-first exploration. `pops` is the FIFO pop order;
/// every j-set and k-set discovered is popped exactly once.
struct SearchTrace {
  std::vector<SearchEvent> pops;
  std::uint64_t size = 0;   ///< k-sets discovered (edges of the component)
  std::uint64_t order = 0;  ///< j-sets discovered
};

struct SearchOptions {
  /// When set, every scan (supersets of a popped j-set, subsets of a popped
  /// k-set) is visited in a seeded random order instead of colex order.
  std::optional<std::uint64_t> shuffle_seed;
  bool record_pops = true;
};

/// Explores the j-component of `start`. Popping a j-set scans all
/// C(n - j, k - j) k-sets containing it and enqueues those present in `h` and
/// not yet discovered; popping a k-set enqueues its undiscovered j-subsets.
SearchTrace search_component(const Hypergraph& h, std::uint32_t j, std::span<const Vertex> start,
                             const SearchOptions& options = {});

/// One line per pop: `STEP <idx> POP <J|K> <label>`, idx from 0, label "a,b,c".
void write_trace(std::ostream& out, const SearchTrace& trace);

// ---------------------------------------------------------------------------
// Two-type branching process

struct TreeNode {
  NodeType type;
  Rank label;                ///< colex rank of the j-set or k-set label
  std::int64_t parent;       ///< -1 for the root
  std::uint32_t first_child;
  std::uint32_t child_count;
};

/// Rooted labelled two-type tree, nodes in breadth-first generation order.
/// Children of a node occupy a contiguous index range.
class TwoTypeTree {
 public:
  TwoTypeTree(std::uint32_t k, std::uint32_t j) : k_(k), j_(j) {}

  std::uint32_t k() const noexcept { return k_; }
  std::uint32_t j() const noexcept { return j_; }
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }
  std::uint64_t size() const noexcept { return kset_count_; }  ///< type-k vertices
  std::uint64_t jset_count() const noexcept { return nodes_.size() - kset_count_; }
  bool truncated() const noexcept { return truncated_; }
  VertexSet label(std::size_t node) const;

  // construction
  std::uint32_t add_node(NodeType type, Rank label, std::int64_t parent);
  void set_children(std::size_t node, std::uint32_t first, std::uint32_t count);
  void mark_truncated() noexcept { truncated_ = true; }

 private:
  std::uint32_t k_;
  std::uint32_t j_;
  std::vector<TreeNode> nodes_;
  std::uint64_t kset_count_ = 0;
  bool truncated_ = false;
};

inline constexpr std::uint64_t kDefaultBranchingCap = 1'000'000;

/// Generates an instance of the two-type branching process at probability
/// params.p. Each type-j vertex labelled J gets a type-k child for each of
/// the C(n - j, k - j) k-sets K containing J independently with probability p
/// (candidates in colex order of K \ J); each type-k child gets the c0 other
/// j-subsets of K as type-j children. Stops and flags truncation once the
/// tree would exceed `cap` type-k vertices.
TwoTypeTree branching_process(const TheoryParams& params, std::span<const Vertex> root_label,
                              std::uint64_t seed, std::uint64_t cap = kDefaultBranchingCap);

struct CoupledOutcome {
  std::uint64_t component_size = 0;
  std::uint64_t branching_size = 0;
  bool truncated = false;
};

/// Runs the search on `h` from `start` together with a branching process that
/// contains it. Query answers are shared: the first query of any k-set is
/// answered by membership in `h`, repeated queries by fresh Bernoulli(p)
/// draws. The search's queries are taken to come first, so every edge the
/// search discovers is also a branching-process child and
/// branching_size >= component_size holds on every run.
CoupledOutcome coupled_run(const Hypergraph& h, const TheoryParams& params,
                           std::span<const Vertex> start, std::uint64_t seed,
                           std::uint64_t cap = kDefaultBranchingCap);

}  // namespace hyperlab
