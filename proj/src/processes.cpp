#include "hyperlab/processes.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <ostream>

#include <absl/container/flat_hash_set.h>

#include "hyperlab/errors.hpp"
#include "hyperlab/rng.hpp"

namespace hyperlab {

namespace {

// The k-sets containing a fixed j-set J, indexed by the colex rank of K \ J
// taken as a subset of the complement [n] \ J.
class SupersetScan {
 public:
  SupersetScan(std::uint32_t n, std::uint32_t k, std::span<const Vertex> jset)
      : jset_(jset.begin(), jset.end()), extra_(k - jset.size()), positions_(extra_), out_(k) {
    complement_.reserve(n - jset.size());
    std::size_t t = 0;
    for (Vertex v = 1; v <= n; ++v) {
      if (t < jset_.size() && jset_[t] == v) {
        ++t;
        continue;
      }
      complement_.push_back(v);
    }
    count_ = binomial_u64(complement_.size(), extra_);
  }

  std::uint64_t count() const noexcept { return count_; }

  // f(index, K) for every index in increasing order.
  template <class F>
  void for_each(F&& f) {
    std::uint64_t index = 0;
    for_each_subset(complement_, static_cast<std::uint32_t>(extra_), [&](std::span<const Vertex> extra) {
      std::merge(jset_.begin(), jset_.end(), extra.begin(), extra.end(), out_.begin());
      f(index++, std::span<const Vertex>(out_));
    });
  }

  std::span<const Vertex> at(std::uint64_t index) {
    unrank_into(index, positions_);
    for (auto& p : positions_) p = complement_[p - 1];
    std::merge(jset_.begin(), jset_.end(), positions_.begin(), positions_.end(), out_.begin());
    return out_;
  }

 private:
  VertexSet jset_;
  std::size_t extra_;
  VertexSet complement_;
  VertexSet positions_;
  VertexSet out_;
  std::uint64_t count_ = 0;
};

VertexSet unranked(Rank r, std::uint32_t size) {
  VertexSet s(size);
  unrank_into(r, s);
  return s;
}

void check_start(const Hypergraph& h, std::uint32_t j, std::span<const Vertex> start) {
  if (j < 1 || j >= h.k()) throw ValidationError("search: need 1 <= j <= k - 1");
  if (start.size() != j) throw ValidationError("search: start must contain exactly j vertices");
  validate_subset(start, h.n(), "search start");
}

struct Explored {
  SearchTrace trace;
  absl::flat_hash_set<Rank> jsets;
};

Explored explore(const Hypergraph& h, std::uint32_t j, std::span<const Vertex> start,
                 const SearchOptions& options) {
  check_start(h, j, start);
  const std::uint32_t k = h.k();
  Explored ex;
  absl::flat_hash_set<Rank> ksets;
  std::deque<std::pair<NodeType, Rank>> queue;
  std::optional<CounterRng> shuffle_rng;
  if (options.shuffle_seed) shuffle_rng.emplace(*options.shuffle_seed);

  const Rank root = rank_sorted(start);
  ex.jsets.insert(root);
  queue.emplace_back(NodeType::jset, root);

  std::vector<std::uint64_t> scan_order;
  std::vector<Rank> sub_ranks;
  while (!queue.empty()) {
    const auto [type, label] = queue.front();
    queue.pop_front();
    if (type == NodeType::jset) {
      const VertexSet jset = unranked(label, j);
      if (options.record_pops) ex.trace.pops.push_back({NodeType::jset, jset});
      SupersetScan scan(h.n(), k, jset);
      const auto visit = [&](std::span<const Vertex> kset) {
        const Rank kr = rank_sorted(kset);
        if (h.contains_rank(kr) && ksets.insert(kr).second) queue.emplace_back(NodeType::kset, kr);
      };
      if (shuffle_rng) {
        scan_order.resize(scan.count());
        std::iota(scan_order.begin(), scan_order.end(), std::uint64_t{0});
        std::shuffle(scan_order.begin(), scan_order.end(), *shuffle_rng);
        for (auto idx : scan_order) visit(scan.at(idx));
      } else {
        scan.for_each([&](std::uint64_t, std::span<const Vertex> kset) { visit(kset); });
      }
    } else {
      const VertexSet kset = unranked(label, k);
      if (options.record_pops) ex.trace.pops.push_back({NodeType::kset, kset});
      sub_ranks.clear();
      for_each_subset(kset, j, [&](std::span<const Vertex> s) { sub_ranks.push_back(rank_sorted(s)); });
      if (shuffle_rng) std::shuffle(sub_ranks.begin(), sub_ranks.end(), *shuffle_rng);
      for (Rank jr : sub_ranks) {
        if (ex.jsets.insert(jr).second) queue.emplace_back(NodeType::jset, jr);
      }
    }
  }
  ex.trace.size = ksets.size();
  ex.trace.order = ex.jsets.size();
  return ex;
}

}  // namespace

SearchTrace search_component(const Hypergraph& h, std::uint32_t j, std::span<const Vertex> start,
                             const SearchOptions& options) {
  return explore(h, j, start, options).trace;
}

void write_trace(std::ostream& out, const SearchTrace& trace) {
  for (std::size_t i = 0; i < trace.pops.size(); ++i) {
    out << "STEP " << i << " POP " << (trace.pops[i].type == NodeType::jset ? 'J' : 'K') << ' '
        << format_set(trace.pops[i].label) << '\n';
  }
}

VertexSet TwoTypeTree::label(std::size_t node) const {
  return unranked(nodes_[node].label, nodes_[node].type == NodeType::jset ? j_ : k_);
}

std::uint32_t TwoTypeTree::add_node(NodeType type, Rank label, std::int64_t parent) {
  nodes_.push_back(TreeNode{type, label, parent, 0, 0});
  if (type == NodeType::kset) ++kset_count_;
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

void TwoTypeTree::set_children(std::size_t node, std::uint32_t first, std::uint32_t count) {
  nodes_[node].first_child = first;
  nodes_[node].child_count = count;
}

TwoTypeTree branching_process(const TheoryParams& params, std::span<const Vertex> root_label,
                              std::uint64_t seed, std::uint64_t cap) {
  if (cap < 1) throw ValidationError("branching_process: cap must be positive");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw ValidationError("branching_process: p outside [0, 1]");
  if (root_label.size() != params.j) throw ValidationError("branching_process: root label must be a j-set");
  validate_subset(root_label, params.n, "branching_process root");

  const std::uint32_t k = params.k;
  const std::uint32_t j = params.j;
  TwoTypeTree tree(k, j);
  CounterRng rng(seed);
  tree.add_node(NodeType::jset, rank_sorted(root_label), -1);

  for (std::size_t u = 0; u < tree.nodes().size(); ++u) {
    const TreeNode node = tree.nodes()[u];
    const auto first = static_cast<std::uint32_t>(tree.nodes().size());
    if (node.type == NodeType::jset) {
      if (params.p <= 0.0) continue;
      const VertexSet jset = unranked(node.label, j);
      SupersetScan scan(params.n, k, jset);
      std::uint64_t next = 0;
      while (true) {
        const std::uint64_t skip = rng.geometric(params.p) - 1;
        if (skip >= scan.count() - next) break;
        const std::uint64_t idx = next + skip;
        if (tree.size() + 1 > cap) {
          tree.mark_truncated();
          return tree;
        }
        tree.add_node(NodeType::kset, rank_sorted(scan.at(idx)), static_cast<std::int64_t>(u));
        next = idx + 1;
        if (next == scan.count()) break;
      }
    } else {
      const Rank parent_label = tree.nodes()[static_cast<std::size_t>(node.parent)].label;
      const VertexSet kset = unranked(node.label, k);
      for_each_subset(kset, j, [&](std::span<const Vertex> s) {
        const Rank r = rank_sorted(s);
        if (r != parent_label) tree.add_node(NodeType::jset, r, static_cast<std::int64_t>(u));
      });
    }
    tree.set_children(u, first, static_cast<std::uint32_t>(tree.nodes().size() - first));
  }
  return tree;
}

CoupledOutcome coupled_run(const Hypergraph& h, const TheoryParams& params,
                           std::span<const Vertex> start, std::uint64_t seed, std::uint64_t cap) {
  if (h.n() != params.n || h.k() != params.k) {
    throw ValidationError("coupled_run: hypergraph and parameters disagree on n or k");
  }
  const std::uint32_t k = params.k;
  const std::uint32_t j = params.j;

  // The search's query set is fixed by its component: it queries exactly the
  // k-sets containing one of the component's j-sets.
  absl::flat_hash_set<Rank> search_query_set;
  for (Rank jr : explore(h, j, start, SearchOptions{std::nullopt, false}).jsets) {
    SupersetScan scan(params.n, k, unranked(jr, j));
    scan.for_each([&](std::uint64_t, std::span<const Vertex> kset) { search_query_set.insert(rank_sorted(kset)); });
  }

  struct Pending {
    NodeType type;
    Rank label;
    Rank parent_label;
    bool shadow;  // vertex realised by the search itself
  };
  std::deque<Pending> queue;
  absl::flat_hash_set<Rank> search_queried, search_jsets, search_ksets, free_queried;
  CounterRng rng(seed);
  CoupledOutcome out;

  const Rank root = rank_sorted(start);
  search_jsets.insert(root);
  queue.push_back({NodeType::jset, root, 0, true});

  const auto add_kset = [&](Rank label, Rank parent, bool shadow) {
    if (out.branching_size + 1 > cap) {
      out.truncated = true;
      return false;
    }
    ++out.branching_size;
    if (shadow) ++out.component_size;
    queue.push_back({NodeType::kset, label, parent, shadow});
    return true;
  };

  while (!queue.empty() && !out.truncated) {
    const Pending cur = queue.front();
    queue.pop_front();
    if (cur.type == NodeType::jset) {
      const VertexSet jset = unranked(cur.label, j);
      SupersetScan scan(params.n, k, jset);
      scan.for_each([&](std::uint64_t, std::span<const Vertex> kset) {
        if (out.truncated) return;
        const Rank kr = rank_sorted(kset);
        bool present = false;
        bool shadow_child = false;
        if (cur.shadow && search_queried.insert(kr).second) {
          // first query of K, made by the search
          present = h.contains_rank(kr);
          shadow_child = present && search_ksets.insert(kr).second;
        } else if (!cur.shadow && !search_query_set.count(kr) && free_queried.insert(kr).second) {
          // first query of K, made by the branching process alone
          present = h.contains_rank(kr);
        } else {
          present = rng.bernoulli(params.p);
        }
        if (present) add_kset(kr, cur.label, shadow_child);
      });
    } else {
      const VertexSet kset = unranked(cur.label, k);
      for_each_subset(kset, j, [&](std::span<const Vertex> s) {
        const Rank r = rank_sorted(s);
        if (r == cur.parent_label) return;
        const bool shadow = cur.shadow && search_jsets.insert(r).second;
        queue.push_back({NodeType::jset, r, cur.label, shadow});
      });
    }
  }
  return out;
}

}  // namespace hyperlab
