#include "hyperlab/components.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "hyperlab/disjoint_sets.hpp"
#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

using RankSeq = std::vector<Rank>;

// Least (edges, jsets) rank pair over the 2l dihedral images.
// Rotation by r:  edges'[i] = edges[i + r],       jsets'[i] = jsets[i + r]
// Reversal:       edges'[i] = edges[l - 1 - i],   jsets'[i] = jsets[l - 2 - i]
std::pair<RankSeq, RankSeq> canonical_ranks(const RankSeq& edges, const RankSeq& jsets) {
  const std::size_t l = edges.size();
  std::pair<RankSeq, RankSeq> best;
  std::pair<RankSeq, RankSeq> cand{RankSeq(l), RankSeq(l)};
  bool have = false;
  for (int reflect = 0; reflect < 2; ++reflect) {
    for (std::size_t r = 0; r < l; ++r) {
      for (std::size_t i = 0; i < l; ++i) {
        if (!reflect) {
          cand.first[i] = edges[(i + r) % l];
          cand.second[i] = jsets[(i + r) % l];
        } else {
          cand.first[i] = edges[(2 * l - 1 - i + r) % l];
          cand.second[i] = jsets[(3 * l - 2 - i + r) % l];
        }
      }
      if (!have || cand < best) {
        best = cand;
        have = true;
      }
    }
  }
  return best;
}

bool is_subset(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool Wheel::is_valid() const {
  const std::size_t l = edges.size();
  if (l < 2 || jsets.size() != l) return false;
  std::set<VertexSet> seen_edges(edges.begin(), edges.end());
  std::set<VertexSet> seen_jsets(jsets.begin(), jsets.end());
  if (seen_edges.size() != l || seen_jsets.size() != l) return false;
  for (std::size_t i = 0; i < l; ++i) {
    if (!is_subset(jsets[i], edges[i]) || !is_subset(jsets[i], edges[(i + 1) % l])) return false;
  }
  return true;
}

Wheel Wheel::canonical() const {
  RankSeq er, jr;
  for (const auto& e : edges) er.push_back(rank_sorted(e));
  for (const auto& s : jsets) jr.push_back(rank_sorted(s));
  const auto [ce, cj] = canonical_ranks(er, jr);
  Wheel out;
  const std::uint32_t k = edges.empty() ? 0 : static_cast<std::uint32_t>(edges[0].size());
  const std::uint32_t j = jsets.empty() ? 0 : static_cast<std::uint32_t>(jsets[0].size());
  for (Rank r : ce) {
    VertexSet s(k);
    unrank_into(r, s);
    out.edges.push_back(std::move(s));
  }
  for (Rank r : cj) {
    VertexSet s(j);
    unrank_into(r, s);
    out.jsets.push_back(std::move(s));
  }
  return out;
}

bool same_wheel(const Wheel& a, const Wheel& b) { return a.canonical() == b.canonical(); }

std::optional<std::uint32_t> Decomposition::component_of(Rank jset) const {
  const auto it = std::lower_bound(jset_ranks.begin(), jset_ranks.end(), jset);
  if (it == jset_ranks.end() || *it != jset) return std::nullopt;
  return jset_component[static_cast<std::size_t>(it - jset_ranks.begin())];
}

std::vector<VertexSet> Decomposition::edges_of(const Hypergraph& h, std::uint32_t id) const {
  std::vector<VertexSet> out;
  for (std::size_t e = 0; e < edge_component.size(); ++e) {
    if (edge_component[e] == id) {
      const auto ed = h.edge(e);
      out.emplace_back(ed.begin(), ed.end());
    }
  }
  return out;
}

namespace detail {

std::vector<Rank> collect_jset_ranks(const Hypergraph& h, std::uint32_t j, bool parallel) {
  const std::size_t m = h.edge_count();
  const std::size_t per_edge = static_cast<std::size_t>(binomial_u64(h.k(), j));
  std::vector<Rank> out(m * per_edge);
  const auto fill_edge = [&](std::size_t e) {
    std::size_t slot = e * per_edge;
    for_each_subset(h.edge(e), j, [&](std::span<const Vertex> s) { out[slot++] = rank_sorted(s); });
  };
  if (parallel) {
    const auto count = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
    for (std::int64_t e = 0; e < count; ++e) fill_edge(static_cast<std::size_t>(e));
  } else {
    for (std::size_t e = 0; e < m; ++e) fill_edge(e);
  }
  return out;
}

}  // namespace detail

Decomposition j_components(const Hypergraph& h, std::uint32_t j, bool find_wheels) {
  if (j < 1 || j >= h.k()) throw ValidationError("j_components: need 1 <= j <= k - 1");

  constexpr std::size_t kParallelEdgeThreshold = std::size_t{1} << 15;
  const std::size_t m = h.edge_count();
  const std::size_t per_edge = static_cast<std::size_t>(binomial_u64(h.k(), j));
  const std::uint64_t c0 = per_edge - 1;

  const std::vector<Rank> slots = detail::collect_jset_ranks(h, j, m >= kParallelEdgeThreshold);

  Decomposition d;
  d.j = j;
  d.jset_ranks = slots;
  std::sort(d.jset_ranks.begin(), d.jset_ranks.end());
  d.jset_ranks.erase(std::unique(d.jset_ranks.begin(), d.jset_ranks.end()), d.jset_ranks.end());
  const auto touched = static_cast<std::uint32_t>(d.jset_ranks.size());

  std::vector<std::uint32_t> dense(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    dense[i] = static_cast<std::uint32_t>(
        std::lower_bound(d.jset_ranks.begin(), d.jset_ranks.end(), slots[i]) - d.jset_ranks.begin());
  }

  DisjointSets sets(touched);
  for (std::size_t e = 0; e < m; ++e) {
    for (std::size_t t = 1; t < per_edge; ++t) sets.unite(dense[e * per_edge], dense[e * per_edge + t]);
  }

  constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  std::vector<std::uint32_t> root_to_id(touched, kNone);
  d.edge_component.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    const std::uint32_t root = sets.find(dense[e * per_edge]);
    if (root_to_id[root] == kNone) {
      root_to_id[root] = static_cast<std::uint32_t>(d.components.size());
      d.components.push_back(ComponentSummary{root_to_id[root], 0, 0, true, std::nullopt});
    }
    const std::uint32_t id = root_to_id[root];
    d.edge_component[e] = id;
    ++d.components[id].size;
  }
  d.jset_component.resize(touched);
  for (std::uint32_t t = 0; t < touched; ++t) {
    const std::uint32_t id = root_to_id[sets.find(t)];
    d.jset_component[t] = id;
    ++d.components[id].order;
  }

  for (auto& c : d.components) c.is_hypertree = (c.order == 1 + c0 * c.size);

  const bool any_cyclic =
      std::any_of(d.components.begin(), d.components.end(), [](const auto& c) { return !c.is_hypertree; });
  if (find_wheels && any_cyclic) {
    std::vector<std::vector<VertexSet>> grouped(d.components.size());
    for (std::size_t e = 0; e < m; ++e) {
      if (!d.components[d.edge_component[e]].is_hypertree) {
        const auto ed = h.edge(e);
        grouped[d.edge_component[e]].emplace_back(ed.begin(), ed.end());
      }
    }
    for (auto& c : d.components) {
      if (!c.is_hypertree) c.wheel_witness = find_wheel(j, grouped[c.id]);
    }
  }

  const std::uint64_t all_jsets = binomial_u64(h.n(), j);
  d.isolated_jsets = all_jsets - touched;
  return d;
}

std::optional<Wheel> find_wheel(std::uint32_t j, std::span<const VertexSet> component_edges) {
  const std::size_t s = component_edges.size();
  if (s < 2) return std::nullopt;

  // Bipartite incidence graph: nodes [0, s) are edges, [s, s + t) are j-sets.
  std::vector<Rank> edge_subsets;
  std::vector<std::size_t> offsets{0};
  for (const auto& e : component_edges) {
    for_each_subset(e, j, [&](std::span<const Vertex> sub) { edge_subsets.push_back(rank_sorted(sub)); });
    offsets.push_back(edge_subsets.size());
  }
  std::vector<Rank> jranks = edge_subsets;
  std::sort(jranks.begin(), jranks.end());
  jranks.erase(std::unique(jranks.begin(), jranks.end()), jranks.end());
  const std::size_t total = s + jranks.size();

  std::vector<std::vector<std::uint32_t>> adj(total);
  for (std::size_t e = 0; e < s; ++e) {
    for (std::size_t i = offsets[e]; i < offsets[e + 1]; ++i) {
      const auto jn = static_cast<std::uint32_t>(
          s + (std::lower_bound(jranks.begin(), jranks.end(), edge_subsets[i]) - jranks.begin()));
      adj[e].push_back(jn);
      adj[jn].push_back(static_cast<std::uint32_t>(e));
    }
  }

  constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  std::vector<std::uint32_t> parent(total, kNone);
  std::vector<char> visited(total, 0);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;  // node, next neighbour index

  for (std::uint32_t root = 0; root < total; ++root) {
    if (visited[root]) continue;
    visited[root] = 1;
    stack.assign(1, {root, 0});
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next == adj[u].size()) {
        stack.pop_back();
        continue;
      }
      const std::uint32_t w = adj[u][next++];
      if (w == parent[u]) continue;
      if (!visited[w]) {
        visited[w] = 1;
        parent[w] = u;
        stack.emplace_back(w, 0);
        continue;
      }
      // Non-tree edge u-w: w is an ancestor of u. The tree path closes a cycle.
      std::vector<std::uint32_t> cycle;
      for (std::uint32_t x = u; x != w; x = parent[x]) cycle.push_back(x);
      cycle.push_back(w);
      const auto first_edge = static_cast<std::size_t>(
          std::find_if(cycle.begin(), cycle.end(), [&](std::uint32_t x) { return x < s; }) - cycle.begin());
      std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(first_edge), cycle.end());
      Wheel wheel;
      for (std::size_t i = 0; i < cycle.size(); i += 2) {
        wheel.edges.push_back(component_edges[cycle[i]]);
        VertexSet js(j);
        unrank_into(jranks[cycle[i + 1] - s], js);
        wheel.jsets.push_back(std::move(js));
      }
      return wheel;
    }
  }
  return std::nullopt;
}

namespace {

// Calls emit(edge ranks, jset ranks) for every ordered wheel sequence.
void generate_wheels(std::uint32_t n, std::uint32_t k, std::uint32_t j, std::uint32_t ell,
                     const std::function<void(const RankSeq&, const RankSeq&)>& emit) {
  if (n > 10 || ell > 4) {
    throw ResourceError("wheel census guarded to n <= 10 and ell <= 4");
  }
  if (ell < 2) throw ValidationError("wheel length must be at least 2");
  if (k < 2 || j < 1 || j >= k || n < k) throw ValidationError("wheel census: need 1 <= j < k <= n");

  const std::uint64_t kcount = binomial_u64(n, k);
  const std::uint64_t jcount = binomial_u64(n, j);
  std::vector<std::vector<Rank>> subsets_of(kcount);    // j-subset ranks of each k-set
  std::vector<std::vector<Rank>> supersets_of(jcount);  // k-set ranks containing each j-set
  VertexSet kset(k);
  for (Rank r = 0; r < kcount; ++r) {
    unrank_into(r, kset);
    for_each_subset(kset, j, [&](std::span<const Vertex> sub) {
      const Rank jr = rank_sorted(sub);
      subsets_of[r].push_back(jr);
      supersets_of[jr].push_back(r);
    });
  }

  RankSeq edges(ell), jsets(ell);
  const auto used = [](const RankSeq& seq, std::size_t upto, Rank r) {
    return std::find(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(upto), r) !=
           seq.begin() + static_cast<std::ptrdiff_t>(upto);
  };
  // edges[0..i] chosen, jsets[0..i-1] chosen
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i + 1 == ell) {
      const auto& first = subsets_of[edges[0]];
      for (Rank jr : subsets_of[edges[i]]) {
        if (used(jsets, i, jr)) continue;
        if (std::find(first.begin(), first.end(), jr) == first.end()) continue;
        jsets[i] = jr;
        emit(edges, jsets);
      }
      return;
    }
    for (Rank jr : subsets_of[edges[i]]) {
      if (used(jsets, i, jr)) continue;
      jsets[i] = jr;
      for (Rank kr : supersets_of[jr]) {
        if (used(edges, i + 1, kr)) continue;
        edges[i + 1] = kr;
        extend(i + 1);
      }
    }
  };
  for (Rank r = 0; r < kcount; ++r) {
    edges[0] = r;
    extend(0);
  }
}

}  // namespace

std::uint64_t brute_force_wheel_census(std::uint32_t n, std::uint32_t k, std::uint32_t j,
                                       std::uint32_t ell) {
  std::set<std::pair<RankSeq, RankSeq>> distinct;
  generate_wheels(n, k, j, ell, [&](const RankSeq& e, const RankSeq& js) {
    distinct.insert(canonical_ranks(e, js));
  });
  return distinct.size();
}

namespace detail {

std::uint64_t ordered_wheel_count(std::uint32_t n, std::uint32_t k, std::uint32_t j, std::uint32_t ell) {
  std::uint64_t count = 0;
  generate_wheels(n, k, j, ell, [&](const RankSeq&, const RankSeq&) { ++count; });
  return count;
}

}  // namespace detail

}  // namespace hyperlab
