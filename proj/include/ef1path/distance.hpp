// Exchange distance through the item graph: the distance between two
// allocations of the same size vector equals m minus the maximum number of
// directed cycles the item graph's edges can be partitioned into. Provides
// the graph builder, a greedy (feasible) partitioner, an exact maximum
// partitioner for small graphs, and the partition-to-exchange-path expansion.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ef1path/core.hpp"
#include "ef1path/search.hpp"

namespace ef1path {

// A small directed multigraph; edges are indexed and may repeat or self-loop.
struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (from, to)
};

// The item graph of an ordered pair of allocations: one vertex per agent and
// one edge per good, from its owner in `from` to its owner in `to`. Indegree
// equals outdegree equals the common bundle size at every vertex.
using ItemGraph = Digraph;

inline void check_balanced(const Digraph& g) {
  std::vector<int> in(g.n, 0), out(g.n, 0);
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || u >= g.n || v < 0 || v >= g.n) throw InputError("edge references an unknown vertex");
    ++out[u];
    ++in[v];
  }
  for (int v = 0; v < g.n; ++v)
    if (in[v] != out[v]) throw InputError("graph is not degree-balanced");
}

inline ItemGraph build_item_graph(const Instance& inst, const Allocation& from,
                                  const Allocation& to) {
  check_allocation(inst, from);
  check_allocation(inst, to);
  detail::require_same_sizes(inst, from, to);
  ItemGraph g;
  g.n = inst.n();
  g.edges.reserve(inst.m());
  for (int good = 0; good < inst.m(); ++good) g.edges.emplace_back(from.owner[good], to.owner[good]);
  return g;
}

// A circuit is an edge-index sequence forming a closed directed walk; the
// canonical form starts at the circuit's smallest edge index. A partition
// lists disjoint circuits covering every edge, ordered by first edge index.
using Circuit = std::vector<int>;

struct CircuitPartition {
  std::vector<Circuit> circuits;

  std::size_t size() const { return circuits.size(); }
};

namespace detail {

inline Circuit canonical_circuit(Circuit c) {
  auto smallest = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), smallest, c.end());
  return c;
}

inline void canonicalize_partition(CircuitPartition& p) {
  for (Circuit& c : p.circuits) c = canonical_circuit(std::move(c));
  std::sort(p.circuits.begin(), p.circuits.end(),
            [](const Circuit& a, const Circuit& b) { return a.front() < b.front(); });
}

}  // namespace detail

// Partitions the edges into simple cycles by repeated traversal: walk from
// the tail of the lowest unused edge, always taking the lowest unused
// out-edge, until a vertex repeats; peel that cycle and start over. Balance
// guarantees the walk never gets stuck. Feasible but not always maximum.
inline CircuitPartition greedy_circuit_partition(const Digraph& g) {
  check_balanced(g);
  const int m = static_cast<int>(g.edges.size());
  std::vector<std::vector<int>> out_edges(g.n);  // ascending edge indices per tail
  for (int e = 0; e < m; ++e) out_edges[g.edges[e].first].push_back(e);
  std::vector<bool> used(m, false);

  CircuitPartition part;
  for (int start = 0; start < m; ++start) {
    if (used[start]) continue;
    // Fresh walk beginning with edge `start`; prefix edges before the first
    // repeated vertex stay in the graph for later rounds.
    std::vector<int> walk{start};
    std::vector<int> at_vertex(g.n, -1);  // position in `walk` whose tail is this vertex
    at_vertex[g.edges[start].first] = 0;
    int head = g.edges[start].second;
    while (at_vertex[head] < 0) {
      at_vertex[head] = static_cast<int>(walk.size());
      int next = -1;
      for (int e : out_edges[head])
        if (!used[e]) {
          next = e;
          break;
        }
      if (next < 0) throw GuaranteeError("walk stuck in a balanced graph");
      walk.push_back(next);
      head = g.edges[next].second;
    }
    Circuit cycle(walk.begin() + at_vertex[head], walk.end());
    for (int e : cycle) used[e] = true;
    part.circuits.push_back(std::move(cycle));
  }
  detail::canonicalize_partition(part);
  return part;
}

namespace detail {

struct MaxCycleSearch {
  const Digraph& g;
  std::uint64_t step_budget;
  std::uint64_t steps = 0;
  std::vector<std::vector<int>> out_edges;
  std::vector<bool> covered;
  std::vector<bool> on_path;  // vertices of the cycle being built
  int remaining = 0;
  std::vector<Circuit> current, best;

  explicit MaxCycleSearch(const Digraph& graph, std::uint64_t budget)
      : g(graph), step_budget(budget), out_edges(graph.n), covered(graph.edges.size(), false),
        on_path(graph.n, false) {
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
      out_edges[g.edges[e].first].push_back(e);
  }

  void tick() {
    if (++steps > step_budget) throw BudgetError("cycle-partition search budget exceeded");
  }

  void solve() {
    tick();
    if (remaining == 0) {
      if (current.size() > best.size()) best = current;
      return;
    }
    // Two edges minimum per remaining cycle (self-loops were peeled upfront).
    if (current.size() + static_cast<std::size_t>(remaining) / 2 <= best.size()) return;
    int anchor = 0;
    while (covered[anchor]) ++anchor;
    // Every cycle through `anchor` keeps it as its smallest member, since it
    // is globally the smallest uncovered edge; no duplicate enumeration.
    Circuit cycle{anchor};
    covered[anchor] = true;
    on_path[g.edges[anchor].first] = true;
    extend(cycle, g.edges[anchor].second, g.edges[anchor].first);
    on_path[g.edges[anchor].first] = false;
    covered[anchor] = false;
  }

  void extend(Circuit& cycle, int head, int target) {
    if (head == target) {
      // Free the closed cycle's vertices so later cycles may pass through
      // them; edge coverage alone keeps the partition disjoint.
      for (int e : cycle) on_path[g.edges[e].first] = false;
      remaining -= static_cast<int>(cycle.size());
      current.push_back(cycle);
      solve();
      current.pop_back();
      remaining += static_cast<int>(cycle.size());
      for (int e : cycle) on_path[g.edges[e].first] = true;
      return;
    }
    if (on_path[head]) return;  // simple cycles only
    on_path[head] = true;
    for (int e : out_edges[head]) {
      if (covered[e] || e < cycle.front()) continue;
      covered[e] = true;
      cycle.push_back(e);
      extend(cycle, g.edges[e].second, target);
      cycle.pop_back();
      covered[e] = false;
    }
    on_path[head] = false;
  }
};

}  // namespace detail

// Exact maximum partition of the edges into directed cycles, by branching on
// the lowest uncovered edge. Self-loops are peeled eagerly (splitting a loop
// out of any circuit only increases the count). Exponential in general; meant
// for graphs of at most ~14 edges, with a step budget as the hard stop.
inline CircuitPartition max_cycle_partition(const Digraph& g, const SearchBudget& budget = {}) {
  check_balanced(g);
  CircuitPartition loops;
  Digraph rest;
  rest.n = g.n;
  std::vector<int> rest_index;  // rest edge -> original edge index
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    if (g.edges[e].first == g.edges[e].second) {
      loops.circuits.push_back({e});
    } else {
      rest.edges.push_back(g.edges[e]);
      rest_index.push_back(e);
    }
  }

  detail::MaxCycleSearch search(rest, budget.max_states);
  search.remaining = static_cast<int>(rest.edges.size());
  search.solve();
  if (search.remaining != 0 && !rest.edges.empty() && search.best.empty())
    throw GuaranteeError("balanced graph admitted no cycle partition");

  CircuitPartition part = std::move(loops);
  for (const Circuit& c : search.best) {
    Circuit mapped;
    mapped.reserve(c.size());
    for (int e : c) mapped.push_back(rest_index[e]);
    part.circuits.push_back(std::move(mapped));
  }
  detail::canonicalize_partition(part);
  return part;
}

// Exchange distance via the item graph: m minus the maximum cycle count.
inline int distance_via_cycles(const Instance& inst, const Allocation& from, const Allocation& to,
                               const SearchBudget& budget = {}) {
  ItemGraph g = build_item_graph(inst, from, to);
  CircuitPartition part = max_cycle_partition(g, budget);
  return static_cast<int>(g.edges.size() - part.size());
}

// Expands a circuit partition of the item graph into an exchange path from
// `from` to `to`. A circuit of length l contributes l-1 exchanges (resolved
// back to front), self-loop circuits contribute none, so a loop-free
// partition of p circuits yields exactly m - p exchanges. An embedded
// self-loop inside a longer circuit is skipped without an exchange, which
// only shortens the path.
inline std::vector<Move> path_from_partition(const Instance& inst, const Allocation& from,
                                             const Allocation& to, const CircuitPartition& part) {
  ItemGraph g = build_item_graph(inst, from, to);
  std::vector<bool> seen(g.edges.size(), false);
  for (const Circuit& c : part.circuits) {
    if (c.empty()) throw InputError("circuit partition contains an empty circuit");
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int e = c[k];
      if (e < 0 || e >= static_cast<int>(g.edges.size()) || seen[e])
        throw InputError("circuit partition does not cover each edge exactly once");
      seen[e] = true;
      const int next = c[(k + 1) % c.size()];
      if (g.edges[e].second != g.edges[next].first)
        throw InputError("circuit partition contains a broken circuit");
    }
  }
  for (bool s : seen)
    if (!s) throw InputError("circuit partition does not cover each edge exactly once");

  std::vector<Move> path;
  Allocation work = from;
  for (const Circuit& c : part.circuits) {
    // Pending legs: good e must still travel from its current holder to
    // to.owner[e]. Resolving from the back, each exchange parks the
    // last-but-one good at its target and re-roots the final leg.
    std::vector<int> legs(c.begin(), c.end());
    while (legs.size() >= 2) {
      const int give = legs[legs.size() - 2];
      const int take = legs[legs.size() - 1];
      const int holder_give = work.owner[give];
      const int holder_take = work.owner[take];
      if (holder_give == holder_take) {
        legs.erase(legs.end() - 2);  // embedded self-loop: already in place
        continue;
      }
      Move mv = make_exchange(holder_give, holder_take, give, take);
      work = apply_move(inst, work, mv);
      path.push_back(mv);
      legs.erase(legs.end() - 2);
    }
  }
  if (work != to) throw GuaranteeError("expanded partition path missed the target allocation");
  return path;
}

}  // namespace ef1path
