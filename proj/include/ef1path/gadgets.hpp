// Instance generators for the reduction gadgets plus a catalog of named
// counterexample fixtures with machine-checkable expected verdicts.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ef1path/core.hpp"
#include "ef1path/distance.hpp"
#include "ef1path/polypaths.hpp"
#include "ef1path/search.hpp"

namespace ef1path {

// An instance together with the two endpoint allocations of a
// reconfiguration question.
struct GeneratedInstance {
  Instance inst;
  Allocation from;
  Allocation to;
};

// ---------------------------------------------------------------------------
// Perfect matching reconfiguration (PMR)

// Balanced bipartite graph with v vertices per side plus two perfect
// matchings; the question is whether `target` is reachable from `start` by
// flips. A flip replaces matching edges (i,k),(j,l) by (i,l),(j,k), all four
// being graph edges. Vertices are 0-based on both sides.
struct BipartiteMatchingInstance {
  int v = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> start;   // start[i] = right partner of left vertex i
  std::vector<int> target;
};

namespace detail {

inline std::vector<std::vector<char>> pmr_edge_matrix(const BipartiteMatchingInstance& b) {
  if (b.v <= 0) throw InputError("matching instance needs at least one vertex per side");
  std::vector<std::vector<char>> has(b.v, std::vector<char>(b.v, 0));
  for (auto [i, k] : b.edges) {
    if (i < 0 || i >= b.v || k < 0 || k >= b.v)
      throw InputError("matching edge references an unknown vertex");
    has[i][k] = 1;
  }
  auto check_matching = [&](const std::vector<int>& mate, const char* which) {
    if (static_cast<int>(mate.size()) != b.v)
      throw InputError(std::string(which) + " matching must cover every left vertex");
    std::vector<char> used(b.v, 0);
    for (int i = 0; i < b.v; ++i) {
      int k = mate[i];
      if (k < 0 || k >= b.v || !has[i][k])
        throw InputError(std::string(which) + " matching uses a non-edge");
      if (used[k]) throw InputError(std::string(which) + " matching repeats a right vertex");
      used[k] = 1;
    }
  };
  check_matching(b.start, "start");
  check_matching(b.target, "target");
  return has;
}

}  // namespace detail

// Decides flip reachability between the two matchings by explicit breadth
// first search over all perfect matchings. Returns the flip distance, or
// nothing when the target is unreachable. Kept to v <= 8 so the state space
// stays small.
inline std::optional<int> brute_force_pmr(const BipartiteMatchingInstance& b) {
  if (b.v > 8) throw InputError("matching brute force is limited to eight vertices per side");
  auto has = detail::pmr_edge_matrix(b);

  auto key_of = [&](const std::vector<int>& mate) {
    std::uint64_t key = 0;
    for (int k : mate) key = key * 9 + static_cast<std::uint64_t>(k + 1);
    return key;
  };
  std::unordered_map<std::uint64_t, int> dist;
  std::deque<std::vector<int>> queue;
  dist[key_of(b.start)] = 0;
  queue.push_back(b.start);
  const std::uint64_t goal = key_of(b.target);
  while (!queue.empty()) {
    std::vector<int> cur = std::move(queue.front());
    queue.pop_front();
    const int d = dist[key_of(cur)];
    if (key_of(cur) == goal) return d;
    for (int i = 0; i < b.v; ++i)
      for (int j = i + 1; j < b.v; ++j) {
        const int k = cur[i], l = cur[j];
        if (!has[i][l] || !has[j][k]) continue;
        std::swap(cur[i], cur[j]);
        if (dist.emplace(key_of(cur), d + 1).second) queue.push_back(cur);
        std::swap(cur[i], cur[j]);
      }
  }
  return std::nullopt;
}

// EF1 reconfiguration instance whose exchange reachability matches flip
// reachability of the matching instance. Agent 0 values nothing and holds
// four medium goods; agent i (1-based) values its private good p_i and the
// right-hand goods q_k it is adjacent to at 3, the four r goods at 2, and
// everything else at 0. Matched partners appear as the held q goods, so EF1
// pins every bundle shape and only matched q goods can circulate.
inline GeneratedInstance gen_pmr_instance(const BipartiteMatchingInstance& b) {
  auto has = detail::pmr_edge_matrix(b);
  const int v = b.v;
  const int n = v + 1;
  const int m = 2 * v + 4;

  std::vector<std::string> goods;
  goods.reserve(m);
  for (int i = 1; i <= v; ++i) goods.push_back("p" + std::to_string(i));
  for (int k = 1; k <= v; ++k) goods.push_back("q" + std::to_string(k));
  for (int r = 1; r <= 4; ++r) goods.push_back("r" + std::to_string(r));

  std::vector<std::vector<std::int64_t>> util(n, std::vector<std::int64_t>(m, 0));
  for (int i = 1; i <= n - 1; ++i) {
    util[i][i - 1] = 3;
    for (int k = 0; k < v; ++k)
      if (has[i - 1][k]) util[i][v + k] = 3;
    for (int r = 0; r < 4; ++r) util[i][2 * v + r] = 2;
  }

  auto alloc_for = [&](const std::vector<int>& mate) {
    std::vector<std::vector<int>> bundles(n);
    for (int r = 0; r < 4; ++r) bundles[0].push_back(2 * v + r);
    for (int i = 1; i <= v; ++i) {
      bundles[i].push_back(i - 1);
      bundles[i].push_back(v + mate[i - 1]);
    }
    return Allocation::from_bundles(n, m, bundles);
  };

  GeneratedInstance out{make_instance(std::move(goods), std::move(util)), alloc_for(b.start),
                        alloc_for(b.target)};
  if (!is_ef1(out.inst, out.from) || !is_ef1(out.inst, out.to))
    throw GuaranteeError("matching gadget endpoints are not EF1");
  return out;
}

// ---------------------------------------------------------------------------
// Number partition gadget

// Four agents with identical utilities built from a multiset of positive
// weights with even total 2S. Agents 1 and 2 swap their weight tails while
// each keeps one heavy head, and agents 3 and 4 swap a pair of fixed-value
// bundles. The unrestricted distance is |weights| + 2, and an EF1 path of
// exactly that length exists iff the weights split into two halves of sum S.
inline GeneratedInstance gen_partition_instance(const std::vector<std::int64_t>& weights) {
  const int k = static_cast<int>(weights.size());
  if (k < 1) throw InputError("partition gadget needs at least one weight");
  std::int64_t total = 0;
  for (std::int64_t w : weights) {
    if (w <= 0) throw InputError("partition weights must be positive");
    total = checked_add(total, w);
  }
  if (total % 2 != 0) throw InputError("partition weights must have an even total");
  const std::int64_t S = total / 2;

  // Good order: a0..ak, b0..bk, c1, c2, d1, d2.
  const int m = 2 * k + 6;
  std::vector<std::string> goods;
  goods.reserve(m);
  for (int i = 0; i <= k; ++i) goods.push_back("a" + std::to_string(i));
  for (int i = 0; i <= k; ++i) goods.push_back("b" + std::to_string(i));
  goods.insert(goods.end(), {"c1", "c2", "d1", "d2"});
  const int a0 = 0, b0 = k + 1, c1 = 2 * k + 2, c2 = 2 * k + 3, d1 = 2 * k + 4, d2 = 2 * k + 5;

  std::vector<std::int64_t> u(m, 0);
  u[a0] = u[b0] = u[c1] = checked_mul(2, S);
  u[d1] = u[d2] = S;
  for (int i = 1; i <= k; ++i) u[a0 + i] = weights[i - 1];

  std::vector<std::vector<int>> from_bundles(4), to_bundles(4);
  for (int i = 0; i <= k; ++i) from_bundles[0].push_back(a0 + i);
  for (int i = 0; i <= k; ++i) from_bundles[1].push_back(b0 + i);
  from_bundles[2] = {c1, c2};
  from_bundles[3] = {d1, d2};
  to_bundles[0].push_back(a0);
  for (int i = 1; i <= k; ++i) to_bundles[0].push_back(b0 + i);
  to_bundles[1].push_back(b0);
  for (int i = 1; i <= k; ++i) to_bundles[1].push_back(a0 + i);
  to_bundles[2] = {d1, d2};
  to_bundles[3] = {c1, c2};

  GeneratedInstance out{make_instance(std::move(goods), {u, u, u, u}),
                        Allocation::from_bundles(4, m, from_bundles),
                        Allocation::from_bundles(4, m, to_bundles)};
  if (!is_ef1(out.inst, out.from) || !is_ef1(out.inst, out.to))
    throw GuaranteeError("partition gadget endpoints are not EF1");
  return out;
}

// ---------------------------------------------------------------------------
// Item graph realization

// Embeds a balanced digraph as an exchange question: one agent per vertex,
// one zero-value good per edge, held at the tail in `from` and at the head
// in `to`. All utilities are zero so every allocation is EF1, and the item
// graph of the two endpoints is the input graph itself.
inline GeneratedInstance gen_graph_distance_instance(const Digraph& g) {
  check_balanced(g);
  if (g.n < 2) throw InputError("graph embedding needs at least two vertices");
  const int m = static_cast<int>(g.edges.size());

  std::vector<std::string> goods;
  goods.reserve(m);
  for (int e = 1; e <= m; ++e) goods.push_back("e" + std::to_string(e));
  std::vector<std::vector<std::int64_t>> util(g.n, std::vector<std::int64_t>(m, 0));

  Allocation from, to;
  from.owner.resize(m);
  to.owner.resize(m);
  for (int e = 0; e < m; ++e) {
    from.owner[e] = g.edges[e].first;
    to.owner[e] = g.edges[e].second;
  }
  return {make_instance(std::move(goods), std::move(util)), std::move(from), std::move(to)};
}

// ---------------------------------------------------------------------------
// Fixture catalog

// A named instance pair with the verdicts it is expected to exhibit.
// Unset fields make no claim. Distances count moves; reachability refers to
// paths whose every allocation is EF1.
struct CatalogFixture {
  std::string name;
  std::string summary;
  Instance inst;
  Allocation from;
  Allocation to;
  bool endpoints_ef1 = true;
  std::optional<bool> exchange_reachable;
  std::optional<bool> transfer_reachable;
  std::optional<bool> xt_reachable;            // exchanges and transfers
  std::optional<int> exchange_distance;        // unrestricted, EF1 ignored
  std::optional<int> shortest_ef1_exchange;
  std::optional<int> shortest_ef1_xt;
  std::optional<bool> optimal_ef1_path_exists; // EF1 path matching the distance
  std::optional<bool> ef1_exchange_connected;  // whole subgraph at from's sizes
  std::optional<int> paired_swap_length;       // path_three_heavy_xt move count
};

namespace detail {

inline std::vector<CatalogFixture> build_catalog() {
  std::vector<CatalogFixture> fixtures;
  auto goods_g = [](int m) {
    std::vector<std::string> goods;
    for (int g = 1; g <= m; ++g) goods.push_back("g" + std::to_string(g));
    return goods;
  };

  {
    CatalogFixture f;
    f.name = "gen2-disconnected";
    f.summary = "two agents, general utilities; the swap of two EF1 bundles is "
                "unreachable under exchanges, and transfers do not help";
    f.inst = make_instance(goods_g(8), {{3, 3, 2, 2, 2, 2, 0, 0}, {3, 3, 1, 1, 1, 1, 0, 0}});
    f.from = Allocation::from_bundles(2, 8, {{0, 1, 6, 7}, {2, 3, 4, 5}});
    f.to = Allocation::from_bundles(2, 8, {{2, 3, 4, 5}, {0, 1, 6, 7}});
    f.exchange_reachable = false;
    f.xt_reachable = false;
    f.exchange_distance = 4;
    fixtures.push_back(std::move(f));
  }
  {
    CatalogFixture f;
    f.name = "gen2-no-optimal";
    f.summary = "two agents, general utilities; the EF1 exchange graph is "
                "connected yet no EF1 path matches the distance of two";
    f.inst = make_instance(goods_g(6), {{5, 3, 1, 0, 2, 2}, {0, 3, 1, 5, 2, 2}});
    f.from = Allocation::from_bundles(2, 6, {{1, 2, 3}, {0, 4, 5}});
    f.to = Allocation::from_bundles(2, 6, {{3, 4, 5}, {0, 1, 2}});
    f.exchange_reachable = true;
    f.exchange_distance = 2;
    f.shortest_ef1_exchange = 3;
    f.optimal_ef1_path_exists = false;
    f.ef1_exchange_connected = true;
    fixtures.push_back(std::move(f));
  }
  {
    CatalogFixture f;
    f.name = "idenbin3-no-optimal";
    f.summary = "three agents, identical binary utilities; connected but the "
                "shortest EF1 exchange path exceeds the distance by one";
    const std::vector<std::int64_t> u = {1, 1, 1, 0, 0, 0};
    f.inst = make_instance(goods_g(6), {u, u, u});
    f.from = Allocation::from_bundles(3, 6, {{1, 5}, {2, 3}, {0, 4}});
    f.to = Allocation::from_bundles(3, 6, {{0, 3}, {1, 4}, {2, 5}});
    f.exchange_reachable = true;
    f.exchange_distance = 3;
    f.shortest_ef1_exchange = 4;
    f.optimal_ef1_path_exists = false;
    f.ef1_exchange_connected = true;
    fixtures.push_back(std::move(f));
  }
  {
    CatalogFixture f;
    f.name = "binary3-disconnected";
    f.summary = "three agents, binary utilities; exchange-unreachable EF1 "
                "endpoints that transfers reconnect";
    f.inst = make_instance(goods_g(4), {{1, 0, 1, 0}, {1, 0, 1, 0}, {0, 1, 1, 0}});
    f.from = Allocation::from_bundles(3, 4, {{0, 1}, {2, 3}, {}});
    f.to = Allocation::from_bundles(3, 4, {{2, 3}, {0, 1}, {}});
    f.exchange_reachable = false;
    f.xt_reachable = true;
    f.shortest_ef1_xt = 4;
    fixtures.push_back(std::move(f));
  }

  const Instance iden3 = make_instance(goods_g(7),
                                       {{4, 3, 1, 4, 2, 2, 4},
                                        {4, 3, 1, 4, 2, 2, 4},
                                        {4, 3, 1, 4, 2, 2, 4}});
  const Allocation iden3_from = Allocation::from_bundles(3, 7, {{0, 1, 2}, {3, 4, 5}, {6}});
  const Allocation iden3_to = Allocation::from_bundles(3, 7, {{0, 4, 5}, {1, 2, 3}, {6}});
  {
    CatalogFixture f;
    f.name = "iden3-disconnected";
    f.summary = "three agents, identical utilities; exchange-unreachable EF1 "
                "endpoints two exchanges apart";
    f.inst = iden3;
    f.from = iden3_from;
    f.to = iden3_to;
    f.exchange_reachable = false;
    f.exchange_distance = 2;
    f.xt_reachable = true;
    fixtures.push_back(std::move(f));
  }
  {
    CatalogFixture f;
    f.name = "xt3-worked-example";
    f.summary = "the same pair routed by the paired-swap construction in "
                "k + 2 = 4 exchange-and-transfer moves, which is optimal";
    f.inst = iden3;
    f.from = iden3_from;
    f.to = iden3_to;
    f.xt_reachable = true;
    f.shortest_ef1_xt = 4;
    f.paired_swap_length = 4;
    fixtures.push_back(std::move(f));
  }
  {
    CatalogFixture f;
    f.name = "transfer2-disconnected";
    f.summary = "two agents, four unit-value goods; swapping the bundles is "
                "impossible by transfers alone but takes two exchanges";
    const std::vector<std::int64_t> u = {1, 1, 1, 1};
    f.inst = make_instance(goods_g(4), {u, u});
    f.from = Allocation::from_bundles(2, 4, {{0, 1}, {2, 3}});
    f.to = Allocation::from_bundles(2, 4, {{2, 3}, {0, 1}});
    f.transfer_reachable = false;
    f.exchange_reachable = true;
    f.xt_reachable = true;
    f.exchange_distance = 2;
    f.shortest_ef1_exchange = 2;
    f.shortest_ef1_xt = 2;
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

}  // namespace detail

inline const std::vector<CatalogFixture>& catalog() {
  static const std::vector<CatalogFixture> fixtures = detail::build_catalog();
  return fixtures;
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& f : catalog()) names.push_back(f.name);
  return names;
}

inline const CatalogFixture& catalog_fixture(const std::string& name) {
  for (const auto& f : catalog())
    if (f.name == name) return f;
  std::string msg = "unknown fixture \"" + name + "\"; available:";
  for (const auto& f : catalog()) msg += " " + f.name;
  throw InputError(msg);
}

// One verified claim of a fixture.
struct FixtureCheck {
  std::string claim;
  bool pass = false;
  std::string detail;
};

// Re-derives every claimed verdict of a fixture with the search and
// construction machinery. A budget overrun counts as a failed check rather
// than silently passing.
inline std::vector<FixtureCheck> verify_catalog_fixture(const CatalogFixture& f,
                                                        const SearchBudget& budget = {}) {
  std::vector<FixtureCheck> checks;
  auto add = [&](const std::string& claim, bool pass, std::string detail) {
    checks.push_back({claim, pass, std::move(detail)});
  };
  auto status_str = [](PathStatus s) {
    return s == PathStatus::Found ? "found" : s == PathStatus::NotFound ? "not found" : "budget";
  };

  const bool from_ef1 = is_ef1(f.inst, f.from);
  const bool to_ef1 = is_ef1(f.inst, f.to);
  add("endpoints are EF1", from_ef1 == f.endpoints_ef1 && to_ef1 == f.endpoints_ef1,
      from_ef1 && to_ef1 ? "both EF1" : "an endpoint is not EF1");

  auto check_reach = [&](const char* claim, MoveSet moves, bool expected,
                         std::optional<int> expected_len) {
    PathResult r = ef1_reach(f.inst, f.from, f.to, moves, budget);
    bool ok = (r.status == PathStatus::Found) == expected && r.status != PathStatus::BudgetExhausted;
    std::string detail = status_str(r.status);
    if (r.status == PathStatus::Found) {
      verify_ef1_path(f.inst, f.from, f.to, r.path, moves);
      detail += ", length " + std::to_string(r.path.size());
      if (expected_len && static_cast<int>(r.path.size()) != *expected_len) ok = false;
    }
    if (ok && !expected) detail += " as expected";
    add(claim, ok, detail);
  };
  if (f.exchange_reachable || f.shortest_ef1_exchange)
    check_reach("EF1 exchange reachability", MoveSet::ExchangeOnly,
                f.exchange_reachable.value_or(true), f.shortest_ef1_exchange);
  if (f.transfer_reachable)
    check_reach("EF1 transfer reachability", MoveSet::TransferOnly, *f.transfer_reachable,
                std::nullopt);
  if (f.xt_reachable || f.shortest_ef1_xt)
    check_reach("EF1 exchange-and-transfer reachability", MoveSet::ExchangeAndTransfer,
                f.xt_reachable.value_or(true), f.shortest_ef1_xt);

  if (f.exchange_distance) {
    DistanceResult d = bfs_distance(f.inst, f.from, f.to, MoveSet::ExchangeOnly, budget);
    add("unrestricted exchange distance", d.status == DistanceStatus::Found &&
        d.distance == *f.exchange_distance, "distance " + std::to_string(d.distance));
  }
  if (f.optimal_ef1_path_exists) {
    PathResult r = optimal_ef1_path(f.inst, f.from, f.to, MoveSet::ExchangeOnly, budget);
    const bool ok = (r.status == PathStatus::Found) == *f.optimal_ef1_path_exists &&
                    r.status != PathStatus::BudgetExhausted;
    add("optimal EF1 exchange path", ok,
        std::string(status_str(r.status)) +
            (ok && !*f.optimal_ef1_path_exists ? " as expected" : ""));
  }
  if (f.ef1_exchange_connected) {
    ConnectivityReport rep = ef1_component_connected(f.inst, MoveSet::ExchangeOnly,
                                                     f.from.size_vector(f.inst.n()), budget);
    add("EF1 exchange connectivity", rep.connected == *f.ef1_exchange_connected,
        std::to_string(rep.ef1_count) + " EF1 allocations, largest component " +
            std::to_string(rep.component_sizes.empty() ? 0 : rep.component_sizes[0]));
  }
  if (f.paired_swap_length) {
    std::vector<Move> path = path_three_heavy_xt(f.inst, f.from, f.to);
    verify_ef1_path(f.inst, f.from, f.to, path);
    add("paired-swap construction length", static_cast<int>(path.size()) == *f.paired_swap_length,
        std::to_string(path.size()) + " moves");
  }
  return checks;
}

}  // namespace ef1path
