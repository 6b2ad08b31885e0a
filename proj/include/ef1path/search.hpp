// Search over allocation graphs: exchange / transfer neighborhoods, exact
// shortest-path queries, shortest EF1-path queries with pruning, component
// analysis of the EF1 subgraph, and allocation enumeration.
//
// Determinism contract: neighbors are generated in ascending move order
// (exchanges by (i, j, g, h), then transfers by (i, j, g)); breadth-first
// searches process states in FIFO order with first-visit parents, which yields
// the lexicographically smallest move sequence among equal-length paths.
#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ef1path/core.hpp"

namespace ef1path {

struct SearchBudget {
  std::uint64_t max_states = 2'000'000;   // cap on distinct states stored
  std::optional<int> max_path_len = {};   // stop expanding beyond this depth
};

enum class PathStatus { Found, NotFound, BudgetExhausted };

// A found path carries its move list; NotFound is a certificate (the whole
// component was expanded), while BudgetExhausted is inconclusive.
struct PathResult {
  PathStatus status = PathStatus::NotFound;
  std::vector<Move> path;

  int length() const { return static_cast<int>(path.size()); }
};

enum class DistanceStatus { Found, Unreachable, BudgetExhausted };

struct DistanceResult {
  DistanceStatus status = DistanceStatus::Unreachable;
  int distance = -1;
};

namespace detail {

using Key = unsigned __int128;

// Packs an owner vector into a mixed-radix 128-bit key. The pack must fit:
// n^m < 2^128. That covers every intended workload (the search budget runs
// out long before the key space does); larger shapes get a hard error.
struct KeyCodec {
  int n = 0;
  int m = 0;

  KeyCodec(int n_, int m_) : n(n_), m(m_) {
    Key cap = 1;
    for (int g = 0; g < m; ++g) {
      Key next = cap * static_cast<unsigned>(n);
      if (next / static_cast<unsigned>(n) != cap)
        throw BudgetError("state space too large to index (n^m exceeds 128 bits)");
      cap = next;
    }
  }

  Key encode(const std::vector<int>& owner) const {
    Key k = 0;
    for (int g = m - 1; g >= 0; --g) k = k * static_cast<unsigned>(n) + static_cast<unsigned>(owner[g]);
    return k;
  }

  std::vector<int> decode(Key k) const {
    std::vector<int> owner(m);
    for (int g = 0; g < m; ++g) {
      owner[g] = static_cast<int>(k % static_cast<unsigned>(n));
      k /= static_cast<unsigned>(n);
    }
    return owner;
  }
};

struct KeyHash {
  std::size_t operator()(Key k) const {
    auto mix = [](std::uint64_t x) {
      x ^= x >> 30;
      x *= 0xbf58476d1ce4e5b9ULL;
      x ^= x >> 27;
      x *= 0x94d049bb133111ebULL;
      x ^= x >> 31;
      return x;
    };
    return mix(static_cast<std::uint64_t>(k)) ^ (mix(static_cast<std::uint64_t>(k >> 64)) * 3);
  }
};

}  // namespace detail

// All moves applicable to `alloc`, in the canonical deterministic order.
// Exchange count is sum over i<j of s_i*s_j; transfer count is sum of
// s_i*(n-1); ExchangeAndTransfer concatenates the two lists.
inline std::vector<Move> neighbors(const Instance& inst, const Allocation& alloc, MoveSet moves) {
  check_allocation(inst, alloc);
  const int n = inst.n();
  const auto bundles = alloc.bundles(n);  // goods ascending within each bundle
  std::vector<Move> out;
  if (moves != MoveSet::TransferOnly) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int g : bundles[i])
          for (int h : bundles[j]) out.push_back(Move{MoveKind::Exchange, i, j, g, h});
  }
  if (moves != MoveSet::ExchangeOnly) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int g : bundles[i]) out.push_back(Move{MoveKind::Transfer, i, j, g, -1});
      }
  }
  return out;
}

namespace detail {

// Applies a move directly to an owner vector (hot path; inputs pre-validated).
inline void apply_to_owner(std::vector<int>& owner, const Move& mv) {
  owner[mv.g] = mv.j;
  if (mv.kind == MoveKind::Exchange) owner[mv.h] = mv.i;
}

}  // namespace detail

// Exact distance in the (unrestricted) allocation graph under the move set.
// Bidirectional breadth-first search; both move sets are symmetric, so
// backward expansion reuses the forward neighbor generator. Equal size
// vectors are required for ExchangeOnly.
inline DistanceResult bfs_distance(const Instance& inst, const Allocation& from,
                                   const Allocation& to, MoveSet moves,
                                   const SearchBudget& budget = {}) {
  check_allocation(inst, from);
  check_allocation(inst, to);
  if (moves == MoveSet::ExchangeOnly) detail::require_same_sizes(inst, from, to);
  if (from == to) return {DistanceStatus::Found, 0};

  detail::KeyCodec codec(inst.n(), inst.m());
  using Map = std::unordered_map<detail::Key, int, detail::KeyHash>;
  Map dist[2];
  std::vector<detail::Key> frontier[2];
  dist[0][codec.encode(from.owner)] = 0;
  dist[1][codec.encode(to.owner)] = 0;
  frontier[0] = {codec.encode(from.owner)};
  frontier[1] = {codec.encode(to.owner)};
  int depth[2] = {0, 0};
  Allocation scratch;

  while (!frontier[0].empty() && !frontier[1].empty()) {
    if (budget.max_path_len && depth[0] + depth[1] >= *budget.max_path_len)
      return {DistanceStatus::BudgetExhausted, -1};
    const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    const Map& other = dist[1 - side];
    std::vector<detail::Key> next;
    int best = -1;
    for (detail::Key key : frontier[side]) {
      scratch.owner = codec.decode(key);
      for (const Move& mv : neighbors(inst, scratch, moves)) {
        std::vector<int> owner = scratch.owner;
        detail::apply_to_owner(owner, mv);
        const detail::Key nk = codec.encode(owner);
        auto hit = other.find(nk);
        if (hit != other.end()) {
          const int total = depth[side] + 1 + hit->second;
          if (best < 0 || total < best) best = total;
        }
        if (dist[side].count(nk)) continue;
        if (dist[0].size() + dist[1].size() >= budget.max_states)
          return {DistanceStatus::BudgetExhausted, -1};
        dist[side].emplace(nk, depth[side] + 1);
        next.push_back(nk);
      }
    }
    ++depth[side];
    frontier[side] = std::move(next);
    // All meeting paths through this level have been seen; any missed path
    // must use both next levels and would be at least depth[0]+depth[1]+2.
    if (best >= 0) return {DistanceStatus::Found, best};
  }
  return {DistanceStatus::Unreachable, -1};
}

namespace detail {

struct VisitInfo {
  Key parent;
  Move via;
  int depth;
};

// Layered FIFO breadth-first search restricted to EF1 allocations. Non-EF1
// neighbors are pruned at generation and never stored. Returns the
// lexicographically-first shortest EF1 move sequence. `state_cap_hit`
// distinguishes a state-budget overrun from a depth-cap stop: only the former
// is inconclusive (the depth cap stops only after every shallower state was
// expanded and every state at the cap was generated and goal-checked).
inline PathResult ef1_bfs(const Instance& inst, const Allocation& from, const Allocation& to,
                          MoveSet moves, const SearchBudget& budget,
                          bool* state_cap_hit = nullptr) {
  check_allocation(inst, from);
  check_allocation(inst, to);
  if (moves == MoveSet::ExchangeOnly) require_same_sizes(inst, from, to);
  for (const Allocation* endpoint : {&from, &to}) {
    auto bad = ef1_violations(inst, *endpoint);
    if (!bad.empty())
      throw InputError("endpoint allocation is not EF1 (agent " + std::to_string(bad[0].first) +
                       " envies agent " + std::to_string(bad[0].second) +
                       " beyond one good)");
  }
  if (from == to) return {PathStatus::Found, {}};

  KeyCodec codec(inst.n(), inst.m());
  const Key start = codec.encode(from.owner);
  const Key goal = codec.encode(to.owner);
  std::unordered_map<Key, VisitInfo, KeyHash> visited;
  visited.emplace(start, VisitInfo{start, Move{}, 0});
  std::deque<Key> queue{start};
  Allocation scratch, candidate;

  while (!queue.empty()) {
    const Key key = queue.front();
    queue.pop_front();
    const int depth = visited.at(key).depth;
    if (budget.max_path_len && depth >= *budget.max_path_len)
      return {PathStatus::BudgetExhausted, {}};
    scratch.owner = codec.decode(key);
    for (const Move& mv : neighbors(inst, scratch, moves)) {
      candidate.owner = scratch.owner;
      apply_to_owner(candidate.owner, mv);
      const Key nk = codec.encode(candidate.owner);
      if (visited.count(nk)) continue;
      if (!is_ef1(inst, candidate)) continue;
      if (visited.size() >= budget.max_states) {
        if (state_cap_hit) *state_cap_hit = true;
        return {PathStatus::BudgetExhausted, {}};
      }
      visited.emplace(nk, VisitInfo{key, mv, depth + 1});
      if (nk == goal) {
        std::vector<Move> path;
        for (Key at = goal; at != start; at = visited.at(at).parent)
          path.push_back(visited.at(at).via);
        std::reverse(path.begin(), path.end());
        return {PathStatus::Found, std::move(path)};
      }
      queue.push_back(nk);
    }
  }
  return {PathStatus::NotFound, {}};
}

}  // namespace detail

// Shortest EF1 path between two EF1 allocations (every intermediate
// allocation is EF1). NotFound certifies the endpoints lie in different
// components of the EF1 subgraph.
inline PathResult ef1_reach(const Instance& inst, const Allocation& from, const Allocation& to,
                            MoveSet moves, const SearchBudget& budget = {}) {
  return detail::ef1_bfs(inst, from, to, moves, budget);
}

// Optimal EF1 path: Found iff some EF1 path is exactly as short as the
// unrestricted distance between the endpoints. The unrestricted distance is
// computed first, then an EF1 search capped at that depth decides the rest.
inline PathResult optimal_ef1_path(const Instance& inst, const Allocation& from,
                                   const Allocation& to, MoveSet moves,
                                   const SearchBudget& budget = {}) {
  DistanceResult d = bfs_distance(inst, from, to, moves, budget);
  if (d.status == DistanceStatus::BudgetExhausted) return {PathStatus::BudgetExhausted, {}};
  if (d.status == DistanceStatus::Unreachable) return {PathStatus::NotFound, {}};
  SearchBudget capped = budget;
  capped.max_path_len = d.distance;
  bool state_cap_hit = false;
  PathResult r = detail::ef1_bfs(inst, from, to, moves, capped, &state_cap_hit);
  if (r.status == PathStatus::BudgetExhausted && !state_cap_hit) {
    // The depth cap is part of the question, not a budget limit: every EF1
    // state within `distance` moves was generated and goal-checked, so no
    // EF1 path of that length exists. A state-count overrun stays
    // inconclusive and is reported as exhausted.
    return {PathStatus::NotFound, {}};
  }
  return r;
}

// Every allocation with the given size vector, ascending by canonical key.
inline std::vector<Allocation> enumerate_allocations(const Instance& inst,
                                                     const std::vector<int>& sizes,
                                                     const SearchBudget& budget = {}) {
  if (static_cast<int>(sizes.size()) != inst.n())
    throw InputError("size vector must list one entry per agent");
  std::int64_t total = 0;
  for (int s : sizes) {
    if (s < 0) throw InputError("size vector entries must be non-negative");
    total += s;
  }
  if (total != inst.m()) throw InputError("size vector must sum to the number of goods");

  std::uint64_t count = 1;  // multinomial(m; sizes), checked against the budget
  {
    int placed = 0;
    for (int s : sizes)
      for (int t = 1; t <= s; ++t) {
        ++placed;
        count = count * static_cast<std::uint64_t>(placed) / static_cast<std::uint64_t>(t);
        if (count > budget.max_states)
          throw BudgetError("allocation count exceeds the enumeration budget");
      }
  }

  std::vector<int> owner;
  for (int i = 0; i < inst.n(); ++i) owner.insert(owner.end(), sizes[i], i);
  std::vector<Allocation> out;
  out.reserve(count);
  do {
    out.push_back(Allocation{owner});
  } while (std::next_permutation(owner.begin(), owner.end()));
  return out;
}

struct ConnectivityReport {
  bool connected = false;
  std::uint64_t allocation_count = 0;          // vertices of the full graph
  std::uint64_t ef1_count = 0;                 // vertices of the EF1 subgraph
  std::vector<std::uint64_t> component_sizes;  // descending
};

// Connectivity of the EF1 subgraph. For ExchangeOnly the graph lives on one
// size vector (required); for the transfer settings the vertex set is every
// allocation of any size vector. An empty or single-vertex EF1 set counts as
// connected.
inline ConnectivityReport ef1_component_connected(const Instance& inst, MoveSet moves,
                                                  const std::vector<int>& sizes = {},
                                                  const SearchBudget& budget = {}) {
  std::vector<Allocation> all;
  if (moves == MoveSet::ExchangeOnly) {
    if (sizes.empty())
      throw InputError("exchange-only connectivity needs a size vector");
    all = enumerate_allocations(inst, sizes, budget);
  } else {
    std::uint64_t count = 1;
    for (int g = 0; g < inst.m(); ++g) {
      count *= static_cast<std::uint64_t>(inst.n());
      if (count > budget.max_states)
        throw BudgetError("allocation count exceeds the enumeration budget");
    }
    std::vector<int> owner(inst.m(), 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t rest = idx;
      for (int g = inst.m() - 1; g >= 0; --g) {
        owner[g] = static_cast<int>(rest % inst.n());
        rest /= inst.n();
      }
      all.push_back(Allocation{owner});
    }
    std::sort(all.begin(), all.end(),
              [](const Allocation& a, const Allocation& b) { return a.owner < b.owner; });
  }

  detail::KeyCodec codec(inst.n(), inst.m());
  std::unordered_map<detail::Key, std::size_t, detail::KeyHash> index;
  std::vector<detail::Key> keys;
  for (const Allocation& a : all)
    if (is_ef1(inst, a)) {
      detail::Key k = codec.encode(a.owner);
      index.emplace(k, keys.size());
      keys.push_back(k);
    }

  std::vector<std::size_t> parent(keys.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  Allocation scratch, nb;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    scratch.owner = codec.decode(keys[i]);
    for (const Move& mv : neighbors(inst, scratch, moves)) {
      nb.owner = scratch.owner;
      detail::apply_to_owner(nb.owner, mv);
      auto hit = index.find(codec.encode(nb.owner));
      if (hit == index.end()) continue;  // neighbor is not EF1
      std::size_t a = find(i), b = find(hit->second);
      if (a != b) parent[a] = b;
    }
  }

  std::unordered_map<std::size_t, std::uint64_t> sizes_by_root;
  for (std::size_t i = 0; i < keys.size(); ++i) ++sizes_by_root[find(i)];
  ConnectivityReport report;
  report.allocation_count = all.size();
  report.ef1_count = keys.size();
  for (const auto& [root, size] : sizes_by_root) report.component_sizes.push_back(size);
  std::sort(report.component_sizes.rbegin(), report.component_sizes.rend());
  report.connected = report.component_sizes.size() <= 1;
  return report;
}

}  // namespace ef1path
