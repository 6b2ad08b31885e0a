// Shared test utilities: random instance generators, independent search
// oracles (deliberately simpler than the library's), and small enumerators.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "ef1path/core.hpp"
#include "ef1path/distance.hpp"

namespace testutil {

using ef1path::Allocation;
using ef1path::Digraph;
using ef1path::Instance;
using ef1path::Move;
using ef1path::MoveSet;

inline std::vector<std::string> default_goods(int m) {
  std::vector<std::string> names;
  for (int g = 1; g <= m; ++g) names.push_back("g" + std::to_string(g));
  return names;
}

inline std::vector<std::int64_t> random_row(std::mt19937& rng, int m, int vmax) {
  std::uniform_int_distribution<int> val(0, vmax);
  std::vector<std::int64_t> row(m);
  for (auto& v : row) v = val(rng);
  return row;
}

inline Instance make_identical(std::mt19937& rng, int m, int vmax) {
  auto row = random_row(rng, m, vmax);
  return ef1path::make_instance(default_goods(m), {row, row});
}

inline Instance make_binary(std::mt19937& rng, int n, int m) {
  std::vector<std::vector<std::int64_t>> rows;
  for (int i = 0; i < n; ++i) rows.push_back(random_row(rng, m, 1));
  return ef1path::make_instance(default_goods(m), rows);
}

inline Instance make_identical_binary(std::mt19937& rng, int n, int m) {
  auto row = random_row(rng, m, 1);
  return ef1path::make_instance(default_goods(m),
                                std::vector<std::vector<std::int64_t>>(n, row));
}

inline Instance make_general(std::mt19937& rng, int n, int m, int vmax) {
  std::vector<std::vector<std::int64_t>> rows;
  for (int i = 0; i < n; ++i) rows.push_back(random_row(rng, m, vmax));
  return ef1path::make_instance(default_goods(m), rows);
}

inline Allocation random_allocation(std::mt19937& rng, int n, int m) {
  Allocation a;
  a.owner.resize(m);
  std::uniform_int_distribution<int> agent(0, n - 1);
  for (auto& o : a.owner) o = agent(rng);
  return a;
}

// Random allocation with the same bundle sizes as `like`.
inline Allocation random_allocation_like(std::mt19937& rng, const Allocation& like) {
  Allocation a = like;
  std::shuffle(a.owner.begin(), a.owner.end(), rng);
  return a;
}

// Rejection-samples a pair of distinct EF1 allocations with one shared random
// size vector; empty on failure (caller should skip the instance).
inline std::optional<std::pair<Allocation, Allocation>> sample_ef1_pair(std::mt19937& rng,
                                                                        const Instance& inst,
                                                                        int tries = 400) {
  Allocation base = random_allocation(rng, inst.n(), inst.m());
  std::vector<Allocation> found;
  for (int t = 0; t < tries && found.size() < 2; ++t) {
    Allocation cand = random_allocation_like(rng, base);
    if (!ef1path::is_ef1(inst, cand)) continue;
    if (found.empty() || found[0] != cand) found.push_back(cand);
  }
  if (found.size() < 2) return std::nullopt;
  return std::make_pair(found[0], found[1]);
}

// Plain one-sided breadth-first search, move generation written from the
// definition. Returns the shortest move count, or -1 when unreachable.
// `ef1_only` restricts the walk to EF1 allocations (endpoints included).
inline int oracle_shortest(const Instance& inst, const Allocation& from, const Allocation& to,
                           MoveSet moves, bool ef1_only) {
  if (ef1_only && (!ef1path::is_ef1(inst, from) || !ef1path::is_ef1(inst, to))) return -1;
  std::map<std::vector<int>, int> dist;
  std::queue<std::vector<int>> queue;
  dist[from.owner] = 0;
  queue.push(from.owner);
  while (!queue.empty()) {
    std::vector<int> cur = queue.front();
    queue.pop();
    const int d = dist[cur];
    if (cur == to.owner) return d;
    const int m = static_cast<int>(cur.size());
    std::vector<std::vector<int>> step;
    for (int g = 0; g < m; ++g) {
      if (moves != MoveSet::TransferOnly) {
        for (int h = g + 1; h < m; ++h) {
          if (cur[g] == cur[h]) continue;
          std::vector<int> next = cur;
          std::swap(next[g], next[h]);
          step.push_back(std::move(next));
        }
      }
      if (moves != MoveSet::ExchangeOnly) {
        for (int j = 0; j < inst.n(); ++j) {
          if (j == cur[g]) continue;
          std::vector<int> next = cur;
          next[g] = j;
          step.push_back(std::move(next));
        }
      }
    }
    for (auto& next : step) {
      if (dist.count(next)) continue;
      if (ef1_only && !ef1path::is_ef1(inst, Allocation{next})) continue;
      dist[next] = d + 1;
      queue.push(next);
    }
  }
  return -1;
}

// Does the multiset split into two equal-sum halves?
inline bool equal_split_exists(const std::vector<std::int64_t>& weights) {
  std::int64_t total = 0;
  for (auto w : weights) total += w;
  if (total % 2 != 0) return false;
  std::vector<char> reachable(static_cast<std::size_t>(total / 2 + 1), 0);
  reachable[0] = 1;
  for (auto w : weights)
    for (std::int64_t s = total / 2; s >= w; --s)
      if (reachable[s - w]) reachable[s] = 1;
  return reachable[static_cast<std::size_t>(total / 2)] != 0;
}

// Union of random directed cycles on up to n vertices: balanced by
// construction, may contain loops, parallel edges, and 2-cycles.
inline Digraph random_balanced_digraph(std::mt19937& rng, int n, int max_cycles, int max_len) {
  Digraph g;
  g.n = n;
  std::uniform_int_distribution<int> cycles(1, max_cycles), len(1, max_len), vertex(0, n - 1);
  const int c = cycles(rng);
  for (int i = 0; i < c; ++i) {
    const int l = len(rng);
    std::vector<int> walk(l);
    for (auto& v : walk) v = vertex(rng);
    for (int k = 0; k < l; ++k) g.edges.emplace_back(walk[k], walk[(k + 1) % l]);
  }
  return g;
}

// Every simple digraph on n labelled vertices without loops or 2-cycles:
// each unordered pair independently carries no edge or one of the two
// directions. Balanced ones only, capped at max_edges.
inline std::vector<Digraph> balanced_orientations(int n, int max_edges) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<Digraph> out;
  std::vector<int> choice(pairs.size(), 0);  // 0 none, 1 forward, 2 backward
  while (true) {
    Digraph g;
    g.n = n;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (choice[k] == 1) g.edges.push_back(pairs[k]);
      if (choice[k] == 2) g.edges.emplace_back(pairs[k].second, pairs[k].first);
    }
    if (static_cast<int>(g.edges.size()) <= max_edges) {
      std::vector<int> degree(n, 0);
      for (const auto& [a, b] : g.edges) {
        ++degree[a];
        --degree[b];
      }
      if (std::all_of(degree.begin(), degree.end(), [](int d) { return d == 0; }))
        out.push_back(std::move(g));
    }
    std::size_t k = 0;
    while (k < choice.size() && choice[k] == 2) choice[k++] = 0;
    if (k == choice.size()) break;
    ++choice[k];
  }
  return out;
}

}  // namespace testutil
