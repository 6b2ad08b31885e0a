// Constructive EF1 path algorithms for tractable utility classes: optimal
// two-agent exchange paths (identical or binary utilities), connectivity
// paths for identical binary utilities with any number of agents, their
// exchange-and-transfer variants via virtual zero-value padding, and the
// three-agent heavy-head construction that needs exactly k+2 moves.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ef1path/core.hpp"

namespace ef1path {

// Operation counters for the polynomial-time bound checks.
struct PolyStats {
  long long candidate_checks = 0;
};

// The goods each of two agents must give up to turn allocation `a` into `b`:
// x lists agent 1's outgoing goods sorted by non-increasing value to agent 1
// (ties by index), y lists agent 2's sorted by value to agent 2. When bundle
// sizes differ between `a` and `b`, the shrinking side gives up x_virtual or
// y_virtual additional zero-value pads; a pad traded against a real good is a
// transfer of that good.
struct DeltaSets {
  std::vector<int> x, y;
  int x_virtual = 0;
  int y_virtual = 0;

  int t() const { return static_cast<int>(x.size()) + x_virtual; }
};

inline DeltaSets delta_sets(const Instance& inst, const Allocation& a, const Allocation& b) {
  if (inst.n() != 2) throw InputError("delta sets are defined for exactly two agents");
  check_allocation(inst, a);
  check_allocation(inst, b);
  DeltaSets d;
  int a1 = 0, b1 = 0;
  for (int g = 0; g < inst.m(); ++g) {
    a1 += a.owner[g] == 0;
    b1 += b.owner[g] == 0;
    if (a.owner[g] == 0 && b.owner[g] == 1) d.x.push_back(g);
    if (a.owner[g] == 1 && b.owner[g] == 0) d.y.push_back(g);
  }
  d.x_virtual = std::max(0, b1 - a1);
  d.y_virtual = std::max(0, a1 - b1);
  auto by_value_desc = [&inst](int agent) {
    return [&inst, agent](int g, int h) {
      std::int64_t ug = inst.utility(agent, g), uh = inst.utility(agent, h);
      return ug != uh ? ug > uh : g < h;
    };
  };
  std::sort(d.x.begin(), d.x.end(), by_value_desc(0));
  std::sort(d.y.begin(), d.y.end(), by_value_desc(1));
  if (static_cast<int>(d.x.size()) + d.x_virtual != static_cast<int>(d.y.size()) + d.y_virtual)
    throw GuaranteeError("delta sets are unbalanced");
  return d;
}

namespace detail {

inline void require_ef1_endpoints(const Instance& inst, const Allocation& from,
                                  const Allocation& to) {
  if (!is_ef1(inst, from)) throw InputError("initial allocation is not EF1");
  if (!is_ef1(inst, to)) throw InputError("target allocation is not EF1");
}

// Two-agent step scan: at every step, try each pair from the delta sets in
// scan order and take the first pair whose move keeps the allocation EF1.
// Such a pair always exists for identical or binary utilities, and each step
// reduces t by one, so the path length equals the initial t. With equal
// bundle sizes there are no pads and every move is an exchange; otherwise a
// pad stands in for a dummy good and the move becomes a transfer.
inline std::vector<Move> two_agent_scan_xt(const Instance& inst, const Allocation& from,
                                           const Allocation& to, PolyStats* stats) {
  Allocation work = from;
  std::vector<Move> path;
  for (;;) {
    DeltaSets d = delta_sets(inst, work, to);
    if (d.t() == 0) break;
    std::vector<int> xs = d.x, ys = d.y;
    xs.insert(xs.end(), d.x_virtual, -1);
    ys.insert(ys.end(), d.y_virtual, -1);
    bool advanced = false;
    for (int x : xs) {
      for (int y : ys) {
        if (x < 0 && y < 0) continue;  // cannot arise with two agents
        Move mv = x < 0   ? make_transfer(1, 0, y)
                  : y < 0 ? make_transfer(0, 1, x)
                          : make_exchange(0, 1, x, y);
        Allocation cand = apply_move(inst, work, mv);
        if (stats) ++stats->candidate_checks;
        if (is_ef1(inst, cand)) {
          work = std::move(cand);
          path.push_back(mv);
          advanced = true;
          break;
        }
      }
      if (advanced) break;
    }
    if (!advanced) throw GuaranteeError("no EF1-preserving pair found in a two-agent scan step");
  }
  return path;
}

// Identical binary utilities, any number of agents. Phase 1 aligns every
// agent's bundle value with its target: each step sends a unit-value good
// from an above-target agent against a zero-value good (or a pad, making it
// a transfer) from a below-target agent; bundle values stay within one of
// each other throughout. Phase 2 routes each misplaced good to its owner in
// the target against a same-value good (or pad) that must leave that owner;
// bundle values never change, so EF1 is preserved. Unit-value goods are
// placed before zero-value goods.
inline std::vector<Move> identical_binary_xt(const Instance& inst, const Allocation& from,
                                             const Allocation& to, PolyStats* stats) {
  const int n = inst.n(), m = inst.m();
  const std::vector<std::int64_t>& u = inst.util[0];
  Allocation work = from;
  std::vector<Move> path;
  auto commit = [&](const Move& mv) {
    work = apply_move(inst, work, mv);
    if (!is_ef1(inst, work)) throw GuaranteeError("constructed step left an EF1 violation");
    path.push_back(mv);
  };
  auto values_of = [&](const Allocation& alloc) {
    std::vector<std::int64_t> v(n, 0);
    for (int g = 0; g < m; ++g) v[alloc.owner[g]] += u[g];
    return v;
  };
  std::vector<std::int64_t> uw = values_of(work);
  const std::vector<std::int64_t> ut = values_of(to);

  for (;;) {
    int lo = -1, hi = -1;
    for (int i = 0; i < n && lo < 0; ++i)
      if (uw[i] < ut[i]) lo = i;
    for (int i = 0; i < n && hi < 0; ++i)
      if (uw[i] > ut[i]) hi = i;
    if (lo < 0 && hi < 0) break;
    if (lo < 0 || hi < 0) throw GuaranteeError("bundle value mismatches do not balance");
    int zero_good = -1, one_good = -1;
    for (int g = 0; g < m && zero_good < 0; ++g)
      if (work.owner[g] == lo && u[g] == 0) zero_good = g;
    for (int g = 0; g < m && one_good < 0; ++g)
      if (work.owner[g] == hi && u[g] == 1) one_good = g;
    if (one_good < 0) throw GuaranteeError("above-target agent holds no unit-value good");
    if (stats) ++stats->candidate_checks;
    commit(zero_good >= 0 ? make_exchange(lo, hi, zero_good, one_good)
                          : make_transfer(hi, lo, one_good));
    ++uw[lo];
    --uw[hi];
  }

  std::vector<int> held(n, 0), target(n, 0);
  for (int g = 0; g < m; ++g) {
    ++held[work.owner[g]];
    ++target[to.owner[g]];
  }
  for (std::int64_t val : {1, 0}) {
    for (;;) {
      int gx = -1;
      for (int g = 0; g < m && gx < 0; ++g)
        if (u[g] == val && work.owner[g] != to.owner[g]) gx = g;
      if (gx < 0) break;
      const int i = work.owner[gx], j = to.owner[gx];
      int gy = -1;
      for (int g = 0; g < m && gy < 0; ++g)
        if (u[g] == val && work.owner[g] == j && to.owner[g] != j) gy = g;
      if (stats) ++stats->candidate_checks;
      if (gy >= 0) {
        commit(make_exchange(i, j, gx, gy));
      } else if (val == 0 && target[j] > held[j]) {
        commit(make_transfer(i, j, gx));
        --held[i];
        ++held[j];
      } else {
        throw GuaranteeError("no return good available while resolving the item graph");
      }
    }
  }
  if (work != to) throw GuaranteeError("constructed path missed the target allocation");
  return path;
}

}  // namespace detail

inline std::vector<Move> path_two_identical(const Instance& inst, const Allocation& from,
                                            const Allocation& to, PolyStats* stats = nullptr) {
  if (inst.n() != 2) throw InputError("requires exactly two agents");
  if (!inst.identical) throw InputError("requires identical utilities");
  check_allocation(inst, from);
  check_allocation(inst, to);
  detail::require_same_sizes(inst, from, to);
  detail::require_ef1_endpoints(inst, from, to);
  return detail::two_agent_scan_xt(inst, from, to, stats);
}

inline std::vector<Move> path_two_binary(const Instance& inst, const Allocation& from,
                                         const Allocation& to, PolyStats* stats = nullptr) {
  if (inst.n() != 2) throw InputError("requires exactly two agents");
  if (!inst.binary) throw InputError("requires binary utilities");
  check_allocation(inst, from);
  check_allocation(inst, to);
  detail::require_same_sizes(inst, from, to);
  detail::require_ef1_endpoints(inst, from, to);
  return detail::two_agent_scan_xt(inst, from, to, stats);
}

inline std::vector<Move> path_identical_binary(const Instance& inst, const Allocation& from,
                                               const Allocation& to, PolyStats* stats = nullptr) {
  if (!inst.identical || !inst.binary) throw InputError("requires identical binary utilities");
  check_allocation(inst, from);
  check_allocation(inst, to);
  detail::require_same_sizes(inst, from, to);
  detail::require_ef1_endpoints(inst, from, to);
  return detail::identical_binary_xt(inst, from, to, stats);
}

// Base algorithm for the transfer-enabled variants. Conceptually every agent
// is padded with zero-value dummy goods up to a common bundle size of m and
// the base exchange-only algorithm runs on the padded instance; trading a
// real good against a pad realizes a transfer. Pads are bookkept virtually,
// never materialized.
enum class XtBase { Auto, TwoIdentical, TwoBinary, IdenticalBinary };

inline std::vector<Move> path_xt_via_dummies(const Instance& inst, const Allocation& from,
                                             const Allocation& to, XtBase base = XtBase::Auto,
                                             PolyStats* stats = nullptr) {
  check_allocation(inst, from);
  check_allocation(inst, to);
  detail::require_ef1_endpoints(inst, from, to);
  if (base == XtBase::Auto) {
    if (inst.n() == 2 && inst.identical) base = XtBase::TwoIdentical;
    else if (inst.n() == 2 && inst.binary) base = XtBase::TwoBinary;
    else if (inst.identical && inst.binary) base = XtBase::IdenticalBinary;
    else throw InputError("no base algorithm covers this utility class");
  }
  switch (base) {
    case XtBase::TwoIdentical:
      if (inst.n() != 2) throw InputError("requires exactly two agents");
      if (!inst.identical) throw InputError("requires identical utilities");
      return detail::two_agent_scan_xt(inst, from, to, stats);
    case XtBase::TwoBinary:
      if (inst.n() != 2) throw InputError("requires exactly two agents");
      if (!inst.binary) throw InputError("requires binary utilities");
      return detail::two_agent_scan_xt(inst, from, to, stats);
    case XtBase::IdenticalBinary:
      if (!inst.identical || !inst.binary) throw InputError("requires identical binary utilities");
      return detail::identical_binary_xt(inst, from, to, stats);
    case XtBase::Auto:
      break;
  }
  throw InputError("unknown base algorithm");
}

// Three agents with identical utilities holding bundles shaped
// (a_0, a_1..a_k | b_0, b_1..b_k | c_0) where each head a_0, b_0, c_0 is
// worth at least either tail's total, and a target with the two tails
// swapped. Returns an EF1 exchange-and-transfer path of exactly k+2 moves:
// the most valuable tail good is transferred to agent 3, the remaining tail
// goods are exchanged pairwise along their sorted positions (the final
// position trades against the departed good's slot and becomes a transfer),
// and the parked good is transferred back to the opposite agent. Step
// selection checks EF1 under modified utilities with every head lowered to
// the smallest head value; this is the regime in which a valid position is
// guaranteed to exist at every step, and any step valid there is also valid
// under the original utilities.
inline std::vector<Move> path_three_heavy_xt(const Instance& inst, const Allocation& from,
                                             const Allocation& to, PolyStats* stats = nullptr) {
  if (inst.n() != 3) throw InputError("requires exactly three agents");
  if (!inst.identical) throw InputError("requires identical utilities");
  check_allocation(inst, from);
  check_allocation(inst, to);
  const int m = inst.m();
  const std::vector<std::int64_t>& u = inst.util[0];

  std::vector<int> sf = from.size_vector(3), st = to.size_vector(3);
  if (sf != st) throw InputError("paired-swap shape requires equal bundle sizes");
  if (sf[2] != 1 || sf[0] != sf[1] || sf[0] < 2)
    throw InputError("paired-swap shape requires bundles of sizes k+1, k+1, 1 with k >= 1");
  const int k = sf[0] - 1;

  int a0 = -1, b0 = -1, c0 = -1;
  std::vector<int> tail_a, tail_b;
  for (int g = 0; g < m; ++g) {
    const int f = from.owner[g], t = to.owner[g];
    if (f == 2 || t == 2) {
      if (f != 2 || t != 2) throw InputError("agent 3's single good must not move");
      c0 = g;
    } else if (f == 0 && t == 0) {
      if (a0 >= 0) throw InputError("agent 1 must keep exactly one good");
      a0 = g;
    } else if (f == 1 && t == 1) {
      if (b0 >= 0) throw InputError("agent 2 must keep exactly one good");
      b0 = g;
    } else if (f == 0) {
      tail_a.push_back(g);
    } else {
      tail_b.push_back(g);
    }
  }
  if (a0 < 0 || b0 < 0 || c0 < 0) throw InputError("allocations do not have the paired-swap shape");
  if (static_cast<int>(tail_a.size()) != k || static_cast<int>(tail_b.size()) != k)
    throw GuaranteeError("tail sizes disagree with the size vector");

  std::int64_t sum_a = 0, sum_b = 0;
  for (int g : tail_a) sum_a = checked_add(sum_a, u[g]);
  for (int g : tail_b) sum_b = checked_add(sum_b, u[g]);
  const std::int64_t m0 = std::min({u[a0], u[b0], u[c0]});
  if (m0 < std::max(sum_a, sum_b))
    throw InputError("every head must be worth at least either tail's total");

  // EF1 holds under the lowered heads whenever they stay with their agents,
  // and restoring the true head values can only weaken envy toward other
  // bundles while raising each agent's own value, so it keeps EF1 intact.
  std::vector<std::int64_t> mu = u;
  mu[a0] = mu[b0] = mu[c0] = m0;
  const Instance minst = make_instance(inst.goods, {mu, mu, mu});

  auto by_value_desc = [&u](int g, int h) { return u[g] != u[h] ? u[g] > u[h] : g < h; };
  std::sort(tail_a.begin(), tail_a.end(), by_value_desc);
  std::sort(tail_b.begin(), tail_b.end(), by_value_desc);
  const int donor = u[tail_a[0]] >= u[tail_b[0]] ? 0 : 1;
  const int other = 1 - donor;
  const std::vector<int>& dtail = donor == 0 ? tail_a : tail_b;
  const std::vector<int>& otail = donor == 0 ? tail_b : tail_a;
  const int routed = dtail[0];

  Allocation work = from;
  std::vector<Move> path;
  auto commit = [&](const Move& mv) {
    work = apply_move(inst, work, mv);
    if (!is_ef1(minst, work) || !is_ef1(inst, work))
      throw GuaranteeError("constructed step left an EF1 violation");
    path.push_back(mv);
  };

  commit(make_transfer(donor, 2, routed));

  std::vector<bool> done(k, false);
  for (int step = 0; step < k; ++step) {
    bool advanced = false;
    for (int p = 0; p < k && !advanced; ++p) {
      if (done[p]) continue;
      Move mv = p + 1 < k ? make_exchange(donor, other, dtail[p + 1], otail[p])
                          : make_transfer(other, donor, otail[p]);
      Allocation cand = apply_move(inst, work, mv);
      if (stats) ++stats->candidate_checks;
      if (is_ef1(minst, cand)) {
        work = std::move(cand);
        if (!is_ef1(inst, work)) throw GuaranteeError("constructed step left an EF1 violation");
        path.push_back(mv);
        done[p] = true;
        advanced = true;
      }
    }
    if (!advanced) throw GuaranteeError("no EF1-preserving position found in a tail step");
  }

  commit(make_transfer(2, other, routed));
  if (work != to) throw GuaranteeError("constructed path missed the target allocation");
  return path;
}

// Replays a move sequence and checks it is a valid EF1 path: every move is
// permitted by `allowed`, every allocation along the way (endpoints included)
// is EF1, and the final allocation equals `to`. Throws on any violation.
inline void verify_ef1_path(const Instance& inst, const Allocation& from, const Allocation& to,
                            const std::vector<Move>& path,
                            MoveSet allowed = MoveSet::ExchangeAndTransfer) {
  check_allocation(inst, from);
  check_allocation(inst, to);
  if (!is_ef1(inst, from)) throw InputError("initial allocation is not EF1");
  Allocation work = from;
  for (const Move& mv : path) {
    if (mv.kind == MoveKind::Exchange && allowed == MoveSet::TransferOnly)
      throw InputError("exchange move not permitted by the move set");
    if (mv.kind == MoveKind::Transfer && allowed == MoveSet::ExchangeOnly)
      throw InputError("transfer move not permitted by the move set");
    work = apply_move(inst, work, mv);
    if (!is_ef1(inst, work)) throw InputError("path leaves EF1 after a move");
  }
  if (work != to) throw InputError("path does not end at the target allocation");
}

}  // namespace ef1path
