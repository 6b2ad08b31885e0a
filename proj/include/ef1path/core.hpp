// Core model: fair-division instances with additive utilities, allocations of
// indivisible goods, EF1 checks, and the exchange/transfer moves that connect
// allocations. Agents are 0-based internally; all user-facing output is 1-based.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ef1path {

// Error taxonomy. InputError covers malformed data and precondition
// violations, OverflowError any checked-arithmetic failure, BudgetError an
// exhausted enumeration/solver budget, and GuaranteeError the sentinel for a
// step that the underlying construction proves must exist but was not found
// (always a bug or an undetected precondition violation, never normal flow).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InputError : public Error {
 public:
  using Error::Error;
};
class OverflowError : public Error {
 public:
  using Error::Error;
};
class BudgetError : public Error {
 public:
  using Error::Error;
};
class GuaranteeError : public Error {
 public:
  using Error::Error;
};

// Checked 64-bit arithmetic: hard error instead of silent wraparound.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

// Non-negative rational utility value as read from input files.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  void reduce() {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
};

// Parses "p", "p/q", or a plain integer string. Whitespace is not accepted.
inline Rational parse_rational(const std::string& text) {
  auto parse_int = [](const std::string& s) -> std::int64_t {
    if (s.empty()) throw InputError("empty number in rational");
    // std::stoll alone would tolerate leading whitespace; require an
    // optional sign followed by digits only.
    const std::size_t first = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (first == s.size()) throw InputError("malformed rational: '" + s + "'");
    for (std::size_t i = first; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw InputError("malformed rational: '" + s + "'");
    std::size_t pos = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw InputError("malformed rational: '" + s + "'");
    }
    if (pos != s.size()) throw InputError("malformed rational: '" + s + "'");
    return value;
  };
  Rational r;
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    r.num = parse_int(text);
    r.den = 1;
  } else {
    r.num = parse_int(text.substr(0, slash));
    r.den = parse_int(text.substr(slash + 1));
  }
  r.reduce();
  return r;
}

// An instance: n agents, m named goods, and one integer utility row per agent.
// Rows are produced by normalize_instance, which clears denominators per agent;
// EF1 is invariant under positive per-agent scaling, so this loses nothing.
struct Instance {
  std::vector<std::string> goods;
  std::vector<std::vector<std::int64_t>> util;  // n rows of length m
  bool identical = false;                       // all rows equal
  bool binary = false;                          // every entry 0 or 1

  int n() const { return static_cast<int>(util.size()); }
  int m() const { return static_cast<int>(goods.size()); }
  std::int64_t utility(int agent, int good) const { return util[agent][good]; }

  int good_index(const std::string& name) const {
    for (int g = 0; g < m(); ++g)
      if (goods[g] == name) return g;
    throw InputError("unknown good name: '" + name + "'");
  }
};

namespace detail {

inline void finalize_instance(Instance& inst) {
  const int n = inst.n();
  const int m = inst.m();
  if (n < 2) throw InputError("an instance needs at least two agents");
  if (m < 1) throw InputError("an instance needs at least one good");
  for (const auto& row : inst.util)
    if (static_cast<int>(row.size()) != m)
      throw InputError("utility row length does not match the number of goods");
  for (const auto& row : inst.util) {
    std::int64_t total = 0;
    for (std::int64_t v : row) {
      if (v < 0) throw InputError("utilities must be non-negative");
      total = checked_add(total, v);  // bundle sums can never overflow later
    }
  }
  inst.identical = true;
  for (int i = 1; i < n && inst.identical; ++i) inst.identical = inst.util[i] == inst.util[0];
  inst.binary = true;
  for (const auto& row : inst.util)
    for (std::int64_t v : row)
      if (v != 0 && v != 1) inst.binary = false;
}

}  // namespace detail

// Builds an instance from integer utility rows.
inline Instance make_instance(std::vector<std::string> goods,
                              std::vector<std::vector<std::int64_t>> util) {
  Instance inst;
  inst.goods = std::move(goods);
  inst.util = std::move(util);
  detail::finalize_instance(inst);
  return inst;
}

// Builds an instance from rational rows by clearing each agent's denominators
// (multiply the row by the LCM of its denominators). Detects the identical and
// binary utility classes; "identical" is judged on the scaled integer rows, so
// rows that are positive multiples of each other do not count as identical.
inline Instance normalize_instance(std::vector<std::string> goods,
                                   const std::vector<std::vector<Rational>>& rows) {
  std::vector<std::vector<std::int64_t>> util;
  util.reserve(rows.size());
  for (const auto& row : rows) {
    std::int64_t lcm = 1;
    for (Rational r : row) {
      r.reduce();
      lcm = checked_mul(lcm / std::gcd(lcm, r.den), r.den);
    }
    std::vector<std::int64_t> scaled;
    scaled.reserve(row.size());
    for (Rational r : row) {
      r.reduce();
      scaled.push_back(checked_mul(r.num, lcm / r.den));
    }
    util.push_back(std::move(scaled));
  }
  return make_instance(std::move(goods), std::move(util));
}

// An allocation is an ordered partition of the goods, stored as the owner of
// each good. This owner vector is also the canonical key: two allocations are
// equal iff their keys are equal, and keys compare lexicographically.
struct Allocation {
  std::vector<int> owner;  // owner[g] in [0, n)

  bool operator==(const Allocation& other) const { return owner == other.owner; }
  bool operator!=(const Allocation& other) const { return owner != other.owner; }

  std::vector<int> size_vector(int n) const {
    std::vector<int> s(n, 0);
    for (int o : owner) ++s.at(o);
    return s;
  }

  std::vector<std::vector<int>> bundles(int n) const {
    std::vector<std::vector<int>> b(n);
    for (int g = 0; g < static_cast<int>(owner.size()); ++g) b.at(owner[g]).push_back(g);
    return b;
  }

  static Allocation from_bundles(int n, int m, const std::vector<std::vector<int>>& bundles) {
    if (static_cast<int>(bundles.size()) != n)
      throw InputError("allocation must list one bundle per agent");
    Allocation a;
    a.owner.assign(m, -1);
    for (int i = 0; i < n; ++i)
      for (int g : bundles[i]) {
        if (g < 0 || g >= m) throw InputError("bundle references an unknown good");
        if (a.owner[g] != -1) throw InputError("good assigned to two bundles");
        a.owner[g] = i;
      }
    for (int g = 0; g < m; ++g)
      if (a.owner[g] == -1) throw InputError("good missing from every bundle");
    return a;
  }
};

inline const std::vector<int>& canonical_key(const Allocation& a) { return a.owner; }

inline void check_allocation(const Instance& inst, const Allocation& a) {
  if (static_cast<int>(a.owner.size()) != inst.m())
    throw InputError("allocation does not cover every good exactly once");
  for (int o : a.owner)
    if (o < 0 || o >= inst.n()) throw InputError("allocation references an unknown agent");
}

namespace detail {

// Exchanges preserve bundle sizes, so exchange-only questions are well posed
// only between allocations with equal size vectors.
inline void require_same_sizes(const Instance& inst, const Allocation& a, const Allocation& b) {
  if (a.size_vector(inst.n()) != b.size_vector(inst.n()))
    throw InputError("exchange-only search requires endpoints with equal size vectors");
}

}  // namespace detail

// EF1: for every ordered pair (i, j) with A_j nonempty there is a good in A_j
// whose removal kills i's envy, equivalently u_i(A_i) >= u_i(A_j) - max good.
// Empty bundles impose no condition. Returns the violating ordered pairs,
// 1-based and sorted; empty result means the allocation is EF1.
inline std::vector<std::pair<int, int>> ef1_violations(const Instance& inst,
                                                       const Allocation& alloc) {
  check_allocation(inst, alloc);
  const int n = inst.n();
  const int m = inst.m();
  std::vector<std::int64_t> value(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::int64_t> best(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> size(n, 0);
  for (int g = 0; g < m; ++g) {
    const int j = alloc.owner[g];
    ++size[j];
    for (int i = 0; i < n; ++i) {
      const std::int64_t v = inst.util[i][g];
      value[i * n + j] += v;  // no overflow: row totals checked at build time
      best[i * n + j] = std::max(best[i * n + j], v);
    }
  }
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || size[j] == 0) continue;
      if (value[i * n + i] < value[i * n + j] - best[i * n + j]) out.emplace_back(i + 1, j + 1);
    }
  return out;
}

inline bool is_ef1(const Instance& inst, const Allocation& alloc) {
  return ef1_violations(inst, alloc).empty();
}

// Moves between allocations. An exchange swaps good g (held by agent i) with
// good h (held by agent j); a transfer hands g from i to j. Exchanges are
// stored with i < j so every move has one canonical representation.
enum class MoveKind { Exchange, Transfer };

struct Move {
  MoveKind kind = MoveKind::Exchange;
  int i = 0;
  int j = 0;
  int g = 0;
  int h = -1;  // unused for transfers

  bool operator==(const Move& o) const {
    return kind == o.kind && i == o.i && j == o.j && g == o.g && h == o.h;
  }
};

inline Move make_exchange(int i, int j, int g, int h) {
  if (i == j) throw InputError("an exchange needs two distinct agents");
  if (i > j) {
    std::swap(i, j);
    std::swap(g, h);
  }
  return Move{MoveKind::Exchange, i, j, g, h};
}

inline Move make_transfer(int i, int j, int g) {
  if (i == j) throw InputError("a transfer needs two distinct agents");
  return Move{MoveKind::Transfer, i, j, g, -1};
}

// Which moves generate the neighborhood of an allocation.
enum class MoveSet { ExchangeOnly, TransferOnly, ExchangeAndTransfer };

inline Allocation apply_move(const Instance& inst, const Allocation& alloc, const Move& mv) {
  check_allocation(inst, alloc);
  if (mv.i == mv.j || mv.i < 0 || mv.j < 0 || mv.i >= inst.n() || mv.j >= inst.n())
    throw InputError("move references invalid agents");
  if (mv.g < 0 || mv.g >= inst.m()) throw InputError("move references an unknown good");
  if (alloc.owner[mv.g] != mv.i) throw InputError("move gives away a good the agent does not hold");
  Allocation next = alloc;
  if (mv.kind == MoveKind::Exchange) {
    if (mv.h < 0 || mv.h >= inst.m()) throw InputError("move references an unknown good");
    if (alloc.owner[mv.h] != mv.j)
      throw InputError("move gives away a good the agent does not hold");
    next.owner[mv.g] = mv.j;
    next.owner[mv.h] = mv.i;
  } else {
    next.owner[mv.g] = mv.j;
  }
  return next;
}

}  // namespace ef1path
