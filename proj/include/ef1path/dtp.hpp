// Directed triangle partition gadgets: a triangular torus whose edges split
// into distinguished clockwise and counterclockwise triangles, patch joins
// that couple several torus copies, and a 3SAT reduction built from them.
#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ef1path/core.hpp"
#include "ef1path/distance.hpp"

namespace ef1path {

// Zero-sum triple modulo p; the vertex set of the torus graph.
struct Coord {
  int a1 = 0, a2 = 0, a3 = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

namespace detail {

// The three edge directions. Every vertex has one out-edge per direction,
// so the graph is 3-in 3-out regular, and for p >= 3 it has no directed
// cycles of length one or two.
inline constexpr int kDelta[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};

inline int mod_p(int p, int x) { return ((x % p) + p) % p; }

inline Coord coord_shift(int p, Coord c, int dx, int dy, int dz) {
  return {mod_p(p, c.a1 + dx), mod_p(p, c.a2 + dy), mod_p(p, c.a3 + dz)};
}

inline Coord coord_step(int p, Coord c, int dir) {
  return coord_shift(p, c, kDelta[dir][0], kDelta[dir][1], kDelta[dir][2]);
}

inline int coord_index(int p, Coord c) { return c.a1 * p + c.a2; }

inline Coord coord_of_index(int p, int idx) {
  const int a1 = idx / p, a2 = idx % p;
  return {a1, a2, mod_p(p, -a1 - a2)};
}

// Triangle anchors: every edge lies in exactly one triangle of each
// orientation. A T-triangle at v is v > v+(1,-1,0) > v+(1,0,-1) > v and an
// F-triangle at v is v > v+(1,-1,0) > v+(0,-1,1) > v.
inline std::array<Coord, 3> t_triangle(int p, Coord v) {
  return {v, coord_shift(p, v, 1, -1, 0), coord_shift(p, v, 1, 0, -1)};
}

inline std::array<Coord, 3> f_triangle(int p, Coord v) {
  return {v, coord_shift(p, v, 1, -1, 0), coord_shift(p, v, 0, -1, 1)};
}

}  // namespace detail

// A patch is a triangle of one orientation together with the three
// triangles of the other orientation sharing its edges: nine edges on six
// vertices. The six vertices carry fixed labels a..f such that, read
// through the labels, both patch types have the same edge set: a hexagonal
// rim f>a>b>c>d>e>f plus the central triangle e>c, c>a, a>e. Joins
// identify patch vertices across copies by like label.
struct Patch {
  bool is_t = false;  // orientation of the central triangle
  Coord anchor;       // label e, the anchor of the central triangle
};

namespace detail {

// Label offsets from the anchor, in label order a, b, c, d, e, f.
inline constexpr int kFLabelOffset[6][3] = {{0, -1, 1}, {1, -2, 1},  {1, -1, 0},
                                            {1, 0, -1}, {0, 0, 0},   {-1, 0, 1}};
inline constexpr int kTLabelOffset[6][3] = {{1, 0, -1}, {2, -1, -1}, {1, -1, 0},
                                            {0, -1, 1}, {0, 0, 0},   {0, 1, -1}};

// The nine patch edges as label index pairs: the rim then the center.
inline constexpr int kPatchEdge[9][2] = {{5, 0}, {0, 1}, {1, 2}, {2, 3}, {3, 4},
                                         {4, 5}, {4, 2}, {2, 0}, {0, 4}};
inline constexpr int kPatchRimEdges = 6;

}  // namespace detail

// The six labelled vertices of a patch, in label order a..f.
inline std::array<Coord, 6> patch_labels(int p, const Patch& patch) {
  std::array<Coord, 6> out;
  for (int l = 0; l < 6; ++l) {
    const auto& d = patch.is_t ? detail::kTLabelOffset[l] : detail::kFLabelOffset[l];
    out[l] = detail::coord_shift(p, patch.anchor, d[0], d[1], d[2]);
  }
  return out;
}

// The nine patch edges in coordinate form, rim first.
inline std::array<std::pair<Coord, Coord>, 9> patch_edges(int p, const Patch& patch) {
  const auto labels = patch_labels(p, patch);
  std::array<std::pair<Coord, Coord>, 9> out;
  for (int e = 0; e < 9; ++e)
    out[e] = {labels[detail::kPatchEdge[e][0]], labels[detail::kPatchEdge[e][1]]};
  return out;
}

// Anchors of the three same-orientation triangles that tile the patch from
// inside: the label triangles (a,b,c), (c,d,e), (e,f,a), anchored at labels
// a, e and f. For an F-patch these are T-triangles and vice versa.
inline std::array<Coord, 3> patch_internal_anchors(int p, const Patch& patch) {
  const auto labels = patch_labels(p, patch);
  return {labels[0], labels[4], labels[5]};
}

// A 3SAT formula in exactly-three-literal clauses over 0-based variables.
struct Literal {
  int var = 0;
  bool negated = false;
};

struct Clause {
  std::array<Literal, 3> lit;
};

struct Cnf3Formula {
  int vars = 0;
  std::vector<Clause> clauses;
};

inline Clause make_clause(Literal a, Literal b, Literal c) { return {{a, b, c}}; }

// DIMACS convention: literal k > 0 means variable k, k < 0 its negation.
inline Clause clause_from_dimacs(int a, int b, int c) {
  auto lit = [](int x) {
    if (x == 0) throw InputError("clause literals must be nonzero");
    return Literal{std::abs(x) - 1, x < 0};
  };
  return make_clause(lit(a), lit(b), lit(c));
}

inline void check_formula(const Cnf3Formula& f) {
  if (f.vars < 0) throw InputError("formula has a negative variable count");
  for (const Clause& c : f.clauses)
    for (const Literal& l : c.lit)
      if (l.var < 0 || l.var >= f.vars) throw InputError("clause references an unknown variable");
}

inline bool literal_satisfied(const Literal& l, const std::vector<bool>& assignment) {
  return assignment[l.var] != l.negated;
}

// A join couples patches on two or three copies: the labelled vertices are
// identified by like label, every participant's patch edges are removed,
// and one shared copy of the patch edges is re-added. The three-way join
// re-adds only the rim; the two-way joins re-add the full patch. ThreeWay
// and TwoWayFF use F-patches throughout; TwoWayFT couples the first
// participant's F-patch with a T-patch on the second.
struct JoinRecord {
  enum class Kind { ThreeWay, TwoWayFF, TwoWayFT };
  Kind kind = Kind::ThreeWay;
  std::vector<int> copies;
  std::vector<Patch> patches;
};

// Several torus copies glued along joins. Every vertex records its
// provenance (for merged vertices the first participant's copy and
// coordinate), and vertex_of maps each copy-local coordinate back to the
// final vertex id.
struct GadgetGraph {
  int p = 0;
  int vars = 0;
  int clause_count = 0;
  std::vector<std::string> copy_names;
  std::vector<std::pair<int, Coord>> vertices;  // id -> (copy, coordinate)
  std::vector<std::pair<int, int>> edges;       // vertex id pairs
  std::vector<JoinRecord> joins;
  std::vector<std::vector<int>> vertex_of;      // [copy][coord index] -> id

  int copies() const { return static_cast<int>(copy_names.size()); }
  int vertex_at(int copy, Coord c) const {
    return vertex_of[copy][detail::coord_index(p, c)];
  }
};

// The plain torus graph as a single unjoined copy. Vertices appear in
// coordinate index order and edges in direction order per vertex.
inline GadgetGraph build_hp(int p) {
  if (p < 3) throw InputError("the torus graph needs p >= 3");
  GadgetGraph g;
  g.p = p;
  g.copy_names = {"H"};
  g.vertices.reserve(static_cast<std::size_t>(p) * p);
  g.vertex_of.assign(1, std::vector<int>(static_cast<std::size_t>(p) * p));
  for (int idx = 0; idx < p * p; ++idx) {
    g.vertex_of[0][idx] = idx;
    g.vertices.emplace_back(0, detail::coord_of_index(p, idx));
  }
  g.edges.reserve(static_cast<std::size_t>(3) * p * p);
  for (int idx = 0; idx < p * p; ++idx) {
    const Coord c = detail::coord_of_index(p, idx);
    for (int dir = 0; dir < 3; ++dir)
      g.edges.emplace_back(idx, detail::coord_index(p, detail::coord_step(p, c, dir)));
  }
  return g;
}

// Directed triangles by final vertex id, anchor first.
using Triangle = std::array<int, 3>;

struct TriangleLists {
  std::vector<Triangle> t;
  std::vector<Triangle> f;
};

// All triangles of both orientations of an unjoined torus copy, in anchor
// order. Either list alone covers every edge exactly once.
inline TriangleLists enumerate_tf_triangles(const GadgetGraph& g) {
  if (g.copies() != 1 || !g.joins.empty())
    throw InputError("triangle enumeration needs a single unjoined torus copy");
  TriangleLists out;
  const int p = g.p;
  for (int idx = 0; idx < p * p; ++idx) {
    const Coord v = detail::coord_of_index(p, idx);
    const auto tt = detail::t_triangle(p, v);
    const auto ft = detail::f_triangle(p, v);
    out.t.push_back({g.vertex_at(0, tt[0]), g.vertex_at(0, tt[1]), g.vertex_at(0, tt[2])});
    out.f.push_back({g.vertex_at(0, ft[0]), g.vertex_at(0, ft[1]), g.vertex_at(0, ft[2])});
  }
  return out;
}

// Deterministically places the requested number of T- and F-patches in one
// torus copy, T-patches first, scanning anchors in coordinate order. Placed
// patches keep undirected distance at least `radius` from each other and
// from the origin, which is conservative for the directed distance. Throws
// when the torus is too small to host the request.
inline std::vector<Patch> select_patches(int p, int need_t, int need_f, int radius = 10) {
  if (p < 3) throw InputError("the torus graph needs p >= 3");
  if (need_t < 0 || need_f < 0) throw InputError("patch counts must be non-negative");
  if (radius < 1) throw InputError("patch separation radius must be positive");

  std::vector<char> blocked(static_cast<std::size_t>(p) * p, 0);
  auto block_ball = [&](Coord center) {
    // Mark everything within undirected distance radius - 1, so an
    // unblocked vertex is at distance >= radius from every placed vertex.
    // The flood keeps its own visited set: testing `blocked` instead would
    // let an earlier overlapping ball truncate this one.
    std::vector<char> seen(static_cast<std::size_t>(p) * p, 0);
    std::deque<std::pair<int, int>> queue;  // (coord index, depth)
    const int start = detail::coord_index(p, center);
    seen[start] = 1;
    blocked[start] = 1;
    queue.emplace_back(start, 0);
    while (!queue.empty()) {
      auto [idx, depth] = queue.front();
      queue.pop_front();
      if (depth == radius - 1) continue;
      const Coord c = detail::coord_of_index(p, idx);
      for (int dir = 0; dir < 3; ++dir)
        for (int sign = 0; sign < 2; ++sign) {
          const auto& d = detail::kDelta[dir];
          const Coord nc = sign ? detail::coord_shift(p, c, -d[0], -d[1], -d[2])
                                : detail::coord_shift(p, c, d[0], d[1], d[2]);
          const int nidx = detail::coord_index(p, nc);
          if (!seen[nidx]) {
            seen[nidx] = 1;
            blocked[nidx] = 1;
            queue.emplace_back(nidx, depth + 1);
          }
        }
    }
  };
  block_ball({0, 0, 0});

  std::vector<Patch> placed;
  for (int want_t = 1; want_t >= 0; --want_t) {
    int need = want_t ? need_t : need_f;
    for (int idx = 0; idx < p * p && need > 0; ++idx) {
      Patch cand{want_t == 1, detail::coord_of_index(p, idx)};
      const auto labels = patch_labels(p, cand);
      bool free = true;
      for (const Coord& c : labels)
        if (blocked[detail::coord_index(p, c)]) free = false;
      if (!free) continue;
      for (int i = 0; i < 6 && free; ++i)
        for (int j = i + 1; j < 6; ++j)
          if (labels[i] == labels[j])
            throw GuaranteeError("patch labels collide; the torus is too small");
      placed.push_back(cand);
      for (const Coord& c : labels) block_ball(c);
      --need;
    }
    if (need > 0)
      throw InputError("cannot place the requested patches with the required separation");
  }
  return placed;
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Builds the reduction graph for a 3SAT formula: one torus copy per
// variable and three per clause (one per literal). Each clause's literal
// copies meet in a three-way join, and each literal copy is joined to its
// variable's copy, by a TwoWayFF join for a positive literal and a TwoWayFT
// join for a negated one. The graph admits a partition into directed
// triangles iff the formula is satisfiable: the three-way join forces
// exactly one literal copy per clause to be partitioned in the F
// orientation, and the variable joins force that choice to be consistent
// with a single truth value per variable. With the default separation
// radius the construction needs roughly p >= 50; the conventional choice
// p = 100 * max(r, 1) for r clauses leaves patches far apart.
inline GadgetGraph gen_threesat_dtp(const Cnf3Formula& formula, std::optional<int> p_choice = {},
                                    int radius = 10) {
  check_formula(formula);
  const int q = formula.vars;
  const int r = static_cast<int>(formula.clauses.size());
  const int p = p_choice.value_or(100 * std::max(r, 1));
  if (p < 3) throw InputError("the torus graph needs p >= 3");

  GadgetGraph g;
  g.p = p;
  g.vars = q;
  g.clause_count = r;
  for (int i = 0; i < q; ++i) g.copy_names.push_back("Y" + std::to_string(i + 1));
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < 3; ++k)
      g.copy_names.push_back("L" + std::to_string(j + 1) + "." + std::to_string(k + 1));
  const int copies = g.copies();
  const int pp = p * p;

  // Patches per copy: literal copies carry two F-patches (three-way join,
  // then the variable join); a variable copy carries one patch per
  // occurrence, T for negated occurrences, matched to occurrences in
  // clause order within each orientation.
  std::vector<std::vector<Patch>> patches(copies);
  std::vector<int> var_t_need(q, 0), var_f_need(q, 0);
  for (const Clause& c : formula.clauses)
    for (const Literal& l : c.lit) ++(l.negated ? var_t_need : var_f_need)[l.var];
  for (int i = 0; i < q; ++i)
    if (var_t_need[i] + var_f_need[i] > 0)
      patches[i] = select_patches(p, var_t_need[i], var_f_need[i], radius);
  if (r > 0) {
    const std::vector<Patch> literal_patches = select_patches(p, 0, 2, radius);
    for (int c = q; c < copies; ++c) patches[c] = literal_patches;
  }

  // Joins; variable patch lists are consumed T-first in clause order.
  std::vector<int> var_t_used(q, 0), var_f_used(q, 0);
  for (int j = 0; j < r; ++j) {
    JoinRecord three;
    three.kind = JoinRecord::Kind::ThreeWay;
    for (int k = 0; k < 3; ++k) {
      three.copies.push_back(q + 3 * j + k);
      three.patches.push_back(patches[q + 3 * j + k][0]);
    }
    g.joins.push_back(std::move(three));
    for (int k = 0; k < 3; ++k) {
      const Literal& l = formula.clauses[j].lit[k];
      JoinRecord pair;
      pair.kind = l.negated ? JoinRecord::Kind::TwoWayFT : JoinRecord::Kind::TwoWayFF;
      pair.copies = {q + 3 * j + k, l.var};
      const int pick = l.negated ? var_t_used[l.var]++
                                 : var_t_need[l.var] + var_f_used[l.var]++;
      pair.patches = {patches[q + 3 * j + k][1], patches[l.var][pick]};
      if (pair.patches[1].is_t != l.negated)
        throw GuaranteeError("variable patch orientation disagrees with the literal sign");
      g.joins.push_back(std::move(pair));
    }
  }

  // Merge like labels, drop every participant's patch edges, then re-add
  // one shared copy per join: the rim alone for three-way joins, the full
  // patch for two-way joins.
  detail::UnionFind uf(copies * pp);
  auto pre_id = [&](int copy, Coord c) { return copy * pp + detail::coord_index(p, c); };
  std::vector<std::unordered_set<std::int64_t>> dropped(copies);
  auto edge_key = [&](Coord from, Coord to) {
    return static_cast<std::int64_t>(detail::coord_index(p, from)) * pp +
           detail::coord_index(p, to);
  };
  for (const JoinRecord& join : g.joins) {
    const auto base = patch_labels(p, join.patches[0]);
    for (std::size_t part = 1; part < join.copies.size(); ++part) {
      const auto labels = patch_labels(p, join.patches[part]);
      for (int l = 0; l < 6; ++l)
        uf.unite(pre_id(join.copies[part], labels[l]), pre_id(join.copies[0], base[l]));
    }
    for (std::size_t part = 0; part < join.copies.size(); ++part)
      for (const auto& [from, to] : patch_edges(p, join.patches[part]))
        dropped[join.copies[part]].insert(edge_key(from, to));
  }

  // Final ids in order of first appearance over (copy, coordinate).
  std::vector<int> final_id(copies * pp, -1);
  g.vertex_of.assign(copies, std::vector<int>(pp));
  for (int c = 0; c < copies; ++c)
    for (int idx = 0; idx < pp; ++idx) {
      const int root = uf.find(c * pp + idx);
      if (final_id[root] < 0) {
        final_id[root] = static_cast<int>(g.vertices.size());
        g.vertices.emplace_back(c, detail::coord_of_index(p, idx));
      }
      g.vertex_of[c][idx] = final_id[root];
    }

  for (int c = 0; c < copies; ++c)
    for (int idx = 0; idx < pp; ++idx) {
      const Coord from = detail::coord_of_index(p, idx);
      for (int dir = 0; dir < 3; ++dir) {
        const Coord to = detail::coord_step(p, from, dir);
        if (dropped[c].count(edge_key(from, to))) continue;
        g.edges.emplace_back(g.vertex_of[c][idx], g.vertex_at(c, to));
      }
    }
  for (const JoinRecord& join : g.joins) {
    const auto shared = patch_edges(p, join.patches[0]);
    const int count = join.kind == JoinRecord::Kind::ThreeWay ? detail::kPatchRimEdges : 9;
    for (int e = 0; e < count; ++e)
      g.edges.emplace_back(g.vertex_at(join.copies[0], shared[e].first),
                           g.vertex_at(join.copies[0], shared[e].second));
  }
  return g;
}

// Result of turning a truth assignment into a triangle partition.
struct DtpPartition {
  bool ok = false;
  int unsatisfied_clause = -1;  // 0-based, set when ok is false
  std::vector<Triangle> triangles;
};

// Builds the triangle partition that witnesses a satisfying assignment:
// each copy is tiled in its state orientation (a variable copy in T for
// true, a literal copy in F iff it is the clause's chosen satisfied
// literal), with the tiling adjusted around every join. The participant
// whose state matches its patch orientation covers the shared edges from
// inside its copy; participants in the other state leave out the three
// label triangles of their patch, and a two-way join with no matching
// participant takes the three label triangles on the shared vertices
// instead. Returns the first unsatisfied clause when the assignment does
// not satisfy the formula.
inline DtpPartition partition_from_assignment(const GadgetGraph& g,
                                              const std::vector<bool>& assignment) {
  if (g.copies() != g.vars + 3 * g.clause_count)
    throw InputError("graph was not produced by the formula reduction");
  if (static_cast<int>(assignment.size()) != g.vars)
    throw InputError("assignment length does not match the variable count");
  const int p = g.p, pp = p * p;

  // States: true = T orientation. The chosen literal of each clause is the
  // first satisfied one.
  std::vector<char> state_t(g.copies(), 1);
  for (int i = 0; i < g.vars; ++i) state_t[i] = assignment[i];
  std::vector<int> chosen(g.clause_count, -1);
  {
    // Joins were emitted clause by clause: reconstruct literal signs from
    // the two-way join kinds to evaluate the formula.
    int at = 0;
    for (int j = 0; j < g.clause_count; ++j) {
      ++at;  // skip the three-way join
      for (int k = 0; k < 3; ++k, ++at) {
        const JoinRecord& join = g.joins[at];
        const bool negated = join.kind == JoinRecord::Kind::TwoWayFT;
        const bool sat = assignment[join.copies[1]] != negated;
        if (sat && chosen[j] < 0) chosen[j] = k;
      }
      if (chosen[j] < 0) return {false, j, {}};
      state_t[g.vars + 3 * j + chosen[j]] = 0;
    }
  }

  std::vector<std::unordered_set<int>> skip(g.copies());
  std::vector<Triangle> triangles;
  for (const JoinRecord& join : g.joins) {
    int absorbers = 0;
    for (std::size_t part = 0; part < join.copies.size(); ++part) {
      const int copy = join.copies[part];
      const Patch& patch = join.patches[part];
      const bool absorber = (state_t[copy] != 0) == patch.is_t;
      if (absorber) {
        ++absorbers;
        // Covers the shared edges from inside its copy; with only the rim
        // re-added the central triangle must be left out too.
        if (join.kind == JoinRecord::Kind::ThreeWay)
          skip[copy].insert(detail::coord_index(p, patch.anchor));
      } else {
        for (const Coord& a : patch_internal_anchors(p, patch))
          skip[copy].insert(detail::coord_index(p, a));
      }
    }
    if (join.kind == JoinRecord::Kind::ThreeWay) {
      if (absorbers != 1)
        throw GuaranteeError("a three-way join needs exactly one F-state literal copy");
    } else if (absorbers > 1) {
      throw GuaranteeError("a two-way join cannot have two covering participants");
    } else if (absorbers == 0) {
      const auto labels = patch_labels(p, join.patches[0]);
      const int copy = join.copies[0];
      auto at = [&](int l) { return g.vertex_at(copy, labels[l]); };
      triangles.push_back({at(0), at(1), at(2)});  // (a, b, c)
      triangles.push_back({at(2), at(3), at(4)});  // (c, d, e)
      triangles.push_back({at(4), at(5), at(0)});  // (e, f, a)
    }
  }

  for (int c = 0; c < g.copies(); ++c)
    for (int idx = 0; idx < pp; ++idx) {
      if (skip[c].count(idx)) continue;
      const Coord v = detail::coord_of_index(p, idx);
      const auto tri = state_t[c] ? detail::t_triangle(p, v) : detail::f_triangle(p, v);
      triangles.push_back({g.vertex_at(c, tri[0]), g.vertex_at(c, tri[1]),
                           g.vertex_at(c, tri[2])});
    }
  return {true, -1, std::move(triangles)};
}

// Checks a claimed partition of a gadget graph's edges into directed
// triangles; reports the first defect found.
struct TrianglePartitionCheck {
  bool ok = false;
  std::string defect;
};

inline TrianglePartitionCheck validate_triangle_partition(const GadgetGraph& g,
                                                          const std::vector<Triangle>& parts) {
  const std::int64_t v = static_cast<std::int64_t>(g.vertices.size());
  std::unordered_map<std::int64_t, int> edge_id;
  edge_id.reserve(g.edges.size() * 2);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const auto [from, to] = g.edges[e];
    if (!edge_id.emplace(from * v + to, e).second)
      return {false, "graph has a duplicate edge"};
  }
  std::vector<char> covered(g.edges.size(), 0);
  for (std::size_t t = 0; t < parts.size(); ++t) {
    const Triangle& tri = parts[t];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      return {false, "triangle " + std::to_string(t) + " repeats a vertex"};
    for (int s = 0; s < 3; ++s) {
      const int from = tri[s], to = tri[(s + 1) % 3];
      if (from < 0 || from >= v || to < 0 || to >= v)
        return {false, "triangle " + std::to_string(t) + " references an unknown vertex"};
      auto it = edge_id.find(static_cast<std::int64_t>(from) * v + to);
      if (it == edge_id.end())
        return {false, "triangle " + std::to_string(t) + " uses a missing edge"};
      if (covered[it->second])
        return {false, "triangle " + std::to_string(t) + " re-covers an edge"};
      covered[it->second] = 1;
    }
  }
  for (std::size_t e = 0; e < covered.size(); ++e)
    if (!covered[e]) return {false, "edge " + std::to_string(e) + " is uncovered"};
  return {true, ""};
}

// Exhaustive search for a partition of a small digraph's edges into
// directed triangles. Returns edge index triples in cycle order, anchored
// at each triple's smallest edge, or nothing when no partition exists.
inline std::optional<std::vector<std::array<int, 3>>> dtp_brute_force(const Digraph& g) {
  const int m = static_cast<int>(g.edges.size());
  if (m > 30) throw InputError("triangle partition brute force is limited to 30 edges");
  if (m % 3 != 0) return std::nullopt;
  for (auto [from, to] : g.edges)
    if (from < 0 || from >= g.n || to < 0 || to >= g.n)
      throw InputError("edge references an unknown vertex");

  std::vector<std::vector<int>> out_edges(g.n);
  for (int e = 0; e < m; ++e) out_edges[g.edges[e].first].push_back(e);

  std::vector<char> covered(m, 0);
  std::vector<std::array<int, 3>> chosen;
  auto solve = [&](auto&& self, int covered_count) -> bool {
    if (covered_count == m) return true;
    int first = 0;
    while (covered[first]) ++first;
    const auto [u, v] = g.edges[first];
    if (u == v) return false;
    covered[first] = 1;
    for (int second : out_edges[v]) {
      if (covered[second]) continue;
      const int w = g.edges[second].second;
      if (w == u || w == v) continue;
      covered[second] = 1;
      for (int third : out_edges[w]) {
        if (covered[third] || g.edges[third].second != u) continue;
        covered[third] = 1;
        chosen.push_back({first, second, third});
        if (self(self, covered_count + 3)) return true;
        chosen.pop_back();
        covered[third] = 0;
      }
      covered[second] = 0;
    }
    covered[first] = 0;
    return false;
  };
  if (!solve(solve, 0)) return std::nullopt;
  return chosen;
}

// Converts a gadget graph to the plain digraph form used by the distance
// machinery.
inline Digraph gadget_to_digraph(const GadgetGraph& g) {
  Digraph d;
  d.n = static_cast<int>(g.vertices.size());
  d.edges = g.edges;
  return d;
}

// Writes the plain-text form: a "p vars clauses" header, one line per edge
// with each endpoint's provenance, then the joins as #join comments.
inline void write_gadget_graph(std::ostream& os, const GadgetGraph& g) {
  os << g.p << " " << g.vars << " " << g.clause_count << "\n";
  auto put_vertex = [&](int id) {
    const auto& [copy, c] = g.vertices[id];
    os << g.copy_names[copy] << " (" << c.a1 << "," << c.a2 << "," << c.a3 << ")";
  };
  for (const auto& [from, to] : g.edges) {
    put_vertex(from);
    os << " -> ";
    put_vertex(to);
    os << "\n";
  }
  for (const JoinRecord& join : g.joins) {
    os << "#join "
       << (join.kind == JoinRecord::Kind::ThreeWay
               ? "fff"
               : join.kind == JoinRecord::Kind::TwoWayFF ? "ff" : "ft");
    for (std::size_t part = 0; part < join.copies.size(); ++part) {
      const Patch& patch = join.patches[part];
      os << " " << g.copy_names[join.copies[part]] << (patch.is_t ? " T(" : " F(")
         << patch.anchor.a1 << "," << patch.anchor.a2 << "," << patch.anchor.a3 << ")";
    }
    os << "\n";
  }
}

}  // namespace ef1path
