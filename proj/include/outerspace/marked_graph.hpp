#pragma once

// Marked metric graphs: points of (unprojectivized) Outer space.
//
// A marking assigns to every generator x_i of F_n a closed reduced edge path
// at the basepoint. The comarking is the homotopy inverse: relative to a
// BFS spanning tree rooted at the basepoint, tree edges carry the empty word
// and each of the n non-tree edges carries one reduced word. It is always
// recomputed from the marking (see folding.hpp) and checked: reading the
// comarking along marking(x) reduces to x.
//
// Translation lengths are evaluated through crossing vectors (how often the
// tightened loop traverses each edge), so the length of a class is a fixed
// dot product with the edge lengths. This makes conjugation invariance and
// linearity in the lengths hold exactly in floating point.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "outerspace/automorphism.hpp"
#include "outerspace/errors.hpp"
#include "outerspace/folding.hpp"
#include "outerspace/word.hpp"

namespace outerspace {

struct Step {
  int edge = 0;
  bool forward = true;
  Step reversed() const { return {edge, !forward}; }
  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;
};

using EdgePath = std::vector<Step>;

struct Edge {
  std::string id;
  int tail = 0;
  int head = 0;
  double length = 0.0;
  // Decimal text the length was read from, kept so files round-trip exactly.
  // Cleared whenever the length is recomputed.
  std::string length_text;
  bool is_loop() const { return tail == head; }
};

struct LoopPath {
  EdgePath steps;
  double length = 0.0;
};

inline EdgePath reversed_path(const EdgePath& p) {
  EdgePath out;
  out.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(it->reversed());
  return out;
}

inline void push_tight(EdgePath& path, Step s) {
  if (!path.empty() && path.back() == s.reversed()) {
    path.pop_back();
  } else {
    path.push_back(s);
  }
}

inline EdgePath tighten(const EdgePath& p) {
  EdgePath out;
  out.reserve(p.size());
  for (Step s : p) push_tight(out, s);
  return out;
}

// Tightens and removes backtracking across the wrap-around.
inline EdgePath cyclic_tighten(const EdgePath& p) {
  EdgePath t = tighten(p);
  std::size_t lo = 0;
  std::size_t hi = t.size();
  while (hi - lo >= 2 && t[lo] == t[hi - 1].reversed()) {
    ++lo;
    --hi;
  }
  return EdgePath(t.begin() + static_cast<std::ptrdiff_t>(lo), t.begin() + static_cast<std::ptrdiff_t>(hi));
}

class MarkedGraph {
 public:
  static MarkedGraph build(int rank, std::vector<std::string> vertex_ids, std::vector<Edge> edges,
                           int basepoint, std::vector<EdgePath> marking);

  int rank() const { return rank_; }
  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int i) const { return edges_.at(i); }
  int basepoint() const { return basepoint_; }
  const std::vector<EdgePath>& marking() const { return marking_; }
  const EdgePath& marking(int generator) const { return marking_.at(generator - 1); }
  bool in_tree(int e) const { return in_tree_.at(e); }

  int tail(Step s) const { return s.forward ? edges_[s.edge].tail : edges_[s.edge].head; }
  int head(Step s) const { return s.forward ? edges_[s.edge].head : edges_[s.edge].tail; }

  // Comarking word of an oriented edge.
  Word comarking(Step s) const {
    return s.forward ? comarking_[s.edge] : comarking_[s.edge].inverse();
  }
  Word read_comarking(const EdgePath& p) const {
    Word out(rank_);
    for (Step s : p) out *= comarking(s);
    return out;
  }

  int valence(int v) const {
    int n = 0;
    for (const auto& e : edges_) n += (e.tail == v ? 1 : 0) + (e.head == v ? 1 : 0);
    return n;
  }

  std::vector<double> lengths() const {
    std::vector<double> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back(e.length);
    return out;
  }

  double volume() const {
    double v = 0.0;
    for (const auto& e : edges_) v += e.length;
    return v;
  }

  // Same topology and marking, new edge lengths.
  MarkedGraph with_lengths(const std::vector<double>& lengths) const {
    if (lengths.size() != edges_.size()) throw MalformedInput("length vector size mismatch");
    MarkedGraph out = *this;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      if (!std::isfinite(lengths[i]) || lengths[i] < 0.0) {
        throw MalformedInput("edge lengths must be finite and nonnegative");
      }
      if (out.edges_[i].length != lengths[i]) out.edges_[i].length_text.clear();
      out.edges_[i].length = lengths[i];
    }
    return out;
  }

  std::vector<std::vector<Step>> outgoing() const {
    std::vector<std::vector<Step>> out(vertex_ids_.size());
    for (int i = 0; i < edge_count(); ++i) {
      out[edges_[i].tail].push_back({i, true});
      out[edges_[i].head].push_back({i, false});
    }
    return out;
  }

 private:
  int rank_ = 0;
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  int basepoint_ = 0;
  std::vector<EdgePath> marking_;
  std::vector<Word> comarking_;
  std::vector<bool> in_tree_;
};

inline MarkedGraph MarkedGraph::build(int rank, std::vector<std::string> vertex_ids,
                                      std::vector<Edge> edges, int basepoint,
                                      std::vector<EdgePath> marking) {
  if (rank < 2) throw MalformedInput("rank must be at least 2");
  const int nv = static_cast<int>(vertex_ids.size());
  const int ne = static_cast<int>(edges.size());
  if (nv == 0) throw MalformedInput("graph has no vertices");
  if (basepoint < 0 || basepoint >= nv) throw MalformedInput("basepoint out of range");
  {
    std::set<std::string> seen(vertex_ids.begin(), vertex_ids.end());
    if (static_cast<int>(seen.size()) != nv) throw MalformedInput("duplicate vertex id");
    std::set<std::string> eseen;
    for (const auto& e : edges) eseen.insert(e.id);
    if (static_cast<int>(eseen.size()) != ne) throw MalformedInput("duplicate edge id");
  }
  for (const auto& e : edges) {
    if (e.tail < 0 || e.tail >= nv || e.head < 0 || e.head >= nv) {
      throw MalformedInput("edge '" + e.id + "' has an endpoint out of range");
    }
    if (!std::isfinite(e.length) || e.length < 0.0) {
      throw MalformedInput("edge '" + e.id + "' has a negative or non-finite length");
    }
  }
  if (ne - nv + 1 != rank) {
    throw MalformedInput("first Betti number " + std::to_string(ne - nv + 1) + " does not match rank " +
                         std::to_string(rank));
  }

  MarkedGraph g;
  g.rank_ = rank;
  g.vertex_ids_ = std::move(vertex_ids);
  g.edges_ = std::move(edges);
  g.basepoint_ = basepoint;

  for (int v = 0; v < nv; ++v) {
    if (g.valence(v) < 3) {
      throw MalformedInput("vertex '" + g.vertex_ids_[v] + "' has valence below 3");
    }
  }

  // BFS spanning tree; also checks connectivity.
  g.in_tree_.assign(ne, false);
  const auto out = g.outgoing();
  std::vector<bool> visited(nv, false);
  std::queue<int> queue;
  visited[basepoint] = true;
  queue.push(basepoint);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (Step s : out[v]) {
      const int w = g.head(s);
      if (!visited[w]) {
        visited[w] = true;
        g.in_tree_[s.edge] = true;
        queue.push(w);
      }
    }
  }
  if (std::find(visited.begin(), visited.end(), false) != visited.end()) {
    throw MalformedInput("graph is not connected");
  }

  if (static_cast<int>(marking.size()) != rank) {
    throw MalformedInput("marking must list one loop per generator");
  }
  for (auto& path : marking) {
    int at = basepoint;
    for (Step s : path) {
      if (s.edge < 0 || s.edge >= ne) throw MalformedInput("marking uses an unknown edge");
      if (g.tail(s) != at) throw MalformedInput("marking path is not contiguous");
      at = g.head(s);
    }
    if (at != basepoint) throw MalformedInput("marking path is not closed at the basepoint");
    path = tighten(path);
  }
  g.marking_ = std::move(marking);

  // Non-tree edges, in edge order, are the letters of pi_1(G, basepoint).
  std::vector<int> letter_of(ne, 0);
  int next = 0;
  for (int e = 0; e < ne; ++e) {
    if (!g.in_tree_[e]) letter_of[e] = ++next;
  }
  std::vector<Word> images;
  for (const auto& path : g.marking_) {
    std::vector<Letter> ls;
    for (Step s : path) {
      if (letter_of[s.edge] != 0) ls.push_back(s.forward ? letter_of[s.edge] : -letter_of[s.edge]);
    }
    images.push_back(Word::from_letters(rank, ls));
  }
  const auto inverse = detail::invert_basis_map(rank, images);
  g.comarking_.assign(ne, Word(rank));
  for (int e = 0; e < ne; ++e) {
    if (letter_of[e] != 0) g.comarking_[e] = inverse[letter_of[e] - 1];
  }
  for (int i = 0; i < rank; ++i) {
    if (!(g.read_comarking(g.marking_[i]) == Word::generator(rank, i + 1))) {
      throw InvariantViolation("comarking does not invert the marking");
    }
  }
  return g;
}

inline bool marking_consistent(const MarkedGraph& g) {
  for (int i = 1; i <= g.rank(); ++i) {
    if (!(g.read_comarking(g.marking(i)) == Word::generator(g.rank(), i))) return false;
  }
  return true;
}

// Based edge path of w through the marking, tightened.
inline EdgePath realize(const MarkedGraph& g, const Word& w) {
  require_same_rank(g.rank(), w.rank());
  EdgePath path;
  for (Letter l : w.letters()) {
    const auto& m = g.marking(std::abs(l));
    if (l > 0) {
      for (Step s : m) push_tight(path, s);
    } else {
      for (auto it = m.rbegin(); it != m.rend(); ++it) push_tight(path, it->reversed());
    }
  }
  return path;
}

inline std::vector<int> crossings_of_path(const MarkedGraph& g, const EdgePath& loop) {
  std::vector<int> counts(g.edge_count(), 0);
  for (Step s : loop) ++counts[s.edge];
  return counts;
}

// Sum of count(e) * length(e), always accumulated in edge order.
inline double weighted_length(const MarkedGraph& g, const std::vector<int>& crossings) {
  double total = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (crossings[e] != 0) total += crossings[e] * g.edge(e).length;
  }
  return total;
}

inline double path_length(const MarkedGraph& g, const EdgePath& p) {
  return weighted_length(g, crossings_of_path(g, p));
}

// Tightened cyclic loop representing the conjugacy class of w.
inline EdgePath loop_of(const MarkedGraph& g, const Word& w) { return cyclic_tighten(realize(g, w)); }

inline std::vector<int> crossing_vector(const MarkedGraph& g, const Word& w) {
  return crossings_of_path(g, loop_of(g, w));
}

struct TranslationLength {
  double length = 0.0;
  LoopPath loop;
  bool trivial = false;  // identity word: zero length, empty loop
};

inline TranslationLength translation_length(const MarkedGraph& g, const Word& w) {
  TranslationLength t;
  t.loop.steps = loop_of(g, w);
  t.trivial = t.loop.steps.empty();
  const auto counts = crossings_of_path(g, t.loop.steps);
  t.length = weighted_length(g, counts);
#ifndef NDEBUG
  double stepwise = 0.0;
  for (Step s : t.loop.steps) stepwise += g.edge(s.edge).length;
  assert(std::abs(stepwise - t.length) <= 1e-9 * std::max(1.0, stepwise));
#endif
  t.loop.length = t.length;
  return t;
}

inline double length_of(const MarkedGraph& g, const Word& w) {
  return weighted_length(g, crossing_vector(g, w));
}

// ---------------------------------------------------------------------------
// Embedded cycles, systole and candidates.

struct Cycle {
  EdgePath steps;            // starts at vertices.front()
  std::vector<int> vertices;  // vertices[i] = tail(steps[i])
};

inline std::vector<Cycle> embedded_cycles(const MarkedGraph& g) {
  std::vector<Cycle> cycles;
  std::set<std::vector<int>> seen;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).is_loop()) {
      cycles.push_back({{Step{e, true}}, {g.edge(e).tail}});
      seen.insert({e});
    }
  }
  const auto out = g.outgoing();
  const int nv = g.vertex_count();
  std::vector<bool> on_path(nv, false);
  EdgePath path;
  std::vector<int> verts;

  auto record = [&](const EdgePath& steps, const std::vector<int>& vs) {
    std::vector<int> key;
    for (Step s : steps) key.push_back(s.edge);
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) cycles.push_back({steps, vs});
  };

  // Depth-first search for simple cycles whose least vertex is `start`.
  auto dfs = [&](auto&& self, int start, int at) -> void {
    for (Step s : out[at]) {
      if (g.edge(s.edge).is_loop()) continue;
      const int next = g.head(s);
      if (!path.empty() && s.edge == path.back().edge) continue;
      if (next == start) {
        path.push_back(s);
        record(path, verts);
        path.pop_back();
      } else if (next > start && !on_path[next]) {
        on_path[next] = true;
        path.push_back(s);
        verts.push_back(next);
        self(self, start, next);
        verts.pop_back();
        path.pop_back();
        on_path[next] = false;
      }
    }
  };
  for (int s = 0; s < nv; ++s) {
    on_path[s] = true;
    verts = {s};
    dfs(dfs, s, s);
    on_path[s] = false;
  }
  return cycles;
}

inline std::vector<int> indicator(const MarkedGraph& g, const EdgePath& p) {
  return crossings_of_path(g, p);
}

struct Systole {
  double length = 0.0;
  LoopPath witness;
  Word word;
};

// The minimum translation length is attained on an embedded cycle: a reduced
// closed edge path that revisits a vertex splits there into two shorter
// reduced closed paths, at least one of which is nontrivial and cyclically
// reduced after tightening. So the finite minimum over embedded cycles is
// exact.
inline Systole systole(const MarkedGraph& g) {
  Systole best;
  bool have = false;
  for (const auto& c : embedded_cycles(g)) {
    const double len = weighted_length(g, indicator(g, c.steps));
    if (!have || len < best.length) {
      have = true;
      best.length = len;
      best.witness = {c.steps, len};
    }
  }
  best.word = cyclic_reduce(g.read_comarking(best.witness.steps)).core;
  return best;
}

inline bool in_spine(const MarkedGraph& g, double eps, double tol = 1e-9) {
  return systole(g).length >= eps - tol;
}

enum class CandidateShape { Circle, Bouquet, Barbell };

struct Candidate {
  CandidateShape shape = CandidateShape::Circle;
  LoopPath loop;
  Word word;  // canonical conjugacy class (canonical_class) of the loop
  std::vector<int> crossings;
};

inline EdgePath rotate_to(const MarkedGraph& g, const Cycle& c, int vertex) {
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    if (g.tail(c.steps[i]) == vertex) {
      EdgePath out(c.steps.begin() + static_cast<std::ptrdiff_t>(i), c.steps.end());
      out.insert(out.end(), c.steps.begin(), c.steps.begin() + static_cast<std::ptrdiff_t>(i));
      return out;
    }
  }
  throw InvariantViolation("vertex not on cycle");
}

// Loops crossing every edge at most twice, of three shapes: embedded
// circles, two embedded circles sharing exactly one vertex, and two disjoint
// circles joined by an embedded arc travelled in both directions. One loop
// per unoriented free homotopy class, sorted by canonical word order.
inline std::vector<Candidate> candidates(const MarkedGraph& g) {
  const auto cycles = embedded_cycles(g);
  std::vector<Candidate> out;
  std::set<std::vector<Letter>> keys;

  auto add = [&](CandidateShape shape, EdgePath loop) {
    Candidate c;
    c.shape = shape;
    c.word = canonical_class(g.read_comarking(loop));
    if (!keys.insert(c.word.letters()).second) return;
    c.crossings = crossings_of_path(g, loop);
    c.loop = {std::move(loop), 0.0};
    c.loop.length = weighted_length(g, c.crossings);
    out.push_back(std::move(c));
  };

  std::vector<std::set<int>> vsets;
  for (const auto& c : cycles) vsets.emplace_back(c.vertices.begin(), c.vertices.end());

  for (const auto& c : cycles) add(CandidateShape::Circle, c.steps);

  const auto outgoing = g.outgoing();
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(vsets[i].begin(), vsets[i].end(), vsets[j].begin(), vsets[j].end(),
                            std::back_inserter(common));
      if (common.size() == 1) {
        const int v = common.front();
        const EdgePath first = rotate_to(g, cycles[i], v);
        const EdgePath second = rotate_to(g, cycles[j], v);
        for (const EdgePath& s : {second, reversed_path(second)}) {
          EdgePath loop = first;
          loop.insert(loop.end(), s.begin(), s.end());
          add(CandidateShape::Bouquet, std::move(loop));
        }
      } else if (common.empty()) {
        // Arcs from cycle i to cycle j with interior avoiding both.
        std::vector<bool> blocked(g.vertex_count(), false);
        for (int v : vsets[i]) blocked[v] = true;
        for (int v : vsets[j]) blocked[v] = true;
        EdgePath arc;
        auto extend = [&](auto&& self, int at) -> void {
          for (Step s : outgoing[at]) {
            if (g.edge(s.edge).is_loop()) continue;
            const int next = g.head(s);
            if (vsets[j].count(next) != 0) {
              arc.push_back(s);
              const EdgePath first = rotate_to(g, cycles[i], g.tail(arc.front()));
              const EdgePath second = rotate_to(g, cycles[j], next);
              const EdgePath back = reversed_path(arc);
              for (const EdgePath& c2 : {second, reversed_path(second)}) {
                EdgePath loop = first;
                loop.insert(loop.end(), arc.begin(), arc.end());
                loop.insert(loop.end(), c2.begin(), c2.end());
                loop.insert(loop.end(), back.begin(), back.end());
                add(CandidateShape::Barbell, std::move(loop));
              }
              arc.pop_back();
            } else if (!blocked[next]) {
              blocked[next] = true;
              arc.push_back(s);
              self(self, next);
              arc.pop_back();
              blocked[next] = false;
            }
          }
        };
        for (int v : vsets[i]) extend(extend, v);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) { return canonical_less(a.word, b.word); });
  return out;
}

// ---------------------------------------------------------------------------
// Scaling and topology moves.

inline MarkedGraph rescale(const MarkedGraph& g, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw MalformedInput("scale factor must be positive");
  auto lengths = g.lengths();
  for (double& l : lengths) l *= c;
  return g.with_lengths(lengths);
}

inline MarkedGraph normalize_volume(const MarkedGraph& g) {
  const double v = g.volume();
  if (!(v > 0.0)) throw PreconditionFailed("graph has zero volume");
  auto lengths = g.lengths();
  for (double& l : lengths) l /= v;
  return g.with_lengths(lengths);
}

inline MarkedGraph collapse_edge(const MarkedGraph& g, int e) {
  if (e < 0 || e >= g.edge_count()) throw MalformedInput("edge index out of range");
  const Edge& dead = g.edge(e);
  if (dead.is_loop()) throw PreconditionFailed("cannot collapse loop edge '" + dead.id + "'");
  const int keep = dead.tail;
  const int gone = dead.head;
  auto vertex_map = [&](int v) {
    if (v == gone) v = keep;
    return v > gone ? v - 1 : v;
  };
  std::vector<std::string> ids;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v != gone) ids.push_back(g.vertex_ids()[v]);
  }
  std::vector<Edge> edges;
  for (int i = 0; i < g.edge_count(); ++i) {
    if (i == e) continue;
    Edge copy = g.edge(i);
    copy.tail = vertex_map(copy.tail);
    copy.head = vertex_map(copy.head);
    edges.push_back(std::move(copy));
  }
  std::vector<EdgePath> marking;
  for (const auto& path : g.marking()) {
    EdgePath p;
    for (Step s : path) {
      if (s.edge == e) continue;
      push_tight(p, {s.edge > e ? s.edge - 1 : s.edge, s.forward});
    }
    marking.push_back(std::move(p));
  }
  return MarkedGraph::build(g.rank(), std::move(ids), std::move(edges), vertex_map(g.basepoint()),
                            std::move(marking));
}

// Collapses every non-loop edge of length <= tol.
inline MarkedGraph collapse_short_edges(const MarkedGraph& g, double tol = 0.0) {
  MarkedGraph cur = g;
  while (true) {
    int victim = -1;
    for (int e = 0; e < cur.edge_count(); ++e) {
      if (cur.edge(e).length <= tol && !cur.edge(e).is_loop()) {
        victim = e;
        break;
      }
    }
    if (victim < 0) return cur;
    cur = collapse_edge(cur, victim);
  }
}

inline std::string fresh_id(const std::vector<std::string>& taken, char prefix) {
  std::set<std::string> used(taken.begin(), taken.end());
  for (std::size_t n = taken.size();; ++n) {
    std::string id = std::string(1, prefix) + std::to_string(n);
    if (used.count(id) == 0) return id;
  }
}

struct Expansion {
  MarkedGraph graph;
  int new_edge = 0;  // index of the zero-length edge; collapsing it recovers the input
};

// A half-edge is identified by the oriented step leaving the vertex.
inline std::vector<Expansion> expansions(const MarkedGraph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) throw MalformedInput("vertex out of range");
  const auto ends = g.outgoing()[v];
  const int k = static_cast<int>(ends.size());
  if (k < 4) throw PreconditionFailed("expansion needs valence at least 4");

  std::vector<Expansion> out;
  // Subsets S (moved to the new vertex) not containing end 0, so each
  // unordered split is produced once.
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if ((mask & 1u) != 0) continue;
    const int size = __builtin_popcount(mask);
    if (size < 2 || k - size < 2) continue;

    auto moved = [&](Step leaving) {
      for (int i = 0; i < k; ++i) {
        if (ends[i] == leaving) return ((mask >> i) & 1u) != 0;
      }
      return false;
    };

    const int nv = g.vertex_count();
    std::vector<std::string> ids = g.vertex_ids();
    ids.push_back(fresh_id(ids, 'v'));
    std::vector<Edge> edges = g.edges();
    for (int i = 0; i < k; ++i) {
      if (((mask >> i) & 1u) == 0) continue;
      Edge& e = edges[ends[i].edge];
      if (ends[i].forward) {
        e.tail = nv;
      } else {
        e.head = nv;
      }
    }
    std::vector<std::string> edge_ids;
    for (const auto& e : edges) edge_ids.push_back(e.id);
    const int bridge = static_cast<int>(edges.size());
    edges.push_back({fresh_id(edge_ids, 'e'), v, nv, 0.0, "0"});

    std::vector<EdgePath> marking;
    for (const auto& path : g.marking()) {
      EdgePath p;
      // The walk sits on the new vertex whenever it arrives through a moved end.
      bool on_new = false;
      for (std::size_t i = 0; i < path.size(); ++i) {
        const Step s = path[i];
        if (g.tail(s) == v) {
          const bool leave_new = moved(s);
          if (leave_new != on_new) p.push_back({bridge, leave_new});
        }
        p.push_back(s);
        on_new = g.head(s) == v && moved(s.reversed());
      }
      if (on_new) p.push_back({bridge, false});
      marking.push_back(std::move(p));
    }
    out.push_back({MarkedGraph::build(g.rank(), std::move(ids), std::move(edges), g.basepoint(),
                                      std::move(marking)),
                   bridge});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Change of marking.

// New marking x -> path of psi(x): translation length of w becomes that of
// psi(w) in g.
inline MarkedGraph precompose_marking(const MarkedGraph& g, const Automorphism& psi) {
  require_same_rank(g.rank(), psi.rank());
  std::vector<EdgePath> marking;
  for (int i = 1; i <= g.rank(); ++i) marking.push_back(realize(g, psi.image(i)));
  return MarkedGraph::build(g.rank(), g.vertex_ids(), g.edges(), g.basepoint(), std::move(marking));
}

// Left action phi . g, so that ||w||_{phi.g} = ||phi^-1(w)||_g and
// <phi.g, phi.nu> = <g, nu>.
inline MarkedGraph act(const Automorphism& phi, const MarkedGraph& g) {
  return precompose_marking(g, invert(phi));
}

}  // namespace outerspace
