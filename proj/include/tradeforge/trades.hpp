#pragma once
// Trade constructors: the eight-block minimal trade, edge-bundle trades on
// closed walks, the ten-block overlapping-foundation trade, and the greedy
// companion rule used by the incremental halving search.

#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "collection.hpp"
#include "combinatorics.hpp"

namespace tradeforge {

using OrderedTriple = std::array<int, 3>;

/// The product trade (a0 - b0)(a1 - b1)(a2 - b2): eight blocks, one per
/// choice of a- or b-element in each position, signed by the parity of the
/// number of b-choices.  Positional pairing matters, so inputs are ordered
/// triples rather than blocks.
inline SignedCollection minimal_trade(int v, const OrderedTriple& a, const OrderedTriple& b) {
  std::set<int> distinct;
  for (int x : a) distinct.insert(x);
  for (int x : b) distinct.insert(x);
  if (distinct.size() != 6) throw std::invalid_argument("minimal_trade: the six elements must be distinct");
  if (*distinct.begin() < 0 || *distinct.rbegin() >= v) {
    throw std::invalid_argument("minimal_trade: elements not within [0, v)");
  }
  SignedCollection f(v, 3);
  for (int s = 0; s < 8; ++s) {
    std::vector<int> elems(3);
    int parity = 0;
    for (int i = 0; i < 3; ++i) {
      const bool pick_b = (s >> i) & 1;
      elems[static_cast<std::size_t>(i)] = pick_b ? b[static_cast<std::size_t>(i)] : a[static_cast<std::size_t>(i)];
      parity ^= pick_b ? 1 : 0;
    }
    f.add(Block::of(std::move(elems)), parity ? -1 : 1);
  }
  return f;
}

/// A cycle through pair indices, visiting each vertex once.
struct IndexCycle {
  std::vector<int> vertices;
};

/// A closed walk given by its directed edges; consecutive edges chain and
/// the walk returns to its start.  Undirected edges may not repeat.
struct ClosedWalk {
  std::vector<std::pair<int, int>> edges;

  static ClosedWalk from_cycle(const IndexCycle& c) {
    ClosedWalk w;
    const auto m = c.vertices.size();
    w.edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      w.edges.emplace_back(c.vertices[i], c.vertices[(i + 1) % m]);
    }
    return w;
  }
};

namespace detail {

inline void validate_walk(const ClosedWalk& w, int pair_count) {
  if (w.edges.empty()) throw std::invalid_argument("cycle_trade: walk has no edges");
  std::set<std::pair<int, int>> undirected;
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const auto [x, y] = w.edges[i];
    if (x < 0 || y < 0 || x >= pair_count || y >= pair_count) {
      throw std::invalid_argument("cycle_trade: edge index out of range");
    }
    if (x == y) throw std::invalid_argument("cycle_trade: loop edge");
    if (w.edges[(i + 1) % w.edges.size()].first != y) {
      throw std::invalid_argument("cycle_trade: edges do not chain into a closed walk");
    }
    if (!undirected.emplace(std::min(x, y), std::max(x, y)).second) {
      throw std::invalid_argument("cycle_trade: repeated undirected edge");
    }
  }
}

}  // namespace detail

/// Edge-bundle trade: each directed edge (i, j) of the walk contributes
///   + {a_i, b_i, a_j}  + {a_i, b_i, b_j}  - {a_j, b_j, a_i}  - {a_j, b_j, b_i}.
/// Per edge the pair-count imbalance is +2{a_i b_i} - 2{a_j b_j}, which
/// telescopes to zero exactly because the walk is closed.
inline SignedCollection cycle_trade(const ClosedWalk& walk, const Labelling& lab) {
  detail::validate_walk(walk, lab.pair_count());
  SignedCollection f(lab.v(), 3);
  for (const auto& [i, j] : walk.edges) {
    f.add(Block::of({lab.a(i), lab.b(i), lab.a(j)}), 1);
    f.add(Block::of({lab.a(i), lab.b(i), lab.b(j)}), 1);
    f.add(Block::of({lab.a(j), lab.b(j), lab.a(i)}), -1);
    f.add(Block::of({lab.a(j), lab.b(j), lab.b(i)}), -1);
  }
  return f;
}

inline SignedCollection cycle_trade(const IndexCycle& cycle, const Labelling& lab) {
  const int m = static_cast<int>(cycle.vertices.size());
  if (m < 3 || m > lab.pair_count()) {
    throw std::invalid_argument("cycle_trade: cycle length must be between 3 and v/2");
  }
  std::set<int> distinct(cycle.vertices.begin(), cycle.vertices.end());
  if (static_cast<int>(distinct.size()) != m) {
    throw std::invalid_argument("cycle_trade: cycle vertices must be distinct");
  }
  return cycle_trade(ClosedWalk::from_cycle(cycle), lab);
}

/// Ten-block trade on the six points {a_i, b_i : i in alpha}: the sum of the
/// three cyclic rotations M(a; b0 b1 b2) + M(a; b1 b2 b0) - M(a; b2 b0 b1).
/// Its support is all twenty 3-subsets of its foundation.
inline SignedCollection v10_trade(const OrderedTriple& alpha, const Labelling& lab) {
  if (lab.v() % 4 != 2) throw std::invalid_argument("v10_trade: v must be congruent to 2 mod 4");
  if (!(alpha[0] < alpha[1] && alpha[1] < alpha[2])) {
    throw std::invalid_argument("v10_trade: alpha must be strictly increasing");
  }
  if (alpha[0] < 0 || alpha[2] >= lab.pair_count()) {
    throw std::invalid_argument("v10_trade: alpha indices out of range");
  }
  const OrderedTriple a{lab.a(alpha[0]), lab.a(alpha[1]), lab.a(alpha[2])};
  const OrderedTriple b{lab.b(alpha[0]), lab.b(alpha[1]), lab.b(alpha[2])};
  SignedCollection f = minimal_trade(lab.v(), a, b);
  f += minimal_trade(lab.v(), a, OrderedTriple{b[1], b[2], b[0]});
  f -= minimal_trade(lab.v(), a, OrderedTriple{b[2], b[0], b[1]});
  return f;
}

/// Companion triple for the greedy rule: b2 is the successor of a2; b1 the
/// least unused element above a1; b0 the least unused element above a0.
inline OrderedTriple ak_companion_triple(const OrderedTriple& block, int v) {
  const auto [a0, a1, a2] = block;
  if (!(0 <= a0 && a0 < a1 && a1 < a2 && a2 < v)) {
    throw std::invalid_argument("ak_companion_triple: block must be strictly increasing within [0, v)");
  }
  std::set<int> used{a0, a1, a2};
  auto pick = [&](int above) {
    for (int x = above + 1; x < v; ++x) {
      if (used.insert(x).second) return x;
    }
    throw std::domain_error("ak_companion_triple: companion rule unsatisfiable for this block");
  };
  const int b2 = a2 + 1;
  if (b2 >= v || !used.insert(b2).second) {
    throw std::domain_error("ak_companion_triple: companion rule unsatisfiable for this block");
  }
  const int b1 = pick(a1);
  const int b0 = pick(a0);
  return {b0, b1, b2};
}

/// Minimal trade pairing a block with its greedy companion.
inline SignedCollection ak_companion(const Block& block, int v) {
  if (block.size() != 3) throw std::invalid_argument("ak_companion: block must have three elements");
  const OrderedTriple a{block[0], block[1], block[2]};
  return minimal_trade(v, a, ak_companion_triple(a, v));
}

}  // namespace tradeforge
