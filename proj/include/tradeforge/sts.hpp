#pragma once
// Steiner triple systems: quasigroup-based generation for every admissible
// order, verification, file input so nonisomorphic systems can be swapped in,
// and the pair partitions consumed by the structured decomposition.

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "collection.hpp"
#include "combinatorics.hpp"

namespace tradeforge {

struct TripleSystem {
  int order = 0;
  std::set<Block> triples;
};

/// Every pair of points lies in exactly one triple.
inline bool verify_sts(const TripleSystem& ts) {
  if (ts.order < 0) return false;
  const std::int64_t expect = binomial(ts.order, 2) / 3;
  if (static_cast<std::int64_t>(ts.triples.size()) != expect) return false;
  if (binomial(ts.order, 2) % 3 != 0) return false;
  std::vector<int> pair_count(static_cast<std::size_t>(binomial(ts.order, 2)), 0);
  for (const auto& tr : ts.triples) {
    if (tr.size() != 3 || !tr.valid_for(ts.order)) return false;
    detail::for_each_subset(tr.elements(), 2, [&](const std::vector<int>& p) {
      ++pair_count[static_cast<std::size_t>(rank_lex(Block(p), ts.order))];
    });
  }
  for (int c : pair_count) {
    if (c != 1) return false;
  }
  return true;
}

namespace detail {

// Order 6t+3: points (x, i) -> 3x + i over Z_{2t+1} x {0,1,2} with the
// commutative idempotent quasigroup x * y = (x + y)(t + 1) mod 2t+1.
inline TripleSystem sts_odd3(int t) {
  const int m = 2 * t + 1;
  auto pt = [&](int x, int i) { return 3 * x + i; };
  auto mul = [&](int x, int y) { return static_cast<int>((static_cast<std::int64_t>(x) + y) * (t + 1) % m); };
  TripleSystem ts{6 * t + 3, {}};
  for (int x = 0; x < m; ++x) ts.triples.insert(Block::of({pt(x, 0), pt(x, 1), pt(x, 2)}));
  for (int x = 0; x < m; ++x) {
    for (int y = x + 1; y < m; ++y) {
      for (int i = 0; i < 3; ++i) {
        ts.triples.insert(Block::of({pt(x, i), pt(y, i), pt(mul(x, y), (i + 1) % 3)}));
      }
    }
  }
  return ts;
}

// Order 6t+1: points (x, i) -> 3x + i over Z_{2t} x {0,1,2} plus one point
// at infinity (labelled 6t), using the half-idempotent commutative
// quasigroup on Z_{2t} given by relabelling x * y = (x + y) mod 2t so that
// the diagonal hits each of 0..t-1 twice.
inline TripleSystem sts_odd1(int t) {
  const int m = 2 * t;
  const int inf = 6 * t;
  auto pt = [&](int x, int i) { return 3 * x + i; };
  auto relabel = [&](int s) { return s % 2 == 0 ? s / 2 : t + (s - 1) / 2; };
  auto mul = [&](int x, int y) { return relabel((x + y) % m); };
  TripleSystem ts{6 * t + 1, {}};
  for (int x = 0; x < t; ++x) ts.triples.insert(Block::of({pt(x, 0), pt(x, 1), pt(x, 2)}));
  for (int x = t; x < m; ++x) {
    for (int i = 0; i < 3; ++i) {
      ts.triples.insert(Block::of({inf, pt(x, i), pt(x - t, (i + 1) % 3)}));
    }
  }
  for (int x = 0; x < m; ++x) {
    for (int y = x + 1; y < m; ++y) {
      for (int i = 0; i < 3; ++i) {
        ts.triples.insert(Block::of({pt(x, i), pt(y, i), pt(mul(x, y), (i + 1) % 3)}));
      }
    }
  }
  return ts;
}

}  // namespace detail

/// Builds an STS of any order congruent to 1 or 3 mod 6 (orders 1 and 3 are
/// the trivial systems).  The result is verified before being returned.
inline TripleSystem sts_generate(int order) {
  if (order < 0 || (order % 6 != 1 && order % 6 != 3)) {
    throw std::invalid_argument("sts_generate: order must be congruent to 1 or 3 mod 6");
  }
  TripleSystem ts;
  if (order == 1) {
    ts = TripleSystem{1, {}};
  } else if (order == 3) {
    ts = TripleSystem{3, {Block::of({0, 1, 2})}};
  } else if (order % 6 == 3) {
    ts = detail::sts_odd3(order / 6);
  } else {
    ts = detail::sts_odd1(order / 6);
  }
  if (!verify_sts(ts)) throw std::logic_error("sts_generate: construction failed verification");
  return ts;
}

/// The classical 7-point system.
inline TripleSystem reference_sts7() {
  TripleSystem ts{7, {}};
  for (auto t : {std::vector<int>{0, 1, 3}, {0, 2, 6}, {0, 4, 5}, {1, 2, 4}, {1, 5, 6}, {2, 3, 5}, {3, 4, 6}}) {
    ts.triples.insert(Block(std::move(t)));
  }
  return ts;
}

/// The classical 9-point system.
inline TripleSystem reference_sts9() {
  TripleSystem ts{9, {}};
  for (auto t : {std::vector<int>{0, 1, 2}, {0, 3, 6}, {0, 4, 8}, {0, 5, 7}, {1, 3, 8}, {1, 4, 7},
                 {1, 5, 6}, {2, 3, 7}, {2, 4, 6}, {2, 5, 8}, {3, 4, 5}, {6, 7, 8}}) {
    ts.triples.insert(Block(std::move(t)));
  }
  return ts;
}

/// One triple per line, three integers separated by spaces; '#' lines and
/// blank lines are ignored.  The order is the largest point plus one.
inline TripleSystem read_sts(std::istream& in, bool one_based = false) {
  TripleSystem ts;
  std::string line;
  int lineno = 0;
  int max_point = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::vector<int> elems(3);
    if (!(ss >> elems[0] >> elems[1] >> elems[2])) {
      throw std::runtime_error("read_sts: line " + std::to_string(lineno) + ": expected three integers");
    }
    std::string rest;
    if (ss >> rest) {
      throw std::runtime_error("read_sts: line " + std::to_string(lineno) + ": trailing tokens");
    }
    for (auto& x : elems) {
      if (one_based) --x;
      if (x < 0) throw std::runtime_error("read_sts: line " + std::to_string(lineno) + ": point out of range");
      max_point = std::max(max_point, x);
    }
    if (!ts.triples.insert(Block::of(std::move(elems))).second) {
      throw std::runtime_error("read_sts: line " + std::to_string(lineno) + ": repeated triple");
    }
  }
  ts.order = max_point + 1;
  return ts;
}

inline void write_sts(std::ostream& out, const TripleSystem& ts, bool one_based = false) {
  const int shift = one_based ? 1 : 0;
  for (const auto& tr : ts.triples) {
    out << tr[0] + shift << ' ' << tr[1] + shift << ' ' << tr[2] + shift << '\n';
  }
}

/// A perfect matching on {0..m-1}, used to route the 4-cycles of the
/// structured decomposition.
struct PairPartition {
  std::vector<std::pair<int, int>> pairs;
};

inline void validate_pair_partition(const PairPartition& p, int m) {
  if (m < 0 || m % 2 != 0) throw std::invalid_argument("pair partition: m must be even");
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  if (static_cast<int>(p.pairs.size()) * 2 != m) {
    throw std::invalid_argument("pair partition: wrong number of pairs");
  }
  for (const auto& [x, y] : p.pairs) {
    for (int z : {x, y}) {
      if (z < 0 || z >= m || seen[static_cast<std::size_t>(z)]) {
        throw std::invalid_argument("pair partition: pairs must partition {0..m-1}");
      }
      seen[static_cast<std::size_t>(z)] = true;
    }
    if (x == y) throw std::invalid_argument("pair partition: degenerate pair");
  }
}

/// {{0,1}, {2,3}, ...}.
inline PairPartition default_pair_partition(int m) {
  if (m < 0 || m % 2 != 0) throw std::invalid_argument("default_pair_partition: m must be even");
  PairPartition p;
  for (int i = 0; i < m; i += 2) p.pairs.emplace_back(i, i + 1);
  return p;
}

}  // namespace tradeforge
