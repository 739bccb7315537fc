#pragma once
// Ground-set arithmetic: exact binomial coefficients, lexicographic
// (un)ranking of k-subsets, and the paired a/b labelling used by the
// cycle constructions.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tradeforge {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in addition");
  }
  return r;
}

/// Exact binomial coefficient; k > n yields 0, overflow throws.
inline std::int64_t binomial(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) is always divisible by i at this point
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
      throw std::overflow_error("binomial: result exceeds 64 bits");
    }
  }
  return static_cast<std::int64_t>(r);
}

/// A block: strictly increasing sequence of ground-set elements.
class Block {
 public:
  Block() = default;
  explicit Block(std::vector<int> elems) : e_(std::move(elems)) {
    for (std::size_t i = 0; i + 1 < e_.size(); ++i) {
      if (e_[i] >= e_[i + 1]) {
        throw std::invalid_argument("Block: elements must be strictly increasing");
      }
    }
  }

  /// Builds a block from distinct elements in any order.
  static Block of(std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    return Block(std::move(elems));
  }
  static Block of(std::initializer_list<int> elems) { return of(std::vector<int>(elems)); }

  int size() const { return static_cast<int>(e_.size()); }
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& elements() const { return e_; }
  bool contains(int x) const { return std::binary_search(e_.begin(), e_.end(), x); }

  bool valid_for(int v) const { return e_.empty() || (e_.front() >= 0 && e_.back() < v); }

  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  friend auto operator<=>(const Block&, const Block&) = default;

 private:
  std::vector<int> e_;
};

/// 0-based position of `b` in the lexicographic order of C([0,v), k).
inline std::int64_t rank_lex(const Block& b, int v) {
  if (!b.valid_for(v)) throw std::invalid_argument("rank_lex: block not within [0, v)");
  const int k = b.size();
  std::int64_t r = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int x = prev + 1; x < b[i]; ++x) {
      r = checked_add(r, binomial(v - 1 - x, k - 1 - i));
    }
    prev = b[i];
  }
  return r;
}

/// Inverse of rank_lex.
inline Block unrank_lex(std::int64_t rank, int v, int k) {
  if (v < 0 || k < 0 || k > v) throw std::invalid_argument("unrank_lex: need 0 <= k <= v");
  if (rank < 0 || rank >= binomial(v, k)) throw std::out_of_range("unrank_lex: rank out of range");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  int x = 0;
  for (int i = 0; i < k; ++i) {
    for (;; ++x) {
      const std::int64_t cnt = binomial(v - 1 - x, k - 1 - i);
      if (rank < cnt) break;
      rank -= cnt;
    }
    out.push_back(x++);
  }
  return Block(std::move(out));
}

/// A partition of X = [0, v) into equal halves a_0..a_{m-1} / b_0..b_{m-1};
/// index i names the vertex pair a_i b_i of the cycle constructions.
class Labelling {
 public:
  Labelling(int v, std::vector<int> a, std::vector<int> b)
      : v_(v), a_(std::move(a)), b_(std::move(b)) {
    if (v_ <= 0 || v_ % 2 != 0) throw std::invalid_argument("Labelling: v must be positive and even");
    if (a_.size() != b_.size() || static_cast<int>(a_.size() + b_.size()) != v_) {
      throw std::invalid_argument("Labelling: halves must have size v/2 each");
    }
    std::vector<bool> seen(static_cast<std::size_t>(v_), false);
    for (const auto* side : {&a_, &b_}) {
      for (int x : *side) {
        if (x < 0 || x >= v_ || seen[static_cast<std::size_t>(x)]) {
          throw std::invalid_argument("Labelling: halves must partition [0, v)");
        }
        seen[static_cast<std::size_t>(x)] = true;
      }
    }
  }

  int v() const { return v_; }
  int pair_count() const { return v_ / 2; }
  int a(int i) const { return a_.at(static_cast<std::size_t>(i)); }
  int b(int i) const { return b_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& a_side() const { return a_; }
  const std::vector<int>& b_side() const { return b_; }

 private:
  int v_;
  std::vector<int> a_, b_;
};

/// a_i = i, b_i = i + v/2 for v congruent to 2 mod 4.
inline Labelling default_labelling(int v) {
  if (v < 2 || v % 4 != 2) {
    throw std::invalid_argument("default_labelling: v must be congruent to 2 mod 4");
  }
  std::vector<int> a(static_cast<std::size_t>(v / 2)), b(static_cast<std::size_t>(v / 2));
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), v / 2);
  return Labelling(v, std::move(a), std::move(b));
}

}  // namespace tradeforge
